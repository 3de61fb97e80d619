#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qcorr/criteria.hpp"

namespace qcorr {

enum class Method { ClosedForm, Search };

struct AbsoluteVerdict {
    bool holds = true;
    double margin = 0.0;
    Method method = Method::ClosedForm;
    std::optional<UnitaryMatrix> counterexample;
};

/// -(d1 - d_{2n-1} - 2 sqrt(d_{2n-2} d_{2n})). Throws BadSpectrum.
AbsoluteVerdict absolutely_separable_2xn(const Spectrum& spec, int n);

/// Minimum over all ordering pairs of the smallest eigenvalue of
/// Lambda + Lambda^T. Throws UnsupportedDims when min(m, n) > 3.
AbsoluteVerdict absolutely_ppt(const Spectrum& spec, Dims dims);

/// 1 - (2d1 + 2d2 - 1)^2 - (2d1 + 2d3 - 1)^2.
AbsoluteVerdict absolutely_local(const Spectrum& spec);

/// 1 - [3 sum d_i^2 - 2 sum_{i<j} d_i d_j].
AbsoluteVerdict absolutely_unsteerable3(const Spectrum& spec);

/// H(spec) - 1.
AbsoluteVerdict absolutely_nonneg_cond_entropy(const Spectrum& spec);

/// 1e-9 - max |d_i - 1/4|.
AbsoluteVerdict absolutely_zero_discord(const Spectrum& spec);
AbsoluteVerdict absolutely_classical_cc(const Spectrum& spec);
AbsoluteVerdict absolutely_classical_cq(const Spectrum& spec);
AbsoluteVerdict absolutely_classical_qc(const Spectrum& spec);
AbsoluteVerdict absolutely_product(const Spectrum& spec);
AbsoluteVerdict absolutely_zero_super_discord(const Spectrum& spec);

/// Some permutation of the spectrum satisfies d1 = 1/2 - d2, d3 = d2.
bool necessary_family_step1(const Spectrum& spec, double tol = 1e-9);

/// An ordering pair: sigma_plus lists S+ = {(k,l) : k <= l} in rank order,
/// sigma_minus lists S- = {(k,l) : k < l}. Pairs are 1-based.
struct OrderingPair {
    std::vector<std::pair<int, int>> sigma_plus;
    std::vector<std::pair<int, int>> sigma_minus;
};

/// All p+! p-! ordering pairs for p <= 3 (cached).
const std::vector<OrderingPair>& ordering_pairs(int p);

/// Lambda(lambda; sigma+, sigma-) for eigenvalues in descending order.
RealMatrix lambda_matrix(const Spectrum& spec, Dims dims, const OrderingPair& o);

// ---- search

enum class AbsProperty { Separable, Local, Unsteerable3, NonnegCondEntropy, ZeroDiscord, Product };

std::string_view to_string(AbsProperty p) noexcept;

/// Throws OutOfRange for unknown names.
AbsProperty parse_abs_property(std::string_view name);

/// Margin of the ordinary criterion behind `p` (PPT, CHSH-local,
/// unsteerable3, S(A|B) >= 0, blocks zero discord measured on A, product).
double property_margin(const DensityMatrix& rho, AbsProperty p);

/// Closed-form absolute verdict for `p` from the spectrum alone.
AbsoluteVerdict closed_form(const Spectrum& spec, AbsProperty p);

struct SearchResult {
    std::optional<UnitaryMatrix> counterexample;
    double counterexample_margin = 0.0;
    double best_margin = 0.0;     // lowest ordinary margin seen
    std::size_t evaluated = 0;    // conjugations tried
};

/// Candidates needing margin < -threshold count as counterexamples.
constexpr double kSearchThreshold = 1e-6;

/// Quarter Haar samples, quarter Cartan grid with random local layers, half
/// local refinement from the best candidate so far. Deterministic in seed;
/// stops at the first counterexample. Never throws on exhaustion.
SearchResult search_counterexample(const DensityMatrix& rho, AbsProperty p, std::size_t budget,
                                   std::uint64_t seed);

/// Search verdict. Throws BudgetExhausted (margin = best margin) when no
/// counterexample is found.
AbsoluteVerdict falsify_absolute(const DensityMatrix& rho, AbsProperty p, std::size_t budget,
                                 std::uint64_t seed);

}  // namespace qcorr
