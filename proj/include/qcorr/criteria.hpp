#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "qcorr/entropy.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

/// rho = (1/(dA dB)) (I + sum a_m s_m (x) I + sum b_n I (x) s_n + sum t_mn s_m (x) s_n)
/// over generalised Gell-Mann bases. For qubits a_m = Tr rho (s_m (x) I) etc.
struct FanoBlochForm {
    Dims dims;
    RealVector a;
    RealVector b;
    RealMatrix t;
};

FanoBlochForm fano_bloch(const DensityMatrix& rho);
ComplexMatrix reconstruct(const FanoBlochForm& f);

/// holds <=> margin >= 0. Every verdict is phrased so that "holds" is the
/// classical side: product, zero discord, PPT, unsteerable, local, ...
struct CriterionVerdict {
    bool holds = true;
    double margin = 0.0;
    std::string witness;
};

/// Margins with |margin| <= snap are reported as exactly zero.
CriterionVerdict make_verdict(double margin, double snap = 1e-12, std::string witness = {});

// ---- product

/// Residuals |lhs - rhs| of the 36 bilinear product conditions (two qubits).
std::array<double, 36> product_condition_residuals(const DensityMatrix& rho);

/// ||rho - rho_A (x) rho_B||_F <= tol; margin = tol - residual.
CriterionVerdict is_product(const DensityMatrix& rho, double tol = 1e-8);

// ---- separability

/// Pure states only: separable iff S(rho_A) <= tol. Throws NotPure.
CriterionVerdict is_separable_pure(const DensityMatrix& rho, double tol = 1e-8);

/// margin = smallest eigenvalue of rho^{T_B}.
CriterionVerdict is_ppt(const DensityMatrix& rho);

// ---- nonlocality and steering

struct ValueVerdict {
    double value = 0.0;
    CriterionVerdict verdict;
};

/// Horodecki maximum 2 sqrt(mu1 + mu2). Verdict is "local", margin 2 - value.
ValueVerdict chsh_max(const DensityMatrix& rho);

/// Maximum of |sum_i <A_i (x) B_i>| / sqrt(3) over Alice directions and
/// orthonormal Bob triads, equal to ||t||_F. Verdict is "unsteerable",
/// margin 1 - value.
ValueVerdict steerable_three(const DensityMatrix& rho);

/// Value of the three-setting expression for fixed unit directions.
double steering_expression(const DensityMatrix& rho, const std::array<RealVector, 3>& alice,
                           const std::array<RealVector, 3>& bob);

// ---- discord

/// Dakic test of zero discord for a measurement on `measured`:
/// ||x||^2 + ||t||^2 - k_max with x the Bloch vector of the measured qubit.
CriterionVerdict zero_discord_dakic(const DensityMatrix& rho, Side measured = Side::A,
                                    double tol = 1e-8);

/// Block criterion: zero discord for a measurement on `measured`. Blocks are
/// operators on the measured side indexed by the other side's basis; all
/// must be normal and commute pairwise.
CriterionVerdict zero_discord_blocks(const DensityMatrix& rho, Side measured);

struct DiscordResult {
    double value = 0.0;          // bits, clamped at zero
    RealVector direction;        // optimal Bloch direction of the projective measurement
    double conditional = 0.0;    // minimised measured conditional entropy
};

/// Discord with a projective measurement on `measured` (two qubits).
DiscordResult discord_numeric_detail(const DensityMatrix& rho, Side measured);
double discord_numeric(const DensityMatrix& rho, Side measured);

/// Measured conditional entropy sum_k p_k S(rho_other|k) for the projectors
/// (I +- n.s)/2 on `measured`.
double measured_conditional_entropy(const DensityMatrix& rho, Side measured, const RealVector& n);

enum class Classicality { CC, CQ, QC, QuantumQuantum };

std::string_view to_string(Classicality c) noexcept;

Classicality classify_ccq(const DensityMatrix& rho);

// ---- weak measurement and super discord

struct WeakMeasurementPair {
    ComplexMatrix pi1;
    ComplexMatrix pi2;
    double xi = 0.0;
};

/// Checks that pi1, pi2 are orthogonal projectors summing to I.
void validate(const WeakMeasurementPair& wm, double tol = 1e-9);

/// P(xi) and P(-xi).
std::array<ComplexMatrix, 2> weak_operators(const WeakMeasurementPair& wm);

WeakMeasurementPair computational_weak_pair(double xi);

struct WeakMeasurementResult {
    double p_plus = 0.0;
    double p_minus = 0.0;
    DensityMatrix post_plus;          // joint post-measurement states
    DensityMatrix post_minus;
    ComplexMatrix reduced_plus;       // conditional states of the unmeasured side
    ComplexMatrix reduced_minus;
    DensityMatrix averaged;           // sum of both unnormalised branches
    double cond_entropy = 0.0;        // p+ S(reduced_plus) + p- S(reduced_minus)
};

/// Throws InvalidProjectors.
WeakMeasurementResult weak_measure(const DensityMatrix& rho, Side measured, const WeakMeasurementPair& wm);

/// Zero super discord iff zero mutual information; margin = tol - I(A:B).
CriterionVerdict zero_super_discord(const DensityMatrix& rho, double tol = 1e-8);

// ---- conditional entropy

/// S(A|B) >= 0; margin = S(A|B).
CriterionVerdict nonneg_cond_entropy(const EntropyReport& e);
CriterionVerdict nonneg_cond_entropy(const DensityMatrix& rho);

// ---- contextuality

/// <psi| sum P_i |psi> over five cyclically orthogonal projectors.
/// Verdict is "noncontextual", margin 2 - value. Throws NotProjector,
/// NotCyclicOrthogonal, DimensionMismatch.
ValueVerdict kcbs_value(const ComplexVector& psi, const std::vector<ComplexMatrix>& projectors);
ValueVerdict kcbs_value_density(const ComplexMatrix& rho, const std::vector<ComplexMatrix>& projectors);

/// Random valid rank-one family in dimension 3.
std::vector<ComplexMatrix> random_kcbs_family(Rng& rng);

}  // namespace qcorr
