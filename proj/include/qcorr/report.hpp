#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qcorr/absolute.hpp"
#include "qcorr/criteria.hpp"
#include "qcorr/entropy.hpp"

namespace qcorr {

struct Violation {
    std::string implication;
    std::string state;
    double antecedent_margin = 0.0;
    double consequent_margin = 0.0;
};

struct PropertyReport {
    std::string descriptor;
    std::uint64_t seed = 0;
    Tolerances tolerances;
    Dims dims;
    std::map<std::string, CriterionVerdict> verdicts;
    std::map<std::string, double> values;
    EntropyReport entropy;
    std::map<std::string, AbsoluteVerdict> absolute;
    std::string classicality;
    std::vector<Violation> audit;
};

/// Full classification. Two-qubit states get every criterion; 2 x n states
/// get the dimension-independent subset.
PropertyReport analyze(const DensityMatrix& rho, std::string descriptor = {}, std::uint64_t seed = 0,
                       const Tolerances& tol = {});

/// Checks the implication chains on an assembled report.
std::vector<Violation> audit_report(const PropertyReport& r);

/// Analyzes every state and collects all violations.
std::vector<Violation> hierarchy_audit(const std::vector<DensityMatrix>& corpus);

/// Absolute chain on a bare two-qubit spectrum.
std::vector<Violation> audit_spectrum(const Spectrum& spec);

// ---- families and thresholds

enum class Family { Werner, Gisin };

std::string_view to_string(Family f) noexcept;
Family parse_family(std::string_view name);

/// One-parameter slice: Werner in w, or Gisin in lambda or theta with the
/// other parameter fixed.
struct FamilySlice {
    Family family = Family::Werner;
    std::string parameter = "w";
    double fixed = 0.0;
};

DensityMatrix slice_state(const FamilySlice& s, double x);

/// Margin of a named property for one state. Names: product, zero_discord
/// (measured on A), zero_discord_b, separable (PPT), unsteerable3, local,
/// nnce, zero_super_discord, and abs_<name> for the spectrum criteria
/// abs_separable, abs_ppt, abs_unsteerable3, abs_local, abs_nnce,
/// abs_zero_discord, abs_product.
double named_margin(const DensityMatrix& rho, std::string_view property);

/// Known property names in canonical order.
const std::vector<std::string>& property_names();

struct ThresholdResult {
    Family family = Family::Werner;
    std::string parameter;
    std::string property;
    double fixed = 0.0;
    double boundary = 0.0;
    double bracket = 0.0;
    bool holds_below = true;
};

/// 32-point pre-scan (NotMonotone on more than one sign change, NoBoundary
/// on none), then bisection to a bracket no wider than tol, then a check at
/// boundary +- 2 bracket.
ThresholdResult bisect_threshold(const FamilySlice& slice, double lo, double hi, std::string_view property,
                                 double tol = 1e-6);

// ---- JSON

/// Doubles are rounded to `digits` significant digits.
std::string to_json(const PropertyReport& r, int digits = 9);
std::string to_json(const ThresholdResult& t, int digits = 9);
std::string to_text(const PropertyReport& r, int digits = 9);

double round_sig(double v, int digits);

}  // namespace qcorr
