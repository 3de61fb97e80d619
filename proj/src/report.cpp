#include "qcorr/report.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace qcorr {

namespace {

constexpr double kAuditNoise = 1e-7;

bool small_separability_dims(Dims d) { return d.total() <= 6 && std::min(d.a, d.b) <= 2; }

}  // namespace

PropertyReport analyze(const DensityMatrix& rho, std::string descriptor, std::uint64_t seed, const Tolerances& tol) {
    PropertyReport r;
    r.descriptor = std::move(descriptor);
    r.seed = seed;
    r.tolerances = tol;
    r.dims = rho.dims();
    r.entropy = entropy_report(rho);

    const Spectrum spec = rho.spectrum();
    auto& v = r.verdicts;
    v["product"] = is_product(rho, tol.eq);
    v["zero_discord_a"] = zero_discord_blocks(rho, Side::A);
    v["zero_discord_b"] = zero_discord_blocks(rho, Side::B);
    v["ppt"] = is_ppt(rho);
    if (small_separability_dims(r.dims)) v["separable"] = v["ppt"];
    v["zero_super_discord"] = zero_super_discord(rho, tol.eq);
    v["nnce"] = nonneg_cond_entropy(r.entropy);
    if (std::abs(spec[0] - 1.0) <= 1e-8) v["separable_pure"] = is_separable_pure(rho, tol.eq);
    r.values["ppt_min_eigenvalue"] = v["ppt"].margin;
    r.values["cond_entropy"] = r.entropy.cond_A_given_B;
    r.classicality = std::string(to_string(classify_ccq(rho)));

    auto& a = r.absolute;
    if (rho.is_two_qubit()) {
        v["zero_discord_dakic_a"] = zero_discord_dakic(rho, Side::A, tol.eq);
        v["zero_discord_dakic_b"] = zero_discord_dakic(rho, Side::B, tol.eq);
        const ValueVerdict chsh = chsh_max(rho);
        v["local"] = chsh.verdict;
        r.values["chsh"] = chsh.value;
        const ValueVerdict steer = steerable_three(rho);
        v["unsteerable3"] = steer.verdict;
        r.values["steering"] = steer.value;
        r.values["discord_a"] = discord_numeric(rho, Side::A);
        r.values["discord_b"] = discord_numeric(rho, Side::B);

        a["separable"] = absolutely_separable_2xn(spec, 2);
        a["ppt"] = absolutely_ppt(spec, r.dims);
        a["local"] = absolutely_local(spec);
        a["unsteerable3"] = absolutely_unsteerable3(spec);
        a["nnce"] = absolutely_nonneg_cond_entropy(spec);
        a["zero_discord"] = absolutely_zero_discord(spec);
        a["cc"] = absolutely_classical_cc(spec);
        a["cq"] = absolutely_classical_cq(spec);
        a["qc"] = absolutely_classical_qc(spec);
        a["product"] = absolutely_product(spec);
        a["zero_super_discord"] = absolutely_zero_super_discord(spec);
    } else {
        if (r.dims.a == 2 || r.dims.b == 2) a["separable"] = absolutely_separable_2xn(spec, r.dims.total() / 2);
        if (std::min(r.dims.a, r.dims.b) <= 3) a["ppt"] = absolutely_ppt(spec, r.dims);
    }
    r.audit = audit_report(r);
    return r;
}

std::vector<Violation> audit_report(const PropertyReport& r) {
    std::vector<Violation> out;
    auto check = [&](const std::string& name, bool antecedent, double ant_margin, double cons_margin) {
        if (antecedent && cons_margin < -kAuditNoise) out.push_back({name, r.descriptor, ant_margin, cons_margin});
    };
    const auto& v = r.verdicts;
    const auto& a = r.absolute;
    auto eq = [&](const char* lhs, const char* rhs) {
        const auto i = v.find(lhs);
        const auto j = v.find(rhs);
        if (i == v.end() || j == v.end()) return;
        check(std::string(lhs) + " => " + rhs, i->second.holds, i->second.margin, j->second.margin);
    };
    auto ineq = [&](const char* lhs, const char* rhs) {
        const auto i = v.find(lhs);
        const auto j = v.find(rhs);
        if (i == v.end() || j == v.end()) return;
        check(std::string(lhs) + " => " + rhs, i->second.margin > kAuditNoise, i->second.margin, j->second.margin);
    };
    eq("product", "zero_discord_a");
    eq("product", "zero_discord_b");
    eq("product", "zero_super_discord");
    eq("zero_super_discord", "product");
    eq("zero_discord_a", "ppt");
    eq("zero_discord_b", "ppt");
    ineq("ppt", "unsteerable3");
    ineq("unsteerable3", "local");
    ineq("separable", "nnce");

    auto abs_eq = [&](const char* lhs, const char* rhs) {
        const auto i = a.find(lhs);
        const auto j = a.find(rhs);
        if (i == a.end() || j == a.end()) return;
        check(std::string("abs_") + lhs + " => abs_" + rhs, i->second.holds, i->second.margin, j->second.margin);
    };
    auto abs_ineq = [&](const char* lhs, const char* rhs) {
        const auto i = a.find(lhs);
        const auto j = a.find(rhs);
        if (i == a.end() || j == a.end()) return;
        check(std::string("abs_") + lhs + " => abs_" + rhs, i->second.margin > kAuditNoise, i->second.margin,
              j->second.margin);
    };
    abs_eq("zero_discord", "separable");
    abs_ineq("separable", "unsteerable3");
    abs_ineq("unsteerable3", "local");
    abs_ineq("separable", "nnce");

    auto lift = [&](const char* abs_name, const char* name, bool equality) {
        const auto i = a.find(abs_name);
        const auto j = v.find(name);
        if (i == a.end() || j == v.end()) return;
        const bool ant = equality ? i->second.holds : i->second.margin > kAuditNoise;
        check(std::string("abs_") + abs_name + " => " + name, ant, i->second.margin, j->second.margin);
    };
    lift("separable", "ppt", false);
    lift("local", "local", false);
    lift("unsteerable3", "unsteerable3", false);
    lift("nnce", "nnce", false);
    lift("zero_discord", "zero_discord_a", true);
    lift("zero_discord", "zero_discord_b", true);
    lift("product", "product", true);
    return out;
}

std::vector<Violation> hierarchy_audit(const std::vector<DensityMatrix>& corpus) {
    std::vector<Violation> out;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const PropertyReport r = analyze(corpus[i], "corpus[" + std::to_string(i) + "]");
        out.insert(out.end(), r.audit.begin(), r.audit.end());
    }
    return out;
}

std::vector<Violation> audit_spectrum(const Spectrum& spec) {
    PropertyReport r;
    std::ostringstream os;
    os.precision(17);
    os << "spectrum(" << spec[0] << ", " << spec[1] << ", " << spec[2] << ", " << spec[3] << ")";
    r.descriptor = os.str();
    r.absolute["separable"] = absolutely_separable_2xn(spec, 2);
    r.absolute["local"] = absolutely_local(spec);
    r.absolute["unsteerable3"] = absolutely_unsteerable3(spec);
    r.absolute["nnce"] = absolutely_nonneg_cond_entropy(spec);
    r.absolute["zero_discord"] = absolutely_zero_discord(spec);
    return audit_report(r);
}

// ------------------------------------------------------------- families

std::string_view to_string(Family f) noexcept { return f == Family::Werner ? "werner" : "gisin"; }

Family parse_family(std::string_view name) {
    if (name == "werner") return Family::Werner;
    if (name == "gisin") return Family::Gisin;
    throw Error(ErrorKind::OutOfRange, "unknown family '" + std::string(name) + "'");
}

DensityMatrix slice_state(const FamilySlice& s, double x) {
    if (s.family == Family::Werner) {
        if (s.parameter != "w") throw Error(ErrorKind::OutOfRange, "werner slices run over w");
        return werner(x);
    }
    if (s.parameter == "lambda") return gisin(x, s.fixed);
    if (s.parameter == "theta") return gisin(s.fixed, x);
    throw Error(ErrorKind::OutOfRange, "gisin slices run over lambda or theta");
}

const std::vector<std::string>& property_names() {
    static const std::vector<std::string> names = {
        "product",        "zero_discord",     "zero_discord_b", "separable",    "unsteerable3",
        "local",          "nnce",             "zero_super_discord", "abs_separable", "abs_ppt",
        "abs_unsteerable3", "abs_local",      "abs_nnce",       "abs_zero_discord", "abs_product"};
    return names;
}

double named_margin(const DensityMatrix& rho, std::string_view p) {
    if (p == "product") return is_product(rho).margin;
    if (p == "zero_discord" || p == "zero_discord_a") return zero_discord_blocks(rho, Side::A).margin;
    if (p == "zero_discord_b") return zero_discord_blocks(rho, Side::B).margin;
    if (p == "separable" || p == "ppt") return is_ppt(rho).margin;
    if (p == "unsteerable3") return steerable_three(rho).verdict.margin;
    if (p == "local") return chsh_max(rho).verdict.margin;
    if (p == "nnce") return nonneg_cond_entropy(rho).margin;
    if (p == "zero_super_discord") return zero_super_discord(rho).margin;
    if (p.starts_with("abs_")) {
        const Spectrum s = rho.spectrum();
        const std::string_view q = p.substr(4);
        if (q == "separable") return absolutely_separable_2xn(s, rho.dim() / 2).margin;
        if (q == "ppt") return absolutely_ppt(s, rho.dims()).margin;
        if (q == "unsteerable3") return absolutely_unsteerable3(s).margin;
        if (q == "local") return absolutely_local(s).margin;
        if (q == "nnce") return absolutely_nonneg_cond_entropy(s).margin;
        if (q == "zero_discord") return absolutely_zero_discord(s).margin;
        if (q == "product") return absolutely_product(s).margin;
    }
    throw Error(ErrorKind::OutOfRange, "unknown property '" + std::string(p) + "'");
}

ThresholdResult bisect_threshold(const FamilySlice& slice, double lo, double hi, std::string_view property,
                                 double tol) {
    if (!(lo < hi)) throw Error(ErrorKind::OutOfRange, "empty parameter range");
    if (!(tol > 0.0)) throw Error(ErrorKind::OutOfRange, "tolerance must be positive");
    auto holds = [&](double x) { return named_margin(slice_state(slice, x), property) >= 0.0; };

    constexpr int kScan = 32;
    std::array<bool, kScan> h{};
    std::array<double, kScan> xs{};
    for (int i = 0; i < kScan; ++i) {
        xs[static_cast<std::size_t>(i)] = i == kScan - 1 ? hi : lo + (hi - lo) * i / (kScan - 1);
        h[static_cast<std::size_t>(i)] = holds(xs[static_cast<std::size_t>(i)]);
    }
    int changes = 0;
    std::size_t at = 0;
    for (std::size_t i = 0; i + 1 < kScan; ++i) {
        if (h[i] != h[i + 1]) {
            ++changes;
            at = i;
        }
    }
    std::ostringstream what;
    what << property << " over " << slice.parameter << " in [" << lo << ", " << hi << "]";
    if (changes == 0) throw Error(ErrorKind::NoBoundary, what.str() + " never changes verdict");
    if (changes > 1) throw Error(ErrorKind::NotMonotone, what.str() + " changes verdict " + std::to_string(changes) + " times");

    const bool below = h[at];
    double a = xs[at];
    double b = xs[at + 1];
    while (b - a > tol) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        (holds(m) == below ? a : b) = m;
    }
    ThresholdResult t;
    t.family = slice.family;
    t.parameter = slice.parameter;
    t.property = std::string(property);
    t.fixed = slice.fixed;
    t.boundary = 0.5 * (a + b);
    t.bracket = b - a;
    t.holds_below = below;

    const double left = std::max(lo, t.boundary - 2.0 * t.bracket);
    const double right = std::min(hi, t.boundary + 2.0 * t.bracket);
    if (holds(left) != below || holds(right) == below)
        throw Error(ErrorKind::NotMonotone, what.str() + " fails bracket verification");
    return t;
}

// ------------------------------------------------------------------ JSON

double round_sig(double v, int digits) {
    if (!std::isfinite(v) || v == 0.0) return v;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", std::clamp(digits, 1, 17), v);
    return std::strtod(buf, nullptr);
}

namespace {

using ojson = nlohmann::ordered_json;

ojson verdict_json(const CriterionVerdict& v, int digits) {
    ojson j;
    j["holds"] = v.holds;
    j["margin"] = round_sig(v.margin, digits);
    if (!v.witness.empty()) j["witness"] = v.witness;
    return j;
}

ojson absolute_json(const AbsoluteVerdict& v, int digits) {
    ojson j;
    j["holds"] = v.holds;
    j["margin"] = round_sig(v.margin, digits);
    j["method"] = v.method == Method::ClosedForm ? "closed-form" : "search";
    return j;
}

}  // namespace

std::string to_json(const PropertyReport& r, int digits) {
    ojson j;
    j["schema_version"] = 1;
    j["descriptor"] = r.descriptor;
    j["seed"] = r.seed;
    j["tolerances"] = {{"herm", r.tolerances.herm}, {"psd", r.tolerances.psd}, {"eq", r.tolerances.eq}};
    j["dims"] = {r.dims.a, r.dims.b};
    ojson verdicts = ojson::object();
    for (const auto& [k, v] : r.verdicts) verdicts[k] = verdict_json(v, digits);
    j["verdicts"] = verdicts;
    ojson values = ojson::object();
    for (const auto& [k, v] : r.values) values[k] = round_sig(v, digits);
    j["values"] = values;
    j["entropy"] = {{"s_joint", round_sig(r.entropy.s_joint, digits)},
                    {"s_A", round_sig(r.entropy.s_A, digits)},
                    {"s_B", round_sig(r.entropy.s_B, digits)},
                    {"cond_A_given_B", round_sig(r.entropy.cond_A_given_B, digits)},
                    {"cond_B_given_A", round_sig(r.entropy.cond_B_given_A, digits)},
                    {"mutual", round_sig(r.entropy.mutual, digits)}};
    ojson abs = ojson::object();
    for (const auto& [k, v] : r.absolute) abs[k] = absolute_json(v, digits);
    j["absolute"] = abs;
    j["classicality"] = r.classicality;
    ojson audit = ojson::array();
    for (const Violation& v : r.audit)
        audit.push_back({{"implication", v.implication},
                         {"state", v.state},
                         {"antecedent_margin", round_sig(v.antecedent_margin, digits)},
                         {"consequent_margin", round_sig(v.consequent_margin, digits)}});
    j["audit"] = audit;
    return j.dump(2);
}

std::string to_json(const ThresholdResult& t, int digits) {
    ojson j;
    j["schema_version"] = 1;
    j["family"] = std::string(to_string(t.family));
    j["parameter"] = t.parameter;
    j["property"] = t.property;
    if (t.family == Family::Gisin) j["fixed"] = round_sig(t.fixed, digits);
    j["boundary"] = round_sig(t.boundary, digits);
    j["bracket"] = round_sig(t.bracket, digits);
    j["holds_below"] = t.holds_below;
    return j.dump(2);
}

std::string to_text(const PropertyReport& r, int digits) {
    std::ostringstream os;
    os.precision(digits);
    os << "state        " << (r.descriptor.empty() ? "-" : r.descriptor) << "\n";
    os << "dims         " << r.dims.a << " x " << r.dims.b << "\n";
    os << "seed         " << r.seed << "\n";
    os << "classicality " << r.classicality << "\n\n";
    char line[160];
    os << "criterion                  holds  margin\n";
    for (const auto& [k, v] : r.verdicts) {
        std::snprintf(line, sizeof line, "%-26s %-6s %.*g\n", k.c_str(), v.holds ? "yes" : "no", digits, v.margin);
        os << line;
    }
    os << "\nvalue                      \n";
    for (const auto& [k, v] : r.values) {
        std::snprintf(line, sizeof line, "%-26s %.*g\n", k.c_str(), digits, v);
        os << line;
    }
    const EntropyReport& e = r.entropy;
    os << "\nentropy (bits)\n";
    const std::pair<const char*, double> ent[] = {{"S(AB)", e.s_joint},       {"S(A)", e.s_A},
                                                  {"S(B)", e.s_B},            {"S(A|B)", e.cond_A_given_B},
                                                  {"S(B|A)", e.cond_B_given_A}, {"I(A:B)", e.mutual}};
    for (const auto& [k, v] : ent) {
        std::snprintf(line, sizeof line, "%-26s %.*g\n", k, digits, v);
        os << line;
    }
    if (!r.absolute.empty()) {
        os << "\nabsolute                   holds  margin\n";
        for (const auto& [k, v] : r.absolute) {
            std::snprintf(line, sizeof line, "%-26s %-6s %.*g\n", k.c_str(), v.holds ? "yes" : "no", digits, v.margin);
            os << line;
        }
    }
    os << "\naudit        " << (r.audit.empty() ? "consistent" : std::to_string(r.audit.size()) + " violation(s)")
       << "\n";
    for (const Violation& v : r.audit) os << "  " << v.implication << "\n";
    return os.str();
}

}  // namespace qcorr
