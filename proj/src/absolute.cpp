#include "qcorr/absolute.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace qcorr {

namespace {

AbsoluteVerdict closed(double margin, double snap = 1e-12) {
    if (std::abs(margin) <= snap) margin = 0.0;
    AbsoluteVerdict v;
    v.holds = margin >= 0.0;
    v.margin = margin;
    v.method = Method::ClosedForm;
    return v;
}

void require_length(const Spectrum& spec, std::size_t n) {
    if (spec.size() != n) {
        std::ostringstream os;
        os << "spectrum has " << spec.size() << " values, expected " << n;
        throw Error(ErrorKind::BadSpectrum, os.str());
    }
    spec.require_density();
}

double d(const Spectrum& s, std::size_t i) { return std::max(0.0, s[i - 1]); }

std::vector<OrderingPair> enumerate(int p) {
    std::vector<std::pair<int, int>> plus;
    std::vector<std::pair<int, int>> minus;
    for (int k = 1; k <= p; ++k)
        for (int l = k; l <= p; ++l) {
            plus.emplace_back(k, l);
            if (k < l) minus.emplace_back(k, l);
        }
    std::vector<OrderingPair> out;
    std::vector<std::pair<int, int>> sp = plus;
    std::sort(sp.begin(), sp.end());
    do {
        std::vector<std::pair<int, int>> sm = minus;
        std::sort(sm.begin(), sm.end());
        do {
            out.push_back({sp, sm});
        } while (std::next_permutation(sm.begin(), sm.end()));
    } while (std::next_permutation(sp.begin(), sp.end()));
    return out;
}

}  // namespace

AbsoluteVerdict absolutely_separable_2xn(const Spectrum& spec, int n) {
    if (n < 2) throw Error(ErrorKind::UnsupportedDims, "2 x n criterion needs n >= 2");
    require_length(spec, static_cast<std::size_t>(2 * n));
    const std::size_t m = static_cast<std::size_t>(2 * n);
    return closed(-(d(spec, 1) - d(spec, m - 1) - 2.0 * std::sqrt(d(spec, m - 2) * d(spec, m))));
}

const std::vector<OrderingPair>& ordering_pairs(int p) {
    static const std::array<std::vector<OrderingPair>, 4> cache = {
        std::vector<OrderingPair>{}, enumerate(1), enumerate(2), enumerate(3)};
    if (p < 1 || p > 3) {
        std::ostringstream os;
        os << "ordering enumeration supports p <= 3, got " << p;
        throw Error(ErrorKind::UnsupportedDims, os.str());
    }
    return cache[static_cast<std::size_t>(p)];
}

RealMatrix lambda_matrix(const Spectrum& spec, Dims dims, const OrderingPair& o) {
    const int p = std::min(dims.a, dims.b);
    const int mn = dims.total();
    RealMatrix lam = RealMatrix::Zero(p, p);
    for (std::size_t r = 0; r < o.sigma_plus.size(); ++r) {
        const auto [k, l] = o.sigma_plus[r];
        const int sigma = static_cast<int>(r) + 1;
        lam(k - 1, l - 1) = spec[static_cast<std::size_t>(mn + 1 - sigma - 1)];
    }
    for (std::size_t r = 0; r < o.sigma_minus.size(); ++r) {
        const auto [l, k] = o.sigma_minus[r];  // (l, k) with l < k fills entry (k, l)
        const int sigma = static_cast<int>(r) + 1;
        lam(k - 1, l - 1) = -spec[static_cast<std::size_t>(sigma - 1)];
    }
    return lam;
}

AbsoluteVerdict absolutely_ppt(const Spectrum& spec, Dims dims) {
    const int p = std::min(dims.a, dims.b);
    if (p > 3) {
        std::ostringstream os;
        os << "absolute PPT enumeration supports min(m, n) <= 3, got " << p;
        throw Error(ErrorKind::UnsupportedDims, os.str());
    }
    require_length(spec, static_cast<std::size_t>(dims.total()));
    double worst = std::numeric_limits<double>::infinity();
    for (const OrderingPair& o : ordering_pairs(p)) {
        const RealMatrix lam = lambda_matrix(spec, dims, o);
        const RealMatrix s = lam + lam.transpose();
        Eigen::SelfAdjointEigenSolver<RealMatrix> es(s, Eigen::EigenvaluesOnly);
        worst = std::min(worst, es.eigenvalues()(0));
    }
    return closed(worst);
}

AbsoluteVerdict absolutely_local(const Spectrum& spec) {
    require_length(spec, 4);
    const double x = 2 * d(spec, 1) + 2 * d(spec, 2) - 1;
    const double y = 2 * d(spec, 1) + 2 * d(spec, 3) - 1;
    return closed(1.0 - x * x - y * y);
}

AbsoluteVerdict absolutely_unsteerable3(const Spectrum& spec) {
    require_length(spec, 4);
    double sq = 0.0;
    double cross = 0.0;
    for (std::size_t i = 1; i <= 4; ++i) {
        sq += d(spec, i) * d(spec, i);
        for (std::size_t j = i + 1; j <= 4; ++j) cross += d(spec, i) * d(spec, j);
    }
    return closed(1.0 - (3.0 * sq - 2.0 * cross));
}

AbsoluteVerdict absolutely_nonneg_cond_entropy(const Spectrum& spec) {
    require_length(spec, 4);
    return closed(spectrum_entropy(spec) - 1.0);
}

AbsoluteVerdict absolutely_zero_discord(const Spectrum& spec) {
    require_length(spec, 4);
    double dev = 0.0;
    for (double v : spec.values()) dev = std::max(dev, std::abs(v - 0.25));
    return closed(1e-9 - dev, 0.0);
}

AbsoluteVerdict absolutely_classical_cc(const Spectrum& spec) { return absolutely_zero_discord(spec); }
AbsoluteVerdict absolutely_classical_cq(const Spectrum& spec) { return absolutely_zero_discord(spec); }
AbsoluteVerdict absolutely_classical_qc(const Spectrum& spec) { return absolutely_zero_discord(spec); }
AbsoluteVerdict absolutely_product(const Spectrum& spec) { return absolutely_zero_discord(spec); }
AbsoluteVerdict absolutely_zero_super_discord(const Spectrum& spec) { return absolutely_zero_discord(spec); }

bool necessary_family_step1(const Spectrum& spec, double tol) {
    require_length(spec, 4);
    std::array<double, 4> v = {spec[0], spec[1], spec[2], spec[3]};
    std::sort(v.begin(), v.end());
    do {
        if (std::abs(v[0] - (0.5 - v[1])) <= tol && std::abs(v[2] - v[1]) <= tol) return true;
    } while (std::next_permutation(v.begin(), v.end()));
    return false;
}

std::string_view to_string(AbsProperty p) noexcept {
    switch (p) {
        case AbsProperty::Separable: return "separable";
        case AbsProperty::Local: return "local";
        case AbsProperty::Unsteerable3: return "unsteerable3";
        case AbsProperty::NonnegCondEntropy: return "nnce";
        case AbsProperty::ZeroDiscord: return "zero_discord";
        case AbsProperty::Product: return "product";
    }
    return "?";
}

AbsProperty parse_abs_property(std::string_view name) {
    for (AbsProperty p : {AbsProperty::Separable, AbsProperty::Local, AbsProperty::Unsteerable3,
                          AbsProperty::NonnegCondEntropy, AbsProperty::ZeroDiscord, AbsProperty::Product})
        if (name == to_string(p)) return p;
    if (name == "ppt") return AbsProperty::Separable;
    if (name == "unsteerable") return AbsProperty::Unsteerable3;
    if (name == "nonneg-cond-entropy" || name == "nonneg_cond_entropy") return AbsProperty::NonnegCondEntropy;
    if (name == "zero-discord") return AbsProperty::ZeroDiscord;
    throw Error(ErrorKind::OutOfRange, "unknown property '" + std::string(name) + "'");
}

double property_margin(const DensityMatrix& rho, AbsProperty p) {
    switch (p) {
        case AbsProperty::Separable: return is_ppt(rho).margin;
        case AbsProperty::Local: return chsh_max(rho).verdict.margin;
        case AbsProperty::Unsteerable3: return steerable_three(rho).verdict.margin;
        case AbsProperty::NonnegCondEntropy: return nonneg_cond_entropy(rho).margin;
        case AbsProperty::ZeroDiscord: return zero_discord_blocks(rho, Side::A).margin;
        case AbsProperty::Product: return is_product(rho).margin;
    }
    return 0.0;
}

AbsoluteVerdict closed_form(const Spectrum& spec, AbsProperty p) {
    switch (p) {
        case AbsProperty::Separable: return absolutely_separable_2xn(spec, 2);
        case AbsProperty::Local: return absolutely_local(spec);
        case AbsProperty::Unsteerable3: return absolutely_unsteerable3(spec);
        case AbsProperty::NonnegCondEntropy: return absolutely_nonneg_cond_entropy(spec);
        case AbsProperty::ZeroDiscord: return absolutely_zero_discord(spec);
        case AbsProperty::Product: return absolutely_product(spec);
    }
    return {};
}

}  // namespace qcorr
