#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qcorr/absolute.hpp"

namespace qcorr {

namespace {

constexpr int kCartanPoints = 8;

UnitaryMatrix cartan_grid_point(std::size_t k) {
    const double step = 2.0 * std::numbers::pi / kCartanPoints;
    const std::size_t n = kCartanPoints;
    CartanParams p;
    p.lambda1 = step * static_cast<double>(k % n);
    p.lambda2 = step * static_cast<double>((k / n) % n);
    p.lambda3 = step * static_cast<double>((k / (n * n)) % n);
    return cartan_unitary(p);
}

UnitaryMatrix random_local(Rng& rng) { return tensor(haar_unitary(2, rng), haar_unitary(2, rng)); }

/// exp(i eps H) U for a random Hermitian H with unit Frobenius norm.
UnitaryMatrix perturb(const UnitaryMatrix& u, double eps, Rng& rng) {
    const int n = u.dim();
    ComplexMatrix g(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) g(i, j) = rng.complex_normal();
    ComplexMatrix h = (g + g.adjoint()) * 0.5;
    h /= h.norm();
    const EigenDecomposition e = hermitian_eig(h);
    ComplexVector phases(n);
    for (int i = 0; i < n; ++i) phases(i) = std::exp(Complex(0.0, eps * e.spectrum[static_cast<std::size_t>(i)]));
    const ComplexMatrix step = e.vectors * phases.asDiagonal() * e.vectors.adjoint();
    ComplexMatrix next = step * u.matrix();
    Eigen::HouseholderQR<ComplexMatrix> qr(next);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
    const ComplexMatrix& r = qr.matrixQR();
    for (int j = 0; j < n; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag > 0.0) q.col(j) *= r(j, j) / mag;
    }
    return make_unitary(q);
}

}  // namespace

SearchResult search_counterexample(const DensityMatrix& rho, AbsProperty p, std::size_t budget,
                                   std::uint64_t seed) {
    if (!rho.is_two_qubit()) throw Error(ErrorKind::DimensionMismatch, "search needs a two-qubit state");
    const Rng root(seed);
    const std::size_t n_haar = budget / 4;
    const std::size_t n_cartan = budget / 4;

    SearchResult out;
    out.best_margin = std::numeric_limits<double>::infinity();
    UnitaryMatrix best_u = make_unitary(ComplexMatrix::Identity(4, 4));
    if (budget == 0) return out;

    auto consider = [&](const UnitaryMatrix& u) {
        const double m = property_margin(conjugate(rho, u), p);
        ++out.evaluated;
        if (m < out.best_margin) {
            out.best_margin = m;
            best_u = u;
        }
        if (m < -kSearchThreshold) {
            out.counterexample = u;
            out.counterexample_margin = m;
        }
        return m;
    };

    consider(best_u);
    for (std::size_t k = 0; k < n_haar && !out.counterexample; ++k) {
        Rng rng = root.split(k);
        consider(haar_unitary(4, rng));
    }
    for (std::size_t k = 0; k < n_cartan && !out.counterexample; ++k) {
        Rng rng = root.split(n_haar + k);
        const UnitaryMatrix outer = random_local(rng);
        const UnitaryMatrix inner = random_local(rng);
        consider(outer * cartan_grid_point(k) * inner);
    }

    Rng walk = root.split(n_haar + n_cartan);
    double eps = 0.5;
    int failures = 0;
    UnitaryMatrix current = best_u;
    double current_margin = out.best_margin;
    while (out.evaluated < budget && !out.counterexample) {
        const UnitaryMatrix cand = perturb(current, eps, walk);
        const double m = consider(cand);
        if (m < current_margin) {
            current = cand;
            current_margin = m;
            failures = 0;
        } else if (++failures >= 12) {
            failures = 0;
            eps *= 0.6;
            if (eps < 1e-4 && out.evaluated < budget && !out.counterexample) {
                eps = 0.5;
                current = haar_unitary(4, walk);
                current_margin = consider(current);
            }
        }
    }
    return out;
}

AbsoluteVerdict falsify_absolute(const DensityMatrix& rho, AbsProperty p, std::size_t budget,
                                 std::uint64_t seed) {
    const SearchResult r = search_counterexample(rho, p, budget, seed);
    if (!r.counterexample) {
        std::ostringstream os;
        os << "no counterexample for " << to_string(p) << " in " << r.evaluated
           << " conjugations; best margin " << r.best_margin;
        throw Error(ErrorKind::BudgetExhausted, os.str(), r.best_margin);
    }
    AbsoluteVerdict v;
    v.holds = false;
    v.margin = r.counterexample_margin;
    v.method = Method::Search;
    v.counterexample = r.counterexample;
    return v;
}

}  // namespace qcorr
