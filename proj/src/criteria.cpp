#include "qcorr/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qcorr {

namespace {

void require_two_qubit(const DensityMatrix& rho, const char* who) {
    if (!rho.is_two_qubit()) {
        std::ostringstream os;
        os << who << " needs a two-qubit state, got (" << rho.dims().a << ", " << rho.dims().b << ")";
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(9);
    os << v;
    return os.str();
}

}  // namespace

CriterionVerdict make_verdict(double margin, double snap, std::string witness) {
    if (std::abs(margin) <= snap) margin = 0.0;
    return {margin >= 0.0, margin, std::move(witness)};
}

// ------------------------------------------------------------- Fano-Bloch

FanoBlochForm fano_bloch(const DensityMatrix& rho) {
    const Dims d = rho.dims();
    const auto ga = gell_mann_basis(d.a);
    const auto gb = gell_mann_basis(d.b);
    const ComplexMatrix ia = ComplexMatrix::Identity(d.a, d.a);
    const ComplexMatrix ib = ComplexMatrix::Identity(d.b, d.b);
    const ComplexMatrix& m = rho.matrix();

    FanoBlochForm f;
    f.dims = d;
    f.a.resize(static_cast<Eigen::Index>(ga.size()));
    f.b.resize(static_cast<Eigen::Index>(gb.size()));
    f.t.resize(static_cast<Eigen::Index>(ga.size()), static_cast<Eigen::Index>(gb.size()));
    const double sa = d.a / 2.0;
    const double sb = d.b / 2.0;
    const double st = d.a * d.b / 4.0;
    for (std::size_t i = 0; i < ga.size(); ++i)
        f.a(static_cast<Eigen::Index>(i)) = sa * (m * tensor(ga[i], ib)).trace().real();
    for (std::size_t j = 0; j < gb.size(); ++j)
        f.b(static_cast<Eigen::Index>(j)) = sb * (m * tensor(ia, gb[j])).trace().real();
    for (std::size_t i = 0; i < ga.size(); ++i)
        for (std::size_t j = 0; j < gb.size(); ++j)
            f.t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                st * (m * tensor(ga[i], gb[j])).trace().real();
    return f;
}

ComplexMatrix reconstruct(const FanoBlochForm& f) {
    const Dims d = f.dims;
    const auto ga = gell_mann_basis(d.a);
    const auto gb = gell_mann_basis(d.b);
    const ComplexMatrix ia = ComplexMatrix::Identity(d.a, d.a);
    const ComplexMatrix ib = ComplexMatrix::Identity(d.b, d.b);
    ComplexMatrix m = ComplexMatrix::Identity(d.total(), d.total());
    for (std::size_t i = 0; i < ga.size(); ++i) m += f.a(static_cast<Eigen::Index>(i)) * tensor(ga[i], ib);
    for (std::size_t j = 0; j < gb.size(); ++j) m += f.b(static_cast<Eigen::Index>(j)) * tensor(ia, gb[j]);
    for (std::size_t i = 0; i < ga.size(); ++i)
        for (std::size_t j = 0; j < gb.size(); ++j)
            m += f.t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * tensor(ga[i], gb[j]);
    return m / static_cast<double>(d.total());
}

// ---------------------------------------------------------------- product

std::array<double, 36> product_condition_residuals(const DensityMatrix& rho) {
    require_two_qubit(rho, "product_condition_residuals");
    // {r1, c1, r2, c2, r3, c3, r4, c4}: m[r1][c1] m[r2][c2] = m[r3][c3] m[r4][c4], 1-based
    static constexpr int k[36][8] = {
        {1, 1, 1, 4, 1, 2, 1, 3}, {1, 1, 2, 3, 2, 1, 1, 3}, {1, 1, 2, 4, 2, 2, 1, 3},
        {1, 2, 2, 3, 2, 1, 1, 4}, {1, 2, 2, 4, 2, 2, 1, 4}, {2, 1, 2, 4, 2, 2, 2, 3},
        {1, 1, 3, 2, 1, 2, 3, 1}, {1, 1, 4, 1, 2, 1, 3, 1}, {1, 1, 4, 2, 2, 2, 3, 1},
        {1, 2, 4, 1, 2, 1, 3, 2}, {1, 2, 4, 2, 2, 2, 3, 2}, {2, 1, 4, 2, 2, 2, 4, 1},
        {1, 1, 3, 4, 1, 2, 3, 3}, {1, 1, 4, 3, 2, 1, 3, 3}, {1, 1, 4, 4, 2, 2, 3, 3},
        {1, 2, 4, 3, 2, 1, 3, 4}, {1, 2, 4, 4, 2, 2, 3, 4}, {2, 1, 4, 4, 2, 2, 4, 3},
        {1, 3, 3, 2, 1, 4, 3, 1}, {1, 3, 4, 1, 2, 3, 3, 1}, {1, 3, 4, 2, 2, 4, 3, 1},
        {1, 4, 4, 1, 2, 3, 3, 2}, {1, 4, 4, 2, 2, 4, 3, 2}, {2, 3, 4, 2, 2, 4, 4, 1},
        {1, 3, 3, 4, 1, 4, 3, 3}, {1, 3, 4, 3, 2, 3, 3, 3}, {1, 3, 4, 4, 2, 4, 3, 3},
        {1, 4, 4, 3, 2, 3, 3, 4}, {1, 4, 4, 4, 2, 4, 3, 4}, {2, 3, 4, 4, 2, 4, 4, 3},
        {3, 1, 3, 4, 3, 2, 3, 3}, {3, 1, 4, 3, 4, 1, 3, 3}, {3, 1, 4, 4, 4, 2, 3, 3},
        {3, 2, 4, 3, 4, 1, 3, 4}, {3, 2, 4, 4, 4, 2, 3, 4}, {4, 1, 4, 4, 4, 2, 4, 3},
    };
    const ComplexMatrix& m = rho.matrix();
    auto at = [&](int r, int c) { return m(r - 1, c - 1); };
    std::array<double, 36> out{};
    for (int i = 0; i < 36; ++i) {
        const int* e = k[i];
        out[static_cast<std::size_t>(i)] =
            std::abs(at(e[0], e[1]) * at(e[2], e[3]) - at(e[4], e[5]) * at(e[6], e[7]));
    }
    return out;
}

CriterionVerdict is_product(const DensityMatrix& rho, double tol) {
    const ComplexMatrix prod = tensor(rho.reduced(Side::A), rho.reduced(Side::B));
    const double residual = (rho.matrix() - prod).norm();
    return make_verdict(tol - residual, 0.0, "residual=" + fmt(residual));
}

// ----------------------------------------------------------- separability

CriterionVerdict is_separable_pure(const DensityMatrix& rho, double tol) {
    const Spectrum s = rho.spectrum();
    if (std::abs(s[0] - 1.0) > 1e-8) {
        std::ostringstream os;
        os << "largest eigenvalue " << s[0] << " is not 1";
        throw Error(ErrorKind::NotPure, os.str(), s[0] - 1.0);
    }
    const double sa = matrix_entropy(rho.reduced(Side::A));
    return make_verdict(tol - sa, 0.0, "S(A)=" + fmt(sa));
}

CriterionVerdict is_ppt(const DensityMatrix& rho) {
    const double lmin = min_eigenvalue(partial_transpose(rho.matrix(), rho.dims(), Side::B));
    return make_verdict(lmin, 1e-12);
}

// ------------------------------------------------------ CHSH and steering

ValueVerdict chsh_max(const DensityMatrix& rho) {
    require_two_qubit(rho, "chsh_max");
    const RealMatrix t = fano_bloch(rho).t;
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(t.transpose() * t, Eigen::EigenvaluesOnly);
    const RealVector mu = es.eigenvalues();  // ascending
    const double value = 2.0 * std::sqrt(std::max(0.0, mu(2) + mu(1)));
    return {value, make_verdict(2.0 - value, 1e-12, "mu1+mu2=" + fmt(mu(2) + mu(1)))};
}

ValueVerdict steerable_three(const DensityMatrix& rho) {
    require_two_qubit(rho, "steerable_three");
    const double value = fano_bloch(rho).t.norm();
    return {value, make_verdict(1.0 - value, 1e-12)};
}

double steering_expression(const DensityMatrix& rho, const std::array<RealVector, 3>& alice,
                           const std::array<RealVector, 3>& bob) {
    require_two_qubit(rho, "steering_expression");
    const RealMatrix t = fano_bloch(rho).t;
    double s = 0.0;
    for (int i = 0; i < 3; ++i) s += alice[static_cast<std::size_t>(i)].dot(t * bob[static_cast<std::size_t>(i)]);
    return std::abs(s) / std::sqrt(3.0);
}

// ------------------------------------------------- super discord and NNCE

CriterionVerdict zero_super_discord(const DensityMatrix& rho, double tol) {
    const EntropyReport e = entropy_report(rho);
    return make_verdict(tol - e.mutual, 0.0, "I(A:B)=" + fmt(e.mutual));
}

CriterionVerdict nonneg_cond_entropy(const EntropyReport& e) {
    return make_verdict(e.cond_A_given_B, 1e-9, "S(B|A)=" + fmt(e.cond_B_given_A));
}

CriterionVerdict nonneg_cond_entropy(const DensityMatrix& rho) {
    return nonneg_cond_entropy(entropy_report(rho));
}

// ------------------------------------------------------- weak measurement

void validate(const WeakMeasurementPair& wm, double tol) {
    const auto& p1 = wm.pi1;
    const auto& p2 = wm.pi2;
    if (p1.rows() != p1.cols() || p2.rows() != p2.cols() || p1.rows() != p2.rows() || p1.rows() == 0)
        throw Error(ErrorKind::InvalidProjectors, "projectors must be square and of equal size");
    if (!std::isfinite(wm.xi)) throw Error(ErrorKind::InvalidProjectors, "strength must be finite");
    const auto n = p1.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    const double dev = std::max({max_hermitian_deviation(p1), max_hermitian_deviation(p2),
                                 (p1 * p1 - p1).cwiseAbs().maxCoeff(), (p2 * p2 - p2).cwiseAbs().maxCoeff(),
                                 (p1 + p2 - id).cwiseAbs().maxCoeff(), (p1 * p2).cwiseAbs().maxCoeff()});
    if (dev > tol) {
        std::ostringstream os;
        os << "projector pair deviates by " << dev;
        throw Error(ErrorKind::InvalidProjectors, os.str(), dev);
    }
}

std::array<ComplexMatrix, 2> weak_operators(const WeakMeasurementPair& wm) {
    // (1 - tanh x)/2 = 1/(1 + e^{2x}), (1 + tanh x)/2 = 1/(1 + e^{-2x})
    const double lo = std::sqrt(1.0 / (1.0 + std::exp(2.0 * wm.xi)));
    const double hi = std::sqrt(1.0 / (1.0 + std::exp(-2.0 * wm.xi)));
    return {lo * wm.pi1 + hi * wm.pi2, hi * wm.pi1 + lo * wm.pi2};
}

WeakMeasurementPair computational_weak_pair(double xi) {
    WeakMeasurementPair wm;
    wm.pi1 = ComplexMatrix::Zero(2, 2);
    wm.pi2 = ComplexMatrix::Zero(2, 2);
    wm.pi1(0, 0) = 1.0;
    wm.pi2(1, 1) = 1.0;
    wm.xi = xi;
    return wm;
}

WeakMeasurementResult weak_measure(const DensityMatrix& rho, Side measured, const WeakMeasurementPair& wm) {
    validate(wm);
    const Dims d = rho.dims();
    const int dm = measured == Side::A ? d.a : d.b;
    if (wm.pi1.rows() != dm) {
        std::ostringstream os;
        os << "projectors of size " << wm.pi1.rows() << " on a subsystem of dimension " << dm;
        throw Error(ErrorKind::InvalidProjectors, os.str());
    }
    const Side other = measured == Side::A ? Side::B : Side::A;
    const auto ops = weak_operators(wm);
    const ComplexMatrix ia = ComplexMatrix::Identity(d.a, d.a);
    const ComplexMatrix ib = ComplexMatrix::Identity(d.b, d.b);

    std::array<ComplexMatrix, 2> branch;
    std::array<double, 2> p{};
    for (std::size_t k = 0; k < 2; ++k) {
        const ComplexMatrix kk = measured == Side::A ? tensor(ops[k], ib) : tensor(ia, ops[k]);
        branch[k] = kk * rho.matrix() * kk.adjoint();
        p[k] = branch[k].trace().real();
    }

    WeakMeasurementResult r;
    r.p_plus = p[0];
    r.p_minus = p[1];
    r.averaged = make_density(branch[0] + branch[1], d);
    const int dother = other == Side::A ? d.a : d.b;
    std::array<DensityMatrix, 2> post;
    std::array<ComplexMatrix, 2> red;
    for (std::size_t k = 0; k < 2; ++k) {
        if (p[k] > 1e-300) {
            post[k] = make_density(branch[k] / p[k], d);
            red[k] = partial_trace(post[k].matrix(), d, other);
            r.cond_entropy += p[k] * matrix_entropy(red[k]);
        } else {
            post[k] = make_density(ComplexMatrix::Identity(d.total(), d.total()) / d.total(), d);
            red[k] = ComplexMatrix::Identity(dother, dother) / dother;
        }
    }
    r.post_plus = post[0];
    r.post_minus = post[1];
    r.reduced_plus = red[0];
    r.reduced_minus = red[1];
    return r;
}

// ------------------------------------------------------------------- KCBS

namespace {

void check_kcbs_family(const std::vector<ComplexMatrix>& ps, Eigen::Index dim) {
    if (ps.size() != 5) throw Error(ErrorKind::DimensionMismatch, "KCBS needs exactly five projectors");
    if (dim < 3) throw Error(ErrorKind::DimensionMismatch, "KCBS needs dimension at least 3");
    for (std::size_t i = 0; i < 5; ++i) {
        const ComplexMatrix& p = ps[i];
        if (p.rows() != dim || p.cols() != dim) {
            std::ostringstream os;
            os << "projector " << i << " has size " << p.rows() << "x" << p.cols() << ", expected " << dim;
            throw Error(ErrorKind::DimensionMismatch, os.str());
        }
        const double dev = std::max(max_hermitian_deviation(p), (p * p - p).cwiseAbs().maxCoeff());
        if (dev > 1e-9) {
            std::ostringstream os;
            os << "P" << i << " deviates from a projector by " << dev;
            throw Error(ErrorKind::NotProjector, os.str(), dev);
        }
    }
    for (std::size_t i = 0; i < 5; ++i) {
        const double overlap = (ps[i] * ps[(i + 1) % 5]).cwiseAbs().maxCoeff();
        if (overlap > 1e-9) {
            std::ostringstream os;
            os << "P" << i << " P" << (i + 1) % 5 << " = " << overlap << ", expected 0";
            throw Error(ErrorKind::NotCyclicOrthogonal, os.str(), overlap);
        }
    }
}

ComplexMatrix kcbs_sum(const std::vector<ComplexMatrix>& ps) {
    ComplexMatrix s = ps[0];
    for (std::size_t i = 1; i < ps.size(); ++i) s += ps[i];
    return s;
}

ComplexVector orthogonal_to(const ComplexVector& v, Rng& rng) {
    ComplexVector w(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) w(i) = rng.complex_normal();
    w -= v * v.dot(w);
    return w / w.norm();
}

}  // namespace

ValueVerdict kcbs_value(const ComplexVector& psi, const std::vector<ComplexMatrix>& projectors) {
    check_kcbs_family(projectors, psi.size());
    const double n = psi.norm();
    if (!(n > 0.0)) throw Error(ErrorKind::OutOfRange, "zero state vector");
    const ComplexVector u = psi / n;
    const double value = u.dot(kcbs_sum(projectors) * u).real();
    return {value, make_verdict(2.0 - value, 1e-12)};
}

ValueVerdict kcbs_value_density(const ComplexMatrix& rho, const std::vector<ComplexMatrix>& projectors) {
    if (rho.rows() != rho.cols()) throw Error(ErrorKind::NotSquare, "state must be square");
    check_kcbs_family(projectors, rho.rows());
    const double value = (rho * kcbs_sum(projectors)).trace().real();
    return {value, make_verdict(2.0 - value, 1e-12)};
}

std::vector<ComplexMatrix> random_kcbs_family(Rng& rng) {
    std::array<ComplexVector, 5> v;
    v[0] = random_pure_vector(3, rng);
    for (std::size_t i = 1; i < 4; ++i) v[i] = orthogonal_to(v[i - 1], rng);
    ComplexVector c(3);
    c(0) = v[3](1) * v[0](2) - v[3](2) * v[0](1);
    c(1) = v[3](2) * v[0](0) - v[3](0) * v[0](2);
    c(2) = v[3](0) * v[0](1) - v[3](1) * v[0](0);
    v[4] = c.conjugate() / c.norm();
    std::vector<ComplexMatrix> out;
    out.reserve(5);
    for (const auto& x : v) out.push_back(x * x.adjoint());
    return out;
}

}  // namespace qcorr
