#include "qcorr/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qcorr {

namespace {

constexpr Complex kI{0.0, 1.0};

constexpr double kRangeSlack = 1e-12;

void require_range(double v, double lo, double hi, const char* name) {
    if (!(v >= lo - kRangeSlack && v <= hi + kRangeSlack)) {
        std::ostringstream os;
        os << name << " = " << v << " outside [" << lo << ", " << hi << "]";
        const double margin = v < lo ? v - lo : hi - v;
        throw Error(ErrorKind::OutOfRange, os.str(), margin);
    }
}

ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

}  // namespace

DensityMatrix::DensityMatrix() : m_(ComplexMatrix::Identity(4, 4) / 4.0), dims_{2, 2} {}

DensityMatrix make_density(const ComplexMatrix& m, Dims dims, const Tolerances& tol) {
    if (m.rows() != m.cols()) {
        std::ostringstream os;
        os << "matrix is " << m.rows() << "x" << m.cols();
        throw Error(ErrorKind::NotSquare, os.str());
    }
    if (dims.a < 1 || dims.b < 1 || m.rows() != dims.total()) {
        std::ostringstream os;
        os << "matrix size " << m.rows() << " does not match dims (" << dims.a << ", " << dims.b << ")";
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
    if (!all_finite(m)) throw Error(ErrorKind::NotHermitian, "matrix has non-finite entries");
    const double dev = max_hermitian_deviation(m);
    if (dev > tol.herm) {
        std::ostringstream os;
        os << "max |m - m^dagger| = " << dev;
        throw Error(ErrorKind::NotHermitian, os.str(), dev);
    }
    ComplexMatrix h = (m + m.adjoint()) * 0.5;
    const double tr = h.trace().real();
    if (std::abs(tr - 1.0) > 1e-9) {
        std::ostringstream os;
        os << "trace = " << tr;
        throw Error(ErrorKind::NotUnitTrace, os.str(), tr - 1.0);
    }
    const double lmin = min_eigenvalue(h);
    if (lmin < -tol.psd) {
        std::ostringstream os;
        os << "min eigenvalue = " << lmin;
        throw Error(ErrorKind::NotPSD, os.str(), lmin);
    }
    return DensityMatrix(std::move(h), dims);
}

UnitaryMatrix make_unitary(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) throw Error(ErrorKind::NotSquare, "unitary must be square");
    const double dev = (m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols())).norm();
    if (!(dev <= tol)) {
        std::ostringstream os;
        os << "||U^dagger U - I||_F = " << dev;
        throw Error(ErrorKind::NotUnitary, os.str(), dev);
    }
    return UnitaryMatrix(m);
}

UnitaryMatrix tensor(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    return UnitaryMatrix(tensor(a.matrix(), b.matrix()));
}

std::string_view to_string(BellState b) noexcept {
    switch (b) {
        case BellState::PhiPlus: return "phi+";
        case BellState::PhiMinus: return "phi-";
        case BellState::PsiPlus: return "psi+";
        case BellState::PsiMinus: return "psi-";
    }
    return "?";
}

DensityMatrix bell(BellState which) {
    ComplexVector v = ComplexVector::Zero(4);
    const double s = std::numbers::sqrt2 / 2.0;
    switch (which) {
        case BellState::PhiPlus: v(0) = s; v(3) = s; break;
        case BellState::PhiMinus: v(0) = s; v(3) = -s; break;
        case BellState::PsiPlus: v(1) = s; v(2) = s; break;
        case BellState::PsiMinus: v(1) = s; v(2) = -s; break;
    }
    return make_density(projector(v));
}

DensityMatrix weyl(double t1, double t2, double t3) {
    if (!std::isfinite(t1) || !std::isfinite(t2) || !std::isfinite(t3))
        throw Error(ErrorKind::OutOfRange, "weyl parameters must be finite");
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 0) = m(3, 3) = (1.0 + t3) / 4.0;
    m(1, 1) = m(2, 2) = (1.0 - t3) / 4.0;
    m(0, 3) = m(3, 0) = (t1 - t2) / 4.0;
    m(1, 2) = m(2, 1) = (t1 + t2) / 4.0;
    return make_density(m);
}

DensityMatrix werner(double w) {
    require_range(w, -1.0 / 3.0, 1.0, "w");
    w = std::clamp(w, -1.0 / 3.0, 1.0);
    return weyl(-w, -w, -w);
}

DensityMatrix gisin(double lambda, double theta) {
    require_range(lambda, 0.0, 1.0, "lambda");
    require_range(theta, 0.0, std::numbers::pi / 2.0, "theta");
    lambda = std::clamp(lambda, 0.0, 1.0);
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 0) = m(3, 3) = (1.0 - lambda) / 2.0;
    m(1, 1) = lambda * s * s;
    m(2, 2) = lambda * c * c;
    m(1, 2) = m(2, 1) = lambda * s * c;
    return make_density(m);
}

UnitaryMatrix haar_unitary(int d, Rng& rng) {
    if (d < 1) throw Error(ErrorKind::OutOfRange, "unitary dimension must be positive");
    ComplexMatrix g(d, d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) g(i, j) = rng.complex_normal();
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
    const ComplexMatrix& r = qr.matrixQR();
    for (int j = 0; j < d; ++j) {
        const Complex rjj = r(j, j);
        const double mag = std::abs(rjj);
        q.col(j) *= mag > 0.0 ? rjj / mag : Complex(1.0);
    }
    return make_unitary(q);
}

UnitaryMatrix cartan_unitary(const CartanParams& p) {
    const Complex em = std::exp(-kI * p.lambda3);
    const Complex ep = std::exp(kI * p.lambda3);
    const double dm = p.lambda1 - p.lambda2;
    const double dp = p.lambda1 + p.lambda2;
    ComplexMatrix u = ComplexMatrix::Zero(4, 4);
    u(0, 0) = u(3, 3) = em * std::cos(dm);
    u(0, 3) = u(3, 0) = -kI * em * std::sin(dm);
    u(1, 1) = u(2, 2) = ep * std::cos(dp);
    u(1, 2) = u(2, 1) = -kI * ep * std::sin(dp);
    return make_unitary(u);
}

UnitaryMatrix su2(const LocalSU2Params& p) {
    ComplexMatrix u(2, 2);
    u(0, 0) = std::exp(kI * p.alpha) * std::cos(p.phi);
    u(0, 1) = std::exp(kI * p.beta) * std::sin(p.phi);
    u(1, 0) = -std::exp(-kI * p.beta) * std::sin(p.phi);
    u(1, 1) = std::exp(-kI * p.alpha) * std::cos(p.phi);
    return make_unitary(u);
}

UnitaryMatrix local_unitary(const LocalSU2Params& ua, const LocalSU2Params& ub) {
    return tensor(su2(ua), su2(ub));
}

DensityMatrix conjugate(const DensityMatrix& rho, const UnitaryMatrix& u) {
    if (u.dim() != rho.dim()) {
        std::ostringstream os;
        os << "unitary of size " << u.dim() << " applied to state of size " << rho.dim();
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
    const ComplexMatrix m = u.matrix() * rho.matrix() * u.matrix().adjoint();
    return make_density(m, rho.dims());
}

DensityMatrix random_density(Dims dims, int rank, Rng& rng) {
    const int n = dims.total();
    if (rank < 1 || rank > n) {
        std::ostringstream os;
        os << "rank " << rank << " outside [1, " << n << "]";
        throw Error(ErrorKind::OutOfRange, os.str());
    }
    ComplexMatrix g(n, rank);
    for (int j = 0; j < rank; ++j)
        for (int i = 0; i < n; ++i) g(i, j) = rng.complex_normal();
    ComplexMatrix m = g * g.adjoint();
    m /= m.trace().real();
    return make_density(m, dims);
}

ComplexVector random_pure_vector(int d, Rng& rng) {
    ComplexVector v(d);
    for (int i = 0; i < d; ++i) v(i) = rng.complex_normal();
    return v / v.norm();
}

DensityMatrix pure_density(const ComplexVector& psi, Dims dims) {
    const double n = psi.norm();
    if (!(n > 0.0)) throw Error(ErrorKind::OutOfRange, "zero state vector");
    return make_density(projector(psi / n), dims);
}

DensityMatrix random_classical_classical(const std::vector<double>& probs, Rng& rng) {
    if (probs.size() != 4) throw Error(ErrorKind::DimensionMismatch, "need four weights");
    const ComplexMatrix ua = haar_unitary(2, rng).matrix();
    const ComplexMatrix ub = haar_unitary(2, rng).matrix();
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            m += probs[static_cast<std::size_t>(2 * i + j)] *
                 tensor(projector(ua.col(i)), projector(ub.col(j)));
    return make_density(m);
}

DensityMatrix random_classical_quantum(Side classical, Rng& rng) {
    const ComplexMatrix u = haar_unitary(2, rng).matrix();
    const double p = rng.uniform();
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    for (int i = 0; i < 2; ++i) {
        const ComplexMatrix q = random_density({2, 1}, 1 + static_cast<int>(rng.index(2)), rng).matrix();
        const double w = i == 0 ? p : 1.0 - p;
        const ComplexMatrix pi = projector(u.col(i));
        m += w * (classical == Side::A ? tensor(pi, q) : tensor(q, pi));
    }
    return make_density(m);
}

DensityMatrix product_state(const ComplexMatrix& rho_a, const ComplexMatrix& rho_b) {
    return make_density(tensor(rho_a, rho_b), {static_cast<int>(rho_a.rows()), static_cast<int>(rho_b.rows())});
}

}  // namespace qcorr
