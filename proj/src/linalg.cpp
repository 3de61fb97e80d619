#include "qcorr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qcorr {

namespace {

void require_square(const ComplexMatrix& m, const char* who) {
    if (m.rows() != m.cols()) {
        std::ostringstream os;
        os << who << ": matrix is " << m.rows() << "x" << m.cols() << ", expected square";
        throw Error(ErrorKind::NotSquare, os.str());
    }
}

void require_bipartite(const ComplexMatrix& rho, Dims dims, const char* who) {
    require_square(rho, who);
    if (dims.a < 1 || dims.b < 1 || rho.rows() != dims.total()) {
        std::ostringstream os;
        os << who << ": matrix size " << rho.rows() << " does not match dims (" << dims.a << ", "
           << dims.b << ")";
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
}

}  // namespace

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NotSquare: return "NotSquare";
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NotUnitTrace: return "NotUnitTrace";
        case ErrorKind::NotPSD: return "NotPSD";
        case ErrorKind::NotUnitary: return "NotUnitary";
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::NotAProbabilityVector: return "NotAProbabilityVector";
        case ErrorKind::NotPure: return "NotPure";
        case ErrorKind::InvalidProjectors: return "InvalidProjectors";
        case ErrorKind::NotProjector: return "NotProjector";
        case ErrorKind::NotCyclicOrthogonal: return "NotCyclicOrthogonal";
        case ErrorKind::BadSpectrum: return "BadSpectrum";
        case ErrorKind::UnsupportedDims: return "UnsupportedDims";
        case ErrorKind::BudgetExhausted: return "BudgetExhausted";
        case ErrorKind::NotMonotone: return "NotMonotone";
        case ErrorKind::NoBoundary: return "NoBoundary";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what, double margin)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), margin_(margin) {}

bool is_invalid_input(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NotSquare:
        case ErrorKind::NotHermitian:
        case ErrorKind::DimensionMismatch:
        case ErrorKind::NotUnitTrace:
        case ErrorKind::NotPSD:
        case ErrorKind::NotUnitary:
        case ErrorKind::OutOfRange:
        case ErrorKind::NotAProbabilityVector:
        case ErrorKind::NotPure:
        case ErrorKind::InvalidProjectors:
        case ErrorKind::NotProjector:
        case ErrorKind::NotCyclicOrthogonal:
        case ErrorKind::BadSpectrum:
        case ErrorKind::UnsupportedDims:
        case ErrorKind::ParseError:
            return true;
        default:
            return false;
    }
}

// ---------------------------------------------------------------- Spectrum

Spectrum Spectrum::from_values(std::vector<double> values) {
    for (double v : values) {
        if (!std::isfinite(v)) throw Error(ErrorKind::BadSpectrum, "non-finite eigenvalue");
    }
    std::stable_sort(values.begin(), values.end(), std::greater<>());
    Spectrum s;
    s.values_ = std::move(values);
    return s;
}

double Spectrum::sum() const noexcept {
    return std::accumulate(values_.begin(), values_.end(), 0.0);
}

void Spectrum::require_density(double tol) const {
    if (values_.empty()) throw Error(ErrorKind::BadSpectrum, "empty spectrum");
    for (double v : values_) {
        if (v < -tol || v > 1.0 + tol) {
            std::ostringstream os;
            os << "eigenvalue " << v << " outside [0, 1]";
            throw Error(ErrorKind::BadSpectrum, os.str(), v);
        }
    }
    const double total = sum();
    if (std::abs(total - 1.0) > tol) {
        std::ostringstream os;
        os << "eigenvalues sum to " << total;
        throw Error(ErrorKind::BadSpectrum, os.str(), total - 1.0);
    }
}

// ---------------------------------------------------------- Eigen-solvers

double max_hermitian_deviation(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

namespace {

ComplexMatrix symmetrised(const ComplexMatrix& m, double herm_tol, const char* who) {
    require_square(m, who);
    if (!all_finite(m)) throw Error(ErrorKind::NotHermitian, std::string(who) + ": non-finite entry");
    const double dev = max_hermitian_deviation(m);
    if (dev > herm_tol) {
        std::ostringstream os;
        os << who << ": max |m - m^dagger| = " << dev << " exceeds " << herm_tol;
        throw Error(ErrorKind::NotHermitian, os.str(), dev);
    }
    return (m + m.adjoint()) * 0.5;
}

}  // namespace

EigenDecomposition hermitian_eig(const ComplexMatrix& m, double herm_tol) {
    const ComplexMatrix h = symmetrised(m, herm_tol, "hermitian_eig");
    const auto n = h.rows();
    if (n == 0) return {};

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    const RealVector& ev = solver.eigenvalues();
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return ev(i) > ev(j); });

    EigenDecomposition out;
    std::vector<double> values(static_cast<std::size_t>(n));
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        values[static_cast<std::size_t>(k)] = ev(order[static_cast<std::size_t>(k)]);
        out.vectors.col(k) = solver.eigenvectors().col(order[static_cast<std::size_t>(k)]);
    }
    out.spectrum = Spectrum::from_values(std::move(values));
    return out;
}

Spectrum hermitian_spectrum(const ComplexMatrix& m, double herm_tol) {
    const ComplexMatrix h = symmetrised(m, herm_tol, "hermitian_spectrum");
    if (h.rows() == 0) return {};
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    const RealVector& ev = solver.eigenvalues();
    return Spectrum::from_values(std::vector<double>(ev.data(), ev.data() + ev.size()));
}

double min_eigenvalue(const ComplexMatrix& m) {
    require_square(m, "min_eigenvalue");
    const ComplexMatrix h = (m + m.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

// --------------------------------------------------------- Tensor algebra

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, Dims dims, Side keep) {
    require_bipartite(rho, dims, "partial_trace");
    const int da = dims.a;
    const int db = dims.b;
    if (keep == Side::A) {
        ComplexMatrix out = ComplexMatrix::Zero(da, da);
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < da; ++j)
                for (int k = 0; k < db; ++k) out(i, j) += rho(i * db + k, j * db + k);
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(db, db);
    for (int k = 0; k < db; ++k)
        for (int l = 0; l < db; ++l)
            for (int i = 0; i < da; ++i) out(k, l) += rho(i * db + k, i * db + l);
    return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, Dims dims, Side side) {
    require_bipartite(rho, dims, "partial_transpose");
    const int da = dims.a;
    const int db = dims.b;
    ComplexMatrix out(rho.rows(), rho.cols());
    for (int m = 0; m < da; ++m)
        for (int mu = 0; mu < db; ++mu)
            for (int n = 0; n < da; ++n)
                for (int nu = 0; nu < db; ++nu) {
                    if (side == Side::B)
                        out(m * db + mu, n * db + nu) = rho(m * db + nu, n * db + mu);
                    else
                        out(m * db + mu, n * db + nu) = rho(n * db + mu, m * db + nu);
                }
    return out;
}

ComplexMatrix swap_subsystems(const ComplexMatrix& rho, Dims dims) {
    require_bipartite(rho, dims, "swap_subsystems");
    const int da = dims.a;
    const int db = dims.b;
    ComplexMatrix out(rho.rows(), rho.cols());
    for (int i = 0; i < da; ++i)
        for (int k = 0; k < db; ++k)
            for (int j = 0; j < da; ++j)
                for (int l = 0; l < db; ++l) out(k * da + i, l * da + j) = rho(i * db + k, j * db + l);
    return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_square(a, "commutator");
    require_square(b, "commutator");
    if (a.rows() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "commutator: operand sizes differ");
    return a * b - b * a;
}

double frobenius_norm(const ComplexMatrix& m) { return m.norm(); }

bool all_finite(const ComplexMatrix& m) { return m.allFinite(); }

// ------------------------------------------------------------ Pauli basis

namespace pauli {

ComplexMatrix identity() { return ComplexMatrix::Identity(2, 2); }

ComplexMatrix x() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

ComplexMatrix y() {
    ComplexMatrix m(2, 2);
    m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return m;
}

ComplexMatrix z() {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

const ComplexMatrix& sigma(int k) {
    static const ComplexMatrix basis[3] = {x(), y(), z()};
    return basis[k];
}

}  // namespace pauli

std::vector<ComplexMatrix> gell_mann_basis(int d) {
    std::vector<ComplexMatrix> out;
    if (d < 2) return out;
    if (d == 2) return {pauli::x(), pauli::y(), pauli::z()};
    out.reserve(static_cast<std::size_t>(d * d - 1));
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            ComplexMatrix s = ComplexMatrix::Zero(d, d);
            s(j, k) = 1.0;
            s(k, j) = 1.0;
            out.push_back(s);
            ComplexMatrix a = ComplexMatrix::Zero(d, d);
            a(j, k) = Complex(0.0, -1.0);
            a(k, j) = Complex(0.0, 1.0);
            out.push_back(a);
        }
    }
    for (int l = 1; l < d; ++l) {
        ComplexMatrix diag = ComplexMatrix::Zero(d, d);
        const double scale = std::sqrt(2.0 / (l * (l + 1.0)));
        for (int j = 0; j < l; ++j) diag(j, j) = scale;
        diag(l, l) = -l * scale;
        out.push_back(diag);
    }
    return out;
}

}  // namespace qcorr
