#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qcorr/errors.hpp"

namespace qcorr {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Numerical tolerances shared by every module. One record so the CLI can
/// override the whole block from a config file.
struct Tolerances {
    double herm = 1e-9;  // max |m - m^dagger| entrywise
    double psd = 1e-9;   // smallest admissible eigenvalue is -psd
    double eq = 1e-8;    // generic equality / zero test
};

/// Subsystem selector for bipartite operations.
enum class Side { A, B };

struct Dims {
    int a = 2;
    int b = 2;
    int total() const noexcept { return a * b; }
    friend bool operator==(const Dims&, const Dims&) = default;
};

/// Real eigenvalues in descending order.
class Spectrum {
public:
    Spectrum() = default;

    /// Sorts the values descending (stable, so ties keep their input order).
    static Spectrum from_values(std::vector<double> values);

    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double sum() const noexcept;

    /// Throws BadSpectrum unless every value lies in [-tol, 1+tol] and the sum
    /// is within tol of one.
    void require_density(double tol = 1e-9) const;

private:
    std::vector<double> values_;
};

struct EigenDecomposition {
    Spectrum spectrum;
    ComplexMatrix vectors;  // column i belongs to spectrum[i]
};

/// Eigen-decomposition of a Hermitian matrix; the input is symmetrised
/// before solving. Throws NotSquare / NotHermitian.
EigenDecomposition hermitian_eig(const ComplexMatrix& m, double herm_tol = Tolerances{}.herm);

/// Eigenvalues only, descending.
Spectrum hermitian_spectrum(const ComplexMatrix& m, double herm_tol = Tolerances{}.herm);

/// Smallest eigenvalue of a Hermitian matrix (no ordering work).
double min_eigenvalue(const ComplexMatrix& m);

double max_hermitian_deviation(const ComplexMatrix& m);

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix partial_trace(const ComplexMatrix& rho, Dims dims, Side keep);

/// Transpose of the `side` factor: <m mu|rho^{T_B}|n nu> = <m nu|rho|n mu>.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, Dims dims, Side side);

/// Reorders the tensor factors, A (x) B -> B (x) A.
ComplexMatrix swap_subsystems(const ComplexMatrix& rho, Dims dims);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

double frobenius_norm(const ComplexMatrix& m);

bool all_finite(const ComplexMatrix& m);

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
/// sigma_1..sigma_3 for k = 0..2.
const ComplexMatrix& sigma(int k);
}  // namespace pauli

/// Generalised Gell-Mann basis of su(d): d^2 - 1 traceless Hermitian
/// matrices with Tr(s_m s_n) = 2 delta_mn. For d = 2 these are the Pauli
/// matrices in x, y, z order.
std::vector<ComplexMatrix> gell_mann_basis(int d);

}  // namespace qcorr
