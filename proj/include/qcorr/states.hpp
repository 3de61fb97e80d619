#pragma once

#include <string_view>
#include <vector>

#include "qcorr/linalg.hpp"
#include "qcorr/rng.hpp"

namespace qcorr {

/// Validated bipartite density matrix. Only make_density and the family
/// constructors below create one.
class DensityMatrix {
public:
    DensityMatrix();  // maximally mixed two-qubit state

    const ComplexMatrix& matrix() const noexcept { return m_; }
    Dims dims() const noexcept { return dims_; }
    int dim() const noexcept { return dims_.total(); }

    ComplexMatrix reduced(Side keep) const { return partial_trace(m_, dims_, keep); }
    Spectrum spectrum() const { return hermitian_spectrum(m_); }
    bool is_two_qubit() const noexcept { return dims_.a == 2 && dims_.b == 2; }

private:
    friend DensityMatrix make_density(const ComplexMatrix&, Dims, const Tolerances&);
    DensityMatrix(ComplexMatrix m, Dims dims) : m_(std::move(m)), dims_(dims) {}

    ComplexMatrix m_;
    Dims dims_;
};

/// Symmetrises and validates. Throws NotSquare, DimensionMismatch,
/// NotHermitian, NotUnitTrace or NotPSD; the error margin is the violation.
DensityMatrix make_density(const ComplexMatrix& m, Dims dims = {}, const Tolerances& tol = {});

class UnitaryMatrix {
public:
    UnitaryMatrix() = default;

    const ComplexMatrix& matrix() const noexcept { return m_; }
    int dim() const noexcept { return static_cast<int>(m_.rows()); }
    UnitaryMatrix adjoint() const { return UnitaryMatrix(m_.adjoint()); }
    UnitaryMatrix operator*(const UnitaryMatrix& o) const { return UnitaryMatrix(m_ * o.m_); }

private:
    friend UnitaryMatrix make_unitary(const ComplexMatrix&, double);
    friend UnitaryMatrix tensor(const UnitaryMatrix&, const UnitaryMatrix&);
    explicit UnitaryMatrix(ComplexMatrix m) : m_(std::move(m)) {}

    ComplexMatrix m_;
};

/// Throws NotSquare or NotUnitary when ||U^dagger U - I||_F > tol.
UnitaryMatrix make_unitary(const ComplexMatrix& m, double tol = 1e-8);
UnitaryMatrix tensor(const UnitaryMatrix& a, const UnitaryMatrix& b);

struct CartanParams {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double lambda3 = 0.0;
};

/// [[e^{ia} cos p, e^{ib} sin p], [-e^{-ib} sin p, e^{-ia} cos p]]
struct LocalSU2Params {
    double alpha = 0.0;
    double beta = 0.0;
    double phi = 0.0;
};

enum class BellState { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

std::string_view to_string(BellState b) noexcept;

DensityMatrix bell(BellState which);

/// Locally maximally mixed state (I + sum t_k s_k (x) s_k) / 4. Throws NotPSD
/// outside the tetrahedron.
DensityMatrix weyl(double t1, double t2, double t3);

/// w |Psi-><Psi-| + (1 - w) I/4, w in [-1/3, 1].
DensityMatrix werner(double w);

/// lambda |psi_theta><psi_theta| + (1 - lambda) rho_top with
/// psi_theta = sin(theta)|01> + cos(theta)|10>, rho_top = (|00><00| + |11><11|)/2.
DensityMatrix gisin(double lambda, double theta);

UnitaryMatrix haar_unitary(int d, Rng& rng);

/// exp(-i (l1 s1(x)s1 + l2 s2(x)s2 + l3 s3(x)s3)) in closed form.
UnitaryMatrix cartan_unitary(const CartanParams& p);

UnitaryMatrix su2(const LocalSU2Params& p);
UnitaryMatrix local_unitary(const LocalSU2Params& ua, const LocalSU2Params& ub);

/// U rho U^dagger. Throws DimensionMismatch.
DensityMatrix conjugate(const DensityMatrix& rho, const UnitaryMatrix& u);

/// G G^dagger / tr with G a (dA dB) x rank complex Gaussian matrix.
DensityMatrix random_density(Dims dims, int rank, Rng& rng);

/// Haar-random pure state vector of dimension d.
ComplexVector random_pure_vector(int d, Rng& rng);

DensityMatrix pure_density(const ComplexVector& psi, Dims dims);

/// sum_ij p_ij |a_i><a_i| (x) |b_j><b_j| in random local bases.
DensityMatrix random_classical_classical(const std::vector<double>& probs, Rng& rng);

/// sum_i p_i |a_i><a_i| (x) rho_i with random rho_i on the other qubit.
/// `classical` names the subsystem carrying the orthogonal projectors.
DensityMatrix random_classical_quantum(Side classical, Rng& rng);

DensityMatrix product_state(const ComplexMatrix& rho_a, const ComplexMatrix& rho_b);

}  // namespace qcorr
