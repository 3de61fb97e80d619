#pragma once

#include <span>

#include "qcorr/states.hpp"

namespace qcorr {

/// All values in bits.
struct EntropyReport {
    double s_joint = 0.0;
    double s_A = 0.0;
    double s_B = 0.0;
    double cond_A_given_B = 0.0;  // S(AB) - S(B)
    double cond_B_given_A = 0.0;  // S(AB) - S(A)
    double mutual = 0.0;
};

/// -sum p log2 p with 0 log 0 = 0. Entries >= -1e-12 and a sum within 1e-9
/// of one are accepted; anything else throws NotAProbabilityVector.
double shannon(std::span<const double> p);

/// Entropy of a spectrum; eigenvalues in [-psd_tol, 0) count as zero.
double spectrum_entropy(const Spectrum& s, double psd_tol = Tolerances{}.psd);

/// Entropy of a Hermitian PSD matrix of unit trace (not necessarily bipartite).
double matrix_entropy(const ComplexMatrix& m, double psd_tol = Tolerances{}.psd);

double von_neumann(const DensityMatrix& rho);

EntropyReport entropy_report(const DensityMatrix& rho);

/// Binary entropy h(p) = H(p, 1 - p).
double binary_entropy(double p);

}  // namespace qcorr
