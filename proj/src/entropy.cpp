#include "qcorr/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qcorr {

namespace {

double plogp(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

}  // namespace

double shannon(std::span<const double> p) {
    if (p.empty()) throw Error(ErrorKind::NotAProbabilityVector, "empty probability vector");
    double total = 0.0;
    for (double v : p) {
        if (!std::isfinite(v) || v < -1e-12) {
            std::ostringstream os;
            os << "entry " << v << " is not a probability";
            throw Error(ErrorKind::NotAProbabilityVector, os.str(), v);
        }
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        std::ostringstream os;
        os << "entries sum to " << total;
        throw Error(ErrorKind::NotAProbabilityVector, os.str(), total - 1.0);
    }
    double h = 0.0;
    for (double v : p) h += plogp(std::clamp(v, 0.0, 1.0));
    return h;
}

double spectrum_entropy(const Spectrum& s, double psd_tol) {
    double h = 0.0;
    for (double v : s.values()) {
        if (v < -psd_tol) {
            std::ostringstream os;
            os << "eigenvalue " << v << " below -" << psd_tol;
            throw Error(ErrorKind::NotPSD, os.str(), v);
        }
        h += plogp(std::clamp(v, 0.0, 1.0));
    }
    return h;
}

double matrix_entropy(const ComplexMatrix& m, double psd_tol) {
    return spectrum_entropy(hermitian_spectrum(m), psd_tol);
}

double von_neumann(const DensityMatrix& rho) { return spectrum_entropy(rho.spectrum()); }

EntropyReport entropy_report(const DensityMatrix& rho) {
    EntropyReport r;
    r.s_joint = von_neumann(rho);
    r.s_A = matrix_entropy(rho.reduced(Side::A));
    r.s_B = matrix_entropy(rho.reduced(Side::B));
    r.cond_A_given_B = r.s_joint - r.s_B;
    r.cond_B_given_A = r.s_joint - r.s_A;
    r.mutual = r.s_A + r.s_B - r.s_joint;
    return r;
}

double binary_entropy(double p) {
    p = std::clamp(p, 0.0, 1.0);
    return plogp(p) + plogp(1.0 - p);
}

}  // namespace qcorr
