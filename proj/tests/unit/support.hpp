#pragma once

#include <cmath>
#include <vector>

#include "qcorr/linalg.hpp"
#include "qcorr/rng.hpp"

namespace qcorr::test {

inline ComplexMatrix random_hermitian(int n, Rng& rng) {
    ComplexMatrix g(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) g(i, j) = rng.complex_normal();
    return (g + g.adjoint()) * 0.5;
}

/// Truncated Taylor series with scaling and squaring.
inline ComplexMatrix expm_taylor(const ComplexMatrix& a) {
    int squarings = 0;
    double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    while (norm > 0.25) {
        norm /= 2.0;
        ++squarings;
    }
    const ComplexMatrix x = a / std::pow(2.0, squarings);
    ComplexMatrix term = ComplexMatrix::Identity(a.rows(), a.cols());
    ComplexMatrix sum = term;
    for (int k = 1; k < 30; ++k) {
        term = term * x / static_cast<double>(k);
        sum += term;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

/// Partial trace by explicit index summation.
inline ComplexMatrix naive_trace_out_b(const ComplexMatrix& rho, int da, int db) {
    ComplexMatrix out = ComplexMatrix::Zero(da, da);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j)
            for (int k = 0; k < db; ++k) out(i, j) += rho(i * db + k, j * db + k);
    return out;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

/// Random probability vector (uniform on the simplex).
inline std::vector<double> random_simplex(int n, Rng& rng) {
    std::vector<double> v(static_cast<std::size_t>(n));
    double s = 0.0;
    for (auto& x : v) {
        x = -std::log(1.0 - rng.uniform());
        s += x;
    }
    for (auto& x : v) x /= s;
    return v;
}

}  // namespace qcorr::test
