#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qcorr/linalg.hpp"
#include "qcorr/states.hpp"
#include "support.hpp"

using namespace qcorr;
using qcorr::test::max_abs_diff;

TEST_SUITE("linalg") {

TEST_CASE("hermitian_eig on simple inputs") {
    const EigenDecomposition id = hermitian_eig(ComplexMatrix::Identity(2, 2));
    CHECK(id.spectrum[0] == doctest::Approx(1.0));
    CHECK(id.spectrum[1] == doctest::Approx(1.0));
    CHECK(max_abs_diff(id.vectors.adjoint() * id.vectors, ComplexMatrix::Identity(2, 2)) < 1e-12);

    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 0.3;
    d(1, 1) = 0.7;
    const Spectrum s = hermitian_spectrum(d);
    CHECK(s[0] == doctest::Approx(0.7));
    CHECK(s[1] == doctest::Approx(0.3));

    const Spectrum g = gisin(0.5, std::numbers::pi / 4).spectrum();
    CHECK(g[0] == doctest::Approx(0.5));
    CHECK(g[1] == doctest::Approx(0.25));
    CHECK(g[2] == doctest::Approx(0.25));
    CHECK(std::abs(g[3]) < 1e-12);
}

TEST_CASE("hermitian_eig rejects bad input") {
    ComplexMatrix m = ComplexMatrix::Zero(2, 3);
    CHECK_THROWS_AS(hermitian_eig(m), Error);
    ComplexMatrix n = ComplexMatrix::Zero(2, 2);
    n(0, 1) = 1.0;
    try {
        hermitian_eig(n);
        FAIL("expected NotHermitian");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotHermitian);
    }
}

TEST_CASE("hermitian_eig reconstructs random 4x4 inputs") {
    Rng rng(11);
    for (int k = 0; k < 1000; ++k) {
        const ComplexMatrix m = test::random_hermitian(4, rng);
        const EigenDecomposition e = hermitian_eig(m);
        RealVector lam(4);
        for (int i = 0; i < 4; ++i) lam(i) = e.spectrum[static_cast<std::size_t>(i)];
        for (int i = 0; i + 1 < 4; ++i) REQUIRE(lam(i) >= lam(i + 1));
        const ComplexMatrix back = e.vectors * lam.cast<Complex>().asDiagonal() * e.vectors.adjoint();
        REQUIRE((back - m).norm() <= 1e-8 * m.norm());
        REQUIRE(min_eigenvalue(m) == doctest::Approx(lam(3)).epsilon(1e-10));
    }
}

TEST_CASE("tensor products") {
    CHECK(max_abs_diff(tensor(pauli::identity(), pauli::identity()), ComplexMatrix::Identity(4, 4)) == 0.0);
    const ComplexMatrix zz = tensor(pauli::z(), pauli::z());
    ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
    expect.diagonal() << 1.0, -1.0, -1.0, 1.0;
    CHECK(max_abs_diff(zz, expect) == 0.0);

    Rng rng(3);
    for (int k = 0; k < 50; ++k) {
        const ComplexMatrix a = test::random_hermitian(2, rng);
        const ComplexMatrix b = test::random_hermitian(3, rng);
        CHECK(std::abs(tensor(a, b).trace() - a.trace() * b.trace()) < 1e-12);
    }
}

TEST_CASE("partial trace") {
    Rng rng(5);
    for (int k = 0; k < 100; ++k) {
        const DensityMatrix rho = random_density({2, 3}, 6, rng);
        const ComplexMatrix ra = partial_trace(rho.matrix(), rho.dims(), Side::A);
        CHECK(max_abs_diff(ra, test::naive_trace_out_b(rho.matrix(), 2, 3)) < 1e-14);
        CHECK(std::abs(ra.trace() - rho.matrix().trace()) < 1e-12);
        const ComplexMatrix rb = partial_trace(rho.matrix(), rho.dims(), Side::B);
        const ComplexMatrix swapped = swap_subsystems(rho.matrix(), rho.dims());
        CHECK(max_abs_diff(rb, test::naive_trace_out_b(swapped, 3, 2)) < 1e-14);
    }
    const ComplexMatrix half = ComplexMatrix::Identity(2, 2) * 0.5;
    CHECK(max_abs_diff(bell(BellState::PhiPlus).reduced(Side::B), half) < 1e-14);

    const double l = 0.4, th = 0.7;
    const ComplexMatrix ga = gisin(l, th).reduced(Side::A);
    CHECK(ga(0, 0).real() == doctest::Approx((1 - l) / 2 + l * std::sin(th) * std::sin(th)));
    CHECK(ga(1, 1).real() == doctest::Approx((1 - l) / 2 + l * std::cos(th) * std::cos(th)));
    CHECK(std::abs(ga(0, 1)) < 1e-14);

    const ComplexMatrix a = test::random_hermitian(2, rng);
    CHECK_THROWS_AS(partial_trace(a, {2, 2}, Side::A), Error);
}

TEST_CASE("partial transpose") {
    CHECK(max_abs_diff(partial_transpose(ComplexMatrix::Identity(4, 4) / 4.0, {2, 2}, Side::B),
                       ComplexMatrix::Identity(4, 4) / 4.0) == 0.0);
    const ComplexMatrix pt = partial_transpose(bell(BellState::PhiPlus).matrix(), {2, 2}, Side::B);
    CHECK(min_eigenvalue(pt) == doctest::Approx(-0.5));

    Rng rng(8);
    for (int k = 0; k < 100; ++k) {
        const DensityMatrix rho = random_density({2, 3}, 3, rng);
        const ComplexMatrix t = partial_transpose(rho.matrix(), rho.dims(), Side::B);
        CHECK(max_abs_diff(partial_transpose(t, rho.dims(), Side::B), rho.matrix()) < 1e-15);
        CHECK(std::abs(t.trace() - 1.0) < 1e-12);
        // transposing A is the full transpose of transposing B
        const ComplexMatrix ta = partial_transpose(rho.matrix(), rho.dims(), Side::A);
        CHECK(max_abs_diff(ta, t.transpose()) < 1e-15);
    }

    const ComplexMatrix ra = random_density({2, 1}, 2, rng).matrix();
    const ComplexMatrix rb = random_density({2, 1}, 2, rng).matrix();
    const ComplexMatrix prod_pt = partial_transpose(tensor(ra, rb), {2, 2}, Side::B);
    CHECK(max_abs_diff(prod_pt, tensor(ra, rb.transpose())) < 1e-15);
    CHECK(min_eigenvalue(prod_pt) > -1e-12);
}

TEST_CASE("commutators and norms") {
    CHECK(frobenius_norm(commutator(pauli::x(), pauli::x())) == 0.0);
    CHECK(max_abs_diff(commutator(pauli::x(), pauli::y()), Complex(0.0, 2.0) * pauli::z()) < 1e-15);
    Rng rng(2);
    const ComplexMatrix h = test::random_hermitian(3, rng);
    CHECK(frobenius_norm(commutator(h, h.adjoint())) < 1e-13);
    CHECK_THROWS_AS(commutator(pauli::x(), ComplexMatrix::Identity(3, 3)), Error);
}

TEST_CASE("Gell-Mann basis is orthonormal and traceless") {
    for (int d : {2, 3, 4}) {
        const auto basis = gell_mann_basis(d);
        REQUIRE(basis.size() == static_cast<std::size_t>(d * d - 1));
        for (std::size_t i = 0; i < basis.size(); ++i) {
            CHECK(std::abs(basis[i].trace()) < 1e-14);
            CHECK(max_hermitian_deviation(basis[i]) < 1e-15);
            for (std::size_t j = 0; j < basis.size(); ++j)
                CHECK(std::abs((basis[i] * basis[j]).trace() - (i == j ? 2.0 : 0.0)) < 1e-13);
        }
    }
    const auto q = gell_mann_basis(2);
    CHECK(max_abs_diff(q[0], pauli::x()) == 0.0);
    CHECK(max_abs_diff(q[1], pauli::y()) == 0.0);
    CHECK(max_abs_diff(q[2], pauli::z()) == 0.0);
}

TEST_CASE("spectrum ordering and validation") {
    const Spectrum s = Spectrum::from_values({0.1, 0.4, 0.2, 0.3});
    CHECK(s[0] == 0.4);
    CHECK(s[3] == 0.1);
    CHECK(s.sum() == doctest::Approx(1.0));
    CHECK_NOTHROW(s.require_density());
    CHECK_THROWS_AS(Spectrum::from_values({0.6, 0.6}).require_density(), Error);
    CHECK_THROWS_AS(Spectrum::from_values({1.2, -0.2}).require_density(), Error);
}

}  // TEST_SUITE
