#include <cmath>
#include <vector>

#include "doctest.h"
#include "qcorr/entropy.hpp"
#include "support.hpp"

using namespace qcorr;

namespace {

/// -tr(rho log2 rho) through the eigenbasis log of the matrix.
double entropy_via_matrix_log(const ComplexMatrix& rho) {
    const EigenDecomposition e = hermitian_eig(rho);
    ComplexVector logs(rho.rows());
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
        const double v = e.spectrum[static_cast<std::size_t>(i)];
        logs(i) = v > 1e-300 ? std::log2(v) : 0.0;
    }
    const ComplexMatrix log_rho = e.vectors * logs.asDiagonal() * e.vectors.adjoint();
    return -(rho * log_rho).trace().real();
}

double werner_entropy(double w) {
    const double a = (1 - w) / 4, b = (1 + 3 * w) / 4;
    return -3 * a * std::log2(a) - b * std::log2(b);
}

}  // namespace

TEST_SUITE("entropy") {

TEST_CASE("Shannon entropy") {
    CHECK(shannon(std::vector<double>{1, 0, 0, 0}) == 0.0);
    CHECK(shannon(std::vector<double>{0.5, 0.5}) == doctest::Approx(1.0));
    CHECK(shannon(std::vector<double>{0.25, 0.25, 0.25, 0.25}) == doctest::Approx(2.0));
    CHECK(shannon(std::vector<double>{0.5, 0.5, -1e-13}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(shannon(std::vector<double>{0.6, 0.6}), Error);
    CHECK_THROWS_AS(shannon(std::vector<double>{1.1, -0.1}), Error);
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(0.1) == doctest::Approx(-0.1 * std::log2(0.1) - 0.9 * std::log2(0.9)));
}

TEST_CASE("von Neumann entropy on named states") {
    CHECK(std::abs(von_neumann(bell(BellState::PhiPlus))) < 1e-12);
    CHECK(von_neumann(DensityMatrix()) == doctest::Approx(2.0));
    for (double w : {0.1, 0.3, 0.5, 0.9}) CHECK(von_neumann(werner(w)) == doctest::Approx(werner_entropy(w)));
}

TEST_CASE("entropy identity and unitary invariance") {
    Rng rng(7);
    for (int k = 0; k < 1000; ++k) {
        const DensityMatrix rho = random_density({2, 2}, 1 + static_cast<int>(rng.index(4)), rng);
        const double s = von_neumann(rho);
        REQUIRE(std::abs(s - shannon(rho.spectrum().values())) < 1e-10);
        REQUIRE(std::abs(s - entropy_via_matrix_log(rho.matrix())) < 1e-9);
        REQUIRE(std::abs(von_neumann(conjugate(rho, haar_unitary(4, rng))) - s) < 1e-9);

        const EntropyReport r = entropy_report(rho);
        REQUIRE(std::abs(r.mutual - (r.s_A + r.s_B - r.s_joint)) < 1e-9);
        REQUIRE(r.cond_A_given_B >= -r.s_B - 1e-9);
        REQUIRE(r.cond_A_given_B <= r.s_A + 1e-9);
        REQUIRE(r.cond_B_given_A >= -r.s_A - 1e-9);
        REQUIRE(r.mutual >= -1e-9);
    }
}

TEST_CASE("pure states have equal marginal entropies") {
    Rng rng(8);
    for (int k = 0; k < 200; ++k) {
        const DensityMatrix psi = pure_density(random_pure_vector(6, rng), {2, 3});
        const EntropyReport r = entropy_report(psi);
        CHECK(std::abs(r.s_A - r.s_B) < 1e-9);
        CHECK(std::abs(r.s_joint) < 1e-9);
    }
}

TEST_CASE("entropy report on Bell, product and Gisin states") {
    const EntropyReport b = entropy_report(bell(BellState::PhiPlus));
    CHECK(b.cond_B_given_A == doctest::Approx(-1.0));
    CHECK(b.cond_A_given_B == doctest::Approx(-1.0));
    CHECK(b.mutual == doctest::Approx(2.0));

    Rng rng(3);
    const ComplexMatrix ra = random_density({2, 1}, 2, rng).matrix();
    const ComplexMatrix rb = random_density({2, 1}, 2, rng).matrix();
    CHECK(std::abs(entropy_report(product_state(ra, rb)).mutual) < 1e-10);

    // S(A|B) = h-spectrum of the joint state minus the entropy of the B marginal
    for (double l : {0.2, 0.5, 0.8}) {
        for (double th : {0.3, 0.785, 1.2}) {
            const double joint = -l * std::log2(l) - (1 - l) * std::log2((1 - l) / 2);
            const double pb = (1 - l) / 2 + l * std::cos(th) * std::cos(th);
            const double expect = joint - binary_entropy(pb);
            CHECK(entropy_report(gisin(l, th)).cond_A_given_B == doctest::Approx(expect).epsilon(1e-10));
        }
    }
}

TEST_CASE("spectrum entropy clamps noise and rejects negative weight") {
    CHECK(spectrum_entropy(Spectrum::from_values({1.0, -1e-13})) == 0.0);
    CHECK_THROWS_AS(spectrum_entropy(Spectrum::from_values({1.1, -0.1})), Error);
}

}  // TEST_SUITE
