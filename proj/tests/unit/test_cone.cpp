#include <doctest.h>

#include <cmath>

#include "polydet/cone.hpp"
#include "polydet/quadrature.hpp"

using namespace polydet;

namespace {

double plane_kernel(double t, cplx x, cplx y) { return std::exp(-std::norm(x - y) / (4 * t)) / (4 * kPi * t); }

// beta = 2 pi / n: sum over the n rotations of the plane
double image_sum(double t, int n, PolarPoint x, PolarPoint y) {
    double s = 0;
    for (int k = 0; k < n; ++k)
        s += plane_kernel(t, std::polar(x.r, x.phi), std::polar(y.r, y.phi + 2 * kPi * k / n));
    return s;
}

} // namespace

TEST_CASE("heat kernel: beta = 2 pi is the plane Gaussian") {
    const double t = 0.3;
    const PolarPoint x{0.8, 0.3};
    for (PolarPoint y : {PolarPoint{0.8, 0.3}, PolarPoint{0.4, 2.0}, PolarPoint{1.5, -2.5}})
        CHECK(std::abs(cone_heat_kernel(t, 2 * kPi, x, y) - image_sum(t, 1, x, y)) < 1e-10);
}

TEST_CASE("heat kernel: symmetric, and equal to image sums for beta = 2 pi / n") {
    const PolarPoint x{0.7, 0.2}, y{1.1, 1.0};
    for (double beta : {kPi / 2, 0.7 * kPi, 3 * kPi})
        CHECK(std::abs(cone_heat_kernel(0.4, beta, x, y) - cone_heat_kernel(0.4, beta, y, x)) < 1e-12);
    for (int n : {2, 3, 4})
        for (double t : {0.05, 0.25, 1.0}) {
            const PolarPoint a{0.9, 0.1}, b{0.6, 0.35};
            CHECK(std::abs(cone_heat_kernel(t, 2 * kPi / n, a, b) - image_sum(t, n, a, b)) < 1e-10);
        }
}

TEST_CASE("a_mu: vanishes on the plane and is real on the diagonal") {
    for (double r : {0.1, 0.5, 1.0})
        for (double mu : {-4.0, -50.0, -400.0}) CHECK(std::abs(a_mu(r, 2 * kPi, mu)) < 1e-10);
    CHECK(std::abs(a_mu(0.5, 3 * kPi, -50.0).imag()) < 1e-10);
    CHECK(std::abs(a_mu(0.3, 0.6 * kPi, -20.0).imag()) < 1e-10);
}

TEST_CASE("a_mu: beta = pi against the two-image closed form") {
    // the image at -x contributes K0(2 r sqrt(-mu)) up to the normalization -mu / (2 pi)
    for (double r : {0.2, 0.6, 1.0})
        for (double mu : {-10.0, -100.0}) {
            const double k = std::sqrt(-mu);
            const double expect = -mu * macdonald_k0(2 * r * k) / (2 * kPi);
            CHECK(std::abs(a_mu(r, kPi, mu).real() - expect) < 1e-10 * std::max(1.0, expect));
        }
}

TEST_CASE("coefficient I: closed form values") {
    CHECK(coefficient_I(2 * kPi) == 0.0);
    CHECK(std::abs(coefficient_I(4 * kPi) + 0.125) < 1e-15);
    CHECK(std::abs(coefficient_I(kPi) - 0.125) < 1e-15);
}

TEST_CASE("coefficient Itilde: exact image values") {
    CHECK(std::abs(coefficient_Itilde(kPi) + kEulerGamma / (8 * kPi)) < 1e-12);
    CHECK(std::abs(coefficient_Itilde(kPi / 2) + 0.0596745078357796) < 1e-12);
    CHECK(std::abs(coefficient_Itilde(2 * kPi / 3) + 0.0459824762428954) < 1e-12);
    CHECK(std::abs(coefficient_Itilde(2 * kPi)) < 1e-14);
}

TEST_CASE("Hadamard finite parts do not depend on the split point") {
    for (double beta : {0.4 * kPi, 1.3, kPi, 3 * kPi, 7.5 * kPi}) {
        CHECK(std::abs(hadamard_coth_coth(beta, 1.0) - hadamard_coth_coth(beta, 2.0)) < 1e-10);
        CHECK(std::abs(hadamard_coth_csch2(beta, 1.0) - hadamard_coth_csch2(beta, 2.0)) < 1e-10);
        CHECK(std::abs(hadamard_coth_coth(beta, 0.5) - hadamard_coth_coth(beta, 1.0)) < 1e-10);
    }
}

TEST_CASE("Itilde is minus the beta-derivative of the d primitive") {
    for (double beta : {0.5 * kPi, 1.7 * kPi, 5 * kPi}) {
        const double h = 1e-4 * beta;
        const double fd = (itilde_primitive(beta + h) - itilde_primitive(beta - h)) / (2 * h);
        CHECK(std::abs(fd + coefficient_Itilde(beta)) < 1e-8);
    }
}

TEST_CASE("coefficient d: plane value and mode agreement") {
    CHECK(coefficient_d(2 * kPi) == 1.0);
    CHECK(coefficient_d(2 * kPi, true, 2.7) == 1.0);
    for (double beta : {kPi, 3 * kPi, 4 * kPi})
        CHECK(coefficient_d(beta) == coefficient_d(beta, true, 1.0));
    CHECK_THROWS_AS(coefficient_d(kPi, true, 0.0), InputError);
    CHECK_THROWS_AS(coefficient_d(-1.0), InputError);
}

TEST_CASE("closed-form candidate for Itilde differs from the constant term") {
    CHECK(std::abs(itilde_closed_form_candidate(kPi) - coefficient_Itilde(kPi)) > 1e-3);
}

TEST_CASE("asymptotic fit: plane case") {
    const ConeFit f = coefficient_I_numeric(2 * kPi);
    CHECK(std::abs(f.I_est) < 1e-6);
    CHECK(std::abs(f.Itilde_est - coefficient_Itilde(2 * kPi)) < 1e-3);
    CHECK(f.points.size() == 3);
}

TEST_CASE("asymptotic fit: refuses mu values outside the asymptotic regime") {
    CHECK_THROWS_AS(coefficient_I_numeric(3 * kPi, {-0.5, -1.0, -2.0}), ConvergenceError);
    CHECK_THROWS_AS(coefficient_I_numeric(3 * kPi, {-100.0}), InputError);
    CHECK_THROWS_AS(coefficient_I_numeric(3 * kPi, {-100.0, 50.0, -400.0}), InputError);
}

TEST_CASE("heat trace: the cone adds I(beta) to the constant term") {
    // int over r < 1 of [H(t,x,x) - 1/(4 pi t)] beta r dr tends to I(beta)
    for (double beta : {kPi, 3 * kPi}) {
        const double t = 0.002;
        QuadOptions q;
        q.rel_tol = 1e-6;
        q.abs_tol = 1e-9;
        const auto res = integrate(
            [&](double r) {
                const PolarPoint x{r, 0.0};
                return (cone_heat_kernel(t, beta, x, x) - 1.0 / (4 * kPi * t)) * beta * r;
            },
            1e-9, 1.0, q);
        const double I = coefficient_I(beta);
        CHECK(std::abs(res.value - I) < 0.05 * std::abs(I));
    }
}
