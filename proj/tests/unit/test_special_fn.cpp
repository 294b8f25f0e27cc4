#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "polydet/prime_form.hpp"
#include "polydet/special_fn.hpp"

using namespace polydet;

namespace {
const ThetaCharacteristic half = ThetaCharacteristic::half_half();
const ThetaCharacteristic zero1 = ThetaCharacteristic::zero(1);
}

TEST_CASE("jacobi theta: oddness and zero at the origin") {
    CHECK(std::abs(jacobi_theta(half, 0.0, {cplx(0, 1)})) < 1e-15);
    for (cplx z : {cplx(0.3, 0.1), cplx(-0.7, 0.45), cplx(1.3, -0.2)}) {
        const TorusModulus B{cplx(0, 2)};
        CHECK(std::abs(jacobi_theta(half, z, B) + jacobi_theta(half, -z, B)) < 1e-14);
        CHECK(std::abs(jacobi_theta_z_derivative(half, z, B) - jacobi_theta_z_derivative(half, -z, B)) < 1e-13);
    }
}

TEST_CASE("jacobi theta: derivative against central differences") {
    const TorusModulus B{cplx(0.3, 1.2)};
    const double h = 1e-6;
    const cplx z = 0.2;
    const cplx fd = (jacobi_theta(half, z + h, B) - jacobi_theta(half, z - h, B)) / (2 * h);
    CHECK(std::abs(fd - jacobi_theta_z_derivative(half, z, B)) < 1e-8);
}

TEST_CASE("jacobi theta: derivative at zero is -2 pi eta^3") {
    for (cplx b : {cplx(0, 1), cplx(0.5, 0.866), cplx(1, 2), cplx(-0.2, 0.7)}) {
        const TorusModulus B{b};
        const cplx eta = dedekind_eta(B);
        const cplx lhs = jacobi_theta_z_derivative(half, 0.0, B);
        CHECK(std::abs(lhs + 2 * kPi * eta * eta * eta) < 1e-10 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("jacobi theta: quasi-periodicity") {
    const cplx B(0.3, 1.2);
    const cplx z(0.17, -0.42);
    const cplx t = jacobi_theta(half, z, {B});
    CHECK(std::abs(jacobi_theta(half, z + 1.0, {B}) + t) < 1e-12);
    const cplx shifted = jacobi_theta(half, z + B, {B});
    const cplx factor = -std::exp(cplx(0, -kPi) * B - cplx(0, 2 * kPi) * z);
    CHECK(std::abs(shifted - factor * t) < 1e-10 * std::abs(shifted));
}

TEST_CASE("riemann theta: genus one is the Jacobi series") {
    PeriodMatrix B{Eigen::MatrixXcd::Constant(1, 1, cplx(0.5, 0.8))};
    Eigen::VectorXcd z(1);
    z << cplx(0.25, 0.1);
    for (const auto& ch : {half, zero1, ThetaCharacteristic{{0.0}, {0.5}}}) {
        const cplx r = riemann_theta(z, B, ch);
        const cplx j = jacobi_theta(ch, z[0], {B.B(0, 0)});
        CHECK(std::abs(r - j) < 1e-12);
    }
}

TEST_CASE("riemann theta: block-diagonal B factorizes") {
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(2, 2);
    M(0, 0) = cplx(0.1, 1.1);
    M(1, 1) = cplx(-0.3, 0.9);
    Eigen::VectorXcd z(2);
    z << cplx(0.2, 0.05), cplx(-0.4, 0.1);
    const ThetaCharacteristic ch{{0.5, 0.0}, {0.5, 0.5}};
    const cplx r = riemann_theta(z, {M}, ch);
    const cplx p = jacobi_theta({{0.5}, {0.5}}, z[0], {M(0, 0)}) * jacobi_theta({{0.0}, {0.5}}, z[1], {M(1, 1)});
    CHECK(std::abs(r - p) < 1e-12);
}

TEST_CASE("riemann theta: quasi-periodicity on the bundled pack") {
    const auto pack = genus2_pack();
    const PeriodMatrix& B = pack->period_matrix;
    Eigen::VectorXcd z(2);
    z << cplx(0.11, -0.2), cplx(0.3, 0.05);
    const ThetaCharacteristic ch = ThetaCharacteristic::zero(2);
    const cplx t = riemann_theta(z, B, ch);
    for (const auto& mv : {Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1), Eigen::Vector2d(1, -1)}) {
        const Eigen::VectorXcd m = mv.cast<cplx>();
        const cplx shifted = riemann_theta(z + B.B * m, B, ch);
        const cplx mBm = (m.transpose() * B.B * m)(0, 0);
        const cplx mz = (m.transpose() * z)(0, 0);
        const cplx expect = std::exp(cplx(0, -kPi) * mBm - cplx(0, 2 * kPi) * mz) * t;
        CHECK(std::abs(shifted - expect) < 1e-10 * std::max(1.0, std::abs(expect)));
        CHECK(std::abs(riemann_theta(z + m, B, ch) - t) < 1e-12);
    }
}

TEST_CASE("riemann theta: gradient against central differences") {
    const auto pack = genus2_pack();
    Eigen::VectorXcd z(2);
    z << cplx(0.11, -0.2), cplx(0.3, 0.05);
    const ThetaValue v = riemann_theta_with_gradient(z, pack->period_matrix, pack->delta);
    const double h = 1e-6;
    for (int i = 0; i < 2; ++i) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(2);
        e[i] = h;
        const cplx fd = (riemann_theta(z + e, pack->period_matrix, pack->delta) -
                         riemann_theta(z - e, pack->period_matrix, pack->delta)) /
                        (2 * h);
        CHECK(std::abs(fd - v.gradient[i]) < 1e-7);
    }
}

TEST_CASE("characteristic and period matrix validation") {
    CHECK(half.odd_half_integer());
    CHECK_FALSE(zero1.odd_half_integer());
    CHECK_THROWS_AS((ThetaCharacteristic{{0.5}, {0.5, 0.0}}.validate()), InputError);
    Eigen::MatrixXcd bad(2, 2);
    bad << cplx(0, 1), cplx(0.2, 0), cplx(0.3, 0), cplx(0, 1);
    CHECK_THROWS_AS(PeriodMatrix{bad}.validate(), InputError);
    Eigen::MatrixXcd indef(2, 2);
    indef << cplx(0, 1), cplx(0, 2), cplx(0, 2), cplx(0, 1);
    CHECK_THROWS_AS(PeriodMatrix{indef}.validate(), InputError);
    CHECK_THROWS_AS(TorusModulus{cplx(0.3, -1)}.validate(), InputError);
}

TEST_CASE("dedekind eta: translation, modular law, no zeros") {
    for (cplx B : {cplx(0, 1), cplx(0.3, 0.8), cplx(-0.45, 0.95), cplx(0.1, 2.5)}) {
        const cplx r = dedekind_eta({B + 1.0}) / dedekind_eta({B});
        CHECK(std::abs(r - std::exp(cplx(0, kPi / 12))) < 1e-12);
        CHECK(std::abs(dedekind_eta({B})) > 0.1);
    }
    const cplx B(1, 2);
    CHECK(std::abs(std::abs(dedekind_eta({-1.0 / B})) - std::sqrt(std::abs(B)) * std::abs(dedekind_eta({B}))) <
          1e-12);
}

TEST_CASE("macdonald K0: limits and real cross-check") {
    CHECK(std::abs(macdonald_k0(1.0) - 0.42102443824070833) < 1e-14);
    const double x = 1e-6;
    CHECK(std::abs(macdonald_k0(x) + std::log(x / 2) + kEulerGamma) < 1e-10);
    CHECK(std::abs(macdonald_k0(10.0) * std::sqrt(2 * 10.0 / kPi) * std::exp(10.0) - 1.0) < 0.02);
    for (double r : {0.05, 0.7, 3.0, 6.99, 7.01, 12.0, 30.0})
        CHECK(std::abs(macdonald_k0(r) - std::cyl_bessel_k(0.0, r)) < 1e-12 * std::cyl_bessel_k(0.0, r));
    // continuity across the switch radius in the complex plane
    const cplx w = std::polar(kK0SwitchRadius, 0.9);
    CHECK(std::abs(macdonald_k0(w * (1 - 1e-12)) - macdonald_k0(w * (1 + 1e-12))) < 1e-12);
    CHECK(std::abs(macdonald_k0(std::conj(cplx(0.3, 0.2))) - std::conj(macdonald_k0(cplx(0.3, 0.2)))) < 1e-15);
}

TEST_CASE("prime form: antisymmetry and diagonal") {
    const auto pack = genus2_pack();
    const SurfacePoint a = pack->point("P1"), b = pack->point("P2"), c = pack->point("z1");
    CHECK(std::abs(prime_form(a, a, *pack)) < 1e-14);
    CHECK(std::abs(prime_form(a, b, *pack) + prime_form(b, a, *pack)) <= 1e-15 * std::abs(prime_form(a, b, *pack)));
    CHECK(std::abs(prime_form(c, b, *pack) + prime_form(b, c, *pack)) <= 1e-15 * std::abs(prime_form(c, b, *pack)));
}

TEST_CASE("prime form: local behaviour E(P + dz, P) ~ dz") {
    const auto pack = genus2_pack();
    const SurfacePoint p = pack->point("P1");
    for (double s : {1e-3, 1e-4}) {
        const cplx dz = s * cplx(0.6, 0.8);
        const cplx E = prime_form(pack->chart_point("P1", dz), p, *pack);
        CHECK(std::abs(E / dz - 1.0) < 10 * s);
    }
}

TEST_CASE("fay sigma: diagonal, x-tuple invariance, multiplication law") {
    const auto pack = genus2_pack();
    const SurfacePoint z = pack->point("z1"), q0 = pack->point("p0"), q1 = pack->point("p1");
    CHECK(std::abs(fay_sigma(z, z, *pack) - 1.0) < 1e-12);
    const cplx s12 = fay_sigma(z, q0, *pack, {pack->point("x1"), pack->point("x2")});
    const cplx s34 = fay_sigma(z, q0, *pack, {pack->point("x3"), pack->point("x4")});
    CHECK(std::abs(s12 - s34) < 1e-8 * std::abs(s12));
    const cplx lhs = fay_sigma(z, q0, *pack) * fay_sigma(q0, q1, *pack);
    const cplx rhs = fay_sigma(z, q1, *pack);
    CHECK(std::abs(lhs - rhs) < 1e-8 * std::abs(rhs));
}
