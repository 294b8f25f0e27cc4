#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "polydet/cone.hpp"
#include "polydet/highergenus.hpp"

using namespace polydet;

namespace {

HigherGenusMetricSpec spec(std::vector<PackDivisorPoint> d, double C = 1.0) {
    HigherGenusMetricSpec s;
    s.pack = genus2_pack();
    s.divisor = std::move(d);
    s.C = C;
    return s;
}

const std::vector<PackDivisorPoint> b11 = {{"P1", 1.0}, {"P2", 1.0}};
const std::vector<PackDivisorPoint> b3 = {{"P1", 0.5}, {"P2", 1.25}, {"P3", 0.25}};

double sum_I(const HigherGenusMetricSpec& s) {
    double t = 0;
    for (const auto& d : s.divisor) t += coefficient_I(2 * kPi * (1 + d.b));
    return t;
}

// log(det/A) - log c0 as a function of the base points, with C fixed
double result(const HigherGenusMetricSpec& s) { return higher_genus_log_det(s).log_det_over_area; }

} // namespace

TEST_CASE("spec validation") {
    CHECK_NOTHROW(spec(b11).validate());
    CHECK_THROWS_AS(spec({{"P1", 1.0}, {"P2", 0.5}}).validate(), InputError);
    CHECK_THROWS_AS(spec({{"P1", 1.0}, {"P1", 1.0}}).validate(), InputError);
    CHECK_THROWS_AS(spec({{"P1", 1.0}, {"P1w", 1.0}}).validate(), InputError);
    CHECK_THROWS_AS(spec({{"P1", 3.0}, {"P2", -1.0}}).validate(), InputError);
    CHECK_THROWS_AS(spec({{"p1", 1.0}, {"P2", 1.0}}).validate(), InputError);
    CHECK_THROWS_AS(spec({{"nowhere", 1.0}, {"P2", 1.0}}).validate(), InputError);
    CHECK_THROWS_AS(spec(b11, -2.0).validate(), InputError);
}

TEST_CASE("Q is symmetric and non-negative on the diagonal") {
    const auto& pk = *genus2_pack();
    for (auto [a, b] : {std::pair{"P1", "P2"}, std::pair{"z1", "p0"}, std::pair{"x3", "P3"}}) {
        CHECK(q_bilinear(a, b, pk) == q_bilinear(b, a, pk));
        CHECK(q_bilinear(a, a, pk) >= 0.0);
    }
}

TEST_CASE("phi: C shift and x-tuple independence") {
    HigherGenusMetricSpec s = spec(b11);
    const double p = phi_potential(s, "z1");
    CHECK(std::abs(phi_potential(spec(b11, 3.0), "z1") - p + std::log(3.0)) < 1e-13);
    s.sigma_x = {"x3", "x4"};
    CHECK(std::abs(phi_potential(s, "z1") - p) < 1e-8);
    CHECK_THROWS_AS(phi_potential(s, "P1"), InputError);
}

TEST_CASE("u_j: real part is phi + 2 b_j log|dz|") {
    const HigherGenusMetricSpec s = spec(b3, 1.4);
    const double R = genus2_pack()->record("P2").chart_radius;
    for (int k = 0; k < 5; ++k) {
        const cplx dz = std::polar(R * (0.05 + 0.15 * k), 0.7 + 1.3 * k);
        const cplx u = u_j_holomorphic_part(s, 1, dz);
        const double phi = phi_potential(s, genus2_pack()->chart_point("P2", dz));
        CHECK(std::abs(u.real() - (phi + 2 * 1.25 * std::log(std::abs(dz)))) < 1e-9);
    }
    // the dz = 0 value is the limit
    const cplx u0 = u_j_holomorphic_part(s, 1, 0.0);
    const cplx u1 = u_j_holomorphic_part(s, 1, 1e-6 * R);
    CHECK(std::abs(u0 - u1) < 1e-5);
    CHECK(std::abs(u_j_holomorphic_part(spec(b3, 2.8), 1, 0.0) - u0 + std::log(2.0)) < 1e-12);
    CHECK_THROWS_AS(u_j_holomorphic_part(s, 7, 0.0), InputError);
}

TEST_CASE("D: relabeling and chart invariance") {
    const double d = higher_genus_D(spec(b3));
    CHECK(higher_genus_D(spec({b3[2], b3[0], b3[1]})) == d);
    CHECK(higher_genus_D(spec({b3[1], b3[2], b3[0]})) == d);
    const double a = higher_genus_D(spec(b11));
    const double w = higher_genus_D(spec({{"P1w", 1.0}, {"P2", 1.0}}));
    CHECK(std::abs(a - w) < 1e-7);
}

TEST_CASE("log det: C scaling, symbolic c0, continuity in b") {
    const double r1 = result(spec(b3));
    const DetResult r = higher_genus_log_det(spec(b3, 2.0));
    CHECK_FALSE(r.c0_known());
    CHECK(std::abs(r.log_det_over_area - r1 + sum_I(spec(b3)) * std::log(2.0)) < 1e-12);
    const double e = 1e-4;
    const double r2 = result(spec({{"P1", 0.5 + e}, {"P2", 1.25 - e}, {"P3", 0.25}}));
    CHECK(std::abs(r2 - r1) < 1e-2);
}

TEST_CASE("log det: p0 transformation law") {
    const auto& pk = *genus2_pack();
    const double sg = std::abs(fay_sigma(pk.point("p0b"), pk.point("p0"), pk));
    HigherGenusMetricSpec moved = spec(b11, std::pow(sg, 4));
    moved.p0 = "p0b";
    const double g = 2;
    const double lhs = result(spec(b11)) - result(moved);
    CHECK(std::abs(lhs - 4 * (1 - g) / 3 * std::log(sg)) < 1e-7);
}

TEST_CASE("log det: p1 invariance") {
    HigherGenusMetricSpec other = spec(b11);
    other.p1 = "p1b";
    const double dC = phi_potential(other, "z2") - phi_potential(spec(b11), "z2");
    other.C = std::exp(dC);
    CHECK(std::abs(phi_potential(other, "z1") - phi_potential(spec(b11), "z1")) < 1e-9);
    CHECK(std::abs(result(other) - result(spec(b11))) < 1e-7);
}
