#include "polydet/highergenus.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>

#include "polydet/cone.hpp"

namespace polydet {

namespace {

bool same_point(const SurfacePoint& a, const SurfacePoint& b) {
    return (a.abel - b.abel).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, a.abel.norm());
}

std::vector<PackDivisorPoint> sorted_divisor(const HigherGenusMetricSpec& spec) {
    auto d = spec.divisor;
    std::sort(d.begin(), d.end(), [](const PackDivisorPoint& x, const PackDivisorPoint& y) {
        return x.handle != y.handle ? x.handle < y.handle : x.b < y.b;
    });
    return d;
}

double beta_of(double b) { return 2.0 * kPi * (1.0 + b); }

double log_abs2(cplx v) { return 2.0 * std::log(std::abs(v)); }

} // namespace

void HigherGenusMetricSpec::validate() const {
    if (!pack) throw InputError("genus: no surface pack");
    const int g = pack->genus();
    if (g < 2) throw InputError("genus: the pack must have genus >= 2");
    if (!(C > 0.0) || !std::isfinite(C)) throw InputError("genus: C must be positive");
    double sum = 0, mag = 1;
    for (const auto& d : divisor) {
        if (!std::isfinite(d.b) || !(d.b > -1.0)) throw InputError("genus: every b_k must exceed -1");
        pack->record(d.handle);
        sum += d.b;
        mag += std::fabs(d.b);
    }
    if (std::fabs(sum - (2.0 * g - 2.0)) > 1e-14 * mag) throw InputError("genus: weights must sum to 2g-2");
    for (std::size_t i = 0; i < divisor.size(); ++i)
        for (std::size_t j = i + 1; j < divisor.size(); ++j)
            if (same_point(pack->point(divisor[i].handle), pack->point(divisor[j].handle)))
                throw InputError("genus: divisor points must be distinct");
    const SurfacePoint q1 = pack->point(base_p1());
    pack->record(base_p0());
    for (const auto& d : divisor)
        if (same_point(q1, pack->point(d.handle))) throw InputError("genus: p1 must not be a divisor point");
    if (!sigma_x.empty()) {
        if (static_cast<int>(sigma_x.size()) != g) throw InputError("genus: sigma_x must list g points");
        for (const auto& h : sigma_x) pack->record(h);
    }
}

std::vector<SurfacePoint> HigherGenusMetricSpec::auxiliary() const {
    std::vector<SurfacePoint> x;
    for (const auto& h : sigma_x.empty() ? pack->sigma_auxiliary : sigma_x) x.push_back(pack->point(h));
    return x;
}

double q_bilinear(const SurfacePoint& z, const SurfacePoint& zp, const SurfacePack& pack) {
    const int g = pack.genus();
    if (g < 2) throw InputError("q_bilinear: needs genus >= 2");
    const Eigen::MatrixXd Y = pack.period_matrix.B.imag();
    const Eigen::VectorXd k1 = pack.riemann_constant(z).imag();
    const Eigen::VectorXd k2 = pack.riemann_constant(zp).imag();
    // L^{-1} on both sides keeps Q(z,z') == Q(z',z) bit-for-bit
    const Eigen::LLT<Eigen::MatrixXd> llt(Y);
    const Eigen::VectorXd u1 = llt.matrixL().solve(k1), u2 = llt.matrixL().solve(k2);
    const double s = u1.dot(u2);
    return 4.0 * kPi / double((g - 1) * (g - 1)) * s;
}

double q_bilinear(const std::string& z, const std::string& zp, const SurfacePack& pack) {
    return q_bilinear(pack.point(z), pack.point(zp), pack);
}

double phi_potential(const HigherGenusMetricSpec& spec, const SurfacePoint& z) {
    spec.validate();
    const SurfacePack& pk = *spec.pack;
    const SurfacePoint q1 = pk.point(spec.base_p1());
    double phi = -std::log(spec.C);
    for (const auto& d : sorted_divisor(spec)) {
        const SurfacePoint zk = pk.point(d.handle);
        const cplx e = prime_form(z, zk, pk);
        if (e == cplx(0.0)) throw InputError("phi_potential: z is a cone point");
        phi -= d.b * (log_abs2(e / prime_form(q1, zk, pk)) + q_bilinear(z, zk, pk));
    }
    phi -= 4.0 * std::log(std::abs(fay_sigma(z, pk.point(spec.base_p0()), pk, spec.auxiliary())));
    return phi;
}

double phi_potential(const HigherGenusMetricSpec& spec, const std::string& z) {
    return phi_potential(spec, spec.pack->point(z));
}

cplx u_j_holomorphic_part(const HigherGenusMetricSpec& spec, std::size_t j, cplx dz) {
    spec.validate();
    if (j >= spec.divisor.size()) throw InputError("u_j: divisor index out of range");
    const SurfacePack& pk = *spec.pack;
    const SurfacePoint z = pk.chart_point(spec.divisor[j].handle, dz);
    const SurfacePoint q1 = pk.point(spec.base_p1());
    cplx u = -std::log(spec.C);
    for (std::size_t k = 0; k < spec.divisor.size(); ++k) {
        const auto& d = spec.divisor[k];
        const SurfacePoint zk = pk.point(d.handle);
        const cplx den = prime_form(q1, zk, pk);
        cplx lg;
        if (k == j) {
            // log (E(z,z_j)/den)^2 - 2 log dz, with E(z,z_j) ~ dz
            const cplx ratio = dz == cplx(0.0) ? cplx(1.0) : prime_form(z, zk, pk) / dz;
            lg = 2.0 * std::log(ratio / den);
        } else {
            lg = 2.0 * std::log(prime_form(z, zk, pk) / den);
        }
        u -= d.b * (q_bilinear(z, zk, pk) + lg);
    }
    u -= 4.0 * std::log(fay_sigma(z, pk.point(spec.base_p0()), pk, spec.auxiliary()));
    return u;
}

double higher_genus_D(const HigherGenusMetricSpec& spec) {
    spec.validate();
    const SurfacePack& pk = *spec.pack;
    const auto div = sorted_divisor(spec);
    const std::size_t n = div.size();
    std::vector<SurfacePoint> z;
    for (const auto& d : div) z.push_back(pk.point(d.handle));
    const SurfacePoint q0 = pk.point(spec.base_p0()), q1 = pk.point(spec.base_p1());
    const auto x = spec.auxiliary();
    double pair = 0, quad = 0, sumI = 0, tail = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double bi = div[i].b, wi = 1.0 / beta_of(bi);
        sumI += coefficient_I(beta_of(bi));
        for (std::size_t j = 0; j < n; ++j) {
            const double bj = div[j].b, c = bi * bj * (wi + 1.0 / beta_of(bj));
            if (i < j) pair += c * log_abs2(prime_form(z[i], z[j], pk));
            quad += 0.5 * c * q_bilinear(z[i], z[j], pk);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double bi = div[i].b;
        tail += sumI * bi * log_abs2(prime_form(q1, z[i], pk)) -
                2.0 * kPi * bi * bi / (3.0 * beta_of(bi)) * std::log(std::abs(fay_sigma(z[i], q0, pk, x)));
    }
    return kPi / 6.0 * (pair + quad) + tail;
}

DetResult higher_genus_log_det(const HigherGenusMetricSpec& spec) {
    spec.validate();
    DetResult r;
    r.D = higher_genus_D(spec);
    const double logC = std::log(spec.C);
    for (const auto& d : sorted_divisor(spec)) {
        const double beta = beta_of(d.b);
        r.sum_log_d2 += 2.0 * log_coefficient_d(beta);
        r.scaling_term -= coefficient_I(beta) * logC;
    }
    r.log_det_over_area = r.D + r.sum_log_d2 + r.scaling_term;
    return r;
}

} // namespace polydet
