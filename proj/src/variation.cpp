#include "polydet/variation.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace polydet {

namespace {

void check_tau(const TorusMetricSpec& spec, const Tau& tau) {
    const int n = static_cast<int>(spec.points.size());
    if (tau.kind == Tau::Kind::Scale) return;
    if (tau.index < 0 || tau.index >= n) throw InputError("variation: point index out of range");
    if (tau.kind == Tau::Kind::Angle) {
        if (tau.partner < 0 || tau.partner >= n || tau.partner == tau.index)
            throw InputError("variation: angle variation needs a distinct partner to keep sum b = 0");
    }
}

double theta_prime_abs(const TorusModulus& B) {
    return std::abs(jacobi_theta_z_derivative(ThetaCharacteristic::half_half(), 0.0, B));
}

// log(det/A) with D in long double; the remaining terms are smooth and exact
// in C, so double suffices there
long double log_det_ld(const TorusMetricSpec& spec) {
    const double tp = theta_prime_abs(spec.B);
    const double logC = std::log(spec.C);
    long double rest = std::log(torus_c0(spec.B));
    for (const auto& p : spec.points) {
        const double beta = 2.0 * kPi * (1.0 + p.b);
        rest += 2.0 * log_coefficient_d(beta, true, tp) - coefficient_I(beta) * logC;
    }
    return torus_D_ld(spec) + rest;
}

} // namespace

VariationCoefficients torus_A_coefficients(const TorusMetricSpec& spec, const Tau& tau) {
    spec.validate();
    check_tau(spec, tau);
    const std::size_t n = spec.points.size();
    const cplx B = spec.B.B;
    const auto& pts = spec.points;
    VariationCoefficients out{tau, std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
    switch (tau.kind) {
    case Tau::Kind::Scale:
        for (auto& a : out.A) a = -1.0 / spec.C;
        break;
    case Tau::Kind::Point: {
        const std::size_t i = tau.index;
        const cplx v = tau.imaginary ? cplx(0, 1) : cplx(1, 0);
        const double bi = pts[i].b;
        double self = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == i) continue;
            const double dg = torus_green_dir(pts[i].P - pts[k].P, B, v);
            out.A[k] = -2.0 * bi * dg;
            self += pts[k].b * dg;
        }
        out.A[i] = 2.0 * bi / (bi + 2.0) * self;
        break;
    }
    case Tau::Kind::Angle: {
        std::vector<double> beta_dot(n, 0.0);
        beta_dot[tau.index] = 1.0;
        beta_dot[tau.partner] = -1.0;
        const double ltp = std::log(theta_prime_abs(spec.B));
        const double logC = std::log(spec.C);
        for (std::size_t j = 0; j < n; ++j) {
            const double beta = 2.0 * kPi * (1.0 + pts[j].b);
            double re_u = -2.0 * pts[j].b * ltp - logC;
            double d_re_u = -2.0 * beta_dot[j] / (2.0 * kPi) * ltp;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == j) continue;
                const double g = torus_green(pts[j].P - pts[k].P, B);
                re_u -= 2.0 * pts[k].b * g;
                d_re_u -= 2.0 * beta_dot[k] / (2.0 * kPi) * g;
            }
            out.A[j] = -(beta_dot[j] / beta) * (2.0 * std::log(beta / (2.0 * kPi)) + re_u) + d_re_u;
            out.Atilde[j] = -2.0 * beta_dot[j] / beta;
        }
        break;
    }
    }
    return out;
}

double zeta_calc_rhs(const VariationCoefficients& coeffs, const std::vector<ConeData>& cones) {
    if (coeffs.A.size() != cones.size() || coeffs.Atilde.size() != cones.size())
        throw InputError("zeta_calc_rhs: coefficient and cone lists differ in length");
    double s = 0;
    for (std::size_t j = 0; j < cones.size(); ++j) {
        const double beta = cones[j].beta;
        if (coeffs.Atilde[j] != 0.0) s += coeffs.Atilde[j] * beta * coefficient_Itilde(beta);
        s += coeffs.A[j] * coefficient_I(beta);
    }
    return s;
}

TorusMetricSpec perturb(const TorusMetricSpec& spec, const Tau& tau, double t) {
    check_tau(spec, tau);
    TorusMetricSpec out = spec;
    switch (tau.kind) {
    case Tau::Kind::Scale:
        out.C += t;
        break;
    case Tau::Kind::Point:
        out.points[tau.index].P += tau.imaginary ? cplx(0, t) : cplx(t, 0);
        break;
    case Tau::Kind::Angle:
        out.points[tau.index].b += t / (2.0 * kPi);
        out.points[tau.partner].b -= t / (2.0 * kPi);
        break;
    }
    return out;
}

VariationReport verify_variation(const TorusMetricSpec& spec, const Tau& tau, double step) {
    spec.validate();
    check_tau(spec, tau);
    if (!(step > 0.0)) throw InputError("verify_variation: step must be positive");
    const TorusMetricSpec plus = perturb(spec, tau, step), minus = perturb(spec, tau, -step);
    try {
        plus.validate();
        minus.validate();
    } catch (const InputError& e) {
        throw InputError(std::string("verify_variation: step collides with the divisor geometry: ") + e.what());
    }
    VariationReport rep;
    rep.step = step;
    rep.lhs = static_cast<double>((log_det_ld(plus) - log_det_ld(minus)) / (2.0L * step));
    std::vector<ConeData> cones;
    for (double beta : spec.betas()) cones.push_back({beta});
    rep.rhs = zeta_calc_rhs(torus_A_coefficients(spec, tau), cones);
    rep.residual = std::fabs(rep.lhs - rep.rhs) / std::max(1.0, std::fabs(rep.rhs));
    return rep;
}

HalvingReport verify_variation_halving(const TorusMetricSpec& spec, const Tau& tau, double step) {
    HalvingReport h;
    h.full = verify_variation(spec, tau, step);
    h.half = verify_variation(spec, tau, 0.5 * step);
    h.ratio = h.half.residual > 0.0 ? h.full.residual / h.half.residual : std::numeric_limits<double>::infinity();
    return h;
}

} // namespace polydet
