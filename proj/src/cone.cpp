#include "polydet/cone.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "polydet/parallel.hpp"

namespace polydet {

void ConeData::validate() const {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw InputError("cone: beta must be positive");
}

namespace {

void check_beta(double beta) { ConeData{beta}.validate(); }

// cot for complex argument without overflow at large |Im z|
cplx cot_c(cplx z) {
    const double x = z.real(), y = z.imag();
    if (std::fabs(y) < 20.0) return std::cos(z) / std::sin(z);
    const double e = std::exp(-2.0 * std::fabs(y));
    const double s = y > 0 ? 1.0 : -1.0;
    const double den = 1.0 - 2.0 * std::cos(2.0 * x) * e + e * e;
    return cplx(2.0 * std::sin(2.0 * x) * e, -s * (1.0 - e * e)) / den;
}

// Picks the shift of the lines Re theta = +-pi + delta so that no pole of
// cot(pi (theta + dphi)/beta) comes close to them. Poles sit at k beta - dphi.
double choose_shift(double beta, double dphi, double max_shift) {
    auto margin = [&](double delta) {
        double m = 1e300;
        for (double edge : {kPi + delta, -kPi + delta}) {
            const double k = std::round((edge + dphi) / beta);
            for (double kk : {k - 1, k, k + 1}) m = std::min(m, std::fabs(kk * beta - dphi - edge));
        }
        return m;
    };
    const double want = std::min(0.25, 0.25 * beta);
    if (margin(0.0) >= want) return 0.0;
    double best = 0.0, best_m = margin(0.0);
    for (int i = 1; i <= 36; ++i) {
        for (double sgn : {1.0, -1.0}) {
            const double d = sgn * max_shift * i / 37.0;
            const double m = margin(d);
            if (m > best_m * (1 + 1e-12)) {
                best = d;
                best_m = m;
            }
        }
    }
    return best;
}

// Integer k with k beta - dphi inside (-pi + delta, pi + delta).
std::vector<long long> strip_poles(double beta, double dphi, double delta) {
    std::vector<long long> ks;
    const long long lo = static_cast<long long>(std::ceil((-kPi + delta + dphi) / beta)) - 1;
    const long long hi = static_cast<long long>(std::floor((kPi + delta + dphi) / beta)) + 1;
    for (long long k = lo; k <= hi; ++k) {
        const double th = k * beta - dphi;
        if (th > -kPi + delta && th < kPi + delta) ks.push_back(k);
    }
    return ks;
}

cplx delta_cot(double beta, double delta, double dphi, double y) {
    const double c = kPi / beta;
    return cot_c(c * cplx(kPi + delta + dphi, y)) - cot_c(c * cplx(-kPi + delta + dphi, y));
}

} // namespace

double cone_heat_kernel(double t, double beta, PolarPoint x, PolarPoint xp) {
    if (!(t > 0.0)) throw InputError("cone_heat_kernel: t must be positive");
    check_beta(beta);
    if (!(x.r >= 0.0) || !(xp.r >= 0.0)) throw InputError("cone_heat_kernel: radii must be >= 0");
    // the kernel depends on the angles only through dphi mod beta
    double dphi = std::fmod(x.phi - xp.phi, beta);
    if (dphi > 0.5 * beta) dphi -= beta;
    if (dphi < -0.5 * beta) dphi += beta;
    const double r1 = x.r, r2 = xp.r;
    const double pref = 1.0 / (4.0 * kPi * t);
    const double delta = choose_shift(beta, dphi, 0.45 * kPi);
    double res = 0.0;
    for (long long k : strip_poles(beta, dphi, delta)) {
        const double th = k * beta - dphi;
        const double R2 = r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * std::cos(th);
        res += pref * std::exp(-R2 / (4.0 * t));
    }
    const double s2 = r1 * r1 + r2 * r2;
    auto f = [&](double y) {
        double acc = 0.0;
        for (double yy : {y, -y}) {
            const cplx E = std::exp(-(s2 + 2.0 * r1 * r2 * std::cos(cplx(delta, yy))) / (4.0 * t));
            acc += (E * delta_cot(beta, delta, dphi, yy)).real();
        }
        return acc;
    };
    QuadOptions o;
    o.abs_tol = 1e-16 * pref * 8.0 * kPi * beta;
    o.rel_tol = 1e-12;
    auto q = integrate_to_infinity(f, 0.0, std::max(1.0, 0.5 * beta), o);
    if (!q.converged) throw ConvergenceError("cone_heat_kernel: line integral did not converge");
    return res - q.value / (8.0 * kPi * beta * t);
}

cplx a_mu(double r, double beta, cplx mu) {
    check_beta(beta);
    if (!(r > 0.0)) throw InputError("a_mu: r must be positive");
    if (!(mu.real() < 0.0)) throw InputError("a_mu: Re mu must be negative");
    const cplx m = -mu;
    const cplx s = r * std::sqrt(m);
    const double delta = choose_shift(beta, 0.0, 0.45 * kPi);
    cplx res = 0.0;
    for (long long k : strip_poles(beta, 0.0, delta)) {
        if (k == 0) continue;  // plane kernel, subtracted
        const double sn = std::fabs(std::sin(0.5 * k * beta));
        res += m / (2.0 * kPi) * macdonald_k0(2.0 * s * sn);
    }
    auto f = [&](double y) {
        cplx acc = 0.0;
        for (double yy : {y, -y}) {
            const cplx w = 2.0 * s * std::cos(0.5 * cplx(delta, yy));
            if (w.real() > 700.0) continue;
            acc += delta_cot(beta, delta, 0.0, yy) * (2.0 * macdonald_k0(w));
        }
        return acc;
    };
    const double scale =
        std::abs(m) * (std::abs(macdonald_k0(2.0 * s * std::cos(0.5 * delta))) + 1e-300) + std::abs(res);
    QuadOptions o;
    o.abs_tol = 1e-15 * scale;
    o.rel_tol = 1e-12;
    auto q = integrate_to_infinity(f, 0.0, 1.0, o, 2);
    if (!q.converged) throw ConvergenceError("a_mu: line integral did not converge");
    return res - m / (8.0 * kPi * beta) * q.value;
}

double coefficient_I(double beta) {
    check_beta(beta);
    const double x = beta / (2.0 * kPi);
    return -(x - 1.0 / x) / 12.0;
}

namespace {

// c_n = (-1)^{n-1} 2 zeta(2n) / pi^{2n}: coth u - 1/u = sum_n c_n u^{2n-1}
const std::array<long double, 64>& coth_series() {
    static const std::array<long double, 64> c = [] {
        std::array<long double, 64> out{};
        const long double pi = 3.141592653589793238462643383279502884L;
        for (int n = 1; n < 64; ++n) {
            long double z = 0;
            const int K = 200;
            for (int k = K; k >= 1; --k) z += std::pow(static_cast<long double>(k), -2.0L * n);
            // Euler-Maclaurin tail beyond K
            const long double Kl = K;
            z += std::pow(Kl, 1.0L - 2 * n) / (2 * n - 1) - 0.5L * std::pow(Kl, -2.0L * n) +
                 (2.0L * n) / 12.0L * std::pow(Kl, -2.0L * n - 1);
            const long double v = 2.0L * z / std::pow(pi, 2.0L * n);
            out[n] = (n % 2 == 1) ? v : -v;
        }
        return out;
    }();
    return c;
}

// coth u - 1/u - u/3
double coth_rem3(double u) {
    if (u < 1.5) {
        const auto& c = coth_series();
        const long double u2 = static_cast<long double>(u) * u;
        long double acc = 0, p = static_cast<long double>(u) * u2;  // u^3
        for (int n = 2; n < 64; ++n) {
            acc += c[n] * p;
            p *= u2;
        }
        return static_cast<double>(acc);
    }
    return 1.0 / std::tanh(u) - 1.0 / u - u / 3.0;
}

// coth u - 1/u
double coth_rem1(double u) { return u < 1.5 ? u / 3.0 + coth_rem3(u) : 1.0 / std::tanh(u) - 1.0 / u; }

// csch^2 u - 1/u^2 + 1/3
double csch2_rem(double u) {
    if (u < 1.5) {
        const auto& c = coth_series();
        const long double u2 = static_cast<long double>(u) * u;
        long double acc = 0, p = u2;
        for (int n = 2; n < 64; ++n) {
            acc -= (2 * n - 1) * c[n] * p;
            p *= u2;
        }
        return static_cast<double>(acc);
    }
    const double sh = std::sinh(u);
    return 1.0 / (sh * sh) - 1.0 / (u * u) + 1.0 / 3.0;
}

// coth x - 1
double coth_m1(double x) { return 2.0 / std::expm1(2.0 * x); }

QuadOptions hadamard_opts() {
    QuadOptions o;
    o.abs_tol = 1e-15;
    o.rel_tol = 1e-14;
    o.max_intervals = 20000;
    return o;
}

void check_split(double split) {
    if (!(split > 0.0) || !std::isfinite(split)) throw InputError("hadamard: split must be positive");
}

} // namespace

double hadamard_coth_coth(double beta, double split) {
    check_beta(beta);
    check_split(split);
    auto near = [&](double l) {
        const double a = kPi * l, b = 0.5 * beta * l;
        return (coth_rem3(b) / a + coth_rem3(a) / b + coth_rem1(a) * coth_rem1(b)) / (8.0 * l);
    };
    auto far = [&](double l) {
        const double ea = coth_m1(kPi * l), eb = coth_m1(0.5 * beta * l);
        return (ea + eb + ea * eb) / (8.0 * l);
    };
    const QuadOptions o = hadamard_opts();
    auto q0 = integrate(near, 0.0, split, o);
    const double decay = std::min(2.0 * kPi, beta);
    auto q1 = integrate_to_infinity(far, split, std::max(1.0, 4.0 / decay), o);
    if (!q0.converged || !q1.converged) throw ConvergenceError("hadamard_coth_coth: quadrature failed");
    const double c1 = beta / (48.0 * kPi) + kPi / (12.0 * beta);
    const double ls = std::log(split);
    return q0.value + q1.value - 1.0 / (8.0 * kPi * beta * split * split) + c1 * ls - ls / 8.0;
}

double hadamard_coth_csch2(double beta, double split) {
    check_beta(beta);
    check_split(split);
    auto near = [&](double l) {
        const double a = kPi * l, b = 0.5 * beta * l;
        const double ra = coth_rem1(a), sb = csch2_rem(b);
        return sb / a + coth_rem3(a) / (b * b) - ra / 3.0 + ra * sb;
    };
    auto far = [&](double l) {
        const double b = 0.5 * beta * l;
        const double e = std::exp(-2.0 * b);
        const double om = -std::expm1(-2.0 * b);
        return (1.0 + coth_m1(kPi * l)) * 4.0 * e / (om * om);
    };
    const QuadOptions o = hadamard_opts();
    auto q0 = integrate(near, 0.0, split, o);
    const double decay = beta;
    auto q1 = integrate_to_infinity(far, split, std::max(1.0, 4.0 / decay), o);
    if (!q0.converged || !q1.converged) throw ConvergenceError("hadamard_coth_csch2: quadrature failed");
    const double c3 = 4.0 / (kPi * beta * beta);
    const double c1 = 4.0 * kPi / (3.0 * beta * beta) - 1.0 / (3.0 * kPi);
    return q0.value + q1.value - c3 / (2.0 * split * split) + c1 * std::log(split);
}

double itilde_primitive(double beta) {
    check_beta(beta);
    const double x = beta / (2.0 * kPi);
    return (-kEulerGamma - 1.0 - std::log(0.5 * beta)) / 12.0 * (x + 1.0 / x) + 5.0 * beta / (48.0 * kPi) -
           2.0 * hadamard_coth_coth(beta);
}

double coefficient_Itilde(double beta) {
    check_beta(beta);
    const double x = beta / (2.0 * kPi);
    const double lg = (-kEulerGamma - 1.0 - std::log(0.5 * beta)) / 12.0;
    const double dprim = -(x + 1.0 / x) / (12.0 * beta) + lg * (1.0 - 1.0 / (x * x)) / (2.0 * kPi) +
                         5.0 / (48.0 * kPi) + hadamard_coth_csch2(beta) / 8.0;
    return -dprim;
}

double itilde_closed_form_candidate(double beta) {
    check_beta(beta);
    const double x = beta / (2.0 * kPi);
    return (kEulerGamma - 1.0 - std::log(0.5 * beta)) / 12.0 * (x + 1.0 / x) + 5.0 * beta / (48.0 * kPi) -
           hadamard_coth_coth(beta);
}

double log_coefficient_d(double beta, bool torus_mode, double theta_prime_abs) {
    check_beta(beta);
    if (torus_mode && !(theta_prime_abs > 0.0))
        throw InputError("coefficient_d: torus mode needs a positive |theta'(0)|");
    const double x = beta / (2.0 * kPi);
    const double two_pi = 2.0 * kPi;
    double e = (beta == two_pi ? 0.0 : itilde_primitive(beta) - itilde_primitive(two_pi)) + coefficient_I(beta) +
               (x + 1.0 / x) * std::log(x) / 12.0;
    if (torus_mode) e += (x + 1.0 / x - 2.0) * std::log(theta_prime_abs) / 12.0;
    return e;
}

double coefficient_d(double beta, bool torus_mode, double theta_prime_abs) {
    return std::exp(log_coefficient_d(beta, torus_mode, theta_prime_abs));
}

SpectralCoefficients spectral_coefficients(double beta) {
    return {coefficient_I(beta), coefficient_Itilde(beta), coefficient_d(beta)};
}

namespace {

struct Moments {
    double mass = 0, logm = 0, err = 0;
};

Moments radial_moments(double beta, double mu, double eps) {
    auto f = [&](double r) -> Eigen::Vector2d {
        if (r <= 0.0) return Eigen::Vector2d::Zero();
        const double a = a_mu(r, beta, mu).real();
        return Eigen::Vector2d(a * r, a * r * std::log(r));
    };
    QuadOptions o;
    o.abs_tol = 1e-14;
    o.rel_tol = 1e-11;
    Moments m;
    Eigen::Vector2d acc = Eigen::Vector2d::Zero();
    double hi = eps;
    // geometric panels towards the logarithmic endpoint at r = 0
    for (int k = 0; k < 60; ++k) {
        const double lo = 0.5 * hi;
        auto q = integrate(f, lo, hi, o);
        if (!q.converged) throw ConvergenceError("coefficient_I_numeric: radial quadrature failed");
        acc += q.value;
        m.err += q.error;
        if (q.value.lpNorm<Eigen::Infinity>() < 1e-17) break;
        hi = lo;
    }
    m.mass = beta * acc(0);
    m.logm = acc(1);
    m.err *= std::max(1.0, beta);
    return m;
}

} // namespace

ConeFit coefficient_I_numeric(double beta, const std::vector<double>& mu_list, double eps,
                              const FitOptions& opt) {
    check_beta(beta);
    if (mu_list.size() < 3) throw InputError("coefficient_I_numeric: need at least three mu values");
    if (!(eps > 0.0)) throw InputError("coefficient_I_numeric: eps must be positive");
    for (double mu : mu_list)
        if (!(mu < 0.0)) throw InputError("coefficient_I_numeric: mu values must be negative");
    ConeFit fit;
    fit.points.resize(mu_list.size());
    parallel_for(mu_list.size(), [&](std::size_t i) {
        const double mu = mu_list[i];
        const Moments m = radial_moments(beta, mu, eps);
        // exponential tail beyond eps, from the local decay rate of a_mu
        const double a0 = a_mu(eps, beta, mu).real();
        const double a1 = a_mu(1.05 * eps, beta, mu).real();
        double lam = (a0 != 0.0 && a1 / a0 > 0.0) ? std::log(a0 / a1) / (0.05 * eps) : 0.0;
        lam = std::max(lam, 1.0 / eps);
        const double le = std::fabs(std::log(eps));
        const double tail_mass = beta * std::fabs(a0) * (eps / lam + 1.0 / (lam * lam));
        const double tail_log = std::fabs(a0) * (eps * le / lam + (le + 1.0) / (lam * lam));
        fit.points[i] = {mu, m.mass, m.logm, tail_mass + m.err + 1e-13};
        fit.points[i].sigma = std::max(tail_mass, tail_log) + m.err + 1e-13;
    });
    double sw = 0, swy = 0;
    double S = 0, Sx = 0, Sxx = 0, Sy = 0, Sxy = 0;
    for (const auto& p : fit.points) {
        const double w = 1.0 / (p.sigma * p.sigma);
        sw += w;
        swy += w * p.mass;
        const double X = std::log(-p.mu);
        S += w;
        Sx += w * X;
        Sxx += w * X * X;
        Sy += w * p.log_moment;
        Sxy += w * X * p.log_moment;
    }
    fit.I_est = swy / sw;
    fit.I_sigma = 1.0 / std::sqrt(sw);
    const double det = S * Sxx - Sx * Sx;
    fit.slope = (S * Sxy - Sx * Sy) / det;
    fit.Itilde_est = (Sy - fit.slope * Sx) / S;
    fit.slope_expected = -coefficient_I(beta) / (2.0 * beta);
    double resid = 0;
    double best_sigma = 1e300;
    for (const auto& p : fit.points) {
        const double X = std::log(-p.mu);
        resid = std::max(resid, std::fabs(p.mass - fit.I_est) / p.sigma);
        resid = std::max(resid, std::fabs(p.log_moment - fit.Itilde_est - fit.slope * X) / p.sigma);
        best_sigma = std::min(best_sigma, p.sigma);
    }
    fit.residual = resid;
    if (best_sigma > opt.regime_tol || resid > opt.residual_tol)
        throw ConvergenceError("coefficient_I_numeric: asymptotic regime not reached (error estimate " +
                               std::to_string(best_sigma) + ", normalized residual " +
                               std::to_string(resid) + ")");
    return fit;
}

} // namespace polydet
