#include "polydet/torus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "polydet/cone.hpp"
#include "polydet/parallel.hpp"
#include "polydet/quadrature.hpp"

namespace polydet {

std::optional<double> DetResult::log_det() const {
    if (!area) return std::nullopt;
    return log_det_over_area + std::log(*area);
}

namespace {

// w mod lattice, placed in |Re| <= 1/2, |Im| <= Im B / 2 (approximately)
template <class T>
std::complex<T> centre_reduce(std::complex<T> w, std::complex<T> B) {
    const T n = std::round(w.imag() / B.imag());
    w -= n * B;
    w -= std::round(w.real());
    return w;
}

double lattice_distance(cplx w, cplx B) {
    w = centre_reduce(w, B);
    double best = std::numeric_limits<double>::infinity();
    for (int m = -2; m <= 2; ++m)
        for (int n = -2; n <= 2; ++n) best = std::min(best, std::abs(w + double(n) + double(m) * B));
    return best;
}

std::vector<DivisorPoint> sorted_reduced(const TorusMetricSpec& spec) {
    std::vector<DivisorPoint> pts = spec.points;
    for (auto& p : pts) p.P = reduce_to_fundamental(p.P, spec.B.B);
    std::sort(pts.begin(), pts.end(), [](const DivisorPoint& x, const DivisorPoint& y) {
        return std::make_tuple(x.P.real(), x.P.imag(), x.b) < std::make_tuple(y.P.real(), y.P.imag(), y.b);
    });
    return pts;
}

} // namespace

void TorusMetricSpec::validate() const {
    B.validate();
    if (!(C > 0.0) || !std::isfinite(C)) throw InputError("torus: C must be positive");
    double sum = 0, mag = 1;
    for (const auto& p : points) {
        if (!std::isfinite(p.P.real()) || !std::isfinite(p.P.imag()) || !std::isfinite(p.b))
            throw InputError("torus: non-finite divisor entry");
        if (!(p.b > -1.0)) throw InputError("torus: every b_k must exceed -1");
        sum += p.b;
        mag += std::fabs(p.b);
    }
    if (std::fabs(sum) > 1e-14 * mag) throw InputError("torus: weights must sum to 0");
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (lattice_distance(points[i].P - points[j].P, B.B) < 1e-12)
                throw InputError("torus: divisor points must be distinct mod the lattice");
}

std::vector<double> TorusMetricSpec::betas() const {
    std::vector<double> out;
    for (const auto& p : points) out.push_back(2.0 * kPi * (1.0 + p.b));
    return out;
}

cplx reduce_to_fundamental(cplx z, cplx B) {
    const double n = std::floor(z.imag() / B.imag());
    z -= n * B;
    z -= std::floor(z.real());
    if (z.real() >= 1.0) z -= 1.0;
    return z;
}

double torus_green(cplx w, cplx B) {
    w = centre_reduce(w, B);
    const cplx th = jacobi_theta(ThetaCharacteristic::half_half(), w, TorusModulus{B});
    return std::log(std::abs(th)) - kPi * w.imag() * w.imag() / B.imag();
}

long double torus_green_ld(std::complex<long double> w, std::complex<long double> B) {
    w = centre_reduce(w, B);
    const long double pi = 3.141592653589793238462643383279502884L;
    const auto th = theta_half_ld(w, B).first;
    return std::log(std::abs(th)) - pi * w.imag() * w.imag() / B.imag();
}

double torus_green_dir(cplx w, cplx B, cplx v) {
    w = centre_reduce(w, B);
    const auto ch = ThetaCharacteristic::half_half();
    const TorusModulus tm{B};
    const cplx ratio = jacobi_theta_z_derivative(ch, w, tm) / jacobi_theta(ch, w, tm);
    return (ratio * v).real() - 2.0 * kPi * w.imag() * v.imag() / B.imag();
}

double torus_phi(const TorusMetricSpec& spec, cplx z) {
    spec.validate();
    double phi = -std::log(spec.C);
    for (const auto& p : sorted_reduced(spec)) {
        if (lattice_distance(z - p.P, spec.B.B) == 0.0) throw InputError("torus_phi: z is a cone point");
        phi -= 2.0 * p.b * torus_green(z - p.P, spec.B.B);
    }
    return phi;
}

namespace {

template <class T, class G>
T d_sum(const std::vector<DivisorPoint>& pts, G&& green) {
    const T pi = static_cast<T>(3.141592653589793238462643383279502884L);
    T acc = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const T bi = pts[i].b, beta_i = 2 * pi * (1 + bi);
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const T bj = pts[j].b, beta_j = 2 * pi * (1 + bj);
            acc += bi * bj * (1 / beta_i + 1 / beta_j) * green(i, j);
        }
    }
    return pi / 3 * acc;
}

} // namespace

double torus_D(const TorusMetricSpec& spec) {
    spec.validate();
    const auto pts = sorted_reduced(spec);
    return d_sum<double>(pts, [&](std::size_t i, std::size_t j) {
        return torus_green(pts[i].P - pts[j].P, spec.B.B);
    });
}

long double torus_D_ld(const TorusMetricSpec& spec) {
    spec.validate();
    using CL = std::complex<long double>;
    const CL B(spec.B.B.real(), spec.B.B.imag());
    const auto& pts = spec.points;
    return d_sum<long double>(pts, [&](std::size_t i, std::size_t j) {
        const CL w = CL(pts[i].P.real(), pts[i].P.imag()) - CL(pts[j].P.real(), pts[j].P.imag());
        return torus_green_ld(w, B);
    });
}

namespace {

// 1 on [0, 0.2], 0 on [1, inf), C-infinity in between
double bump(double s) {
    if (s <= 0.2) return 1.0;
    if (s >= 1.0) return 0.0;
    const double u = 1.0 - s, v = s - 0.2;
    const double eu = std::exp(-0.8 / u), ev = std::exp(-0.8 / v);
    return eu / (eu + ev);
}

struct AreaSetup {
    std::vector<DivisorPoint> pts;
    cplx B;
    double C;
    double rho;
};

// e^{-phi} with the k-th singular factor |z-P_k|^{2 b_k} removed (k < 0: none)
double density(const AreaSetup& s, cplx z, int k, double r) {
    double e = -std::log(s.C);
    for (std::size_t j = 0; j < s.pts.size(); ++j) e -= 2.0 * s.pts[j].b * torus_green(z - s.pts[j].P, s.B);
    if (k >= 0) e += 2.0 * s.pts[k].b * std::log(r);
    return std::exp(-e);
}

double grid_part(const AreaSetup& s, int N) {
    std::vector<double> rows(N, 0.0);
    parallel_for(N, [&](std::size_t it) {
        const double t = double(it) / N;
        double acc = 0;
        for (int is = 0; is < N; ++is) {
            const cplx z = double(is) / N + t * s.B;
            double cut = 1.0;
            for (const auto& p : s.pts) cut -= bump(lattice_distance(z - p.P, s.B) / s.rho);
            if (cut <= 0.0) continue;
            acc += cut * density(s, z, -1, 0.0);
        }
        rows[it] = acc;
    });
    double sum = 0;
    for (double r : rows) sum += r;
    return sum * s.B.imag() / (double(N) * N);
}

double polar_part(const AreaSetup& s, int n) {
    double total = 0;
    for (std::size_t k = 0; k < s.pts.size(); ++k) {
        const double alpha = 2.0 * s.pts[k].b + 1.0;
        const QuadratureRule gj = gauss_jacobi_01(n, alpha);
        std::vector<double> ring(gj.nodes.size(), 0.0);
        const int nt = 2 * n;
        parallel_for(gj.nodes.size(), [&](std::size_t ir) {
            const double r = s.rho * gj.nodes[ir];
            double acc = 0;
            for (int it = 0; it < nt; ++it) {
                const double th = 2.0 * kPi * it / nt;
                acc += density(s, s.pts[k].P + std::polar(r, th), int(k), r);
            }
            ring[ir] = gj.weights[ir] * bump(gj.nodes[ir]) * acc * 2.0 * kPi / nt;
        });
        double sum = 0;
        for (double v : ring) sum += v;
        total += std::pow(s.rho, alpha + 1.0) * sum;
    }
    return total;
}

} // namespace

double torus_area(const TorusMetricSpec& spec, const AreaOptions& opt) {
    spec.validate();
    if (!(opt.tol > 0.0)) throw InputError("torus_area: tol must be positive");
    AreaSetup s{sorted_reduced(spec), spec.B.B, spec.C, 0.1};
    for (int m = 0; m <= 2; ++m)
        for (int n = -2; n <= 2; ++n)
            if (m != 0 || n > 0) s.rho = std::min(s.rho, 0.4 * std::abs(double(n) + double(m) * s.B));
    for (std::size_t i = 0; i < s.pts.size(); ++i)
        for (std::size_t j = i + 1; j < s.pts.size(); ++j)
            s.rho = std::min(s.rho, 0.45 * lattice_distance(s.pts[i].P - s.pts[j].P, s.B));
    if (s.pts.empty()) return spec.C * s.B.imag();
    int N = opt.start_grid, n = opt.polar_nodes;
    double prev = grid_part(s, N) + polar_part(s, n);
    while (2 * N <= opt.max_grid) {
        N *= 2;
        n *= 2;
        const double cur = grid_part(s, N) + polar_part(s, n);
        if (std::fabs(cur - prev) <= opt.tol * std::fabs(cur)) return cur;
        prev = cur;
    }
    throw ConvergenceError("torus_area: refinement did not reach tol");
}

double torus_c0(const TorusModulus& B) {
    B.validate();
    return B.B.imag() * std::pow(std::abs(dedekind_eta(B)), 4);
}

DetResult torus_log_det(const TorusMetricSpec& spec, bool with_area, const AreaOptions& opt) {
    spec.validate();
    DetResult r;
    r.D = torus_D(spec);
    r.log_c0 = std::log(torus_c0(spec.B));
    const double tp =
        std::abs(jacobi_theta_z_derivative(ThetaCharacteristic::half_half(), 0.0, spec.B));
    const double logC = std::log(spec.C);
    for (const auto& p : sorted_reduced(spec)) {
        const double beta = 2.0 * kPi * (1.0 + p.b);
        r.sum_log_d2 += 2.0 * log_coefficient_d(beta, true, tp);
        r.scaling_term -= coefficient_I(beta) * logC;
    }
    r.log_det_over_area = r.D + *r.log_c0 + r.sum_log_d2 + r.scaling_term;
    if (with_area) r.area = torus_area(spec, opt);
    return r;
}

} // namespace polydet
