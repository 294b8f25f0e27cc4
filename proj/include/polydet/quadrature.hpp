#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Core>

namespace polydet {

struct QuadOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_intervals = 4000;
};

template <class V>
struct QuadResult {
    V value{};
    double error = 0.0;
    int evaluations = 0;
    bool converged = false;
};

namespace detail {

inline double magnitude(double v) { return std::fabs(v); }
inline double magnitude(long double v) { return static_cast<double>(std::fabs(v)); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
template <class Derived>
double magnitude(const Eigen::MatrixBase<Derived>& v) { return v.template lpNorm<Eigen::Infinity>(); }

template <class V>
V zero_like(const V& v) { return v * 0.0; }

// 15-point Kronrod extension of the 7-point Gauss rule.
struct GK15 {
    static constexpr double xgk[8] = {
        0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
    static constexpr double wgk[8] = {
        0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    static constexpr double wg[4] = {
        0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
        0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
};

template <class F, class V>
void gk15(F& f, double a, double b, V& result, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    V fc = f(c);
    V k = fc * GK15::wgk[7];
    V g = fc * GK15::wg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * GK15::xgk[j];
        V s = f(c - dx) + f(c + dx);
        k = k + s * GK15::wgk[j];
        if (j % 2 == 1) g = g + s * GK15::wg[j / 2];
    }
    result = k * h;
    err = magnitude(V((k - g) * h));
}

} // namespace detail

// Globally adaptive Gauss-Kronrod quadrature: the interval with the largest
// error estimate is bisected until the total estimate meets the tolerance.
// Node placement depends only on f and the options, so results are
// reproducible bit for bit.
template <class F>
auto integrate(F&& f, double a, double b, const QuadOptions& opt = {})
    -> QuadResult<decltype(f(a))> {
    using V = decltype(f(a));
    struct Piece { double a, b; V val; double err; };
    QuadResult<V> out;
    std::vector<Piece> pieces;
    pieces.reserve(64);
    {
        Piece p{a, b, {}, 0.0};
        detail::gk15(f, a, b, p.val, p.err);
        pieces.push_back(p);
        out.evaluations += 15;
    }
    while (true) {
        V total = detail::zero_like(pieces[0].val);
        double err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            total = total + pieces[i].val;
            err += pieces[i].err;
            if (pieces[i].err > pieces[worst].err) worst = i;
        }
        const double target = std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(total));
        if (err <= target || static_cast<int>(pieces.size()) >= opt.max_intervals) {
            out.value = total;
            out.error = err;
            out.converged = err <= target;
            return out;
        }
        Piece w = pieces[worst];
        const double m = 0.5 * (w.a + w.b);
        if (!(m > w.a && m < w.b)) {
            out.value = total;
            out.error = err;
            out.converged = false;
            return out;
        }
        Piece l{w.a, m, {}, 0.0}, r{m, w.b, {}, 0.0};
        detail::gk15(f, l.a, l.b, l.val, l.err);
        detail::gk15(f, r.a, r.b, r.val, r.err);
        out.evaluations += 30;
        pieces[worst] = l;
        pieces.push_back(r);
    }
}

// Integrates over [a, inf) in consecutive panels of width `panel` until
// `quiet` panels in a row contribute less than the absolute tolerance.
template <class F>
auto integrate_to_infinity(F&& f, double a, double panel, const QuadOptions& opt = {},
                           int quiet = 3, int max_panels = 100000)
    -> QuadResult<decltype(f(a))> {
    using V = decltype(f(a));
    QuadResult<V> out;
    out.converged = true;
    int run = 0;
    bool first = true;
    for (int k = 0; k < max_panels; ++k) {
        QuadOptions po = opt;
        po.abs_tol = opt.abs_tol / 8.0;
        auto r = integrate(f, a + k * panel, a + (k + 1) * panel, po);
        out.value = first ? r.value : V(out.value + r.value);
        first = false;
        out.error += r.error;
        out.evaluations += r.evaluations;
        out.converged = out.converged && r.converged;
        const double scale = std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(out.value));
        run = detail::magnitude(r.value) < 0.01 * scale ? run + 1 : 0;
        if (run >= quiet) return out;
    }
    out.converged = false;
    return out;
}

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int n);

// n-point Gauss-Jacobi rule on [0, 1] for the weight x^alpha, alpha > -1.
QuadratureRule gauss_jacobi_01(int n, double alpha);

} // namespace polydet
