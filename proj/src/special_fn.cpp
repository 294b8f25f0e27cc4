#include "polydet/special_fn.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <limits>
#include <string>

namespace polydet {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

bool is_half_integer(double v) { return std::fabs(2.0 * v - std::round(2.0 * v)) < 1e-14; }

} // namespace

bool ThetaCharacteristic::odd_half_integer() const {
    if (a.size() != b.size() || a.empty()) return false;
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!is_half_integer(a[i]) || !is_half_integer(b[i])) return false;
        s += 4.0 * a[i] * b[i];
    }
    const long long k = std::llround(s);
    return std::fabs(s - k) < 1e-12 && (k % 2 != 0);
}

void ThetaCharacteristic::validate() const {
    if (a.size() != b.size() || a.empty())
        throw InputError("theta characteristic: a and b must have equal positive length");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] >= 0.0 && a[i] < 1.0 && b[i] >= 0.0 && b[i] < 1.0))
            throw InputError("theta characteristic: entries must lie in [0,1)");
}

ThetaCharacteristic ThetaCharacteristic::zero(std::size_t g) {
    return {std::vector<double>(g, 0.0), std::vector<double>(g, 0.0)};
}

void TorusModulus::validate() const {
    if (!finite(B)) throw InputError("torus modulus: non-finite B");
    if (!(B.imag() > 0)) throw InputError("torus modulus: Im B must be positive");
}

void PeriodMatrix::validate(double sym_tol) const {
    if (B.rows() == 0 || B.rows() != B.cols()) throw InputError("period matrix: must be square");
    if (!B.allFinite()) throw InputError("period matrix: non-finite entries");
    const double scale = std::max(1.0, B.cwiseAbs().maxCoeff());
    if ((B - B.transpose()).cwiseAbs().maxCoeff() > sym_tol * scale)
        throw InputError("period matrix: B is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B.imag());
    if (!(es.eigenvalues().minCoeff() > 0))
        throw InputError("period matrix: Im B is not positive definite");
}

cplx jacobi_theta(const ThetaCharacteristic& ch, cplx z, const TorusModulus& B, double tol) {
    B.validate();
    if (!finite(z)) throw InputError("jacobi_theta: non-finite z");
    if (ch.genus() != 1) throw InputError("jacobi_theta: characteristic must have length 1");
    return detail::jacobi_series<double>(ch.a[0], ch.b[0], z, B.B, tol).first;
}

cplx jacobi_theta_z_derivative(const ThetaCharacteristic& ch, cplx z, const TorusModulus& B,
                               double tol) {
    B.validate();
    if (!finite(z)) throw InputError("jacobi_theta: non-finite z");
    if (ch.genus() != 1) throw InputError("jacobi_theta: characteristic must have length 1");
    return detail::jacobi_series<double>(ch.a[0], ch.b[0], z, B.B, tol).second;
}

std::pair<std::complex<long double>, std::complex<long double>>
theta_half_ld(std::complex<long double> z, std::complex<long double> B) {
    if (!(B.imag() > 0)) throw InputError("theta_half_ld: Im B must be positive");
    return detail::jacobi_series<long double>(0.5L, 0.5L, z, B, 1e-21L);
}

namespace {

// Enumerates all n in Z^g with (n + a + c)^T Y (n + a + c) <= R^2, given the
// upper Cholesky factor U of Y (Y = U^T U). Fincke-Pohst recursion from the
// last coordinate.
template <class Visit>
void enumerate_ellipsoid(const Eigen::MatrixXd& U, const Eigen::VectorXd& shift, double R2,
                         Visit&& visit) {
    const int g = static_cast<int>(U.rows());
    Eigen::VectorXi n(g);
    Eigen::VectorXd x(g);
    std::vector<double> remaining(g + 1);
    remaining[g] = R2;
    // recursive lambda over coordinate index i (descending)
    auto rec = [&](auto&& self, int i) -> void {
        double centre_off = 0;
        for (int j = i + 1; j < g; ++j) centre_off += U(i, j) * x(j);
        const double uii = U(i, i);
        const double rad = std::sqrt(std::max(remaining[i + 1], 0.0)) / uii;
        // need |uii x_i + centre_off| <= sqrt(remaining); x_i = n_i + shift_i
        const double mid = -centre_off / uii - shift(i);
        const long long lo = static_cast<long long>(std::ceil(mid - rad));
        const long long hi = static_cast<long long>(std::floor(mid + rad));
        for (long long k = lo; k <= hi; ++k) {
            n(i) = static_cast<int>(k);
            x(i) = static_cast<double>(k) + shift(i);
            const double t = uii * x(i) + centre_off;
            remaining[i] = remaining[i + 1] - t * t;
            if (remaining[i] < 0) continue;
            if (i == 0)
                visit(n);
            else
                self(self, i - 1);
        }
    };
    rec(rec, g - 1);
}

ThetaValue theta_sum(const Eigen::VectorXcd& z, const PeriodMatrix& B, const ThetaCharacteristic& ch,
                     double tol, bool want_grad) {
    B.validate();
    const int g = B.genus();
    if (z.size() != g) throw InputError("riemann_theta: z has wrong length");
    if (static_cast<int>(ch.genus()) != g)
        throw InputError("riemann_theta: characteristic has wrong length");
    if (!z.allFinite()) throw InputError("riemann_theta: non-finite z");
    const Eigen::MatrixXd Y = B.B.imag();
    Eigen::LLT<Eigen::MatrixXd> llt(Y);
    const Eigen::MatrixXd U = llt.matrixU();
    const Eigen::VectorXd c = llt.solve(Eigen::VectorXd(z.imag()));
    Eigen::VectorXd a(g), bvec(g);
    for (int i = 0; i < g; ++i) {
        a(i) = ch.a[i];
        bvec(i) = ch.b[i];
    }
    // Gaussian tail: terms outside radius R are below exp(-pi R^2) times the
    // peak; the lattice-point growth is covered by the g-dependent margin.
    const double R2 = (std::log(1.0 / tol) + 4.0 * g + 6.0) / kPi;
    const Eigen::VectorXd shift = a + c;
    const cplx ipi(0.0, kPi);
    ThetaValue out{0.0, Eigen::VectorXcd::Zero(g)};
    const Eigen::VectorXcd zb = z + bvec.cast<cplx>();
    enumerate_ellipsoid(U, shift, R2, [&](const Eigen::VectorXi& n) {
        const Eigen::VectorXd m = n.cast<double>() + a;
        const cplx quad = m.cast<cplx>().dot(B.B * m.cast<cplx>());
        const cplx lin = m.cast<cplx>().dot(zb);
        const cplx e = std::exp(ipi * quad + 2.0 * ipi * lin);
        out.value += e;
        if (want_grad) out.gradient += (2.0 * ipi * e) * m.cast<cplx>();
    });
    return out;
}

} // namespace

cplx riemann_theta(const Eigen::VectorXcd& z, const PeriodMatrix& B, const ThetaCharacteristic& ch,
                   double tol) {
    return theta_sum(z, B, ch, tol, false).value;
}

ThetaValue riemann_theta_with_gradient(const Eigen::VectorXcd& z, const PeriodMatrix& B,
                                       const ThetaCharacteristic& ch, double tol) {
    return theta_sum(z, B, ch, tol, true);
}

cplx dedekind_eta(const TorusModulus& B) {
    B.validate();
    const cplx ipi(0.0, kPi);
    const cplx q = std::exp(2.0 * ipi * B.B);
    cplx prod = 1.0, qn = q;
    for (int n = 1; n < 100000 && std::abs(qn) > 1e-18; ++n) {
        prod *= 1.0 - qn;
        qn *= q;
    }
    return std::exp(ipi * B.B / 12.0) * prod;
}

namespace {

using cld = std::complex<long double>;

cplx k0_series(cplx w) {
    const long double gamma = 0.577215664901532860606512090082402431L;
    const cld wl(w.real(), w.imag());
    const cld x = wl * wl / 4.0L;
    cld term = 1.0L;  // (w^2/4)^k / (k!)^2
    cld i0 = 1.0L;
    cld rest = 0.0L;
    long double harmonic = 0.0L;
    for (int k = 1; k < 200; ++k) {
        term *= x / static_cast<long double>(k * k);
        harmonic += 1.0L / k;
        i0 += term;
        rest += term * harmonic;
        if (std::abs(term) * (1.0L + harmonic) < 1e-24L * std::abs(i0)) break;
    }
    const cld v = -(std::log(wl / 2.0L) + gamma) * i0 + rest;
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

// K0(w) = int_0^inf exp(-w cosh t) dt by the trapezoidal rule. The integrand
// is analytic in |Im t| < pi/2 - |arg w|, so the step is tied to that strip.
cplx k0_integral(cplx w) {
    const double rho = std::abs(w);
    const double alpha = std::arg(w);
    const double d = 0.5 * kPi - std::fabs(alpha);
    // the peak at t = 0 has width ~ rho^{-1/2}
    const double h = std::min({0.1, d / 7.0, 0.6 / std::sqrt(rho)});
    const double re = w.real();
    // terms below exp(-45) relative to the t = 0 term are dropped
    const double tmax = std::acosh(1.0 + 45.0 / re);
    const int n = static_cast<int>(std::ceil(tmax / h));
    const cplx e0 = std::exp(-w);
    long double sr = 0.5L * e0.real(), si = 0.5L * e0.imag();
    for (int k = 1; k <= n; ++k) {
        const cplx e = std::exp(-w * std::cosh(k * h));
        sr += e.real();
        si += e.imag();
    }
    return {static_cast<double>(sr * h), static_cast<double>(si * h)};
}

} // namespace

cplx macdonald_k0(cplx w) {
    if (!finite(w)) throw InputError("macdonald_k0: non-finite argument");
    if (w.imag() == 0.0 && w.real() <= 0.0)
        throw InputError("macdonald_k0: argument on the closed negative real axis");
    if (std::abs(w) <= kK0SwitchRadius) return k0_series(w);
    if (!(w.real() > 0.0))
        throw InputError("macdonald_k0: Re w must be positive for |w| beyond the switch radius");
    return k0_integral(w);
}

double macdonald_k0(double x) {
    if (!(x > 0.0)) throw InputError("macdonald_k0: real argument must be positive");
    return macdonald_k0(cplx(x, 0.0)).real();
}

} // namespace polydet
