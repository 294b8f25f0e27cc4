#pragma once

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "polydet/errors.hpp"

namespace polydet {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kEulerGamma = 0.577215664901532860606512090082402431;

struct ThetaCharacteristic {
    std::vector<double> a;
    std::vector<double> b;

    std::size_t genus() const { return a.size(); }
    // true iff both vectors are half-integer and 4 a.b is odd
    bool odd_half_integer() const;
    void validate() const;

    static ThetaCharacteristic zero(std::size_t g);
    static ThetaCharacteristic half_half() { return {{0.5}, {0.5}}; }
};

struct TorusModulus {
    cplx B;
    void validate() const;
};

struct PeriodMatrix {
    Eigen::MatrixXcd B;

    int genus() const { return static_cast<int>(B.rows()); }
    // throws InputError unless B is square, symmetric, Im B positive definite
    void validate(double sym_tol = 1e-12) const;
};

namespace detail {

// Value and z-derivative of sum_n exp(i pi B (n+a)^2 + 2 pi i (n+a)(z+b)).
// Templated so that finite-difference harnesses can run in long double.
template <class T>
std::pair<std::complex<T>, std::complex<T>> jacobi_series(T a, T b, std::complex<T> z,
                                                          std::complex<T> B, T tol) {
    using C = std::complex<T>;
    const T pi = static_cast<T>(3.141592653589793238462643383279502884L);
    const T y = B.imag();
    // |term| = exp(-pi y (m + c)^2 + pi y c^2) with m = n + a
    const T c = z.imag() / y;
    const T R = std::sqrt((std::log(1 / tol) + T(8)) / (pi * y)) + T(1);
    const long long lo = static_cast<long long>(std::floor(-c - R - a));
    const long long hi = static_cast<long long>(std::ceil(-c + R - a));
    const C ipi(0, pi);
    C val(0), der(0);
    for (long long n = lo; n <= hi; ++n) {
        const T m = static_cast<T>(n) + a;
        const C e = std::exp(ipi * B * (m * m) + T(2) * ipi * m * (z + b));
        val += e;
        der += T(2) * ipi * m * e;
    }
    return {val, der};
}

} // namespace detail

cplx jacobi_theta(const ThetaCharacteristic& ch, cplx z, const TorusModulus& B, double tol = 1e-13);
cplx jacobi_theta_z_derivative(const ThetaCharacteristic& ch, cplx z, const TorusModulus& B,
                               double tol = 1e-13);

// theta[1/2,1/2] in long double, value and derivative
std::pair<std::complex<long double>, std::complex<long double>>
theta_half_ld(std::complex<long double> z, std::complex<long double> B);

struct ThetaValue {
    cplx value;
    Eigen::VectorXcd gradient;
};

cplx riemann_theta(const Eigen::VectorXcd& z, const PeriodMatrix& B, const ThetaCharacteristic& ch,
                   double tol = 1e-12);
ThetaValue riemann_theta_with_gradient(const Eigen::VectorXcd& z, const PeriodMatrix& B,
                                       const ThetaCharacteristic& ch, double tol = 1e-12);

cplx dedekind_eta(const TorusModulus& B);

// Switch between the power series and the integral representation.
inline constexpr double kK0SwitchRadius = 7.0;

cplx macdonald_k0(cplx w);
double macdonald_k0(double x);

} // namespace polydet
