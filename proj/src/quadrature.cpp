#include "polydet/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include "polydet/errors.hpp"

namespace polydet {

QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw InputError("gauss_legendre: n must be positive");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const long double pi = 3.141592653589793238462643383279502884L;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        long double x = std::cos(pi * (i + 0.75L) / (n + 0.5L));
        long double dp = 0;
        for (int it = 0; it < 100; ++it) {
            long double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) { p1 = x; p0 = 1; }
            dp = n * (x * p1 - p0) / (x * x - 1);
            long double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-19L) break;
        }
        {
            long double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) { p1 = x; p0 = 1; }
            dp = n * (x * p1 - p0) / (x * x - 1);
        }
        const long double w = 2 / ((1 - x * x) * dp * dp);
        rule.nodes[i] = static_cast<double>(-x);
        rule.nodes[n - 1 - i] = static_cast<double>(x);
        rule.weights[i] = rule.weights[n - 1 - i] = static_cast<double>(w);
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

// Golub-Welsch on the Jacobi matrix of P^{(0,alpha)}, mapped to [0, 1].
QuadratureRule gauss_jacobi_01(int n, double alpha) {
    if (n < 1) throw InputError("gauss_jacobi_01: n must be positive");
    if (!(alpha > -1.0)) throw InputError("gauss_jacobi_01: alpha must exceed -1");
    const double a = 0.0, b = alpha;
    Eigen::VectorXd diag(n), off(std::max(n - 1, 1));
    for (int k = 0; k < n; ++k) {
        const double s = 2.0 * k + a + b;
        if (k == 0)
            diag(k) = (b - a) / (a + b + 2.0);
        else
            diag(k) = (b * b - a * a) / (s * (s + 2.0));
        if (k + 1 < n) {
            const double m = k + 1.0;
            const double t = 2.0 * m + a + b;
            off(k) = std::sqrt(4.0 * m * (m + a) * (m + b) * (m + a + b) /
                               (t * t * (t + 1.0) * (t - 1.0)));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        J(k, k) = diag(k);
        if (k + 1 < n) J(k, k + 1) = J(k + 1, k) = off(k);
    }
    es.compute(J);
    // total mass of (1+x)^alpha on [-1,1] is 2^{alpha+1}/(alpha+1); the
    // change of variables x = 2u-1 contributes 2^{-(alpha+1)}.
    const double mu0 = 1.0 / (alpha + 1.0);
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int k = 0; k < n; ++k) {
        const double v0 = es.eigenvectors()(0, k);
        rule.nodes[k] = 0.5 * (es.eigenvalues()(k) + 1.0);
        rule.weights[k] = mu0 * v0 * v0;
    }
    return rule;
}

} // namespace polydet
