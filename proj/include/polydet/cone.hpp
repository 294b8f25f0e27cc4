#pragma once

#include <vector>

#include "polydet/quadrature.hpp"
#include "polydet/special_fn.hpp"

namespace polydet {

struct ConeData {
    double beta;
    double b() const { return beta / (2.0 * kPi) - 1.0; }
    static ConeData from_weight(double b) { return {2.0 * kPi * (1.0 + b)}; }
    void validate() const;
};

struct SpectralCoefficients {
    double I;
    double Itilde;
    double d;
};

struct PolarPoint {
    double r;
    double phi;
};

// Heat kernel of the Friedrichs Laplacian on the infinite cone of angle beta.
double cone_heat_kernel(double t, double beta, PolarPoint x, PolarPoint xp);

// Diagonal defect a_mu(r, beta): the mu-resolvent transform of the heat
// kernel minus the plane kernel, scaled by -mu.
cplx a_mu(double r, double beta, cplx mu);

double coefficient_I(double beta);

// Constant term of the log-moment asymptotics,
//   int_0^eps a_mu(r) log r  r dr = -I/(2 beta) log(-mu) + Itilde + O(|mu|^-inf).
double coefficient_Itilde(double beta);

// Hadamard finite part of int_0^inf coth(pi l) coth(beta l/2) dl/(8l) under
// the symmetric cutoff int_eps^{1/eps} with eps^-2 and log eps terms dropped.
// `split` is where the small-l subtraction hands over to the large-l one.
double hadamard_coth_coth(double beta, double split = 1.0);

// Finite part of int_0^inf coth(pi l) csch^2(beta l/2) dl, same convention.
double hadamard_coth_csch2(double beta, double split = 1.0);

// Primitive entering d: J(beta) with dJ/dbeta = -Itilde(beta).
double itilde_primitive(double beta);

// Closed-form candidate in terms of the coth-coth finite part, kept for
// diagnostics. It does not reproduce the asymptotic constant.
double itilde_closed_form_candidate(double beta);

// d(beta). In torus mode `theta_prime_abs` = |theta'[1/2,1/2](0|B)| is required.
double coefficient_d(double beta, bool torus_mode = false, double theta_prime_abs = 0.0);
double log_coefficient_d(double beta, bool torus_mode = false, double theta_prime_abs = 0.0);

SpectralCoefficients spectral_coefficients(double beta);

struct FitPoint {
    double mu;
    double mass;       // beta int_0^eps a r dr
    double log_moment; // int_0^eps a log r r dr
    double sigma;      // estimated truncation + quadrature error
};

struct ConeFit {
    double I_est = 0;
    double Itilde_est = 0;
    double slope = 0;           // fitted coefficient of log(-mu)
    double slope_expected = 0;  // -I(beta)/(2 beta)
    double I_sigma = 0;
    double residual = 0;        // max |normalized residual| of the two fits
    std::vector<FitPoint> points;
};

struct FitOptions {
    // largest acceptable error estimate at the most negative mu
    double regime_tol = 1e-5;
    // max normalized residual before the fit is declared inconsistent
    double residual_tol = 25.0;
};

ConeFit coefficient_I_numeric(double beta, const std::vector<double>& mu_list = {-100, -200, -400},
                              double eps = 0.5, const FitOptions& opt = {});

} // namespace polydet
