#pragma once

#include <vector>

#include "polydet/cone.hpp"
#include "polydet/torus.hpp"

namespace polydet {

// Parameter along which the metric is varied.
struct Tau {
    enum class Kind { Point, Angle, Scale };
    Kind kind = Kind::Scale;
    int index = 0;
    // Point: vary Im P_index instead of Re P_index
    bool imaginary = false;
    // Angle: beta_index grows while beta_partner shrinks by the same amount
    int partner = -1;

    static Tau point(int i, bool imaginary = false) { return {Kind::Point, i, imaginary, -1}; }
    static Tau angle(int i, int partner) { return {Kind::Angle, i, false, partner}; }
    static Tau scale() { return {}; }
};

struct VariationCoefficients {
    Tau tau;
    std::vector<double> A;
    std::vector<double> Atilde;
};

VariationCoefficients torus_A_coefficients(const TorusMetricSpec& spec, const Tau& tau);

// sum_j [Atilde_j beta_j Itilde(beta_j) + A_j I(beta_j)]
double zeta_calc_rhs(const VariationCoefficients& coeffs, const std::vector<ConeData>& cones);

struct VariationReport {
    double lhs = 0;
    double rhs = 0;
    double residual = 0;
    double step = 0;
};

// Spec moved by `t` along tau (Angle: beta_index += t, beta_partner -= t).
TorusMetricSpec perturb(const TorusMetricSpec& spec, const Tau& tau, double t);

VariationReport verify_variation(const TorusMetricSpec& spec, const Tau& tau, double step = 1e-5);

struct HalvingReport {
    VariationReport full;
    VariationReport half;
    double ratio = 0;  // full.residual / half.residual
};

HalvingReport verify_variation_halving(const TorusMetricSpec& spec, const Tau& tau, double step = 1e-5);

} // namespace polydet
