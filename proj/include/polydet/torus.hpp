#pragma once

#include <complex>
#include <vector>

#include "polydet/det_result.hpp"
#include "polydet/special_fn.hpp"

namespace polydet {

struct DivisorPoint {
    cplx P;
    double b;
};

struct TorusMetricSpec {
    TorusModulus B{cplx(0, 1)};
    std::vector<DivisorPoint> points;
    double C = 1.0;

    // Gauss-Bonnet, b_k > -1, C > 0, points distinct mod the lattice
    void validate() const;
    std::vector<double> betas() const;
};

// Representative of z in the parallelogram [0,1) + [0,1) B.
cplx reduce_to_fundamental(cplx z, cplx B);

// Doubly periodic Green function log|theta[1/2,1/2](w)| - pi (Im w)^2 / Im B.
double torus_green(cplx w, cplx B);
long double torus_green_ld(std::complex<long double> w, std::complex<long double> B);
// Derivative of torus_green along the real direction v.
double torus_green_dir(cplx w, cplx B, cplx v);

double torus_phi(const TorusMetricSpec& spec, cplx z);

double torus_D(const TorusMetricSpec& spec);
// Same sum in long double; points are used as given, without reduction.
long double torus_D_ld(const TorusMetricSpec& spec);

struct AreaOptions {
    double tol = 1e-8;
    int polar_nodes = 64;
    int start_grid = 64;
    int max_grid = 2048;
};

double torus_area(const TorusMetricSpec& spec, const AreaOptions& opt = {});

double torus_c0(const TorusModulus& B);

DetResult torus_log_det(const TorusMetricSpec& spec, bool with_area = false, const AreaOptions& opt = {});

} // namespace polydet
