#pragma once

#include <memory>
#include <string>
#include <vector>

#include "polydet/det_result.hpp"
#include "polydet/prime_form.hpp"
#include "polydet/surface_pack.hpp"

namespace polydet {

struct PackDivisorPoint {
    std::string handle;
    double b;
};

struct HigherGenusMetricSpec {
    std::shared_ptr<const SurfacePack> pack;
    std::vector<PackDivisorPoint> divisor;
    double C = 1.0;
    // empty: use the pack's basepoints / auxiliary tuple
    std::string p0;
    std::string p1;
    std::vector<std::string> sigma_x;

    void validate() const;
    const std::string& base_p0() const { return p0.empty() ? pack->p0 : p0; }
    const std::string& base_p1() const { return p1.empty() ? pack->p1 : p1; }
    std::vector<SurfacePoint> auxiliary() const;
};

double q_bilinear(const SurfacePoint& z, const SurfacePoint& zp, const SurfacePack& pack);
double q_bilinear(const std::string& z, const std::string& zp, const SurfacePack& pack);

double phi_potential(const HigherGenusMetricSpec& spec, const SurfacePoint& z);
double phi_potential(const HigherGenusMetricSpec& spec, const std::string& z);

// u_j at the chart point P_j + dz of the j-th divisor entry; dz = 0 gives
// the limit value.
cplx u_j_holomorphic_part(const HigherGenusMetricSpec& spec, std::size_t j, cplx dz);

double higher_genus_D(const HigherGenusMetricSpec& spec);

// c0 is left symbolic: the result is log(det/A) - log c0.
DetResult higher_genus_log_det(const HigherGenusMetricSpec& spec);

} // namespace polydet
