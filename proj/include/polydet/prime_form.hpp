#pragma once

#include <vector>

#include "polydet/surface_pack.hpp"

namespace polydet {

// E(z,z') = theta[delta](A(z) - A(z')) / (h(z) h(z'))
cplx prime_form(const SurfacePoint& z, const SurfacePoint& zp, const SurfacePack& pack);

// sigma(z,p0) from the auxiliary g-tuple x.
cplx fay_sigma(const SurfacePoint& z, const SurfacePoint& p0, const SurfacePack& pack,
               const std::vector<SurfacePoint>& x);
// Same with the pack's default auxiliary tuple.
cplx fay_sigma(const SurfacePoint& z, const SurfacePoint& p0, const SurfacePack& pack);

inline constexpr double kSigmaDegenerateThreshold = 1e-12;

} // namespace polydet
