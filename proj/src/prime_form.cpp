#include "polydet/prime_form.hpp"

namespace polydet {

cplx prime_form(const SurfacePoint& z, const SurfacePoint& zp, const SurfacePack& pack) {
    if (z.abel.size() != pack.genus() || zp.abel.size() != pack.genus())
        throw InputError("prime_form: point data does not match the pack genus");
    const Eigen::VectorXcd d = z.abel - zp.abel;
    if (d.cwiseAbs().maxCoeff() == 0.0) return 0.0;
    return riemann_theta(d, pack.period_matrix, pack.delta) / (z.h * zp.h);
}

cplx fay_sigma(const SurfacePoint& z, const SurfacePoint& p0, const SurfacePack& pack,
               const std::vector<SurfacePoint>& x) {
    const int g = pack.genus();
    if (static_cast<int>(x.size()) != g) throw InputError("fay_sigma: x must be a g-tuple");
    Eigen::VectorXcd S = Eigen::VectorXcd::Zero(g);
    for (const auto& xj : x) S += xj.abel;
    const Eigen::VectorXcd& K = pack.riemann_constant_base();
    const ThetaCharacteristic zero = ThetaCharacteristic::zero(g);
    // K^z = K^{q0} + (g-1) A(z) removes the z-dependence of the denominator
    const cplx num = riemann_theta(S - z.abel + K, pack.period_matrix, zero);
    const cplx den = riemann_theta(S - p0.abel + K, pack.period_matrix, zero);
    if (std::abs(den) < kSigmaDegenerateThreshold)
        throw InputError("fay_sigma: degenerate x-tuple, resample");
    cplx prod = 1.0;
    for (const auto& xj : x) {
        const cplx a = prime_form(xj, p0, pack);
        const cplx b = prime_form(xj, z, pack);
        if (b == cplx(0.0)) throw InputError("fay_sigma: auxiliary point coincides with z");
        prod *= a / b;
    }
    return num / den * prod;
}

cplx fay_sigma(const SurfacePoint& z, const SurfacePoint& p0, const SurfacePack& pack) {
    std::vector<SurfacePoint> x;
    for (const auto& h : pack.sigma_auxiliary) x.push_back(pack.point(h));
    return fay_sigma(z, p0, pack, x);
}

} // namespace polydet
