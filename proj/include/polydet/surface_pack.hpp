#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "polydet/special_fn.hpp"

namespace polydet {

// Evaluated data for one point of the surface, expressed in a chosen chart.
struct SurfacePoint {
    std::string label;
    Eigen::VectorXcd abel;          // lift of the Abel map from the pack base point
    Eigen::VectorXcd differential;  // v_i at the point, coefficient of dz in the chart
    cplx h;                         // half-order differential, h^2 = sum_i d_i theta[delta](0) v_i
};

struct PointRecord {
    std::string handle;
    std::string chart;
    SurfacePoint at;
    // Taylor coefficients c_n (n >= 1) of A(P + dz) - A(P) in the chart.
    std::vector<Eigen::VectorXcd> abel_taylor;
    double chart_radius = 0.0;
    // Another record describing the same point in a different chart;
    // dz_this/dz_other at the point is `transition`.
    std::optional<std::string> same_point_as;
    cplx transition{1.0, 0.0};
};

class SurfacePack {
public:
    static constexpr int kSchemaVersion = 1;

    static SurfacePack load(const std::string& path);
    static SurfacePack parse(const std::string& text);
    std::string dump() const;

    int genus() const { return period_matrix.genus(); }
    const PointRecord& record(const std::string& handle) const;
    bool has(const std::string& handle) const;
    SurfacePoint point(const std::string& handle) const;
    // Point at chart offset dz from the record's point; requires |dz| below
    // the chart radius.
    SurfacePoint chart_point(const std::string& handle, cplx dz) const;

    // K^z = K^{q0} + (g-1) A(z) for the tabulated lift of A(z).
    Eigen::VectorXcd riemann_constant(const SurfacePoint& z) const;
    const Eigen::VectorXcd& riemann_constant_base() const { return k_base; }

    // grad theta[delta](0), cached at load
    const Eigen::VectorXcd& delta_gradient() const { return grad_delta; }

    void validate() const;

    std::string name;
    PeriodMatrix period_matrix;
    ThetaCharacteristic delta;
    std::string base_point;
    Eigen::VectorXcd k_base;
    std::vector<PointRecord> points;
    std::string p0, p1;
    std::vector<std::string> sigma_auxiliary;  // default x-tuple for sigma
    std::string provenance_json;

private:
    void finish();
    Eigen::VectorXcd grad_delta;
    std::map<std::string, std::size_t> index;
};

} // namespace polydet
