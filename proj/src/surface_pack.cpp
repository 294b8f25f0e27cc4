#include "polydet/surface_pack.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace polydet {

using nlohmann::json;

namespace {

cplx read_cplx(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw InputError("surface pack: " + what + " must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

Eigen::VectorXcd read_vec(const json& j, int g, const std::string& what) {
    if (!j.is_array() || static_cast<int>(j.size()) != g)
        throw InputError("surface pack: " + what + " must have " + std::to_string(g) + " entries");
    Eigen::VectorXcd v(g);
    for (int i = 0; i < g; ++i) v(i) = read_cplx(j[i], what);
    return v;
}

json write_cplx(cplx z) { return json::array({z.real(), z.imag()}); }

json write_vec(const Eigen::VectorXcd& v) {
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(write_cplx(v(i)));
    return a;
}

const json& need(const json& j, const char* key) {
    if (!j.contains(key)) throw InputError(std::string("surface pack: missing field '") + key + "'");
    return j.at(key);
}

} // namespace

SurfacePack SurfacePack::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("surface pack: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

SurfacePack SurfacePack::parse(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("surface pack: ") + e.what());
    }
    if (need(j, "schema") != "polydet.surface-pack")
        throw InputError("surface pack: unknown schema tag");
    if (need(j, "version") != kSchemaVersion) throw InputError("surface pack: unsupported version");
    if (need(j, "normalization") != "a-normalized")
        throw InputError("surface pack: periods must be a-normalized");
    SurfacePack p;
    try {
        p.name = j.value("name", "");
        const int g = need(j, "genus").get<int>();
        if (g < 1) throw InputError("surface pack: genus must be positive");
        const json& bm = need(j, "period_matrix");
        if (!bm.is_array() || static_cast<int>(bm.size()) != g * g)
            throw InputError("surface pack: period_matrix must hold g*g entries (row-major)");
        p.period_matrix.B.resize(g, g);
        for (int r = 0; r < g; ++r)
            for (int c = 0; c < g; ++c) p.period_matrix.B(r, c) = read_cplx(bm[r * g + c], "period_matrix");
        const json& oc = need(j, "odd_characteristic");
        p.delta.a = need(oc, "a").get<std::vector<double>>();
        p.delta.b = need(oc, "b").get<std::vector<double>>();
        p.base_point = need(j, "base_point").get<std::string>();
        p.k_base = read_vec(need(j, "riemann_constant_base"), g, "riemann_constant_base");
        const json& bp = need(j, "basepoints");
        p.p0 = need(bp, "p0").get<std::string>();
        p.p1 = need(bp, "p1").get<std::string>();
        p.sigma_auxiliary = need(j, "sigma_auxiliary").get<std::vector<std::string>>();
        for (const json& pj : need(j, "points")) {
            PointRecord r;
            r.handle = need(pj, "handle").get<std::string>();
            r.chart = pj.value("chart", "");
            r.at.label = r.handle;
            r.at.abel = read_vec(need(pj, "abel"), g, "abel");
            r.at.differential = read_vec(need(pj, "differential"), g, "differential");
            r.at.h = read_cplx(need(pj, "h"), "h");
            if (pj.contains("abel_taylor"))
                for (const json& c : pj.at("abel_taylor")) r.abel_taylor.push_back(read_vec(c, g, "abel_taylor"));
            r.chart_radius = pj.value("chart_radius", 0.0);
            if (pj.contains("same_point_as")) r.same_point_as = pj.at("same_point_as").get<std::string>();
            if (pj.contains("transition")) r.transition = read_cplx(pj.at("transition"), "transition");
            p.points.push_back(std::move(r));
        }
        if (j.contains("provenance")) p.provenance_json = j.at("provenance").dump();
    } catch (const json::exception& e) {
        throw InputError(std::string("surface pack: malformed field: ") + e.what());
    }
    p.finish();
    p.validate();
    return p;
}

std::string SurfacePack::dump() const {
    json j;
    j["schema"] = "polydet.surface-pack";
    j["version"] = kSchemaVersion;
    j["name"] = name;
    j["genus"] = genus();
    j["normalization"] = "a-normalized";
    json bm = json::array();
    for (int r = 0; r < genus(); ++r)
        for (int c = 0; c < genus(); ++c) bm.push_back(write_cplx(period_matrix.B(r, c)));
    j["period_matrix"] = bm;
    j["odd_characteristic"] = {{"a", delta.a}, {"b", delta.b}};
    j["base_point"] = base_point;
    j["riemann_constant_base"] = write_vec(k_base);
    j["basepoints"] = {{"p0", p0}, {"p1", p1}};
    j["sigma_auxiliary"] = sigma_auxiliary;
    json pts = json::array();
    for (const PointRecord& r : points) {
        json pj;
        pj["handle"] = r.handle;
        pj["chart"] = r.chart;
        pj["abel"] = write_vec(r.at.abel);
        pj["differential"] = write_vec(r.at.differential);
        pj["h"] = write_cplx(r.at.h);
        if (!r.abel_taylor.empty()) {
            json t = json::array();
            for (const auto& c : r.abel_taylor) t.push_back(write_vec(c));
            pj["abel_taylor"] = t;
            pj["chart_radius"] = r.chart_radius;
        }
        if (r.same_point_as) {
            pj["same_point_as"] = *r.same_point_as;
            pj["transition"] = write_cplx(r.transition);
        }
        pts.push_back(pj);
    }
    j["points"] = pts;
    if (!provenance_json.empty()) j["provenance"] = json::parse(provenance_json);
    return j.dump(1);
}

void SurfacePack::finish() {
    index.clear();
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!index.emplace(points[i].handle, i).second)
            throw InputError("surface pack: duplicate handle " + points[i].handle);
    }
    period_matrix.validate();
    delta.validate();
    if (static_cast<int>(delta.genus()) != genus())
        throw InputError("surface pack: characteristic length differs from genus");
    grad_delta = riemann_theta_with_gradient(Eigen::VectorXcd::Zero(genus()), period_matrix, delta).gradient;
}

bool SurfacePack::has(const std::string& handle) const { return index.count(handle) != 0; }

const PointRecord& SurfacePack::record(const std::string& handle) const {
    auto it = index.find(handle);
    if (it == index.end()) throw InputError("surface pack: unknown point handle '" + handle + "'");
    return points[it->second];
}

SurfacePoint SurfacePack::point(const std::string& handle) const { return record(handle).at; }

SurfacePoint SurfacePack::chart_point(const std::string& handle, cplx dz) const {
    const PointRecord& r = record(handle);
    if (dz == cplx(0.0)) return r.at;
    if (r.abel_taylor.empty()) throw InputError("surface pack: point '" + handle + "' has no chart data");
    if (!(std::abs(dz) < r.chart_radius))
        throw InputError("surface pack: offset outside the chart of '" + handle + "'");
    const int g = genus();
    SurfacePoint out;
    out.label = handle + "+dz";
    out.abel = r.at.abel;
    out.differential = Eigen::VectorXcd::Zero(g);
    // Horner in dz for both the series and its derivative
    const int N = static_cast<int>(r.abel_taylor.size());
    Eigen::VectorXcd s = Eigen::VectorXcd::Zero(g), ds = Eigen::VectorXcd::Zero(g);
    for (int n = N; n >= 1; --n) {
        s = s * dz + r.abel_taylor[n - 1];
        if (n >= 2)
            ds = ds * dz + static_cast<double>(n) * r.abel_taylor[n - 1];
    }
    // s = c_1 + c_2 dz + ..., ds = 2 c_2 + 3 c_3 dz + ...
    out.abel += s * dz;
    out.differential = r.abel_taylor[0] + ds * dz;
    const cplx h2 = (grad_delta.array() * out.differential.array()).sum();
    out.h = r.at.h * std::sqrt(h2 / (r.at.h * r.at.h));
    return out;
}

Eigen::VectorXcd SurfacePack::riemann_constant(const SurfacePoint& z) const {
    return k_base + static_cast<double>(genus() - 1) * z.abel;
}

void SurfacePack::validate() const {
    for (const PointRecord& r : points) {
        const SurfacePoint& p = r.at;
        const cplx h2 = (grad_delta.array() * p.differential.array()).sum();
        if (std::abs(h2 - p.h * p.h) > 1e-8 * std::max(1.0, std::abs(h2)))
            throw InputError("surface pack: h^2 inconsistent with the differential at '" + r.handle + "'");
        if (!r.abel_taylor.empty() &&
            (r.abel_taylor[0] - p.differential).norm() > 1e-10 * std::max(1.0, p.differential.norm()))
            throw InputError("surface pack: first Taylor coefficient must equal the differential at '" +
                             r.handle + "'");
        if (r.same_point_as) {
            const PointRecord& o = record(*r.same_point_as);
            if ((o.at.abel - p.abel).norm() > 1e-12 * std::max(1.0, p.abel.norm()))
                throw InputError("surface pack: '" + r.handle + "' and '" + o.handle +
                                 "' must share the Abel lift");
            if ((o.at.differential - r.transition * p.differential).norm() >
                1e-10 * std::max(1.0, p.differential.norm()))
                throw InputError("surface pack: chart transition inconsistent for '" + r.handle + "'");
        }
    }
    for (const std::string* h : {&p0, &p1}) record(*h);
    if (static_cast<int>(sigma_auxiliary.size()) != genus())
        throw InputError("surface pack: sigma_auxiliary must list g points");
    for (const auto& h : sigma_auxiliary) record(h);
}

} // namespace polydet
