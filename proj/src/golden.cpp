#include "polydet/golden.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "json_io.hpp"
#include "polydet/cone.hpp"
#include "polydet/highergenus.hpp"
#include "polydet/prime_form.hpp"
#include "polydet/torus.hpp"
#include "polydet/variation.hpp"

namespace polydet {

using io::json;

namespace {

double decimal(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (!j.is_string()) throw InputError("golden: value must be a decimal string");
    try {
        std::size_t pos = 0;
        const double v = std::stod(j.get<std::string>(), &pos);
        if (pos != j.get<std::string>().size()) throw InputError("");
        return v;
    } catch (const std::exception&) {
        throw InputError("golden: cannot parse '" + j.get<std::string>() + "'");
    }
}

std::string decimal_text(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

ThetaCharacteristic characteristic(const json& a, const json& b) {
    ThetaCharacteristic ch;
    if (a.is_array()) {
        ch.a = a.get<std::vector<double>>();
        ch.b = b.get<std::vector<double>>();
    } else {
        ch.a = {a.get<double>()};
        ch.b = {b.get<double>()};
    }
    return ch;
}

HigherGenusMetricSpec genus_spec(const json& a, const std::shared_ptr<const SurfacePack>& pack) {
    if (!pack) throw InputError("golden: this op needs a surface pack");
    HigherGenusMetricSpec s;
    s.pack = pack;
    s.divisor = io::divisor(a.at("divisor"));
    s.C = a.value("C", 1.0);
    return s;
}

const SurfacePack& need(const std::shared_ptr<const SurfacePack>& pack) {
    if (!pack) throw InputError("golden: this op needs a surface pack");
    return *pack;
}

using Op = std::function<cplx(const json&, const std::shared_ptr<const SurfacePack>&)>;

const std::map<std::string, Op>& ops() {
    static const std::map<std::string, Op> m = {
        {"jacobi_theta",
         [](const json& a, const auto&) {
             return jacobi_theta(characteristic(a.at("a"), a.at("b")), io::to_cplx(a.at("z"), "z"),
                                 {io::to_cplx(a.at("B"), "B")});
         }},
        {"jacobi_theta_z_derivative",
         [](const json& a, const auto&) {
             return jacobi_theta_z_derivative(characteristic(a.at("a"), a.at("b")),
                                              io::to_cplx(a.at("z"), "z"), {io::to_cplx(a.at("B"), "B")});
         }},
        {"dedekind_eta", [](const json& a, const auto&) { return dedekind_eta({io::to_cplx(a.at("B"), "B")}); }},
        {"macdonald_k0", [](const json& a, const auto&) { return macdonald_k0(io::to_cplx(a.at("w"), "w")); }},
        {"riemann_theta",
         [](const json& a, const auto& pack) {
             const SurfacePack& pk = need(pack);
             Eigen::VectorXcd z(pk.genus());
             if (static_cast<int>(a.at("z").size()) != pk.genus()) throw InputError("golden: z has wrong length");
             for (int i = 0; i < pk.genus(); ++i) z[i] = io::to_cplx(a.at("z")[i], "z");
             return riemann_theta(z, pk.period_matrix, characteristic(a.at("a"), a.at("b")));
         }},
        {"cone_heat_kernel",
         [](const json& a, const auto&) {
             const auto pp = [](const json& p) { return PolarPoint{p[0].get<double>(), p[1].get<double>()}; };
             return cplx(cone_heat_kernel(a.at("t").get<double>(), a.at("beta").get<double>(), pp(a.at("x")),
                                          pp(a.at("xp"))));
         }},
        {"a_mu",
         [](const json& a, const auto&) {
             return a_mu(a.at("r").get<double>(), a.at("beta").get<double>(), io::to_cplx(a.at("mu"), "mu"));
         }},
        {"hadamard_coth_coth",
         [](const json& a, const auto&) { return cplx(hadamard_coth_coth(a.at("beta").get<double>())); }},
        {"hadamard_coth_csch2",
         [](const json& a, const auto&) { return cplx(hadamard_coth_csch2(a.at("beta").get<double>())); }},
        {"coefficient_Itilde",
         [](const json& a, const auto&) { return cplx(coefficient_Itilde(a.at("beta").get<double>())); }},
        {"coefficient_d",
         [](const json& a, const auto&) {
             const bool torus = a.value("torus", false);
             double tp = 0.0;
             if (torus) tp = io::number(a.at("theta_prime"), "theta_prime");
             return cplx(coefficient_d(a.at("beta").get<double>(), torus, tp));
         }},
        {"torus_phi",
         [](const json& a, const auto&) {
             return cplx(torus_phi(io::torus_spec(a.at("spec")), io::to_cplx(a.at("z"), "z")));
         }},
        {"torus_D", [](const json& a, const auto&) { return cplx(torus_D(io::torus_spec(a.at("spec")))); }},
        {"torus_c0", [](const json& a, const auto&) { return cplx(torus_c0({io::to_cplx(a.at("B"), "B")})); }},
        {"torus_log_det",
         [](const json& a, const auto&) {
             return cplx(torus_log_det(io::torus_spec(a.at("spec"))).log_det_over_area);
         }},
        {"torus_A",
         [](const json& a, const auto&) {
             const auto c = torus_A_coefficients(io::torus_spec(a.at("spec")), io::tau(a.at("tau")));
             const auto j = a.at("j").get<std::size_t>();
             if (j >= c.A.size()) throw InputError("golden: j out of range");
             return cplx(c.A[j]);
         }},
        {"zeta_calc_rhs",
         [](const json& a, const auto&) {
             const TorusMetricSpec s = io::torus_spec(a.at("spec"));
             std::vector<ConeData> cones;
             for (double b : s.betas()) cones.push_back({b});
             return cplx(zeta_calc_rhs(torus_A_coefficients(s, io::tau(a.at("tau"))), cones));
         }},
        {"prime_form",
         [](const json& a, const auto& pack) {
             const SurfacePack& pk = need(pack);
             return prime_form(pk.point(a.at("z").get<std::string>()), pk.point(a.at("zp").get<std::string>()), pk);
         }},
        {"fay_sigma",
         [](const json& a, const auto& pack) {
             const SurfacePack& pk = need(pack);
             std::vector<SurfacePoint> x;
             for (const json& h : a.at("x")) x.push_back(pk.point(h.get<std::string>()));
             return fay_sigma(pk.point(a.at("z").get<std::string>()), pk.point(a.at("p0").get<std::string>()), pk, x);
         }},
        {"q_bilinear",
         [](const json& a, const auto& pack) {
             return cplx(q_bilinear(a.at("z").get<std::string>(), a.at("zp").get<std::string>(), need(pack)));
         }},
        {"phi_potential",
         [](const json& a, const auto& pack) {
             return cplx(phi_potential(genus_spec(a, pack), a.at("z").get<std::string>()));
         }},
        {"higher_genus_D", [](const json& a, const auto& pack) { return cplx(higher_genus_D(genus_spec(a, pack))); }},
        {"u_j_real",
         [](const json& a, const auto& pack) {
             return cplx(u_j_holomorphic_part(genus_spec(a, pack), a.at("j").get<std::size_t>(),
                                              io::to_cplx(a.at("dz"), "dz"))
                             .real());
         }},
    };
    return m;
}

} // namespace

const std::vector<std::string>& golden_ops() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, f] : ops()) v.push_back(k);
        return v;
    }();
    return names;
}

bool golden_match(cplx got, cplx expected) {
    if (!std::isfinite(got.real()) || !std::isfinite(got.imag())) return false;
    const double e = std::abs(expected);
    const double err = std::abs(got - expected);
    return e >= kGoldenAbsTol ? err <= kGoldenRelTol * e : err <= kGoldenAbsTol;
}

cplx evaluate_golden(const GoldenVector& v, const std::shared_ptr<const SurfacePack>& pack) {
    const auto it = ops().find(v.op);
    if (it == ops().end()) throw InputError("golden: unknown op '" + v.op + "'");
    json a;
    try {
        a = json::parse(v.args);
        return it->second(a, pack);
    } catch (const json::exception& e) {
        throw InputError("golden: bad arguments for " + v.key + ": " + e.what());
    }
}

GoldenFile GoldenFile::parse(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("golden: ") + e.what());
    }
    if (j.value("schema", "") != "polydet.golden") throw InputError("golden: schema must be polydet.golden");
    GoldenFile f;
    f.version = j.value("version", 0);
    if (f.version != kVersion) throw InputError("golden: unsupported version " + std::to_string(f.version));
    f.pack = j.value("pack", "");
    f.precision_digits = j.value("precision_digits", 0);
    if (!j.contains("vectors") || !j.at("vectors").is_array()) throw InputError("golden: missing vectors");
    for (const json& e : j.at("vectors")) {
        GoldenVector v;
        try {
            v.key = e.at("key").get<std::string>();
            v.op = e.at("op").get<std::string>();
            v.args = e.at("args").dump();
            v.note = e.value("note", "");
        } catch (const json::exception&) {
            throw InputError("golden: every vector needs key, op and args");
        }
        const json& val = e.at("value");
        if (val.is_array()) {
            if (val.size() != 2) throw InputError("golden: complex value must be [re, im]");
            v.value = {decimal(val[0]), decimal(val[1])};
            v.is_complex = true;
        } else {
            v.value = decimal(val);
        }
        if (std::find(golden_ops().begin(), golden_ops().end(), v.op) == golden_ops().end())
            throw InputError("golden: unknown op '" + v.op + "' in " + v.key);
        f.vectors.push_back(std::move(v));
    }
    return f;
}

GoldenFile GoldenFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("golden: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string GoldenFile::dump() const {
    json j;
    j["schema"] = "polydet.golden";
    j["version"] = version;
    j["pack"] = pack;
    j["precision_digits"] = precision_digits;
    j["vectors"] = json::array();
    for (const GoldenVector& v : vectors) {
        json e;
        e["key"] = v.key;
        e["op"] = v.op;
        e["args"] = json::parse(v.args);
        if (v.is_complex)
            e["value"] = json::array({decimal_text(v.value.real()), decimal_text(v.value.imag())});
        else
            e["value"] = decimal_text(v.value.real());
        e["note"] = v.note;
        j["vectors"].push_back(e);
    }
    return j.dump(2);
}

} // namespace polydet
