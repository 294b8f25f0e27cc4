#include "run.hpp"

#include <charconv>
#include <filesystem>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "polydet/cone.hpp"
#include "polydet/highergenus.hpp"
#include "polydet/parallel.hpp"
#include "polydet/special_fn.hpp"
#include "polydet/surface_pack.hpp"
#include "polydet/torus.hpp"
#include "polydet/variation.hpp"

namespace polydet::cli {

using nlohmann::ordered_json;

namespace {

// Tolerances reported next to values that come from closed forms and
// truncated series rather than from a user-set target.
constexpr double kSeriesTol = 1e-12;
constexpr double kHadamardTol = 1e-10;

struct Doc {
    std::string command;
    ordered_json tolerances = ordered_json::object();
    ordered_json records = ordered_json::array();
    bool failed = false;

    void add(const std::string& record, const std::string& field, double value, double tol) {
        records.push_back({{"record", record}, {"field", field}, {"value", value == 0.0 ? 0.0 : value}, {"tol", tol}});
    }
    void check(const std::string& record, const std::string& field, bool pass) {
        records.push_back({{"record", record}, {"field", field}, {"pass", pass}});
        failed = failed || !pass;
    }
};

// shortest round-trip form
std::string fmt(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v == 0.0 ? 0.0 : v);
    return std::string(buf, r.ptr);
}

std::string render(const Doc& d, const JobConfig& cfg) {
    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "# polydet " << POLYDET_VERSION << " command=" << d.command;
        for (const auto& [k, v] : d.tolerances.items()) os << " " << k << "=" << fmt(v.get<double>());
        os << "\nrecord,field,value,tol\n";
        for (const auto& r : d.records) {
            os << r["record"].get<std::string>() << "," << r["field"].get<std::string>() << ",";
            if (r.contains("pass"))
                os << (r["pass"].get<bool>() ? "pass" : "fail") << ",";
            else
                os << fmt(r["value"].get<double>()) << "," << fmt(r["tol"].get<double>());
            os << "\n";
        }
        return os.str();
    }
    ordered_json j;
    j["provenance"] = {{"tool", "polydet"},
                       {"version", POLYDET_VERSION},
                       {"command", d.command},
                       {"tolerances", d.tolerances},
                       {"config", ordered_json::parse(cfg.serialize())}};
    j["status"] = d.failed ? "failed" : "ok";
    j["records"] = d.records;
    return j.dump(2) + "\n";
}

std::string beta_name(const Angle& a) { return "beta=" + (a.text.empty() ? fmt(a.value) : a.text); }

std::shared_ptr<const SurfacePack> load_pack(const std::string& path, const std::string& base_dir) {
    std::filesystem::path p(path);
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    return std::make_shared<const SurfacePack>(SurfacePack::load(p.string()));
}

void torus_det(const JobConfig& cfg, Doc& d) {
    AreaOptions ao;
    if (cfg.tol) ao.tol = *cfg.tol;
    d.tolerances["series"] = kSeriesTol;
    if (cfg.with_area) d.tolerances["area"] = ao.tol;
    const DetResult r = torus_log_det(*cfg.torus, cfg.with_area, ao);
    d.add("torus", "log_det_over_area", r.log_det_over_area, kHadamardTol);
    d.add("torus", "D", r.D, kSeriesTol);
    d.add("torus", "sum_log_d2", r.sum_log_d2, kHadamardTol);
    d.add("torus", "scaling_term", r.scaling_term, kSeriesTol);
    d.add("torus", "log_c0", *r.log_c0, kSeriesTol);
    d.add("torus", "log_det_over_area_minus_log_c0", r.log_det_over_area - *r.log_c0, kHadamardTol);
    if (r.area) {
        d.add("torus", "area", *r.area, ao.tol * *r.area);
        d.add("torus", "log_det", *r.log_det(), kHadamardTol + ao.tol);
    }
}

HigherGenusMetricSpec genus_spec(const JobConfig& cfg, const std::string& base_dir) {
    HigherGenusMetricSpec s;
    s.pack = load_pack(cfg.genus->pack_path, base_dir);
    s.divisor = cfg.genus->divisor;
    s.C = cfg.genus->C;
    s.p0 = cfg.genus->p0;
    s.p1 = cfg.genus->p1;
    s.sigma_x = cfg.genus->sigma_x;
    return s;
}

void genus_det(const JobConfig& cfg, const std::string& base_dir, Doc& d) {
    d.tolerances["series"] = kSeriesTol;
    const DetResult r = higher_genus_log_det(genus_spec(cfg, base_dir));
    // c0 is symbolic here, so the reported quantity is log(det/A) - log c0
    d.add("genus", "log_det_over_area_minus_log_c0", r.log_det_over_area, kHadamardTol);
    d.add("genus", "D", r.D, kSeriesTol);
    d.add("genus", "sum_log_d2", r.sum_log_d2, kHadamardTol);
    d.add("genus", "scaling_term", r.scaling_term, kSeriesTol);
}

void cone_coeffs(const JobConfig& cfg, Doc& d) {
    d.tolerances["series"] = kSeriesTol;
    d.tolerances["hadamard"] = kHadamardTol;
    for (const Angle& a : cfg.betas) {
        const SpectralCoefficients c = spectral_coefficients(a.value);
        const std::string n = beta_name(a);
        d.add(n, "I", c.I, kSeriesTol);
        d.add(n, "Itilde", c.Itilde, kHadamardTol);
        d.add(n, "d", c.d, kHadamardTol);
    }
}

void verify_asymptotics(const JobConfig& cfg, Doc& d) {
    const double tol_I = cfg.tol.value_or(1e-4);
    const double tol_It = 10.0 * tol_I;
    d.tolerances["I"] = tol_I;
    d.tolerances["slope"] = tol_I;
    d.tolerances["Itilde"] = tol_It;
    d.tolerances["eps"] = cfg.eps;
    for (const Angle& a : cfg.betas) {
        const std::string n = beta_name(a);
        const ConeFit f = coefficient_I_numeric(a.value, cfg.mu_list, cfg.eps);
        const double I = coefficient_I(a.value), It = coefficient_Itilde(a.value);
        for (const FitPoint& p : f.points) {
            const std::string m = n + ",mu=" + fmt(p.mu);
            d.add(m, "mass", p.mass, p.sigma);
            d.add(m, "log_moment", p.log_moment, p.sigma);
        }
        d.add(n, "I_est", f.I_est, tol_I);
        d.add(n, "I", I, kSeriesTol);
        d.add(n, "Itilde_est", f.Itilde_est, tol_It);
        d.add(n, "Itilde", It, kHadamardTol);
        d.add(n, "slope", f.slope, tol_I);
        d.add(n, "slope_expected", f.slope_expected, kSeriesTol);
        d.add(n, "fit_residual", f.residual, FitOptions{}.residual_tol);
        d.check(n, "I", std::abs(f.I_est - I) <= tol_I);
        d.check(n, "Itilde", std::abs(f.Itilde_est - It) <= tol_It);
        d.check(n, "slope", std::abs(f.slope - f.slope_expected) <= tol_I);
    }
}

std::string tau_name(const Tau& t) {
    switch (t.kind) {
    case Tau::Kind::Point:
        return "point" + std::to_string(t.index) + (t.imaginary ? ".im" : ".re");
    case Tau::Kind::Angle:
        return "angle" + std::to_string(t.index) + "/" + std::to_string(t.partner);
    default:
        return "scale";
    }
}

void verify_variation(const JobConfig& cfg, Doc& d) {
    const double tol = cfg.tol.value_or(1e-6);
    d.tolerances["residual"] = tol;
    d.tolerances["step"] = cfg.step;
    std::vector<HalvingReport> reports(cfg.taus.size());
    parallel_for(cfg.taus.size(),
                 [&](std::size_t i) { reports[i] = verify_variation_halving(*cfg.torus, cfg.taus[i], cfg.step); });
    for (std::size_t i = 0; i < cfg.taus.size(); ++i) {
        const HalvingReport& h = reports[i];
        const std::string n = tau_name(cfg.taus[i]);
        d.add(n, "lhs", h.full.lhs, h.full.residual);
        d.add(n, "rhs", h.full.rhs, kHadamardTol);
        d.add(n, "residual", h.full.residual, tol);
        d.add(n, "residual_half_step", h.half.residual, tol);
        d.add(n, "halving_ratio", h.ratio, 0.8);
        d.check(n, "residual", h.full.residual < tol);
    }
}

void theta_eval(const JobConfig& cfg, Doc& d) {
    const ThetaInput& t = *cfg.theta;
    const int g = static_cast<int>(t.z.size());
    PeriodMatrix B{Eigen::MatrixXcd(g, g)};
    for (int i = 0; i < g; ++i)
        for (int k = 0; k < g; ++k) B.B(i, k) = t.B[i * g + k];
    B.validate();
    Eigen::VectorXcd z(g);
    for (int i = 0; i < g; ++i) z[i] = t.z[i];
    const ThetaCharacteristic ch{t.a, t.b};
    ch.validate();
    const double tol = cfg.tol.value_or(1e-12);
    d.tolerances["series"] = tol;
    const ThetaValue v = riemann_theta_with_gradient(z, B, ch, tol);
    d.add("theta", "re", v.value.real(), tol);
    d.add("theta", "im", v.value.imag(), tol);
    if (t.derivative)
        for (int i = 0; i < g; ++i) {
            d.add("gradient" + std::to_string(i), "re", v.gradient[i].real(), tol);
            d.add("gradient" + std::to_string(i), "im", v.gradient[i].imag(), tol);
        }
}

void pack_validate(const JobConfig& cfg, const std::string& base_dir, Doc& d) {
    const auto pack = load_pack(cfg.genus->pack_path, base_dir);
    pack->validate();
    const Eigen::MatrixXcd& B = pack->period_matrix.B;
    d.tolerances["symmetry"] = 1e-12;
    d.add("pack", "genus", pack->genus(), 0.0);
    d.add("pack", "points", static_cast<double>(pack->points.size()), 0.0);
    d.add("pack", "period_asymmetry", (B - B.transpose()).norm(), 1e-12);
    const cplx th0 = riemann_theta(Eigen::VectorXcd::Zero(pack->genus()), pack->period_matrix, pack->delta);
    d.add("pack", "abs_theta_delta_0", std::abs(th0), 1e-12);
    d.check("pack", "delta_odd", pack->delta.odd_half_integer() && std::abs(th0) < 1e-12);
    const SurfacePoint q0 = pack->point(pack->p0);
    const SurfacePoint a = pack->point(pack->p1);
    const cplx s = fay_sigma(a, q0, *pack);
    d.add("pack", "abs_sigma_p1_p0", std::abs(s), kSeriesTol);
    d.check("pack", "sigma_nondegenerate", std::abs(s) > kSigmaDegenerateThreshold);
}

} // namespace

RunResult run(const JobConfig& cfg, const std::string& base_dir) {
    cfg.validate();
    Doc d;
    d.command = cfg.command;
    if (cfg.command == "torus-det") torus_det(cfg, d);
    else if (cfg.command == "genus-det") genus_det(cfg, base_dir, d);
    else if (cfg.command == "cone-coeffs") cone_coeffs(cfg, d);
    else if (cfg.command == "verify-asymptotics") verify_asymptotics(cfg, d);
    else if (cfg.command == "verify-variation") verify_variation(cfg, d);
    else if (cfg.command == "theta-eval") theta_eval(cfg, d);
    else if (cfg.command == "pack-validate") pack_validate(cfg, base_dir, d);
    else throw InputError("no command given");
    return {d.failed ? kVerificationFailed : kOk, render(d, cfg)};
}

} // namespace polydet::cli
