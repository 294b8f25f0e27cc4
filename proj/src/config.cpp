#include "polydet/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json_io.hpp"

namespace polydet {

using io::json;

namespace {

const std::vector<std::string> kKeys = {"command", "torus", "genus", "theta", "betas", "taus", "mu_list",
                                        "eps",     "step",  "tol",   "with_area", "format"};

} // namespace

JobConfig JobConfig::parse(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw InputError("config: top level must be an object");
    for (const auto& [k, v] : j.items())
        if (std::find(kKeys.begin(), kKeys.end(), k) == kKeys.end())
            throw InputError("config: unknown field '" + k + "'");
    JobConfig c;
    try {
        c.command = j.value("command", "");
        if (j.contains("torus")) c.torus = io::torus_spec(j.at("torus"));
        if (j.contains("genus")) {
            const json& g = j.at("genus");
            GenusInput in;
            in.pack_path = g.value("pack", "");
            if (g.contains("divisor")) in.divisor = io::divisor(g.at("divisor"));
            if (g.contains("C")) in.C = io::number(g.at("C"), "genus.C");
            in.p0 = g.value("p0", "");
            in.p1 = g.value("p1", "");
            if (g.contains("sigma_x")) in.sigma_x = g.at("sigma_x").get<std::vector<std::string>>();
            c.genus = in;
        }
        if (j.contains("theta")) {
            const json& t = j.at("theta");
            ThetaInput in;
            for (const json& z : t.at("z")) in.z.push_back(io::to_cplx(z, "theta.z"));
            for (const json& b : t.at("B")) in.B.push_back(io::to_cplx(b, "theta.B"));
            in.a = t.value("a", std::vector<double>(in.z.size(), 0.0));
            in.b = t.value("b", std::vector<double>(in.z.size(), 0.0));
            in.derivative = t.value("derivative", false);
            c.theta = in;
        }
        if (j.contains("betas")) {
            if (!j.at("betas").is_array()) throw InputError("config: betas must be a list");
            for (const json& b : j.at("betas")) {
                Angle a;
                a.value = io::parse_angle(b, "beta");
                const json n = io::normalize_angle(b);
                if (n.is_string()) a.text = n.get<std::string>();
                c.betas.push_back(a);
            }
        }
        if (j.contains("taus"))
            for (const json& t : j.at("taus")) c.taus.push_back(io::tau(t));
        if (j.contains("mu_list")) c.mu_list = j.at("mu_list").get<std::vector<double>>();
        if (j.contains("eps")) c.eps = io::number(j.at("eps"), "eps");
        if (j.contains("step")) c.step = io::number(j.at("step"), "step");
        if (j.contains("tol")) c.tol = io::number(j.at("tol"), "tol");
        c.with_area = j.value("with_area", false);
        c.format = j.value("format", "doc");
    } catch (const json::exception& e) {
        throw InputError(std::string("config: malformed field: ") + e.what());
    }
    c.validate();
    return c;
}

JobConfig JobConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

void JobConfig::validate() const {
    if (!command.empty() && std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end())
        throw InputError("config: unknown command '" + command + "'");
    if (format != "doc" && format != "csv") throw InputError("config: format must be doc or csv");
    if (tol && !(*tol > 0.0)) throw InputError("config: tolerances must be positive");
    if (!(eps > 0.0)) throw InputError("config: eps must be positive");
    if (!(step > 0.0)) throw InputError("config: step must be positive");
    for (double mu : mu_list)
        if (!(mu < 0.0)) throw InputError("config: mu_list entries must be negative");
    for (const Angle& a : betas)
        if (!(a.value > 0.0)) throw InputError("config: angles must be positive");
    if (theta) {
        const std::size_t g = theta->z.size();
        if (g == 0 || theta->B.size() != g * g || theta->a.size() != g || theta->b.size() != g)
            throw InputError("config: theta needs z of length g, B with g*g entries, a and b of length g");
    }
    auto need = [&](bool ok, const char* what) {
        if (!ok) throw InputError(std::string("config: command '") + command + "' needs " + what);
    };
    if (command == "torus-det") need(torus.has_value(), "a torus spec");
    if (command == "verify-variation") need(torus.has_value() && !taus.empty(), "a torus spec and taus");
    if (command == "genus-det") need(genus && !genus->pack_path.empty(), "genus.pack and a divisor");
    if (command == "pack-validate") need(genus && !genus->pack_path.empty(), "genus.pack");
    if (command == "cone-coeffs" || command == "verify-asymptotics") need(!betas.empty(), "betas");
    if (command == "theta-eval") need(theta.has_value(), "a theta block");
}

std::string JobConfig::serialize() const {
    json j;
    j["command"] = command;
    if (torus) j["torus"] = io::torus_spec_json(*torus);
    if (genus) {
        json g;
        g["pack"] = genus->pack_path;
        g["divisor"] = io::divisor_json(genus->divisor);
        g["C"] = genus->C;
        if (!genus->p0.empty()) g["p0"] = genus->p0;
        if (!genus->p1.empty()) g["p1"] = genus->p1;
        if (!genus->sigma_x.empty()) g["sigma_x"] = genus->sigma_x;
        j["genus"] = g;
    }
    if (theta) {
        json t;
        t["z"] = json::array();
        for (cplx z : theta->z) t["z"].push_back(io::from_cplx(z));
        t["B"] = json::array();
        for (cplx b : theta->B) t["B"].push_back(io::from_cplx(b));
        t["a"] = theta->a;
        t["b"] = theta->b;
        t["derivative"] = theta->derivative;
        j["theta"] = t;
    }
    if (!betas.empty()) {
        json b = json::array();
        for (const Angle& a : betas) b.push_back(a.text.empty() ? json(a.value) : json(a.text));
        j["betas"] = b;
    }
    if (!taus.empty()) {
        json t = json::array();
        for (const Tau& x : taus) t.push_back(io::tau_json(x));
        j["taus"] = t;
    }
    j["mu_list"] = mu_list;
    j["eps"] = eps;
    j["step"] = step;
    if (tol) j["tol"] = *tol;
    j["with_area"] = with_area;
    j["format"] = format;
    return j.dump(2);
}

std::string normalize_config(const std::string& text) { return JobConfig::parse(text).serialize(); }

std::vector<double> parse_mu_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(item, &pos);
            while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
            if (pos != item.size()) throw InputError("");
            out.push_back(v);
        } catch (const std::exception&) {
            throw InputError("--mu-list: cannot parse '" + item + "'");
        }
    }
    if (out.empty()) throw InputError("--mu-list: empty list");
    for (double mu : out)
        if (!(mu < 0.0)) throw InputError("--mu-list: entries must be negative");
    return out;
}

} // namespace polydet
