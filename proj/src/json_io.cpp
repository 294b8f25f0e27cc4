#include "json_io.hpp"

#include <cmath>
#include <numeric>
#include <regex>

namespace polydet::io {

double number(const json& j, const std::string& what) {
    if (!j.is_number()) throw InputError("config: " + what + " must be a number");
    return j.get<double>();
}

cplx to_cplx(const json& j, const std::string& what) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw InputError("config: " + what + " must be a number or a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

json from_cplx(cplx z) { return json::array({z.real(), z.imag()}); }

namespace {

struct PiRational {
    long long num = 0, den = 1;
    bool ok = false;
};

PiRational parse_pi_rational(const std::string& s) {
    static const std::regex re(R"(^\s*([+-]?)(\d*)\s*\*?\s*pi\s*(?:/\s*(\d+))?\s*$)");
    std::smatch m;
    PiRational r;
    if (!std::regex_match(s, m, re)) return r;
    r.num = m[2].length() ? std::stoll(m[2]) : 1;
    if (m[1] == "-") r.num = -r.num;
    r.den = m[3].length() ? std::stoll(m[3]) : 1;
    if (r.den == 0) return r;
    const long long g = std::gcd(r.num < 0 ? -r.num : r.num, r.den);
    if (g > 1) {
        r.num /= g;
        r.den /= g;
    }
    r.ok = true;
    return r;
}

} // namespace

double parse_angle(const json& j, const std::string& what) {
    if (j.is_number()) return j.get<double>();
    if (!j.is_string()) throw InputError("config: " + what + " must be a number or a string like \"3pi/2\"");
    const std::string s = j.get<std::string>();
    const PiRational r = parse_pi_rational(s);
    if (r.ok) return kPi * static_cast<double>(r.num) / static_cast<double>(r.den);
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw InputError("config: cannot parse angle '" + s + "' for " + what);
}

json normalize_angle(const json& j) {
    if (!j.is_string()) return j;
    const PiRational r = parse_pi_rational(j.get<std::string>());
    if (!r.ok) return parse_angle(j, "angle");
    std::string out;
    if (r.num == -1) out = "-";
    else if (r.num != 1) out = std::to_string(r.num);
    out += "pi";
    if (r.den != 1) out += "/" + std::to_string(r.den);
    return out;
}

TorusMetricSpec torus_spec(const json& j) {
    if (!j.is_object()) throw InputError("config: torus spec must be an object");
    TorusMetricSpec s;
    if (j.contains("B")) s.B.B = to_cplx(j.at("B"), "torus.B");
    if (j.contains("C")) s.C = number(j.at("C"), "torus.C");
    if (j.contains("points")) {
        if (!j.at("points").is_array()) throw InputError("config: torus.points must be a list");
        for (const json& p : j.at("points")) {
            if (!p.contains("P") || !p.contains("b")) throw InputError("config: torus point needs P and b");
            s.points.push_back({to_cplx(p.at("P"), "torus.points.P"), number(p.at("b"), "torus.points.b")});
        }
    }
    for (const auto& [k, v] : j.items())
        if (k != "B" && k != "C" && k != "points") throw InputError("config: unknown torus field '" + k + "'");
    s.validate();
    return s;
}

json torus_spec_json(const TorusMetricSpec& s) {
    json pts = json::array();
    for (const auto& p : s.points) pts.push_back({{"P", from_cplx(p.P)}, {"b", p.b}});
    return {{"B", from_cplx(s.B.B)}, {"C", s.C}, {"points", pts}};
}

Tau tau(const json& j) {
    if (!j.is_object() || !j.contains("kind")) throw InputError("config: tau needs a kind");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "scale") return Tau::scale();
    const int index = j.value("index", -1);
    if (kind == "point") return Tau::point(index, j.value("imaginary", false));
    if (kind == "angle") {
        if (!j.contains("partner"))
            throw InputError("config: angle variation needs a partner (sum of b is constrained)");
        return Tau::angle(index, j.at("partner").get<int>());
    }
    throw InputError("config: unknown tau kind '" + kind + "'");
}

json tau_json(const Tau& t) {
    switch (t.kind) {
    case Tau::Kind::Scale:
        return {{"kind", "scale"}};
    case Tau::Kind::Point:
        return {{"kind", "point"}, {"index", t.index}, {"imaginary", t.imaginary}};
    case Tau::Kind::Angle:
        return {{"kind", "angle"}, {"index", t.index}, {"partner", t.partner}};
    }
    return {};
}

std::vector<PackDivisorPoint> divisor(const json& j) {
    if (!j.is_array()) throw InputError("config: divisor must be a list");
    std::vector<PackDivisorPoint> d;
    for (const json& e : j) {
        if (!e.contains("handle") || !e.contains("b")) throw InputError("config: divisor entry needs handle and b");
        d.push_back({e.at("handle").get<std::string>(), number(e.at("b"), "divisor.b")});
    }
    return d;
}

json divisor_json(const std::vector<PackDivisorPoint>& d) {
    json a = json::array();
    for (const auto& e : d) a.push_back({{"handle", e.handle}, {"b", e.b}});
    return a;
}

} // namespace polydet::io
