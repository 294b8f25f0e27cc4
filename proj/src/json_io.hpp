#pragma once

// JSON <-> library types, shared by the config, golden and CLI code.

#include <string>
#include <vector>

#include <json.hpp>

#include "polydet/highergenus.hpp"
#include "polydet/torus.hpp"
#include "polydet/variation.hpp"

namespace polydet::io {

using nlohmann::json;

cplx to_cplx(const json& j, const std::string& what);
json from_cplx(cplx z);

// number, or a string such as "pi", "3pi/2", "-pi/4" or "1.25"
double parse_angle(const json& j, const std::string& what);
// canonical text for an angle given as a string; numbers pass through
json normalize_angle(const json& j);

TorusMetricSpec torus_spec(const json& j);
json torus_spec_json(const TorusMetricSpec& s);

Tau tau(const json& j);
json tau_json(const Tau& t);

std::vector<PackDivisorPoint> divisor(const json& j);
json divisor_json(const std::vector<PackDivisorPoint>& d);

double number(const json& j, const std::string& what);

} // namespace polydet::io
