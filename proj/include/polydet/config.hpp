#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polydet/highergenus.hpp"
#include "polydet/torus.hpp"
#include "polydet/variation.hpp"

namespace polydet {

inline const std::vector<std::string> kCommands = {"torus-det",          "genus-det",        "cone-coeffs",
                                                   "verify-asymptotics", "verify-variation", "theta-eval",
                                                   "pack-validate"};

// An angle as written in the config: the value and, when it was given in the
// "3pi/2" form, its canonical text.
struct Angle {
    double value = 0;
    std::string text;
};

struct GenusInput {
    std::string pack_path;
    std::vector<PackDivisorPoint> divisor;
    double C = 1.0;
    std::string p0, p1;
    std::vector<std::string> sigma_x;
};

struct ThetaInput {
    std::vector<cplx> z;
    std::vector<cplx> B;  // row-major g x g
    std::vector<double> a, b;
    bool derivative = false;
};

struct JobConfig {
    std::string command;
    std::optional<TorusMetricSpec> torus;
    std::optional<GenusInput> genus;
    std::optional<ThetaInput> theta;
    std::vector<Angle> betas;
    std::vector<Tau> taus;
    std::vector<double> mu_list{-100.0, -200.0, -400.0};
    double eps = 0.5;
    double step = 1e-5;
    // area / fit / verification tolerance, per command
    std::optional<double> tol;
    bool with_area = false;
    std::string format = "doc";

    static JobConfig parse(const std::string& text);
    static JobConfig load(const std::string& path);
    // canonical JSON text: defaults filled in, angle strings reduced
    std::string serialize() const;
    // checks that the fields needed by `command` are present and sane
    void validate() const;
};

// serialize(parse(text))
std::string normalize_config(const std::string& text);

std::vector<double> parse_mu_list(const std::string& csv);

} // namespace polydet
