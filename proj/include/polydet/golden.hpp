#pragma once

#include <memory>
#include <string>
#include <vector>

#include "polydet/special_fn.hpp"
#include "polydet/surface_pack.hpp"

namespace polydet {

// One frozen reference value. `args` is the JSON text of the argument object;
// `value` is parsed from the 40-digit decimal strings of the file.
struct GoldenVector {
    std::string key;
    std::string op;
    std::string args;
    cplx value;
    bool is_complex = false;
    std::string note;
};

struct GoldenFile {
    static constexpr int kVersion = 1;

    int version = kVersion;
    std::string pack;  // surface pack file, relative to the golden file
    int precision_digits = 0;
    std::vector<GoldenVector> vectors;

    static GoldenFile load(const std::string& path);
    static GoldenFile parse(const std::string& text);
    std::string dump() const;
};

inline constexpr double kGoldenRelTol = 1e-10;
inline constexpr double kGoldenAbsTol = 1e-14;

// |got - expected| <= 1e-10 |expected|, or <= 1e-14 when |expected| < 1e-14
bool golden_match(cplx got, cplx expected);

// Names accepted in the `op` field.
const std::vector<std::string>& golden_ops();

// Recomputes the vector with the library. Genus-g ops need `pack`.
cplx evaluate_golden(const GoldenVector& v, const std::shared_ptr<const SurfacePack>& pack);

} // namespace polydet
