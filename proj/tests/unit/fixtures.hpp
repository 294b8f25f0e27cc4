#pragma once

#include <memory>
#include <string>

#include "polydet/surface_pack.hpp"

inline std::string fixture(const std::string& name) { return std::string(POLYDET_FIXTURES) + "/" + name; }

inline std::shared_ptr<const polydet::SurfacePack> genus2_pack() {
    static const auto pack =
        std::make_shared<const polydet::SurfacePack>(polydet::SurfacePack::load(fixture("genus2_pack.json")));
    return pack;
}
