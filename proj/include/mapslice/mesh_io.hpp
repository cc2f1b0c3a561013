#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mapslice/bounds.hpp"

namespace mapslice {

class MeshError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Rotation = std::array<std::array<double, 3>, 3>;  // row-major

struct MeshFile {
    int version = 1;
    std::optional<Rotation> rotation;
    std::vector<TrivariateMap> maps;
};

// Parses and validates a mesh file. An optional rotation (orthonormal within
// 1e-9, positively oriented) is applied to all control points before the
// per-map precomputations, so general slice orientations reduce to z planes.
// Maps whose sampled Jacobian is not positive are kept and flagged via the
// report; `warnings` receives one line per flagged map.
std::vector<PreparedMap> load_mesh(const std::filesystem::path& path,
                                   std::vector<std::string>* warnings = nullptr);

void save_mesh(const std::filesystem::path& path, const std::vector<TrivariateMap>& maps,
               const std::optional<Rotation>& rotation = std::nullopt);

}  // namespace mapslice
