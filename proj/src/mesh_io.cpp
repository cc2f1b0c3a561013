#include "mapslice/mesh_io.hpp"

#include <cmath>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

namespace mapslice {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw MeshError(msg); }

std::string line_of_offset(const std::filesystem::path& path, std::size_t byte) {
    std::ifstream in(path, std::ios::binary);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i)
        if (text[i] == '\n') ++line;
    return "line " + std::to_string(line) + ", byte " + std::to_string(byte);
}

Rotation parse_rotation(const json& j) {
    if (!j.is_array() || j.size() != 3) fail("rotation must be a 3x3 row-major matrix");
    Rotation r{};
    for (int row = 0; row < 3; ++row) {
        if (!j[row].is_array() || j[row].size() != 3) fail("rotation must be a 3x3 row-major matrix");
        for (int col = 0; col < 3; ++col) r[row][col] = j[row][col].get<double>();
    }
    // R R^T = I within 1e-9, positively oriented
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            double dotv = 0.0;
            for (int c = 0; c < 3; ++c) dotv += r[a][c] * r[b][c];
            if (std::abs(dotv - (a == b ? 1.0 : 0.0)) > 1e-9) fail("rotation is not orthonormal");
        }
    const double det = r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) -
                       r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0]) +
                       r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
    if (det <= 0.0) fail("rotation must be positively oriented");
    return r;
}

Vec3 rotate(const Rotation& r, const Vec3& v) {
    return {r[0][0] * v.x + r[0][1] * v.y + r[0][2] * v.z,
            r[1][0] * v.x + r[1][1] * v.y + r[1][2] * v.z,
            r[2][0] * v.x + r[2][1] * v.y + r[2][2] * v.z};
}

}  // namespace

std::vector<PreparedMap> load_mesh(const std::filesystem::path& path, std::vector<std::string>* warnings) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open mesh file: " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        fail("mesh parse error at " + line_of_offset(path, e.byte) + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("version")) fail("mesh file needs a leading version field");
    if (doc["version"].get<int>() != 1) fail("unsupported mesh file version");
    if (!doc.contains("degree") || doc["degree"].get<int>() != kMapDegree) fail("mesh degree must be 3");
    std::optional<Rotation> rotation;
    if (doc.contains("rotation")) rotation = parse_rotation(doc["rotation"]);
    if (!doc.contains("maps") || !doc["maps"].is_array()) fail("mesh file needs a maps array");

    std::vector<PreparedMap> out;
    std::unordered_set<int> ids;
    int index = 0;
    for (const json& jm : doc["maps"]) {
        const std::string where = "map #" + std::to_string(index);
        if (!jm.is_object() || !jm.contains("id") || !jm.contains("coeffs"))
            fail(where + ": needs id and coeffs");
        const int id = jm["id"].get<int>();
        if (!ids.insert(id).second) fail(where + ": duplicate map id " + std::to_string(id));
        const json& jc = jm["coeffs"];
        if (!jc.is_array() || int(jc.size()) != kMapCoeffCount)
            fail(where + ": expected " + std::to_string(kMapCoeffCount) + " coefficients, got " +
                 std::to_string(jc.size()));
        std::array<Vec3, kMapCoeffCount> coeffs{};
        for (int c = 0; c < kMapCoeffCount; ++c) {
            if (!jc[c].is_array() || jc[c].size() != 3) fail(where + ": coefficient " + std::to_string(c) + " is not a 3-vector");
            coeffs[c] = {jc[c][0].get<double>(), jc[c][1].get<double>(), jc[c][2].get<double>()};
            if (rotation) coeffs[c] = rotate(*rotation, coeffs[c]);
        }
        PreparedMap pm = PreparedMap::prepare(TrivariateMap(id, coeffs));
        if (!pm.jacobian.positive() && warnings)
            warnings->push_back("map id " + std::to_string(id) + ": sampled Jacobian determinant reaches " +
                                std::to_string(pm.jacobian.min_det) + "; map kept but may self-overlap");
        out.push_back(std::move(pm));
        ++index;
    }
    return out;
}

void save_mesh(const std::filesystem::path& path, const std::vector<TrivariateMap>& maps,
               const std::optional<Rotation>& rotation) {
    json doc;
    doc["version"] = 1;
    doc["degree"] = kMapDegree;
    if (rotation) {
        json jr = json::array();
        for (const auto& row : *rotation) jr.push_back(json{row[0], row[1], row[2]});
        doc["rotation"] = jr;
    }
    json jmaps = json::array();
    for (const TrivariateMap& m : maps) {
        json jm;
        jm["id"] = m.id();
        json jc = json::array();
        for (const Vec3& c : m.coeffs()) jc.push_back(json{c.x, c.y, c.z});
        jm["coeffs"] = jc;
        jmaps.push_back(jm);
    }
    doc["maps"] = jmaps;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MeshError("cannot write mesh file: " + path.string());
    out << doc.dump(2) << "\n";
    if (!out) throw MeshError("failed writing mesh file: " + path.string());
}

}  // namespace mapslice
