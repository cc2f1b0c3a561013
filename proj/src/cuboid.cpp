#include "mapslice/cuboid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mapslice {

namespace {

// Cube edges as corner-index pairs (corners differ in exactly one bit).
constexpr std::array<std::array<int, 2>, 12> kEdges = {{
    {0, 1}, {0, 2}, {0, 4}, {1, 3}, {1, 5}, {2, 3},
    {2, 6}, {3, 7}, {4, 5}, {4, 6}, {5, 7}, {6, 7},
}};

std::vector<Vec2> edge_crossings(const Cuboid& c, double z0) {
    std::vector<Vec2> pts;
    for (const auto& e : kEdges) {
        const Vec3& a = c.verts[e[0]];
        const Vec3& b = c.verts[e[1]];
        const double da = a.z - z0, db = b.z - z0;
        if (da * db > 0.0) continue;
        if (da == 0.0 && db == 0.0) {
            pts.push_back({0.5 * (a.x + b.x), 0.5 * (a.y + b.y)});
            continue;
        }
        const double t = da / (da - db);
        pts.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    }
    return pts;
}

Vec2 vertex_average(const Cuboid& c) {
    Vec2 avg{};
    for (const Vec3& v : c.verts) avg += Vec2{v.x, v.y};
    return (1.0 / 8.0) * avg;
}

}  // namespace

double Cuboid::zmin() const {
    double m = verts[0].z;
    for (const Vec3& v : verts) m = std::min(m, v.z);
    return m;
}

double Cuboid::zmax() const {
    double m = verts[0].z;
    for (const Vec3& v : verts) m = std::max(m, v.z);
    return m;
}

Cuboid map_box(const TrivariateMap& map, const BoxCorners& corners) {
    Cuboid c;
    for (int m = 0; m < 8; ++m) c.verts[m] = map.evaluate(corners.corners[m]);
    return c;
}

bool intersects_plane(const Cuboid& c, const SlicePlane& p, double tol_z) {
    return c.zmin() - tol_z <= p.z0 && p.z0 <= c.zmax() + tol_z;
}

Vec2 intersection_center(const Cuboid& c, const SlicePlane& p, double tol_z) {
    if (!intersects_plane(c, p, tol_z)) throw std::logic_error("cuboid does not intersect the plane");
    const auto pts = edge_crossings(c, p.z0);
    if (pts.empty()) return vertex_average(c);
    Vec2 avg{};
    for (const Vec2& q : pts) avg += q;
    return (1.0 / double(pts.size())) * avg;
}

std::vector<Vec2> intersection_polygon(const Cuboid& c, const SlicePlane& p) {
    std::vector<Vec2> pts = edge_crossings(c, p.z0);
    if (pts.empty()) {
        pts.reserve(8);
        for (const Vec3& v : c.verts) pts.push_back({v.x, v.y});
    }
    Vec2 center{};
    for (const Vec2& q : pts) center += q;
    center *= 1.0 / double(pts.size());
    std::sort(pts.begin(), pts.end(), [&](const Vec2& a, const Vec2& b) {
        const double aa = std::atan2(a.y - center.y, a.x - center.x);
        const double ab = std::atan2(b.y - center.y, b.x - center.x);
        if (aa != ab) return aa < ab;
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    });
    return pts;
}

}  // namespace mapslice
