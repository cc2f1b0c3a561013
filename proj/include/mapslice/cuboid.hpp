#pragma once

#include <array>
#include <vector>

#include "mapslice/bbform.hpp"
#include "mapslice/paving.hpp"
#include "mapslice/vec.hpp"

namespace mapslice {

// Slicing plane z = z0 in model space (general orientations are realized by
// rotating the control points at load time).
struct SlicePlane {
    double z0 = 0.0;
    int index = 0;
};

// Images of a box's eight corners, same canonical corner order.
struct Cuboid {
    std::array<Vec3, 8> verts;

    double zmin() const;
    double zmax() const;
};

Cuboid map_box(const TrivariateMap& map, const BoxCorners& corners);

// Interval test with the tolerance folded in: the plane hits the cuboid
// inflated by tol_z in z. For a constant-z plane this is exactly the
// edge-crossing test on the offset cuboid.
bool intersects_plane(const Cuboid& c, const SlicePlane& p, double tol_z);

// Average of the edge crossings with z = z0, used to order traversal
// candidates. Tolerance-only hits (no exact crossing) fall back to the
// vertex average. Throws std::logic_error when the cuboid misses the plane.
Vec2 intersection_center(const Cuboid& c, const SlicePlane& p, double tol_z);

// Edge crossings sorted counterclockwise about their center; falls back to
// the projected vertices for tolerance-only hits so emitted activations
// always carry a polygon.
std::vector<Vec2> intersection_polygon(const Cuboid& c, const SlicePlane& p);

}  // namespace mapslice
