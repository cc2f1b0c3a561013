#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mapslice/bbform.hpp"
#include "mapslice/cuboid.hpp"
#include "mapslice/paving.hpp"

namespace mapslice {

enum class CellTemplateId { edge_frame, octet, diagonal_cross };

const char* to_string(CellTemplateId id);
CellTemplateId cell_template_from_string(const std::string& name);

// One procedural lattice cell, defined on the unit cube and clipped to the
// box region. Beam geometry is represented by sampled centerlines; the
// radius fraction only drives stroke width at render time.
struct CellTemplate {
    CellTemplateId id = CellTemplateId::edge_frame;
    double radius_fraction = 0.1;  // of the box edge, in (0, 0.5)
    int samples_per_beam = 7;      // >= 2

    void validate() const;
};

// Beam centerline in domain coordinates.
struct DomainSegment {
    Barycentric a, b;
};

// The template's centerlines placed in the box's lattice cube, clipped to
// the domain (lattice coordinate sum <= n). Deterministic, O(1) per box.
std::vector<DomainSegment> generate_cell(const Paving& p, const BoxId& id, const CellTemplate& tmpl);

// Image of a segment under the map, sampled at `samples` equally spaced
// barycentric points.
std::vector<Vec3> map_polyline(const TrivariateMap& map, const DomainSegment& seg, int samples);

struct Segment2 {
    Vec2 a, b;
};

// Portions of the polylines within |z - z0| <= slab_halfwidth, projected to
// the plane; crossing pieces are clipped by linear interpolation.
std::vector<Segment2> slice_segments(const std::vector<std::vector<Vec3>>& polylines,
                                     const SlicePlane& plane, double slab_halfwidth);

}  // namespace mapslice
