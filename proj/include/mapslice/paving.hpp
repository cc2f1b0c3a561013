#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "mapslice/bbform.hpp"

namespace mapslice {

// Address of one box of the partition: (layer, row, col). Valid at
// resolution n when all components are >= 0 and i+j+k <= n-1.
struct BoxId {
    int i = 0, j = 0, k = 0;

    auto operator<=>(const BoxId&) const = default;
    std::string to_string() const;  // "i,j,k"
};

inline std::uint64_t pack(const BoxId& b) {
    return (std::uint64_t(std::uint32_t(b.i)) << 42) | (std::uint64_t(std::uint32_t(b.j)) << 21) |
           std::uint64_t(std::uint32_t(b.k));
}

// The partition of the domain tetrahedron into n = 2^nu deformed cubes per
// edge. Layer i holds n-i rows, row j of layer i holds n-i-j boxes.
struct Paving {
    int n = 1;
    int nu = 0;

    static Paving with_subdivision(int nu);
};

// n(n+1)(n+2)/6; throws for n < 1.
std::int64_t total_boxes(int n);

bool is_valid_box(const Paving& p, const BoxId& id);

// The eight corners of a box in canonical order: binary over (di,dj,dk) with
// di most significant. Corners whose lattice sum exceeds n are pulled back
// toward the base corner onto the slant plane, so every corner stays inside
// the tetrahedron and the apex boxes degenerate gracefully.
struct BoxCorners {
    std::array<Barycentric, 8> corners;
};

BoxCorners box_corners(const Paving& p, const BoxId& id);

// Lattice coordinates (components in units of 1/n) to barycentric.
Barycentric lattice_to_bary(int n, double a, double b, double c);

// The up-to-12 neighbors: six axial offsets then six sum-preserving
// diagonals, in a fixed order; only valid ids are produced.
struct NeighborList {
    std::array<BoxId, 12> ids;
    int count = 0;

    const BoxId* begin() const { return ids.data(); }
    const BoxId* end() const { return ids.data() + count; }
};

NeighborList neighbors(const Paving& p, const BoxId& id);

// Boxes along the six domain edges, deduplicated, in fixed chain order.
std::vector<BoxId> edge_boxes(const Paving& p);

// Boxes on one face: face 0 is the slant i+j+k = n-1, faces 1..3 are
// i = 0, j = 0, k = 0. Row-major order, n(n+1)/2 entries.
std::vector<BoxId> face_boxes(const Paving& p, int face);

}  // namespace mapslice
