#pragma once

#include <cstdint>
#include <vector>

#include "mapslice/bounds.hpp"
#include "mapslice/cuboid.hpp"
#include "mapslice/paving.hpp"
#include "mapslice/traversal.hpp"

namespace mapslice {

// Reference implementations. Deliberately O(n^3); used by tests, the
// acceptance suite and the `verify` subcommand, not by the sweep itself.

enum class ActiveSource { inflated_test, dense_sample, traversal };

struct ActiveSet {
    std::vector<BoxId> boxes;  // sorted ascending
    ActiveSource source = ActiveSource::inflated_test;

    bool contains(const BoxId& id) const;
    bool operator==(const ActiveSet& o) const { return boxes == o.boxes; }
};

// Tests every valid box's inflated cuboid against the plane.
ActiveSet brute_force_active_serial(const PreparedMap& pm, const Paving& p, const SlicePlane& plane);
// Same result, OpenMP over layers. jobs <= 0 uses the runtime default.
ActiveSet brute_force_active(const PreparedMap& pm, const Paving& p, const SlicePlane& plane,
                             int jobs = 0);

// Ground-truth style membership: a box is active when g^z sampled on a
// grid inside it straddles z0. No tolerance is applied.
ActiveSet dense_sample_active(const PreparedMap& pm, const Paving& p, const SlicePlane& plane,
                              int samples_per_box);

// Partition under the neighbor relation, breadth-first, components ordered
// by their smallest member.
std::vector<ActiveSet> connected_components(const ActiveSet& set, const Paving& p);

// Runs a traversal to completion and collects the emitted set.
ActiveSet traversal_active(const PreparedMap& pm, const Paving& p, const SlicePlane& plane,
                           LoopMode mode);

// Identity map with every control point displaced by a deterministic
// pseudo-random offset of norm <= magnitude; reseeds until the sampled
// Jacobian determinant stays positive.
TrivariateMap perturbed_map(int id, std::uint64_t seed, double magnitude);

// Identity map with one face-interior control point raised, so a slice just
// above the domain image meets that face in a closed interior loop.
TrivariateMap face_bubble_map(int id, double height);

}  // namespace mapslice
