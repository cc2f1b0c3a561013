#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mapslice/bounds.hpp"
#include "mapslice/cuboid.hpp"
#include "mapslice/paving.hpp"

namespace mapslice {

// How faces are screened for closed-loop intersections before scanning.
//   sound:       skip a face when one BB coefficient set of the height
//                gradient is strictly one sign (no interior critical point,
//                hence no closed level loop on the face).
//   paper_det:   skip when det(n, d/dt1 g^s, d/dt2 g^s) has one-signed BB
//                coefficients.
//   always_scan: scan every face.
enum class LoopMode { sound, paper_det, always_scan };

bool face_may_have_loop(const TrivariateMap& map, int face, LoopMode mode);

// Edge-chain boxes followed by the boxes of every loop-suspicious face, in
// canonical scan order, deduplicated. These are the candidate seeds; the
// traversal keeps the ones whose cuboid hits the plane.
std::vector<BoxId> boundary_scan_candidates(const Paving& p, const TrivariateMap& map, LoopMode mode);

// Depth-first iterator over the active boxes of one map-plane pair. Every
// exposed box tests positive and is exposed exactly once; backtracking and
// component restarts happen inside advance(). Single-owner, not re-entrant.
class Traversal {
public:
    using TestFn = std::function<bool(const BoxId&)>;
    using CenterFn = std::function<Vec2(const BoxId&)>;

    Traversal(const PreparedMap& pm, const SlicePlane& plane, const Paving& paving,
              LoopMode mode = LoopMode::sound);

    // Synthetic driver used by tests: explicit seed candidates plus a
    // plane-test and center callback.
    Traversal(const Paving& paving, std::vector<BoxId> seed_candidates, TestFn test, CenterFn center);

    bool valid() const { return valid_; }
    const BoxId& current() const;
    // Parent box from which current() was first reached; empty for seeds.
    const std::optional<BoxId>& current_parent() const { return parent_; }

    // Moves to the next box never exposed before, or invalidates.
    // Throws std::logic_error when called on an invalid iterator.
    void advance();

    std::uint64_t tests_performed() const { return tests_; }
    std::uint64_t boxes_emitted() const { return emitted_; }
    const std::vector<BoxId>& boundary_boxes() const { return boundary_; }

private:
    struct Probe {
        bool hit = false;
        Vec2 center{};
    };

    const Probe& probe(const BoxId& id);
    std::vector<BoxId> sorted_candidates(const BoxId& curr);
    void restart_on_boundary();
    void seed(const BoxId& id);

    Paving paving_;
    TestFn test_;
    CenterFn center_;

    std::vector<BoxId> boundary_;
    std::size_t boundary_pos_ = 0;
    std::vector<BoxId> to_revisit_;
    std::unordered_set<std::uint64_t> visited_;
    std::unordered_map<std::uint64_t, Probe> cache_;
    std::optional<BoxId> curr_, prev_, parent_;
    bool valid_ = false;
    std::uint64_t tests_ = 0;
    std::uint64_t emitted_ = 0;
};

}  // namespace mapslice
