#include "mapslice/traversal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mapslice {

namespace {

bool one_signed(const TriPatchS& patch) {
    bool pos = true, neg = true;
    for (double c : patch.coeffs) {
        pos = pos && c > 0.0;
        neg = neg && c < 0.0;
    }
    return pos || neg;
}

}  // namespace

bool face_may_have_loop(const TrivariateMap& map, int face, LoopMode mode) {
    if (mode == LoopMode::always_scan) {
        if (face < 0 || face > 3) throw std::out_of_range("face index out of range");
        return true;
    }
    const TriPatch3 surf = face_patch(map, face);
    const TriPatch3 d1 = patch_direction_derivative(surf, 1);
    const TriPatch3 d2 = patch_direction_derivative(surf, 2);
    if (mode == LoopMode::sound) {
        // A one-signed height gradient component means the height has no
        // interior critical point, so no closed level loop on this face.
        return !(one_signed(z_component(d1)) || one_signed(z_component(d2)));
    }
    // det((0,0,1), d1, d2) = d1.x d2.y - d1.y d2.x as a degree-4 patch
    TriPatchS x1, y1, x2, y2;
    x1.degree = y1.degree = x2.degree = y2.degree = d1.degree;
    for (const Vec3& c : d1.coeffs) {
        x1.coeffs.push_back(c.x);
        y1.coeffs.push_back(c.y);
    }
    for (const Vec3& c : d2.coeffs) {
        x2.coeffs.push_back(c.x);
        y2.coeffs.push_back(c.y);
    }
    TriPatchS det = bb_product(x1, y2);
    const TriPatchS neg = bb_product(y1, x2);
    for (std::size_t i = 0; i < det.coeffs.size(); ++i) det.coeffs[i] -= neg.coeffs[i];
    return !one_signed(det);
}

std::vector<BoxId> boundary_scan_candidates(const Paving& p, const TrivariateMap& map, LoopMode mode) {
    std::vector<BoxId> out = edge_boxes(p);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(out.size() * 2);
    for (const BoxId& b : out) seen.insert(pack(b));
    for (int face = 0; face < 4; ++face) {
        if (!face_may_have_loop(map, face, mode)) continue;
        for (const BoxId& b : face_boxes(p, face))
            if (seen.insert(pack(b)).second) out.push_back(b);
    }
    return out;
}

Traversal::Traversal(const PreparedMap& pm, const SlicePlane& plane, const Paving& paving, LoopMode mode)
    : paving_(paving) {
    const double tol_z = scaled_tolerance(pm.mu, paving.nu).tol.z;
    const TrivariateMap* map = &pm.map;
    const Paving pav = paving;
    test_ = [map, pav, plane, tol_z](const BoxId& id) {
        return intersects_plane(map_box(*map, box_corners(pav, id)), plane, tol_z);
    };
    center_ = [map, pav, plane, tol_z](const BoxId& id) {
        return intersection_center(map_box(*map, box_corners(pav, id)), plane, tol_z);
    };
    const std::size_t hint = std::size_t(4) * paving.n * paving.n;
    visited_.reserve(hint);
    cache_.reserve(hint);
    for (const BoxId& b : boundary_scan_candidates(paving, pm.map, mode))
        if (probe(b).hit) boundary_.push_back(b);
    restart_on_boundary();
}

Traversal::Traversal(const Paving& paving, std::vector<BoxId> seed_candidates, TestFn test, CenterFn center)
    : paving_(paving), test_(std::move(test)), center_(std::move(center)) {
    for (const BoxId& b : seed_candidates)
        if (probe(b).hit) boundary_.push_back(b);
    restart_on_boundary();
}

const BoxId& Traversal::current() const {
    if (!valid_) throw std::logic_error("current() on an invalid traversal");
    return *curr_;
}

const Traversal::Probe& Traversal::probe(const BoxId& id) {
    auto [it, inserted] = cache_.try_emplace(pack(id));
    if (inserted) {
        ++tests_;
        it->second.hit = test_(id);
        if (it->second.hit) it->second.center = center_(id);
    }
    return it->second;
}

std::vector<BoxId> Traversal::sorted_candidates(const BoxId& curr) {
    struct Entry {
        BoxId id;
        double angle;
    };
    const Vec2 c0 = probe(curr).center;
    Vec2 ref{1.0, 0.0};
    if (prev_) {
        const Vec2 d = probe(*prev_).center - c0;
        if (d.x != 0.0 || d.y != 0.0) ref = d;
    }
    std::vector<Entry> entries;
    entries.reserve(12);
    for (const BoxId& nb : neighbors(paving_, curr)) {
        const Probe& pr = probe(nb);
        if (!pr.hit) continue;
        const Vec2 v = pr.center - c0;
        double angle = std::atan2(ref.x * v.y - ref.y * v.x, ref.x * v.x + ref.y * v.y);
        if (angle < 0.0) angle += 2.0 * M_PI;
        entries.push_back({nb, angle});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.angle != b.angle) return a.angle < b.angle;
        return a.id < b.id;
    });
    std::vector<BoxId> out;
    out.reserve(entries.size());
    for (const Entry& e : entries) out.push_back(e.id);
    return out;
}

void Traversal::seed(const BoxId& id) {
    prev_.reset();
    parent_.reset();
    curr_ = id;
    visited_.insert(pack(id));
    to_revisit_.push_back(id);
    ++emitted_;
    valid_ = true;
}

void Traversal::restart_on_boundary() {
    while (boundary_pos_ < boundary_.size() && visited_.count(pack(boundary_[boundary_pos_])))
        ++boundary_pos_;
    if (boundary_pos_ < boundary_.size()) {
        seed(boundary_[boundary_pos_++]);
    } else {
        valid_ = false;
        curr_.reset();
        prev_.reset();
        parent_.reset();
    }
}

void Traversal::advance() {
    if (!valid_) throw std::logic_error("advance() on an invalid traversal");
    bool at_start = true;
    while (true) {
        const std::vector<BoxId> cands = sorted_candidates(*curr_);
        if (at_start && cands.empty()) {
            // isolated single-box component
            restart_on_boundary();
            return;
        }
        at_start = false;
        for (const BoxId& c : cands) {
            if (visited_.count(pack(c))) continue;
            prev_ = curr_;
            parent_ = curr_;
            curr_ = c;
            visited_.insert(pack(c));
            to_revisit_.push_back(c);
            ++emitted_;
            return;
        }
        // all neighbors visited: walk back down the stack
        while (!to_revisit_.empty() && to_revisit_.back() == *curr_) to_revisit_.pop_back();
        if (to_revisit_.empty()) {
            restart_on_boundary();
            return;
        }
        prev_ = curr_;
        curr_ = to_revisit_.back();
    }
}

}  // namespace mapslice
