#include "mapslice/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mapslice {

bool ActiveSet::contains(const BoxId& id) const {
    return std::binary_search(boxes.begin(), boxes.end(), id);
}

namespace {

bool box_hits(const PreparedMap& pm, const Paving& p, const SlicePlane& plane, double tol_z,
              const BoxId& id) {
    return intersects_plane(map_box(pm.map, box_corners(p, id)), plane, tol_z);
}

}  // namespace

ActiveSet brute_force_active_serial(const PreparedMap& pm, const Paving& p, const SlicePlane& plane) {
    const double tol_z = scaled_tolerance(pm.mu, p.nu).tol.z;
    ActiveSet out;
    out.source = ActiveSource::inflated_test;
    for (int i = 0; i < p.n; ++i)
        for (int j = 0; j < p.n - i; ++j)
            for (int k = 0; k < p.n - i - j; ++k)
                if (box_hits(pm, p, plane, tol_z, {i, j, k})) out.boxes.push_back({i, j, k});
    return out;
}

ActiveSet brute_force_active(const PreparedMap& pm, const Paving& p, const SlicePlane& plane, int jobs) {
    const double tol_z = scaled_tolerance(pm.mu, p.nu).tol.z;
    std::vector<std::vector<BoxId>> per_layer(p.n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(jobs > 0 ? jobs : omp_get_max_threads())
#endif
    for (int i = 0; i < p.n; ++i) {
        auto& layer = per_layer[i];
        for (int j = 0; j < p.n - i; ++j)
            for (int k = 0; k < p.n - i - j; ++k)
                if (box_hits(pm, p, plane, tol_z, {i, j, k})) layer.push_back({i, j, k});
    }
    ActiveSet out;
    out.source = ActiveSource::inflated_test;
    for (const auto& layer : per_layer) out.boxes.insert(out.boxes.end(), layer.begin(), layer.end());
    return out;
}

ActiveSet dense_sample_active(const PreparedMap& pm, const Paving& p, const SlicePlane& plane,
                              int samples_per_box) {
    if (samples_per_box < 8) throw std::invalid_argument("need at least 8 samples per box");
    const int d = std::max(2, int(std::ceil(std::cbrt(double(samples_per_box)))));
    ActiveSet out;
    out.source = ActiveSource::dense_sample;
    for (int i = 0; i < p.n; ++i)
        for (int j = 0; j < p.n - i; ++j)
            for (int k = 0; k < p.n - i - j; ++k) {
                const BoxCorners bc = box_corners(p, {i, j, k});
                double lo = 0.0, hi = 0.0;
                bool first = true;
                for (int a = 0; a < d; ++a)
                    for (int b = 0; b < d; ++b)
                        for (int c = 0; c < d; ++c) {
                            const double s0 = double(a) / (d - 1), s1 = double(b) / (d - 1),
                                         s2 = double(c) / (d - 1);
                            std::array<double, 4> u{};
                            for (int m = 0; m < 8; ++m) {
                                const double w = ((m & 4) ? s0 : 1 - s0) * ((m & 2) ? s1 : 1 - s1) *
                                                 ((m & 1) ? s2 : 1 - s2);
                                for (int cc = 0; cc < 4; ++cc) u[cc] += w * bc.corners[m][cc];
                            }
                            const double z = pm.map.evaluate(Barycentric::of(u[0], u[1], u[2], u[3])).z;
                            lo = first ? z : std::min(lo, z);
                            hi = first ? z : std::max(hi, z);
                            first = false;
                        }
                if (lo <= plane.z0 && plane.z0 <= hi) out.boxes.push_back({i, j, k});
            }
    return out;
}

std::vector<ActiveSet> connected_components(const ActiveSet& set, const Paving& p) {
    std::vector<ActiveSet> comps;
    std::unordered_set<std::uint64_t> members, seen;
    members.reserve(set.boxes.size() * 2);
    for (const BoxId& b : set.boxes) members.insert(pack(b));
    for (const BoxId& seedBox : set.boxes) {
        if (seen.count(pack(seedBox))) continue;
        ActiveSet comp;
        comp.source = set.source;
        std::deque<BoxId> queue{seedBox};
        seen.insert(pack(seedBox));
        while (!queue.empty()) {
            const BoxId b = queue.front();
            queue.pop_front();
            comp.boxes.push_back(b);
            for (const BoxId& nb : neighbors(p, b)) {
                if (!members.count(pack(nb)) || seen.count(pack(nb))) continue;
                seen.insert(pack(nb));
                queue.push_back(nb);
            }
        }
        std::sort(comp.boxes.begin(), comp.boxes.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

ActiveSet traversal_active(const PreparedMap& pm, const Paving& p, const SlicePlane& plane,
                           LoopMode mode) {
    ActiveSet out;
    out.source = ActiveSource::traversal;
    for (Traversal tr(pm, plane, p, mode); tr.valid(); tr.advance()) out.boxes.push_back(tr.current());
    std::sort(out.boxes.begin(), out.boxes.end());
    return out;
}

TrivariateMap perturbed_map(int id, std::uint64_t seed, double magnitude) {
    for (std::uint64_t round = 0;; ++round) {
        std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * round);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        std::array<Vec3, kMapCoeffCount> coeffs = TrivariateMap::identity(id).coeffs();
        for (Vec3& c : coeffs) {
            Vec3 offset;
            do {
                offset = {unit(rng), unit(rng), unit(rng)};
            } while (dot(offset, offset) > 1.0);
            c += magnitude * offset;
        }
        TrivariateMap map(id, coeffs);
        if (validate_map(map, 128).positive()) return map;
    }
}

TrivariateMap face_bubble_map(int id, double height) {
    auto coeffs = TrivariateMap::identity(id).coeffs();
    coeffs[map_coeff_position({1, 1, 0, 1})].z += height;
    return TrivariateMap(id, coeffs);
}

}  // namespace mapslice
