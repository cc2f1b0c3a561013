#include "mapslice/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mapslice {

PlaneStack PlaneStack::from_values(std::vector<double> values) {
    // an empty stack is legal and sweeps to nothing
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] > values[i - 1])) throw std::invalid_argument("planes must be strictly ascending");
    return PlaneStack{std::move(values), std::nullopt};
}

PlaneStack PlaneStack::uniform(double z_start, double z_step, int count) {
    if (count < 1) throw std::invalid_argument("plane stack must hold at least one plane");
    if (!(z_step > 0.0)) throw std::invalid_argument("plane step must be positive");
    PlaneStack out;
    out.z.reserve(count);
    for (int i = 0; i < count; ++i) out.z.push_back(z_start + i * z_step);
    out.step = z_step;
    return out;
}

int bucket_of(const PlaneStack& planes, double zmin) {
    const int k = planes.count();
    if (planes.step) {
        // direct index for uniform spacing, nudged to survive roundoff
        int idx = int(std::ceil((zmin - planes.z.front()) / *planes.step - 1e-9));
        idx = std::clamp(idx, 0, k);
        while (idx < k && planes.z[idx] < zmin) ++idx;
        while (idx > 0 && planes.z[idx - 1] >= zmin) --idx;
        return idx;
    }
    return int(std::lower_bound(planes.z.begin(), planes.z.end(), zmin) - planes.z.begin());
}

MapBuckets build_map_buckets(const std::vector<PreparedMap>& maps, const PlaneStack& planes) {
    MapBuckets out;
    out.lists.resize(planes.count() + 1);
    for (std::size_t m = 0; m < maps.size(); ++m) out.lists[bucket_of(planes, maps[m].zmin)].push_back(int(m));
    return out;
}

std::uint64_t SweepStats::total_activations() const {
    std::uint64_t t = 0;
    for (const auto& row : planes) t += row.activations;
    return t;
}

std::uint64_t SweepStats::total_micro_samples() const {
    std::uint64_t t = 0;
    for (const auto& row : planes) t += row.micro_samples;
    return t;
}

double SweepStats::total_seconds() const {
    double t = 0.0;
    for (const auto& row : planes) t += row.seconds;
    return t;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct PairResult {
    std::vector<SliceActivation> activations;
    std::uint64_t cuboid_tests = 0;
    std::uint64_t micro_samples = 0;
    std::uint64_t cache_hits = 0;
    double seconds = 0.0;
};

using GeomCache = std::unordered_map<std::uint64_t, std::vector<std::vector<Vec3>>>;

PairResult run_pair(const PreparedMap& pm, const SlicePlane& plane, const Paving& paving,
                    const SweepOptions& opt, GeomCache* cache) {
    const auto t0 = Clock::now();
    PairResult res;
    Traversal tr(pm, plane, paving, opt.loop_mode);
    for (; tr.valid(); tr.advance()) {
        const BoxId box = tr.current();
        SliceActivation act;
        act.map_id = pm.map.id();
        act.box = box;
        act.order = int(res.activations.size());
        const Cuboid cub = map_box(pm.map, box_corners(paving, box));
        act.polygon = intersection_polygon(cub, plane);
        if (opt.generate_micro) {
            const std::vector<std::vector<Vec3>>* polylines = nullptr;
            std::vector<std::vector<Vec3>> fresh;
            if (cache) {
                auto it = cache->find(pack(box));
                if (it != cache->end()) {
                    ++res.cache_hits;
                    polylines = &it->second;
                }
            }
            if (!polylines) {
                for (const DomainSegment& seg : generate_cell(paving, box, opt.cell)) {
                    fresh.push_back(map_polyline(pm.map, seg, opt.cell.samples_per_beam));
                    res.micro_samples += opt.cell.samples_per_beam;
                }
                if (cache) {
                    auto& slot = (*cache)[pack(box)];
                    slot = std::move(fresh);
                    polylines = &slot;
                } else {
                    polylines = &fresh;
                }
            }
            act.micro_segments = slice_segments(*polylines, plane, opt.slab_halfwidth);
        }
        res.activations.push_back(std::move(act));
    }
    res.cuboid_tests = tr.tests_performed();
    res.seconds = seconds_since(t0);
    return res;
}

}  // namespace

SweepStats sweep(const std::vector<PreparedMap>& maps, const PlaneStack& planes, const Paving& paving,
                 ActivationSink& sink, const SweepOptions& options) {
    if (options.generate_micro) options.cell.validate();
    const MapBuckets buckets = build_map_buckets(maps, planes);
    SweepStats stats;
    stats.n = paving.n;
    std::vector<int> active;  // indices into maps, kept in ascending map id
    std::unordered_map<int, GeomCache> caches;

    for (int pi = 0; pi < planes.count(); ++pi) {
        const auto t0 = Clock::now();
        const SlicePlane plane{planes.z[pi], pi};
        active.insert(active.end(), buckets.lists[pi].begin(), buckets.lists[pi].end());
        std::erase_if(active, [&](int m) { return maps[m].zmax < plane.z0; });
        std::sort(active.begin(), active.end(),
                  [&](int a, int b) { return maps[a].map.id() < maps[b].map.id(); });

        std::vector<PairResult> results(active.size());
        const int count = int(active.size());
        if (options.cache_active)
            for (int a : active) caches.try_emplace(maps[a].map.id());

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, options.jobs)) if (options.jobs > 1)
#endif
        for (int a = 0; a < count; ++a) {
            const PreparedMap& pm = maps[active[a]];
            GeomCache* cache = options.cache_active ? &caches.find(pm.map.id())->second : nullptr;
            results[a] = run_pair(pm, plane, paving, options, cache);
        }

        PlaneStatsRow row;
        row.plane = pi;
        row.z = plane.z0;
        row.active_maps = count;
        sink.begin_plane(pi, plane.z0);
        for (int a = 0; a < count; ++a) {
            const PairResult& res = results[a];
            for (const SliceActivation& act : res.activations) {
                try {
                    sink.accept(pi, act);
                } catch (const std::exception& e) {
                    stats.partial = true;
                    stats.error = e.what();
                    row.seconds = seconds_since(t0);
                    stats.planes.push_back(row);
                    return stats;
                }
            }
            row.activations += res.activations.size();
            row.cuboid_tests += res.cuboid_tests;
            row.micro_samples += res.micro_samples;
            row.cache_hits += res.cache_hits;
            stats.pairs.push_back({pi, maps[active[a]].map.id(), res.activations.size(),
                                   res.cuboid_tests, res.seconds});
        }
        sink.end_plane(pi);

        if (options.cache_active) {
            // keep only geometry of boxes active at this plane
            for (int a = 0; a < count; ++a) {
                std::unordered_set<std::uint64_t> keep;
                for (const SliceActivation& act : results[a].activations) keep.insert(pack(act.box));
                GeomCache& cache = caches[maps[active[a]].map.id()];
                std::erase_if(cache, [&](const auto& kv) { return !keep.count(kv.first); });
            }
        }

        row.seconds = seconds_since(t0);
        stats.planes.push_back(row);
    }
    return stats;
}

}  // namespace mapslice
