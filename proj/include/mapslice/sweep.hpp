#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mapslice/bounds.hpp"
#include "mapslice/cuboid.hpp"
#include "mapslice/microstructure.hpp"
#include "mapslice/paving.hpp"
#include "mapslice/traversal.hpp"

namespace mapslice {

// Ascending slice heights. `step` is set when the stack was declared
// uniform, enabling direct bucket indexing.
struct PlaneStack {
    std::vector<double> z;
    std::optional<double> step;

    static PlaneStack from_values(std::vector<double> values);  // must be strictly ascending
    static PlaneStack uniform(double z_start, double z_step, int count);

    int count() const { return int(z.size()); }
};

// lists[i], i < plane count: maps first reachable at plane i; the last list
// holds maps above every plane (never activated).
struct MapBuckets {
    std::vector<std::vector<int>> lists;
};

// First plane index with z >= zmin, or plane-count when there is none.
int bucket_of(const PlaneStack& planes, double zmin);

MapBuckets build_map_buckets(const std::vector<PreparedMap>& maps, const PlaneStack& planes);

// One emitted activation: the unit of all outputs.
struct SliceActivation {
    int map_id = 0;
    BoxId box;
    int order = 0;  // traversal order within the map-plane pair
    std::vector<Vec2> polygon;
    std::vector<Segment2> micro_segments;
};

// Receives activations in traversal order per map-plane pair, maps in
// ascending id within a plane. Throwing from accept() aborts the sweep with
// the partial flag set.
class ActivationSink {
public:
    virtual ~ActivationSink() = default;
    virtual void begin_plane(int plane_index, double z) { (void)plane_index, (void)z; }
    virtual void accept(int plane_index, const SliceActivation& activation) = 0;
    virtual void end_plane(int plane_index) { (void)plane_index; }
};

struct SweepOptions {
    LoopMode loop_mode = LoopMode::sound;
    CellTemplate cell;
    double slab_halfwidth = 0.0;
    bool generate_micro = true;
    bool cache_active = false;  // keep mapped cell geometry across planes
    int jobs = 1;               // worker bound for per-map traversals
};

struct PairStatsRow {
    int plane = 0;
    int map_id = 0;
    std::uint64_t activations = 0;
    std::uint64_t cuboid_tests = 0;
    double seconds = 0.0;
};

struct PlaneStatsRow {
    int plane = 0;
    double z = 0.0;
    int active_maps = 0;
    std::uint64_t activations = 0;
    std::uint64_t cuboid_tests = 0;
    std::uint64_t micro_samples = 0;
    std::uint64_t cache_hits = 0;
    double seconds = 0.0;
};

struct SweepStats {
    int n = 0;
    std::vector<PlaneStatsRow> planes;
    std::vector<PairStatsRow> pairs;
    bool partial = false;  // sweep aborted (sink failure); outputs incomplete
    std::string error;

    std::uint64_t total_activations() const;
    std::uint64_t total_micro_samples() const;
    double total_seconds() const;
};

// Plane sweep over all maps: maps join the active set at their bucket plane,
// leave once their control z range falls below the plane, and every active
// map-plane pair is traversed. Active maps of one plane run concurrently
// when jobs > 1; emissions are flushed in map-id order either way.
SweepStats sweep(const std::vector<PreparedMap>& maps, const PlaneStack& planes, const Paving& paving,
                 ActivationSink& sink, const SweepOptions& options = {});

}  // namespace mapslice
