#include <doctest.h>

#include <algorithm>
#include <set>
#include <tuple>

#include "mapslice/oracle.hpp"
#include "mapslice/sweep.hpp"
#include "test_helpers.hpp"

using namespace mapslice;
using namespace mapslice::testing;

namespace {

PreparedMap shifted_map(int id, std::uint64_t seed, double dz) {
    auto coeffs = perturbed_map(id, seed, 0.1).coeffs();
    for (Vec3& c : coeffs) c.z += dz;
    return PreparedMap::prepare(TrivariateMap(id, coeffs));
}

struct Collector : ActivationSink {
    std::vector<std::tuple<int, int, BoxId>> records;  // plane, map, box
    void accept(int plane, const SliceActivation& a) override {
        records.emplace_back(plane, a.map_id, a.box);
    }
};

struct FailingSink : ActivationSink {
    int budget;
    explicit FailingSink(int n) : budget(n) {}
    void accept(int, const SliceActivation&) override {
        if (--budget < 0) throw std::runtime_error("sink full");
    }
};

SweepOptions no_micro() {
    SweepOptions opt;
    opt.generate_micro = false;
    return opt;
}

}  // namespace

TEST_CASE("bucket assignment") {
    const PlaneStack planes = PlaneStack::from_values({0.0, 0.5, 1.0});
    SUBCASE("zmin between planes lands on the next plane") { CHECK(bucket_of(planes, 0.3) == 1); }
    SUBCASE("zmin above every plane is never activated") { CHECK(bucket_of(planes, 1.2) == 3); }
    SUBCASE("zmin exactly on a plane joins that plane") { CHECK(bucket_of(planes, 0.5) == 1); }
    SUBCASE("matches the brute-force rule for many maps") {
        std::vector<PreparedMap> maps;
        for (int m = 0; m < 12; ++m) maps.push_back(shifted_map(m, 40 + m, -0.8 + 0.17 * m));
        const MapBuckets buckets = build_map_buckets(maps, planes);
        CHECK(buckets.lists.size() == 4);
        for (std::size_t m = 0; m < maps.size(); ++m) {
            int expected = planes.count();
            for (int i = 0; i < planes.count(); ++i)
                if (planes.z[i] >= maps[m].zmin) {
                    expected = i;
                    break;
                }
            int got = -1;
            for (std::size_t b = 0; b < buckets.lists.size(); ++b)
                if (std::count(buckets.lists[b].begin(), buckets.lists[b].end(), int(m))) {
                    CHECK(got == -1);  // exactly one bucket
                    got = int(b);
                }
            CHECK(got == expected);
        }
    }
    SUBCASE("uniform fast path equals binary search") {
        const PlaneStack uni = PlaneStack::uniform(-0.35, 0.2, 23);
        const PlaneStack gen = PlaneStack::from_values(uni.z);
        for (int s = -30; s <= 60; ++s) {
            const double zmin = -0.5 + 0.07 * s;
            CHECK(bucket_of(uni, zmin) == bucket_of(gen, zmin));
        }
        for (double z : uni.z) CHECK(bucket_of(uni, z) == bucket_of(gen, z));  // exact boundaries
    }
}

TEST_CASE("plane stack validation") {
    CHECK_THROWS_AS(PlaneStack::from_values({0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(PlaneStack::from_values({1.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(PlaneStack::uniform(0.0, -0.1, 3), std::invalid_argument);
    CHECK(PlaneStack::from_values({}).count() == 0);
}

TEST_CASE("single pair sweep reduces to a standalone traversal") {
    const Paving p = Paving::with_subdivision(3);
    std::vector<PreparedMap> maps;
    maps.push_back(PreparedMap::prepare(perturbed_map(7, 123, 0.12)));
    const double z0 = 0.5 * (maps[0].zmin + maps[0].zmax);
    Collector sink;
    sweep(maps, PlaneStack::from_values({z0}), p, sink, no_micro());
    std::vector<BoxId> got;
    for (const auto& [plane, map_id, box] : sink.records) {
        CHECK(plane == 0);
        CHECK(map_id == 7);
        got.push_back(box);
    }
    std::sort(got.begin(), got.end());
    CHECK(got == traversal_active(maps[0], p, {z0, 0}, LoopMode::sound).boxes);
}

TEST_CASE("sweep equals all overlapping pairs") {
    const Paving p = Paving::with_subdivision(2);
    std::vector<PreparedMap> maps;
    for (int m = 0; m < 6; ++m) maps.push_back(shifted_map(m, 800 + m, 0.35 * m));
    const PlaneStack planes = PlaneStack::uniform(0.1, 0.31, 9);
    Collector sink;
    const SweepStats stats = sweep(maps, planes, p, sink, no_micro());
    std::set<std::tuple<int, int, BoxId>> got(sink.records.begin(), sink.records.end());
    std::set<std::tuple<int, int, BoxId>> expected;
    for (int pi = 0; pi < planes.count(); ++pi)
        for (const PreparedMap& pm : maps) {
            if (planes.z[pi] < pm.zmin || planes.z[pi] > pm.zmax) continue;
            for (const BoxId& b : traversal_active(pm, p, {planes.z[pi], pi}, LoopMode::sound).boxes)
                expected.emplace(pi, pm.map.id(), b);
        }
    CHECK(got == expected);
    CHECK(got.size() == sink.records.size());  // no duplicate emissions
    CHECK(stats.total_activations() == got.size());
    SUBCASE("maps flushed in ascending id within each plane") {
        int last_plane = -1, last_map = -1;
        for (const auto& [plane, map_id, box] : sink.records) {
            if (plane != last_plane) {
                last_plane = plane;
                last_map = map_id;
            }
            CHECK(map_id >= last_map);
            last_map = map_id;
        }
    }
}

TEST_CASE("maps outside the z range are never traversed") {
    const Paving p = Paving::with_subdivision(2);
    std::vector<PreparedMap> maps;
    maps.push_back(shifted_map(0, 51, 0.0));
    maps.push_back(shifted_map(1, 52, 5.0));  // far above every plane
    Collector sink;
    sweep(maps, PlaneStack::uniform(0.2, 0.3, 3), p, sink, no_micro());
    for (const auto& [plane, map_id, box] : sink.records) CHECK(map_id == 0);
}

TEST_CASE("empty plane stack sweeps to nothing") {
    const Paving p = Paving::with_subdivision(2);
    std::vector<PreparedMap> maps;
    maps.push_back(PreparedMap::prepare(TrivariateMap::identity(0)));
    Collector sink;
    const SweepStats stats = sweep(maps, PlaneStack::from_values({}), p, sink, no_micro());
    CHECK(sink.records.empty());
    CHECK(stats.planes.empty());
    CHECK(stats.total_activations() == 0);
}

TEST_CASE("parallel sweep emits exactly the serial sequence") {
    const Paving p = Paving::with_subdivision(3);
    std::vector<PreparedMap> maps;
    for (int m = 0; m < 5; ++m) maps.push_back(shifted_map(m, 6000 + m, 0.2 * m));
    const PlaneStack planes = PlaneStack::uniform(0.15, 0.27, 6);
    Collector serial, parallel;
    SweepOptions opt = no_micro();
    opt.jobs = 1;
    sweep(maps, planes, p, serial, opt);
    opt.jobs = 4;
    sweep(maps, planes, p, parallel, opt);
    CHECK(serial.records == parallel.records);
}

TEST_CASE("sink failure aborts with the partial marker") {
    const Paving p = Paving::with_subdivision(3);
    std::vector<PreparedMap> maps;
    maps.push_back(PreparedMap::prepare(TrivariateMap::identity(0)));
    FailingSink sink(5);
    const SweepStats stats = sweep(maps, PlaneStack::from_values({0.5}), p, sink, no_micro());
    CHECK(stats.partial);
    CHECK_FALSE(stats.error.empty());
}

TEST_CASE("activation counts are reproducible") {
    const Paving p = Paving::with_subdivision(3);
    std::vector<PreparedMap> maps;
    for (int m = 0; m < 3; ++m) maps.push_back(shifted_map(m, 71 + m, 0.3 * m));
    const PlaneStack planes = PlaneStack::uniform(0.2, 0.4, 4);
    Collector a, b;
    const SweepStats sa = sweep(maps, planes, p, a, no_micro());
    const SweepStats sb = sweep(maps, planes, p, b, no_micro());
    REQUIRE(sa.planes.size() == sb.planes.size());
    for (std::size_t i = 0; i < sa.planes.size(); ++i) {
        CHECK(sa.planes[i].activations == sb.planes[i].activations);
        CHECK(sa.planes[i].cuboid_tests == sb.planes[i].cuboid_tests);
    }
}
