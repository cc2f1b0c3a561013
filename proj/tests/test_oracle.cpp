#include <doctest.h>

#include <random>
#include <set>

#include "mapslice/oracle.hpp"
#include "test_helpers.hpp"

using namespace mapslice;
using namespace mapslice::testing;

namespace {

// identity in x/y with a prescribed cubic z profile along the layer axis
TrivariateMap z_profile_map(int id, const std::array<double, 4>& bezier_z) {
    auto coeffs = TrivariateMap::identity(id).coeffs();
    const auto& order = map_coeff_order();
    for (int c = 0; c < kMapCoeffCount; ++c) coeffs[c].z = bezier_z[order[c][1]];
    return TrivariateMap(id, coeffs);
}

}  // namespace

TEST_CASE("brute force active set on the identity map") {
    const Paving p{4, 2};
    const PreparedMap pm = PreparedMap::prepare(TrivariateMap::identity(0));
    const ActiveSet active = brute_force_active_serial(pm, p, {0.5, 0});
    std::set<BoxId> expected;
    for (int i : {1, 2})
        for (int j = 0; j < 4 - i; ++j)
            for (int k = 0; k < 4 - i - j; ++k) expected.insert({i, j, k});
    CHECK(std::set<BoxId>(active.boxes.begin(), active.boxes.end()) == expected);
    CHECK(brute_force_active_serial(pm, p, {-1.0, 0}).boxes.empty());
    CHECK(brute_force_active_serial(pm, p, {2.0, 0}).boxes.empty());
}

TEST_CASE("parallel brute force equals the serial reference") {
    for (int t = 0; t < 6; ++t) {
        const PreparedMap pm = PreparedMap::prepare(perturbed_map(t, 500 + t, 0.15));
        const Paving p = Paving::with_subdivision(3);
        const SlicePlane plane{pm.zmin + (0.17 + 0.11 * t) * (pm.zmax - pm.zmin), 0};
        const ActiveSet serial = brute_force_active_serial(pm, p, plane);
        for (int jobs : {1, 2, 4}) CHECK(brute_force_active(pm, p, plane, jobs) == serial);
    }
}

TEST_CASE("dense sampling is contained in the inflated test") {
    for (int t = 0; t < 8; ++t) {
        const PreparedMap pm = PreparedMap::prepare(perturbed_map(t, 700 + t, 0.15));
        const Paving p = Paving::with_subdivision(2);
        const SlicePlane plane{pm.zmin + (0.1 + 0.1 * t) * (pm.zmax - pm.zmin), 0};
        const ActiveSet dense = dense_sample_active(pm, p, plane, 64);
        const ActiveSet inflated = brute_force_active(pm, p, plane);
        for (const BoxId& b : dense.boxes) CHECK(inflated.contains(b));
    }
    CHECK_THROWS_AS(dense_sample_active(PreparedMap::prepare(TrivariateMap::identity(0)),
                                        Paving{2, 1}, {0.5, 0}, 7),
                    std::invalid_argument);
}

TEST_CASE("dense sampling matches exact intervals on the identity map") {
    const Paving p{4, 2};
    const PreparedMap pm = PreparedMap::prepare(TrivariateMap::identity(0));
    const ActiveSet dense = dense_sample_active(pm, p, {0.4, 0}, 64);
    // z spans are [i/4, (i+1)/4] (shrunk only at clamped corners), 0.4 sits in layer 1
    for (const BoxId& b : dense.boxes) CHECK(b.i == 1);
    CHECK(dense.boxes.size() == 6);
}

TEST_CASE("traversal set is contained in the brute force set") {
    for (int t = 0; t < 6; ++t) {
        const PreparedMap pm = PreparedMap::prepare(perturbed_map(t, 900 + t, 0.15));
        const Paving p = Paving::with_subdivision(3);
        const SlicePlane plane{pm.zmin + (0.23 + 0.09 * t) * (pm.zmax - pm.zmin), 0};
        const ActiveSet traversed = traversal_active(pm, p, plane, LoopMode::sound);
        const ActiveSet brute = brute_force_active(pm, p, plane);
        for (const BoxId& b : traversed.boxes) CHECK(brute.contains(b));
    }
}

TEST_CASE("connected components") {
    const Paving p{8, 3};
    SUBCASE("empty set") { CHECK(connected_components(ActiveSet{}, p).empty()); }
    SUBCASE("two isolated boxes") {
        ActiveSet set;
        set.boxes = {{0, 0, 0}, {0, 0, 5}};
        const auto comps = connected_components(set, p);
        REQUIRE(comps.size() == 2);
        CHECK(comps[0].boxes == std::vector<BoxId>{{0, 0, 0}});
        CHECK(comps[1].boxes == std::vector<BoxId>{{0, 0, 5}});
    }
    SUBCASE("diagonal adjacency joins boxes") {
        ActiveSet set;
        set.boxes = {{0, 0, 0}, {0, 1, 0}, {1, 0, 0}};  // (0,1,0)-(1,0,0) via (1,-1,0)
        CHECK(connected_components(set, p).size() == 1);
    }
    SUBCASE("a folded height profile produces one component per crossing band") {
        // z(t) = 4.8t^3 - 7.2t^2 + 3.4t rises, dips, rises; z = 0.5 is crossed
        // three times, so the slice has three components, all edge-seeded
        const TrivariateMap fold = z_profile_map(0, {0.0, 3.4 / 3.0, 1.0 - 3.4 / 3.0, 1.0});
        const PreparedMap pm = PreparedMap::prepare(fold);
        const Paving p16 = Paving::with_subdivision(4);
        const ActiveSet active = brute_force_active(pm, p16, {0.5, 0});
        const auto comps = connected_components(active, p16);
        CHECK(comps.size() == 3);
        std::set<BoxId> edges;
        for (const BoxId& b : edge_boxes(p16)) edges.insert(b);
        for (const auto& comp : comps) {
            const bool touches = std::any_of(comp.boxes.begin(), comp.boxes.end(),
                                             [&](const BoxId& b) { return edges.count(b) > 0; });
            CHECK(touches);
        }
        // and the traversal finds all of them from edge seeds alone
        CHECK(traversal_active(pm, p16, {0.5, 0}, LoopMode::sound) == active);
    }
}

TEST_CASE("perturbed map generator is deterministic and injective-looking") {
    const TrivariateMap a = perturbed_map(3, 12345, 0.15);
    const TrivariateMap b = perturbed_map(3, 12345, 0.15);
    for (int c = 0; c < kMapCoeffCount; ++c) CHECK(norm(a.coeffs()[c] - b.coeffs()[c]) == 0.0);
    CHECK(validate_map(a, 128).positive());
    for (int c = 0; c < kMapCoeffCount; ++c) {
        const Vec3 offset = a.coeffs()[c] - TrivariateMap::identity(3).coeffs()[c];
        CHECK(norm(offset) <= 0.15 + 1e-12);
    }
}
