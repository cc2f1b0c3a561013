#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "mapslice/paving.hpp"
#include "test_helpers.hpp"

using namespace mapslice;
using namespace mapslice::testing;

TEST_CASE("total boxes") {
    CHECK(total_boxes(1) == 1);
    CHECK(total_boxes(4) == 20);
    CHECK(total_boxes(512) == 22500864);
    CHECK_THROWS_AS(total_boxes(0), std::invalid_argument);
    for (int n = 1; n <= 64; ++n) {
        std::int64_t count = 0;
        const Paving p{n, 0};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    if (is_valid_box(p, {i, j, k})) ++count;
        CHECK(count == total_boxes(n));
    }
}

TEST_CASE("box validity") {
    const Paving p{4, 2};
    CHECK(is_valid_box(p, {3, 0, 0}));
    CHECK_FALSE(is_valid_box(p, {2, 1, 1}));
    CHECK_FALSE(is_valid_box(p, {-1, 0, 0}));
    CHECK(total_boxes(8) == 120);
}

TEST_CASE("box corners") {
    SUBCASE("interior cube is the scaled unit lattice cell") {
        const Paving p = Paving::with_subdivision(1);  // n = 2
        const BoxCorners bc = box_corners(p, {0, 0, 0});
        for (int m = 0; m < 8; ++m) {
            const double a = ((m >> 2) & 1) / 2.0, b = ((m >> 1) & 1) / 2.0, c = (m & 1) / 2.0;
            CHECK(bc.corners[m][1] == doctest::Approx(a));
            CHECK(bc.corners[m][2] == doctest::Approx(b));
            CHECK(bc.corners[m][3] == doctest::Approx(c));
        }
    }
    SUBCASE("n = 1 clamps the outer corners onto the slant") {
        const Paving p{1, 0};
        const BoxCorners bc = box_corners(p, {0, 0, 0});
        // corner (1,1,0) -> lattice (1/2,1/2,0), corner (1,1,1) -> (1/3,1/3,1/3)
        const Barycentric& c110 = bc.corners[4 + 2];
        CHECK(c110[1] == doctest::Approx(0.5));
        CHECK(c110[2] == doctest::Approx(0.5));
        CHECK(c110[3] == doctest::Approx(0.0));
        const Barycentric& c111 = bc.corners[7];
        CHECK(c111[1] == doctest::Approx(1.0 / 3));
        CHECK(c111[2] == doctest::Approx(1.0 / 3));
        CHECK(c111[3] == doctest::Approx(1.0 / 3));
        for (const Barycentric& c : bc.corners) CHECK(c.is_valid(1e-9));
    }
    SUBCASE("apex box degenerates toward a tetrahedron") {
        const Paving p{4, 2};
        const BoxCorners bc = box_corners(p, {3, 0, 0});
        int clamped = 0;
        for (int m = 0; m < 8; ++m) {
            const int dsum = ((m >> 2) & 1) + ((m >> 1) & 1) + (m & 1);
            const double latsum = 4.0 * (bc.corners[m][1] + bc.corners[m][2] + bc.corners[m][3]);
            if (dsum >= 2) {
                CHECK(latsum == doctest::Approx(4.0));  // on the slant plane
                ++clamped;
            } else {
                CHECK(latsum == doctest::Approx(3.0 + dsum));
            }
        }
        CHECK(clamped == 4);
    }
    CHECK_THROWS_AS(box_corners(Paving{4, 2}, {2, 1, 1}), std::invalid_argument);
}

TEST_CASE("neighbors") {
    SUBCASE("interior box has all 12") {
        const auto nb = neighbors(Paving{8, 3}, {2, 2, 2});
        CHECK(nb.count == 12);
    }
    SUBCASE("origin box has 3") {
        const auto nb = neighbors(Paving{8, 3}, {0, 0, 0});
        CHECK(nb.count == 3);
        CHECK(nb.ids[0] == BoxId{1, 0, 0});
        CHECK(nb.ids[1] == BoxId{0, 1, 0});
        CHECK(nb.ids[2] == BoxId{0, 0, 1});
    }
    SUBCASE("slant box at n=4 has 9") {
        const auto nb = neighbors(Paving{4, 2}, {1, 1, 1});
        CHECK(nb.count == 9);
    }
    SUBCASE("symmetry over every pair at n=8") {
        const Paving p{8, 3};
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8 - i; ++j)
                for (int k = 0; k < 8 - i - j; ++k) {
                    const BoxId a{i, j, k};
                    for (const BoxId& b : neighbors(p, a)) {
                        const auto back = neighbors(p, b);
                        CHECK(std::find(back.begin(), back.end(), a) != back.end());
                    }
                }
    }
}

TEST_CASE("edge boxes") {
    SUBCASE("n = 1 collapses to the single box") {
        const auto e = edge_boxes(Paving{1, 0});
        REQUIRE(e.size() == 1);
        CHECK(e[0] == BoxId{0, 0, 0});
    }
    SUBCASE("matches brute-force dedup of the six chains") {
        for (int n : {2, 4, 8, 16}) {
            const Paving p{n, 0};
            std::set<BoxId> expected;
            for (int t = 0; t < n; ++t) {
                expected.insert({t, 0, 0});
                expected.insert({0, t, 0});
                expected.insert({0, 0, t});
                expected.insert({t, n - 1 - t, 0});
                expected.insert({t, 0, n - 1 - t});
                expected.insert({0, t, n - 1 - t});
            }
            const auto got = edge_boxes(p);
            CHECK(got.size() == expected.size());
            CHECK(std::set<BoxId>(got.begin(), got.end()) == expected);
            // no duplicates, first-occurrence order retained
            std::set<BoxId> seen;
            for (const BoxId& b : got) CHECK(seen.insert(b).second);
        }
    }
    SUBCASE("edge boxes lie on faces") {
        const Paving p{4, 2};
        std::set<BoxId> on_faces;
        for (int f = 0; f < 4; ++f)
            for (const BoxId& b : face_boxes(p, f)) on_faces.insert(b);
        for (const BoxId& b : edge_boxes(p)) CHECK(on_faces.count(b) == 1);
    }
}

TEST_CASE("face boxes") {
    const Paving p{4, 2};
    for (int f = 0; f < 4; ++f) {
        const auto fb = face_boxes(p, f);
        CHECK(fb.size() == 10);  // n(n+1)/2
        for (const BoxId& b : fb) {
            CHECK(is_valid_box(p, b));
            switch (f) {
                case 0: CHECK(b.i + b.j + b.k == 3); break;
                case 1: CHECK(b.i == 0); break;
                case 2: CHECK(b.j == 0); break;
                case 3: CHECK(b.k == 0); break;
            }
        }
        std::set<BoxId> uniq(fb.begin(), fb.end());
        CHECK(uniq.size() == fb.size());
    }
    const auto single = face_boxes(Paving{1, 0}, 2);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == BoxId{0, 0, 0});
    CHECK_THROWS_AS(face_boxes(p, 4), std::out_of_range);
}

TEST_CASE("coverage: boxes tile the domain without interior overlap") {
    // box region = lattice unit cell intersected with the half-space sum <= n
    std::mt19937_64 rng(71);
    for (int nu = 0; nu <= 3; ++nu) {
        const Paving p = Paving::with_subdivision(nu);
        const int n = p.n;
        for (int s = 0; s < 25000; ++s) {
            const Barycentric u = random_bary(rng);
            const double a = u[1] * n, b = u[2] * n, c = u[3] * n;
            int covering = 0, strictly_inside = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n - i; ++j)
                    for (int k = 0; k < n - i - j; ++k) {
                        const bool in = a >= i - 1e-12 && a <= i + 1 + 1e-12 && b >= j - 1e-12 &&
                                        b <= j + 1 + 1e-12 && c >= k - 1e-12 && c <= k + 1 + 1e-12 &&
                                        a + b + c <= n + 1e-12;
                        const bool strict = a > i && a < i + 1 && b > j && b < j + 1 && c > k &&
                                            c < k + 1 && a + b + c < n;
                        covering += in;
                        strictly_inside += strict;
                    }
            CHECK(covering >= 1);
            CHECK(strictly_inside <= 1);
        }
    }
}
