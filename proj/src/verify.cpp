#include "mapslice/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <unordered_set>

#include "mapslice/oracle.hpp"

namespace mapslice {

namespace {

struct Trial {
    PreparedMap pm;
    Paving paving;
    SlicePlane plane;
};

std::vector<Trial> make_trials(const VerifyConfig& cfg) {
    std::vector<Trial> trials;
    std::mt19937_64 rng(cfg.seed);
    for (int t = 0; t < cfg.trials; ++t) {
        PreparedMap pm = PreparedMap::prepare(perturbed_map(t, cfg.seed * 1000 + t, cfg.magnitude));
        for (int nu : cfg.nus) {
            std::uniform_real_distribution<double> zdist(pm.zmin, pm.zmax);
            trials.push_back({pm, Paving::with_subdivision(nu), SlicePlane{zdist(rng), 0}});
        }
    }
    return trials;
}

bool subset(const ActiveSet& a, const ActiveSet& b) {
    return std::all_of(a.boxes.begin(), a.boxes.end(), [&](const BoxId& x) { return b.contains(x); });
}

std::string counts(int pass, int total) {
    return std::to_string(pass) + "/" + std::to_string(total) + " trials";
}

}  // namespace

std::vector<PropertyResult> run_verification(const VerifyConfig& cfg) {
    std::vector<PropertyResult> results;
    const std::vector<Trial> trials = make_trials(cfg);

    {
        bool ok = true;
        for (int n = 1; n <= 64; n *= 2) {
            const Paving p{n, 0};
            std::int64_t count = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n - i; ++j)
                    for (int k = 0; k < n - i - j; ++k) count += is_valid_box(p, {i, j, k}) ? 1 : 0;
            ok = ok && count == total_boxes(n);
        }
        const Paving p8 = Paving::with_subdivision(3);
        for (int i = 0; i < 8 && ok; ++i)
            for (int j = 0; j < 8 - i && ok; ++j)
                for (int k = 0; k < 8 - i - j && ok; ++k) {
                    const BoxId a{i, j, k};
                    for (const BoxId& b : neighbors(p8, a)) {
                        const auto back = neighbors(p8, b);
                        ok = ok && std::find(back.begin(), back.end(), a) != back.end();
                    }
                }
        results.push_back({"paving-enumeration-and-neighbor-symmetry", ok, ok ? "n in {1..64}" : "mismatch"});
    }

    {
        int pass = 0;
        for (const Trial& t : trials)
            if (traversal_active(t.pm, t.paving, t.plane, LoopMode::always_scan) ==
                brute_force_active(t.pm, t.paving, t.plane))
                ++pass;
        results.push_back({"traversal-equals-brute-force (always-scan)", pass == int(trials.size()),
                           counts(pass, int(trials.size()))});
    }

    {
        int pass = 0;
        for (const Trial& t : trials)
            if (traversal_active(t.pm, t.paving, t.plane, LoopMode::sound) ==
                brute_force_active(t.pm, t.paving, t.plane))
                ++pass;
        results.push_back({"traversal-equals-brute-force (sound)", pass == int(trials.size()),
                           counts(pass, int(trials.size()))});
    }

    {
        int pass = 0;
        for (const Trial& t : trials)
            if (subset(dense_sample_active(t.pm, t.paving, t.plane, 64),
                       traversal_active(t.pm, t.paving, t.plane, LoopMode::sound)))
                ++pass;
        results.push_back({"dense-sample-subset-of-traversal", pass == int(trials.size()),
                           counts(pass, int(trials.size()))});
    }

    {
        // components of the brute-force set that touch a boundary seed
        int pass = 0;
        for (const Trial& t : trials) {
            const ActiveSet bf = brute_force_active(t.pm, t.paving, t.plane);
            std::set<BoxId> boundary;
            for (const BoxId& b : edge_boxes(t.paving)) boundary.insert(b);
            for (int f = 0; f < 4; ++f)
                for (const BoxId& b : face_boxes(t.paving, f)) boundary.insert(b);
            ActiveSet expected;
            for (const ActiveSet& comp : connected_components(bf, t.paving)) {
                const bool seeded = std::any_of(comp.boxes.begin(), comp.boxes.end(),
                                                [&](const BoxId& b) { return boundary.count(b) > 0; });
                if (seeded)
                    expected.boxes.insert(expected.boxes.end(), comp.boxes.begin(), comp.boxes.end());
            }
            std::sort(expected.boxes.begin(), expected.boxes.end());
            if (traversal_active(t.pm, t.paving, t.plane, LoopMode::always_scan) == expected) ++pass;
        }
        results.push_back({"traversal-equals-seeded-components", pass == int(trials.size()),
                           counts(pass, int(trials.size()))});
    }

    {
        // sampled sup |g - l| <= mu, and per-box deviation <= mu/4^nu at nu=3
        int pass = 0;
        int total = 0;
        std::mt19937_64 rng(cfg.seed ^ 0xabcdefULL);
        for (int t = 0; t < cfg.trials; ++t) {
            ++total;
            const PreparedMap pm = PreparedMap::prepare(perturbed_map(t, cfg.seed * 77 + t, cfg.magnitude));
            std::array<Vec3, 4> verts{};
            for (int v = 0; v < 4; ++v) {
                MultiIndex alpha{};
                alpha[v] = kMapDegree;
                verts[v] = pm.map.coeff(alpha);
            }
            bool ok = true;
            std::uniform_real_distribution<double> uni(0.0, 1.0);
            for (int s = 0; s < 10000 && ok; ++s) {
                double r[3] = {uni(rng), uni(rng), uni(rng)};
                std::sort(r, r + 3);
                const Barycentric u = Barycentric::of(r[0], r[1] - r[0], r[2] - r[1], 1.0 - r[2]);
                const Vec3 g = pm.map.evaluate(u);
                Vec3 lin{};
                for (int v = 0; v < 4; ++v) lin += u[v] * verts[v];
                for (int axis = 0; axis < 3; ++axis)
                    ok = ok && std::abs(g[axis] - lin[axis]) <= pm.mu[axis] + 1e-12;
            }
            const Paving p8 = Paving::with_subdivision(3);
            const Vec3 tol = scaled_tolerance(pm.mu, 3).tol;
            for (int i = 0; i < p8.n && ok; ++i)
                for (int j = 0; j < p8.n - i && ok; ++j)
                    for (int k = 0; k < p8.n - i - j && ok; ++k) {
                        const BoxCorners bc = box_corners(p8, {i, j, k});
                        Cuboid cub = map_box(pm.map, bc);
                        const int d = 4;
                        for (int a = 0; a < d && ok; ++a)
                            for (int b = 0; b < d && ok; ++b)
                                for (int c = 0; c < d && ok; ++c) {
                                    const double s0 = a / double(d - 1), s1 = b / double(d - 1),
                                                 s2 = c / double(d - 1);
                                    std::array<double, 4> u{};
                                    Vec3 lin{};
                                    for (int m = 0; m < 8; ++m) {
                                        const double w = ((m & 4) ? s0 : 1 - s0) *
                                                         ((m & 2) ? s1 : 1 - s1) *
                                                         ((m & 1) ? s2 : 1 - s2);
                                        for (int cc = 0; cc < 4; ++cc) u[cc] += w * bc.corners[m][cc];
                                        lin += w * cub.verts[m];
                                    }
                                    const Vec3 g =
                                        pm.map.evaluate(Barycentric::of(u[0], u[1], u[2], u[3]));
                                    for (int axis = 0; axis < 3; ++axis)
                                        ok = ok && std::abs(g[axis] - lin[axis]) <= tol[axis] + 1e-12;
                                }
                    }
            if (ok) ++pass;
        }
        results.push_back({"offset-bound-dominance", pass == total, counts(pass, total)});
    }

    return results;
}

}  // namespace mapslice
