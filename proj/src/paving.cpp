#include "mapslice/paving.hpp"

#include <stdexcept>
#include <unordered_set>

namespace mapslice {

std::string BoxId::to_string() const {
    return std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k);
}

Paving Paving::with_subdivision(int nu) {
    if (nu < 0) throw std::invalid_argument("subdivision exponent must be >= 0");
    return Paving{1 << nu, nu};
}

std::int64_t total_boxes(int n) {
    if (n < 1) throw std::invalid_argument("resolution must be >= 1");
    const std::int64_t m = n;
    return m * (m + 1) * (m + 2) / 6;
}

bool is_valid_box(const Paving& p, const BoxId& id) {
    return id.i >= 0 && id.j >= 0 && id.k >= 0 && id.i + id.j + id.k <= p.n - 1;
}

Barycentric lattice_to_bary(int n, double a, double b, double c) {
    return Barycentric::of(1.0 - (a + b + c) / n, a / n, b / n, c / n);
}

BoxCorners box_corners(const Paving& p, const BoxId& id) {
    if (!is_valid_box(p, id)) throw std::invalid_argument("invalid box id " + id.to_string());
    BoxCorners out;
    const double base_sum = id.i + id.j + id.k;
    for (int m = 0; m < 8; ++m) {
        const int di = (m >> 2) & 1, dj = (m >> 1) & 1, dk = m & 1;
        double a = id.i + di, b = id.j + dj, c = id.k + dk;
        const double s = a + b + c;
        if (s > p.n) {
            // pull back along the ray from the base corner onto the slant
            const double t = (p.n - base_sum) / (s - base_sum);
            a = id.i + t * di;
            b = id.j + t * dj;
            c = id.k + t * dk;
        }
        out.corners[m] = lattice_to_bary(p.n, a, b, c);
    }
    return out;
}

NeighborList neighbors(const Paving& p, const BoxId& id) {
    if (!is_valid_box(p, id)) throw std::invalid_argument("invalid box id " + id.to_string());
    static constexpr std::array<std::array<int, 3>, 12> kOffsets = {{
        {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1},
        {1, -1, 0}, {-1, 1, 0}, {1, 0, -1}, {-1, 0, 1}, {0, 1, -1}, {0, -1, 1},
    }};
    NeighborList out;
    for (const auto& o : kOffsets) {
        const BoxId nb{id.i + o[0], id.j + o[1], id.k + o[2]};
        if (is_valid_box(p, nb)) out.ids[out.count++] = nb;
    }
    return out;
}

std::vector<BoxId> edge_boxes(const Paving& p) {
    std::vector<BoxId> out;
    std::unordered_set<std::uint64_t> seen;
    auto push = [&](const BoxId& b) {
        if (seen.insert(pack(b)).second) out.push_back(b);
    };
    const int n = p.n;
    for (int t = 0; t < n; ++t) push({t, 0, 0});
    for (int t = 0; t < n; ++t) push({0, t, 0});
    for (int t = 0; t < n; ++t) push({0, 0, t});
    for (int t = 0; t < n; ++t) push({t, n - 1 - t, 0});
    for (int t = 0; t < n; ++t) push({t, 0, n - 1 - t});
    for (int t = 0; t < n; ++t) push({0, t, n - 1 - t});
    return out;
}

std::vector<BoxId> face_boxes(const Paving& p, int face) {
    if (face < 0 || face > 3) throw std::out_of_range("face index out of range");
    std::vector<BoxId> out;
    out.reserve(std::size_t(p.n) * (p.n + 1) / 2);
    const int n = p.n;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n - a; ++b) {
            switch (face) {
                case 0: out.push_back({a, b, n - 1 - a - b}); break;
                case 1: out.push_back({0, a, b}); break;
                case 2: out.push_back({a, 0, b}); break;
                case 3: out.push_back({a, b, 0}); break;
            }
        }
    return out;
}

}  // namespace mapslice
