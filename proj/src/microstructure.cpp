#include "mapslice/microstructure.hpp"

#include <cmath>
#include <stdexcept>

namespace mapslice {

const char* to_string(CellTemplateId id) {
    switch (id) {
        case CellTemplateId::edge_frame: return "edge-frame";
        case CellTemplateId::octet: return "octet";
        case CellTemplateId::diagonal_cross: return "diagonal-cross";
    }
    return "?";
}

CellTemplateId cell_template_from_string(const std::string& name) {
    if (name == "edge-frame") return CellTemplateId::edge_frame;
    if (name == "octet") return CellTemplateId::octet;
    if (name == "diagonal-cross") return CellTemplateId::diagonal_cross;
    throw std::invalid_argument("unknown cell template: " + name);
}

void CellTemplate::validate() const {
    if (!(radius_fraction > 0.0 && radius_fraction < 0.5))
        throw std::invalid_argument("beam radius fraction must be in (0, 0.5)");
    if (samples_per_beam < 2) throw std::invalid_argument("samples per beam must be >= 2");
}

namespace {

struct UnitSegment {
    std::array<double, 3> a, b;
};

const std::vector<UnitSegment>& template_segments(CellTemplateId id) {
    static const std::vector<UnitSegment> edges = [] {
        std::vector<UnitSegment> s;
        for (int m = 0; m < 8; ++m)
            for (int bit = 0; bit < 3; ++bit) {
                if (m & (1 << bit)) continue;
                const int m2 = m | (1 << bit);
                s.push_back({{double((m >> 2) & 1), double((m >> 1) & 1), double(m & 1)},
                             {double((m2 >> 2) & 1), double((m2 >> 1) & 1), double(m2 & 1)}});
            }
        return s;
    }();
    static const std::vector<UnitSegment> octet = [] {
        // octahedron over the six face centers; edges join adjacent faces
        const std::array<std::array<double, 3>, 6> centers = {{
            {0.0, 0.5, 0.5}, {1.0, 0.5, 0.5}, {0.5, 0.0, 0.5},
            {0.5, 1.0, 0.5}, {0.5, 0.5, 0.0}, {0.5, 0.5, 1.0},
        }};
        std::vector<UnitSegment> s;
        for (int a = 0; a < 6; ++a)
            for (int b = a + 1; b < 6; ++b) {
                if (a / 2 == b / 2) continue;  // opposite faces
                s.push_back({centers[a], centers[b]});
            }
        return s;
    }();
    static const std::vector<UnitSegment> diag = {
        {{0, 0, 0}, {1, 1, 1}}, {{1, 0, 0}, {0, 1, 1}}, {{0, 1, 0}, {1, 0, 1}}, {{0, 0, 1}, {1, 1, 0}},
    };
    switch (id) {
        case CellTemplateId::edge_frame: return edges;
        case CellTemplateId::octet: return octet;
        case CellTemplateId::diagonal_cross: return diag;
    }
    return edges;
}

}  // namespace

std::vector<DomainSegment> generate_cell(const Paving& p, const BoxId& id, const CellTemplate& tmpl) {
    if (!is_valid_box(p, id)) throw std::invalid_argument("invalid box id " + id.to_string());
    tmpl.validate();
    std::vector<DomainSegment> out;
    const double n = p.n;
    for (const UnitSegment& seg : template_segments(tmpl.id)) {
        std::array<double, 3> a = {id.i + seg.a[0], id.j + seg.a[1], id.k + seg.a[2]};
        std::array<double, 3> b = {id.i + seg.b[0], id.j + seg.b[1], id.k + seg.b[2]};
        double sa = a[0] + a[1] + a[2], sb = b[0] + b[1] + b[2];
        if (sa > n && sb > n) continue;
        if (sa > sb) {
            std::swap(a, b);
            std::swap(sa, sb);
        }
        if (sb > n) {
            // clip at lattice-sum = n (sum is linear along the segment)
            const double t = (n - sa) / (sb - sa);
            for (int c = 0; c < 3; ++c) b[c] = a[c] + t * (b[c] - a[c]);
        }
        out.push_back({lattice_to_bary(p.n, a[0], a[1], a[2]), lattice_to_bary(p.n, b[0], b[1], b[2])});
    }
    return out;
}

std::vector<Vec3> map_polyline(const TrivariateMap& map, const DomainSegment& seg, int samples) {
    if (samples < 2) throw std::invalid_argument("polyline needs at least 2 samples");
    std::vector<Vec3> out;
    out.reserve(samples);
    for (int s = 0; s < samples; ++s) {
        const double t = double(s) / (samples - 1);
        std::array<double, 4> u{};
        for (int c = 0; c < 4; ++c) u[c] = (1.0 - t) * seg.a[c] + t * seg.b[c];
        out.push_back(map.evaluate(Barycentric::of(u[0], u[1], u[2], u[3])));
    }
    return out;
}

std::vector<Segment2> slice_segments(const std::vector<std::vector<Vec3>>& polylines,
                                     const SlicePlane& plane, double slab_halfwidth) {
    if (slab_halfwidth < 0.0) throw std::invalid_argument("slab halfwidth must be >= 0");
    const double lo = plane.z0 - slab_halfwidth, hi = plane.z0 + slab_halfwidth;
    std::vector<Segment2> out;
    for (const auto& poly : polylines) {
        for (std::size_t s = 0; s + 1 < poly.size(); ++s) {
            const Vec3& a = poly[s];
            const Vec3& b = poly[s + 1];
            double t0 = 0.0, t1 = 1.0;
            const double dz = b.z - a.z;
            if (dz == 0.0) {
                if (a.z < lo || a.z > hi) continue;
            } else {
                double ta = (lo - a.z) / dz, tb = (hi - a.z) / dz;
                if (ta > tb) std::swap(ta, tb);
                t0 = std::max(t0, ta);
                t1 = std::min(t1, tb);
                if (t0 > t1) continue;
            }
            auto at = [&](double t) { return Vec2{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)}; };
            out.push_back({at(t0), at(t1)});
        }
    }
    return out;
}

}  // namespace mapslice
