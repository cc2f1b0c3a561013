#include "mapslice/bbform.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace mapslice {

namespace {

std::vector<MultiIndex> enumerate4(int degree) {
    std::vector<MultiIndex> out;
    for (int a0 = degree; a0 >= 0; --a0)
        for (int a1 = degree - a0; a1 >= 0; --a1)
            for (int a2 = degree - a0 - a1; a2 >= 0; --a2)
                out.push_back({a0, a1, a2, degree - a0 - a1 - a2});
    return out;
}

std::vector<MultiIndex3> enumerate3(int degree) {
    std::vector<MultiIndex3> out;
    for (int b0 = degree; b0 >= 0; --b0)
        for (int b1 = degree - b0; b1 >= 0; --b1)
            out.push_back({b0, b1, degree - b0 - b1});
    return out;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// de Casteljau reduction table: for every index of the lower level, the
// positions of its four parents one level up.
struct Reduction4 {
    std::vector<std::array<int, 4>> parents;  // [lower-level position][variable]
};

const Reduction4& reduction4(int lower_degree) {
    static std::array<Reduction4, kMapDegree> tables = [] {
        std::array<Reduction4, kMapDegree> t{};
        for (int low = 0; low < kMapDegree; ++low) {
            const auto lower = enumerate4(low);
            const auto upper = enumerate4(low + 1);
            auto pos_in_upper = [&](MultiIndex m) {
                return int(std::lower_bound(upper.begin(), upper.end(), m,
                                            [](const MultiIndex& a, const MultiIndex& b) { return a > b; }) -
                           upper.begin());
            };
            t[low].parents.resize(lower.size());
            for (std::size_t r = 0; r < lower.size(); ++r)
                for (int v = 0; v < 4; ++v) {
                    MultiIndex m = lower[r];
                    ++m[v];
                    t[low].parents[r][v] = pos_in_upper(m);
                }
        }
        return t;
    }();
    return tables[lower_degree];
}

}  // namespace

const std::array<MultiIndex, kMapCoeffCount>& map_coeff_order() {
    static const std::array<MultiIndex, kMapCoeffCount> order = [] {
        std::array<MultiIndex, kMapCoeffCount> o{};
        const auto v = enumerate4(kMapDegree);
        std::copy(v.begin(), v.end(), o.begin());
        return o;
    }();
    return order;
}

int map_coeff_position(const MultiIndex& alpha) {
    const auto& order = map_coeff_order();
    for (int i = 0; i < kMapCoeffCount; ++i)
        if (order[i] == alpha) return i;
    throw std::invalid_argument("multi-index is not a degree-3 index");
}

const std::vector<MultiIndex3>& tri_coeff_order(int degree) {
    static std::map<int, std::vector<MultiIndex3>> cache;
    auto it = cache.find(degree);
    if (it == cache.end()) it = cache.emplace(degree, enumerate3(degree)).first;
    return it->second;
}

int tri_coeff_position(int degree, const MultiIndex3& beta) {
    const auto& order = tri_coeff_order(degree);
    auto it = std::lower_bound(order.begin(), order.end(), beta,
                               [](const MultiIndex3& a, const MultiIndex3& b) { return a > b; });
    if (it == order.end() || *it != beta) throw std::invalid_argument("multi-index degree mismatch");
    return int(it - order.begin());
}

int tri_coeff_count(int degree) { return (degree + 1) * (degree + 2) / 2; }

double multinomial4(int degree, const MultiIndex& alpha) {
    return factorial(degree) / (factorial(alpha[0]) * factorial(alpha[1]) * factorial(alpha[2]) * factorial(alpha[3]));
}

double multinomial3(int degree, const MultiIndex3& beta) {
    return factorial(degree) / (factorial(beta[0]) * factorial(beta[1]) * factorial(beta[2]));
}

Barycentric Barycentric::of(double u0, double u1, double u2, double u3) {
    constexpr double kNegTol = 1e-12;
    const double sum = u0 + u1 + u2 + u3;
    if (!(std::isfinite(sum)) || std::abs(sum - 1.0) > 1e-9 ||
        u0 < -kNegTol || u1 < -kNegTol || u2 < -kNegTol || u3 < -kNegTol) {
        throw std::invalid_argument("invalid barycentric coordinates");
    }
    Barycentric b{{u0 / sum, u1 / sum, u2 / sum, u3 / sum}};
    for (double& c : b.u) c = std::max(c, 0.0);
    return b;
}

bool Barycentric::is_valid(double tol) const {
    double sum = 0.0;
    for (double c : u) {
        if (c < -tol) return false;
        sum += c;
    }
    return std::abs(sum - 1.0) <= tol;
}

Vec3 unit_tet_vertex(int vertex) {
    static const std::array<Vec3, 4> v = {Vec3{0, 0, 0}, Vec3{0, 0, 1}, Vec3{1, 0, 0}, Vec3{0, 1, 0}};
    return v.at(vertex);
}

TrivariateMap::TrivariateMap(int id, std::span<const Vec3, kMapCoeffCount> coeffs) : id_(id) {
    std::copy(coeffs.begin(), coeffs.end(), coeffs_.begin());
}

TrivariateMap TrivariateMap::identity(int id) {
    std::array<Vec3, kMapCoeffCount> c{};
    const auto& order = map_coeff_order();
    for (int i = 0; i < kMapCoeffCount; ++i) {
        Vec3 p{};
        for (int v = 0; v < 4; ++v) p += (order[i][v] / double(kMapDegree)) * unit_tet_vertex(v);
        c[i] = p;
    }
    return TrivariateMap(id, c);
}

std::array<Vec3, 4> TrivariateMap::reduce_to_linear(const Barycentric& u) const {
    std::array<Vec3, kMapCoeffCount> work = coeffs_;
    for (int low = kMapDegree - 1; low >= 1; --low) {
        const auto& red = reduction4(low);
        for (std::size_t r = 0; r < red.parents.size(); ++r) {
            const auto& p = red.parents[r];
            work[r] = u[0] * work[p[0]] + u[1] * work[p[1]] + u[2] * work[p[2]] + u[3] * work[p[3]];
        }
    }
    return {work[0], work[1], work[2], work[3]};
}

Vec3 TrivariateMap::evaluate(const Barycentric& u) const {
    const auto lin = reduce_to_linear(u);
    return u[0] * lin[0] + u[1] * lin[1] + u[2] * lin[2] + u[3] * lin[3];
}

double TrivariateMap::jacobian_det(const Barycentric& u) const {
    const auto lin = reduce_to_linear(u);
    // Embedding: x advances e2-e0, y advances e3-e0, z advances e1-e0.
    const Vec3 dx = double(kMapDegree) * (lin[2] - lin[0]);
    const Vec3 dy = double(kMapDegree) * (lin[3] - lin[0]);
    const Vec3 dz = double(kMapDegree) * (lin[1] - lin[0]);
    return det3(dx, dy, dz);
}

std::pair<double, double> TrivariateMap::control_z_range() const {
    double lo = coeffs_[0].z, hi = coeffs_[0].z;
    for (const Vec3& c : coeffs_) {
        lo = std::min(lo, c.z);
        hi = std::max(hi, c.z);
    }
    return {lo, hi};
}

namespace {

double halton(std::uint32_t index, int base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * (index % base);
        index /= base;
    }
    return r;
}

Barycentric halton_tet_point(std::uint32_t index) {
    double s[3] = {halton(index, 2), halton(index, 3), halton(index, 5)};
    std::sort(s, s + 3);
    return Barycentric::of(s[0], s[1] - s[0], s[2] - s[1], 1.0 - s[2]);
}

}  // namespace

JacobianReport validate_map(const TrivariateMap& map, int samples) {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    JacobianReport rep;
    rep.samples = samples;
    bool first = true;
    auto take = [&](const Barycentric& u) {
        const double d = map.jacobian_det(u);
        if (first) {
            rep.min_det = rep.max_det = d;
            first = false;
        } else {
            rep.min_det = std::min(rep.min_det, d);
            rep.max_det = std::max(rep.max_det, d);
        }
    };
    take(Barycentric::of(0.25, 0.25, 0.25, 0.25));
    for (int v = 0; v < 4; ++v) {
        std::array<double, 4> u{};
        u[v] = 1.0;
        take(Barycentric{u});
    }
    for (int i = 0; i < samples; ++i) take(halton_tet_point(std::uint32_t(i) + 1));
    return rep;
}

template <class T>
T TriPatch<T>::evaluate(double t0, double t1, double t2) const {
    const double sum = t0 + t1 + t2;
    if (!(std::isfinite(sum)) || std::abs(sum - 1.0) > 1e-9 || t0 < -1e-12 || t1 < -1e-12 || t2 < -1e-12)
        throw std::invalid_argument("invalid barycentric coordinates");
    t0 = std::max(t0 / sum, 0.0);
    t1 = std::max(t1 / sum, 0.0);
    t2 = std::max(t2 / sum, 0.0);
    std::vector<T> work = coeffs;
    for (int low = degree - 1; low >= 0; --low) {
        const auto& lower = tri_coeff_order(low);
        const auto& upper = tri_coeff_order(low + 1);
        auto pos = [&](MultiIndex3 m) {
            return std::lower_bound(upper.begin(), upper.end(), m,
                                    [](const MultiIndex3& a, const MultiIndex3& b) { return a > b; }) -
                   upper.begin();
        };
        for (std::size_t r = 0; r < lower.size(); ++r) {
            MultiIndex3 m = lower[r];
            T acc = t0 * work[pos({m[0] + 1, m[1], m[2]})];
            acc += t1 * work[pos({m[0], m[1] + 1, m[2]})];
            acc += t2 * work[pos({m[0], m[1], m[2] + 1})];
            work[r] = acc;
        }
    }
    return work[0];
}

template struct TriPatch<double>;
template struct TriPatch<Vec3>;

TriPatch3 face_patch(const TrivariateMap& map, int face) {
    if (face < 0 || face > 3) throw std::out_of_range("face index out of range");
    TriPatch3 patch;
    patch.degree = kMapDegree;
    patch.coeffs.resize(tri_coeff_count(kMapDegree));
    const auto& order = tri_coeff_order(kMapDegree);
    for (std::size_t r = 0; r < order.size(); ++r) {
        MultiIndex alpha{};
        int src = 0;
        for (int v = 0; v < 4; ++v) alpha[v] = (v == face) ? 0 : order[r][src++];
        patch.coeffs[r] = map.coeff(alpha);
    }
    return patch;
}

template <class T>
TriPatch<T> patch_direction_derivative(const TriPatch<T>& patch, int dir) {
    if (dir != 1 && dir != 2) throw std::invalid_argument("derivative direction must be 1 or 2");
    if (patch.degree < 1) throw std::invalid_argument("cannot differentiate a degree-0 patch");
    TriPatch<T> out;
    out.degree = patch.degree - 1;
    const auto& lower = tri_coeff_order(out.degree);
    out.coeffs.resize(lower.size());
    for (std::size_t r = 0; r < lower.size(); ++r) {
        MultiIndex3 fwd = lower[r], back = lower[r];
        ++fwd[dir];
        ++back[0];
        out.coeffs[r] = double(patch.degree) *
                        (patch.coeffs[tri_coeff_position(patch.degree, fwd)] -
                         patch.coeffs[tri_coeff_position(patch.degree, back)]);
    }
    return out;
}

template TriPatch<double> patch_direction_derivative(const TriPatch<double>&, int);
template TriPatch<Vec3> patch_direction_derivative(const TriPatch<Vec3>&, int);

TriPatchS z_component(const TriPatch3& patch) {
    TriPatchS out;
    out.degree = patch.degree;
    out.coeffs.reserve(patch.coeffs.size());
    for (const Vec3& c : patch.coeffs) out.coeffs.push_back(c.z);
    return out;
}

TriPatchS bb_product(const TriPatchS& f, const TriPatchS& g) {
    TriPatchS out;
    out.degree = f.degree + g.degree;
    out.coeffs.assign(tri_coeff_count(out.degree), 0.0);
    const auto& fo = tri_coeff_order(f.degree);
    const auto& go = tri_coeff_order(g.degree);
    for (std::size_t a = 0; a < fo.size(); ++a) {
        const double fa = multinomial3(f.degree, fo[a]) * f.coeffs[a];
        for (std::size_t b = 0; b < go.size(); ++b) {
            const MultiIndex3 gamma = {fo[a][0] + go[b][0], fo[a][1] + go[b][1], fo[a][2] + go[b][2]};
            const int pos = tri_coeff_position(out.degree, gamma);
            out.coeffs[pos] += fa * multinomial3(g.degree, go[b]) * g.coeffs[b] / multinomial3(out.degree, gamma);
        }
    }
    return out;
}

}  // namespace mapslice
