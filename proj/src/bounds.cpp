#include "mapslice/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace mapslice {

namespace {

MultiIndex unit4(int v) {
    MultiIndex e{};
    e[v] = 1;
    return e;
}

MultiIndex add(MultiIndex a, const MultiIndex& b) {
    for (int v = 0; v < 4; ++v) a[v] += b[v];
    return a;
}

MultiIndex scaled(MultiIndex a, int s) {
    for (int& c : a) c *= s;
    return a;
}

// g_{3e_k} - g_{2e_k+e_i} - g_{2e_k+e_j} + g_{e_k+e_i+e_j}
Vec3 stencil(const TrivariateMap& g, int k, int i, int j) {
    const MultiIndex ek = unit4(k), ei = unit4(i), ej = unit4(j);
    return g.coeff(scaled(ek, 3)) - g.coeff(add(scaled(ek, 2), ei)) -
           g.coeff(add(scaled(ek, 2), ej)) + g.coeff(add(add(ek, ei), ej));
}

}  // namespace

const Vec3& SecondDifferences::d(int i, int j, int k) const {
    if (i < 1 || i > 3 || j < 1 || j > 3 || k < 0 || k > 3 || k == i || k == j)
        throw std::out_of_range("second-difference indices out of range");
    return cand[i - 1][j - 1][k];
}

double SecondDifferences::max_abs(int i, int j, int axis, StencilMode mode) const {
    double m = 0.0;
    for (int k = 0; k < 4; ++k) {
        if (mode == StencilMode::verbatim && (k == i || k == j)) continue;
        m = std::max(m, std::abs(cand[i - 1][j - 1][k][axis]));
    }
    return m;
}

SecondDifferences second_differences(const TrivariateMap& map) {
    SecondDifferences sd;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            for (int k = 0; k < 4; ++k) {
                const int di = (k == i) ? 0 : i;
                const int dj = (k == j) ? 0 : j;
                sd.cand[i - 1][j - 1][k] = stencil(map, k, di, dj);
            }
    return sd;
}

Vec3 offset_vector(const SecondDifferences& sd, const std::array<double, 3>& edge_lengths,
                   StencilMode mode) {
    for (double l : edge_lengths)
        if (!(l > 0.0)) throw std::invalid_argument("edge lengths must be positive");
    Vec3 mu{};
    for (int axis = 0; axis < 3; ++axis) {
        double sum = 0.0;
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j)
                sum += edge_lengths[i - 1] * edge_lengths[j - 1] * sd.max_abs(i, j, axis, mode);
        mu[axis] = 0.75 * sum;
    }
    return mu;
}

Tolerance scaled_tolerance(const Vec3& mu, int nu) {
    if (nu < 0) throw std::invalid_argument("subdivision exponent must be >= 0");
    const double scale = std::ldexp(1.0, -2 * nu);  // 4^-nu
    return Tolerance{mu * scale, nu};
}

PreparedMap PreparedMap::prepare(TrivariateMap m, int jacobian_samples, StencilMode mode) {
    SecondDifferences sd = second_differences(m);
    const Vec3 mu = offset_vector(sd, {1.0, 1.0, 1.0}, mode);
    const auto [zmin, zmax] = m.control_z_range();
    JacobianReport rep = validate_map(m, jacobian_samples);
    return PreparedMap{std::move(m), sd, mu, zmin, zmax, rep};
}

}  // namespace mapslice
