#pragma once

#include <array>
#include <span>
#include <vector>

#include "mapslice/vec.hpp"

namespace mapslice {

// Exponent tuple of one Bernstein basis function over the four barycentric
// variables; components sum to the degree of the owning polynomial.
using MultiIndex = std::array<int, 4>;
// Bivariate counterpart used by triangular patches.
using MultiIndex3 = std::array<int, 3>;

inline constexpr int kMapDegree = 3;
inline constexpr int kMapCoeffCount = 20;  // C(3+3,3)

// Canonical coefficient order: all multi-indices with component sum 3,
// sorted lexicographically descending as 4-tuples (3000, 2100, ..., 0003).
// This order is normative for file I/O.
const std::array<MultiIndex, kMapCoeffCount>& map_coeff_order();
int map_coeff_position(const MultiIndex& alpha);

// Triangular-patch index enumeration for arbitrary degree, same descending
// lexicographic convention.
const std::vector<MultiIndex3>& tri_coeff_order(int degree);
int tri_coeff_position(int degree, const MultiIndex3& beta);
int tri_coeff_count(int degree);

double multinomial4(int degree, const MultiIndex& alpha);
double multinomial3(int degree, const MultiIndex3& beta);

// Barycentric coordinates of the domain tetrahedron. Components must be
// >= -1e-12 and sum to 1 within 1e-9; inputs are renormalized (divided by
// their sum) and tiny negatives clamped before use.
struct Barycentric {
    std::array<double, 4> u{};

    // Validating factory; throws std::invalid_argument on bad coordinates.
    static Barycentric of(double u0, double u1, double u2, double u3);

    double operator[](int i) const { return u[i]; }
    bool is_valid(double tol = 1e-12) const;
};

// Fixed embedding of the domain tetrahedron in model space. Vertex 1 is on
// the z axis, so layer index of the box paving advances in z.
Vec3 unit_tet_vertex(int vertex);

struct JacobianReport {
    double min_det = 0.0;
    double max_det = 0.0;
    int samples = 0;
    bool positive() const { return min_det > 0.0; }
};

// One total-degree-3 deformation map of the domain tetrahedron, stored as 20
// control points in canonical order.
class TrivariateMap {
public:
    TrivariateMap(int id, std::span<const Vec3, kMapCoeffCount> coeffs);

    // Control points at the degree-3 lattice of the embedded tetrahedron;
    // reproduces the embedding exactly (linear precision).
    static TrivariateMap identity(int id);

    int id() const { return id_; }
    static constexpr int degree() { return kMapDegree; }
    const std::array<Vec3, kMapCoeffCount>& coeffs() const { return coeffs_; }
    const Vec3& coeff(const MultiIndex& alpha) const { return coeffs_[map_coeff_position(alpha)]; }

    // de Casteljau evaluation; stable on the boundary of the tetrahedron.
    Vec3 evaluate(const Barycentric& u) const;

    // The four points left after two de Casteljau reductions. The map value
    // is their barycentric combination and directional derivatives come from
    // their differences (times the degree).
    std::array<Vec3, 4> reduce_to_linear(const Barycentric& u) const;

    // Jacobian with respect to model-space coordinates of the embedded domain.
    double jacobian_det(const Barycentric& u) const;

    // min/max z over the control points; bounds the image's z range by the
    // convex hull property.
    std::pair<double, double> control_z_range() const;

private:
    int id_;
    std::array<Vec3, kMapCoeffCount> coeffs_;
};

// Samples the Jacobian determinant over a deterministic low-discrepancy set
// (plus the vertices and centroid) and reports its range. A non-positive
// minimum is reported, not rejected.
JacobianReport validate_map(const TrivariateMap& map, int samples);

// Triangular Bernstein patch, scalar- or point-valued.
template <class T>
struct TriPatch {
    int degree = 0;
    std::vector<T> coeffs;  // tri_coeff_order(degree) layout

    T evaluate(double t0, double t1, double t2) const;
};

using TriPatch3 = TriPatch<Vec3>;
using TriPatchS = TriPatch<double>;

// Restriction of the map to face `face` (the locus u_face = 0), re-indexed
// over the remaining three barycentric variables in ascending order.
TriPatch3 face_patch(const TrivariateMap& map, int face);

// BB coefficients of the directional derivative toward patch vertex `dir`
// (1 or 2) from vertex 0; the degree drops by one.
template <class T>
TriPatch<T> patch_direction_derivative(const TriPatch<T>& patch, int dir);

TriPatchS z_component(const TriPatch3& patch);

// Pointwise product of two scalar patches via the multinomial convolution;
// the result has degree deg(f) + deg(g).
TriPatchS bb_product(const TriPatchS& f, const TriPatchS& g);

}  // namespace mapslice
