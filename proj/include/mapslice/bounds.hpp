#pragma once

#include <array>

#include "mapslice/bbform.hpp"
#include "mapslice/vec.hpp"

namespace mapslice {

// Candidate set used when turning second differences into offsets.
//   verbatim: anchors k outside the direction pair {i,j} only.
//   widened:  adds the e0-substituted stencils anchored at k in {i,j}.
// The widened set is the shipped default: adversarial maps exist for which
// the verbatim set under-bounds the true deviation (see the dominance test),
// and a non-conservative offset silently drops activations.
enum class StencilMode { verbatim, widened };

#ifdef MAPSLICE_VERBATIM_STENCIL
inline constexpr StencilMode kShippedStencil = StencilMode::verbatim;
#else
inline constexpr StencilMode kShippedStencil = StencilMode::widened;
#endif

// Four-term second differences of the control net, one per direction pair
// (i,j) in {1,2,3}^2 and anchor vertex k. Symmetric in (i,j).
struct SecondDifferences {
    // cand[i-1][j-1][k]; for k not in {i,j} this is the plain stencil
    //   g_{3e_k} - g_{2e_k+e_i} - g_{2e_k+e_j} + g_{e_k+e_i+e_j},
    // for k in {i,j} the direction equal to k is replaced by e0.
    std::array<std::array<std::array<Vec3, 4>, 3>, 3> cand{};

    // Plain stencil value; requires k not in {i,j}.
    const Vec3& d(int i, int j, int k) const;
    double max_abs(int i, int j, int axis, StencilMode mode) const;
};

SecondDifferences second_differences(const TrivariateMap& map);

// Per-axis conservative offset: (6/8) * sum over the nine ordered direction
// pairs of l_i l_j max_k |d_{ijk}|. Throws on non-positive edge lengths.
Vec3 offset_vector(const SecondDifferences& sd, const std::array<double, 3>& edge_lengths,
                   StencilMode mode = kShippedStencil);

struct Tolerance {
    Vec3 tol;
    int nu = 0;
};

// Offset scaled for a dyadic subdivision level: tol = mu / 4^nu.
Tolerance scaled_tolerance(const Vec3& mu, int nu);

// A map bundled with everything precomputed at load time: offsets, control
// z range and the sampled Jacobian report. Immutable after construction.
struct PreparedMap {
    TrivariateMap map;
    SecondDifferences sdiff;
    Vec3 mu;
    double zmin = 0.0, zmax = 0.0;
    JacobianReport jacobian;

    static PreparedMap prepare(TrivariateMap m, int jacobian_samples = 256,
                               StencilMode mode = kShippedStencil);
};

}  // namespace mapslice
