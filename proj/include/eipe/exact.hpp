// Copyright (c) the eipe authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "eipe/encoding.hpp"
#include "eipe/geometry.hpp"

namespace eipe {

// Coordinate triples whose pairwise differences vanish need the confluent
// (l'Hopital) form of the surface-integral coefficients; classify_triple
// names which of the five forms applies.
enum class DegenClass { kGeneric, kX0X1, kX0X2, kX1X2, kAllEqual };

// Differences with magnitude below this are treated as zero when the
// degeneracy guard is enabled; chosen so the generic formula's cancellation
// error stays far below the confluent branch's truncation error.
inline constexpr double kGuardEps = 1e-6;

// Classifies (x0, x1, x2) by which pairwise differences are within eps of
// zero.  Near-coincidences are merged transitively: if x0~x1 and x1~x2 then
// the triple is treated as all-equal even when |x0-x2| > eps.
DegenClass classify_triple(double x0, double x1, double x2, double eps = kGuardEps);

// Trig moments over the unit triangle {(u,v): u,v >= 0, u+v <= 1} for the
// coordinate map x(u,v) = x0 + u (x1-x0) + v (x2-x0) at octave frequency 2^l:
//
//   sigma = -integral of cos(2^l x(u,v)) du dv
//   xi    = +integral of sin(2^l x(u,v)) du dv
//
// By the Hermite-Genocchi identity these equal the second divided differences
// cos[y0,y1,y2] and -sin[y0,y1,y2] of the scaled coordinates y = 2^l x; the
// confluent branch matching cls evaluates the coincident-node limits.  Both
// are bounded by 1/2 in magnitude.
double sigma_coeff(double x0, double x1, double x2, int l, DegenClass cls);
double xi_coeff(double x0, double x1, double x2, int l, DegenClass cls);

// Convenience overloads that classify with the default guard threshold.
double sigma_coeff(double x0, double x1, double x2, int l);
double xi_coeff(double x0, double x1, double x2, int l);

struct EipeOptions {
    // When true (the default), per-axis coordinate values closer than
    // kGuardEps are merged on the surface itself (normals and volume are
    // rebuilt from the snapped points), and the assembled components are
    // consistency-checked and clamped to [-1, 1].  A region thinner than the
    // threshold on some axis collapses under snapping and is rejected as an
    // orientation error.  When false, only exact zero differences dispatch
    // to the confluent branch and raw values are returned, however large.
    bool guard = true;
};

// Per-axis counters describing what the degeneracy guard did.
struct GuardStats {
    // Distinct coordinate values moved by snapping (the guard changed the
    // geometry) and triangle/axis pairs dispatched to any confluent branch
    // (including exact zeros).
    std::array<std::uint32_t, 3> snapped{};
    std::array<std::uint32_t, 3> dispatched{};
};

// Exact mean positional encoding of the region bounded by a closed
// outward-oriented triangulated surface: component (l, k) is the volume
// average of sin(2^l x_k) resp. cos(2^l x_k), obtained in closed form by
// converting the volume integral to a surface sum via the divergence theorem.
// Arithmetic runs in long double with compensated accumulation.
Encoding eipe(std::span<const TriangleFace> tris, int octaves, const EipeOptions& opts = {},
              GuardStats* stats = nullptr);

}  // namespace eipe
