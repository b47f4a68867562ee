// Copyright (c) the eipe authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "eipe/encoding.hpp"
#include "eipe/geometry.hpp"

namespace eipe {

struct Tet {
    std::array<Vec3, 4> v;
    double volume;
};

// Fan decomposition of a convex frustum into tetrahedra sharing vertex 0,
// with cumulative volumes for proportional sampling.
struct TetDecomposition {
    std::vector<Tet> tets;
    std::vector<double> cum_volume;  // inclusive prefix sums of tet volumes
    double total_volume = 0;
};

// Decomposes after verifying convexity: every vertex must lie on the inner
// side of every face plane within 1e-9 of the region scale.  Throws
// NonConvexError otherwise; throws OrientationError on inverted tets.
TetDecomposition decompose(const Frustum& f);

// n points uniform in the region, as a pure function of (seed, point index):
// tet choice by cumulative volume, position by the folded-cube map to
// barycentric coordinates.  Deterministic for fixed (n, seed).
std::vector<Vec3> sample_uniform(const TetDecomposition& td, std::uint64_t n, std::uint64_t seed);

struct OracleEstimate {
    std::vector<double> mean;       // encoding layout, 6L values
    std::vector<double> std_error;  // per-component standard error of the mean
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
};

// Brute-force mean encoding by Monte-Carlo over the region; the reference the
// closed form is validated against.  Work is split into fixed 65536-sample
// blocks merged in index order, so results are byte-identical for any jobs
// count.
OracleEstimate mc_encoding(const Frustum& f, int octaves, std::uint64_t n, std::uint64_t seed,
                           int jobs = 1);

struct MomentEstimate {
    Vec3 mean;
    Mat3 cov;
    Vec3 mean_se;
    Mat3 cov_se;
    std::uint64_t n = 0;
    double acceptance = 0;  // fraction of proposals kept by the rejection step
};

// Monte-Carlo mean and covariance of the cone frustum (same parameterization
// as cone_moments) by rejection from the bounding cylinder; standard errors
// come from batch means.
MomentEstimate mc_moments(const Vec3& d, const Vec3& o, double r_dot, double t0, double t1,
                          std::uint64_t n, std::uint64_t seed);

}  // namespace eipe
