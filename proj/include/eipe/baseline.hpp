// Copyright (c) the eipe authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <vector>

#include "eipe/encoding.hpp"
#include "eipe/geometry.hpp"

namespace eipe {

// Octave lift of a point: 3L values 2^l x_k (octave-major, axis-minor),
// scaled exactly by exponent manipulation.
std::vector<double> frequency_lift(const Vec3& x, int octaves);

// Gaussian approximation of a region: mean and full covariance.  The
// constructor validates symmetry (1e-12) and positive semi-definiteness
// (eigenvalues >= -1e-12).
class GaussianRegion {
  public:
    GaussianRegion(const Vec3& mu, const Mat3& sigma);

    const Vec3& mu() const { return mu_; }
    const Mat3& sigma() const { return sigma_; }

  private:
    Vec3 mu_;
    Mat3 sigma_;
};

// Pointwise positional encoding: sin(2^l x_k) and cos(2^l x_k).
Encoding pe(const Vec3& x, int octaves);

// Expected encoding under a Gaussian: the pointwise encoding of the mean,
// damped per octave and axis by exp(-2^(2l) Sigma_kk / 2).  Only the
// covariance diagonal enters.
Encoding gaussian_ipe(const GaussianRegion& g, int octaves);

// Gaussian moments of the cone frustum around ray o + t d with perpendicular
// radius r_dot * t, restricted to t in [t0, t1] (conical-volume weighting).
GaussianRegion cone_moments(const Vec3& d, const Vec3& o, double r_dot, double t0, double t1);

// Jacobian of contract_point at x (identity inside the unit ball).
Mat3 contraction_jacobian(const Vec3& x);

// Pushes a Gaussian through the contraction by linearization at the mean:
// mu -> contract_point(mu), Sigma -> J Sigma J^T.
GaussianRegion contract_gaussian(const GaussianRegion& g);

struct SquarePyramidEncoding {
    Encoding enc;
    // Axes whose closed form hit a small denominator and were computed by the
    // general triangulated path instead.
    std::array<bool, 3> fell_back{};

    explicit SquarePyramidEncoding(int octaves) : enc(octaves) {}
};

// Closed-form exact encoding for the square pyramidal frustum of the pixel
// centered on the camera axis: separable antiderivatives in the camera frame,
// no triangulation.  Denominators within 1e-6 of zero (axis-aligned poses)
// fall back per axis to the general surface-sum path.  Requires t1 > t0 > 0
// with a non-degenerate slab.
SquarePyramidEncoding square_pyramid_eipe(const CameraPose& pose, double t0, double t1,
                                          int octaves);

}  // namespace eipe
