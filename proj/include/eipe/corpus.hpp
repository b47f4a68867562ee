// Copyright (c) the eipe authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "eipe/geometry.hpp"

namespace eipe {

// Deterministic region generators shared by the validation studies, property
// tests, and the scan tooling.  Each region is a pure function of
// (seed, index).

// Uniform random rotation (Shoemake quaternion method).
Mat3 random_rotation(std::uint64_t seed, std::uint64_t index);

// Convex pixel frustum with random pose: center distance in [0.5, 8], length
// in [1e-3, 2] (clipped to keep t_near positive), pixel footprint log-uniform
// in [3e-3, 0.3], origin in the ball of radius 2.
Frustum random_convex_frustum(std::uint64_t seed, std::uint64_t index);

// Worst-case input for the degeneracy guard: a thin far-away frustum pushed
// through scene contraction, then one coordinate axis flattened so that its
// per-triangle differences are jitter at a scale drawn log-uniformly from
// [1e-11, 1e-8].  With the guard off these regions drive the generic
// coefficient formula into catastrophic cancellation.
Frustum degenerate_contracted_frustum(std::uint64_t seed, std::uint64_t index);

}  // namespace eipe
