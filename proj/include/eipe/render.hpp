// Copyright (c) the eipe authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "eipe/vec.hpp"

namespace eipe {

// n_intervals + 1 strictly increasing ray distances: one uniform draw per
// equal-width bin of [t_near, t_far] split into n_intervals + 1 bins.
// Consecutive points bound the frustum slabs fed to the encoders.
struct RaySamples {
    std::vector<double> ts;
    double t_near = 0, t_far = 0;

    int intervals() const { return static_cast<int>(ts.size()) - 1; }
};

RaySamples stratified_ts(double t_near, double t_far, int n_intervals, std::uint64_t seed);

// Radiance of one ray interval: emitted color in [0,1]^3 and non-negative
// volume density.
struct IntervalRadiance {
    Vec3 color;
    double density = 0;
};

struct CompositeResult {
    Vec3 color;
    double transmittance = 0;  // fraction of the ray reaching the far end
};

// Front-to-back alpha compositing over the intervals defined by consecutive
// sample points: alpha_i = 1 - exp(-density_i * delta_i), each interval's
// color weighted by the transmittance accumulated before it.  The weights
// plus the final transmittance sum to one.
CompositeResult composite(std::span<const IntervalRadiance> samples, const RaySamples& ray);

}  // namespace eipe
