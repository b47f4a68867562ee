// Copyright (c) the eipe authors.
// SPDX-License-Identifier: Apache-2.0

#include "eipe/render.hpp"

#include <cmath>
#include <stdexcept>

#include "eipe/rng.hpp"

namespace eipe {

RaySamples stratified_ts(double t_near, double t_far, int n_intervals, std::uint64_t seed) {
    if (!std::isfinite(t_near) || !std::isfinite(t_far))
        throw std::invalid_argument("stratified_ts: non-finite extent");
    if (!(t_far > t_near)) throw std::domain_error("stratified_ts: require t_far > t_near");
    if (n_intervals < 1) throw std::domain_error("stratified_ts: need at least one interval");

    // One uniform draw per bin; n_intervals + 1 bins yield n_intervals + 1
    // points whose consecutive pairs bound the intervals.  Draws never reach
    // the upper bin edge, so the sequence is strictly increasing.
    const int npts = n_intervals + 1;
    CounterRng rng(seed, kStreamStratified);
    RaySamples out;
    out.t_near = t_near;
    out.t_far = t_far;
    out.ts.resize(npts);
    const double width = (t_far - t_near) / npts;
    for (int j = 0; j < npts; ++j)
        out.ts[j] = t_near + width * (j + rng.u01(j));
    return out;
}

CompositeResult composite(std::span<const IntervalRadiance> samples, const RaySamples& ray) {
    const int n = ray.intervals();
    if (n < 1 || static_cast<int>(samples.size()) != n)
        throw std::invalid_argument("composite: sample count must match ray intervals");
    for (std::size_t j = 0; j + 1 < ray.ts.size(); ++j)
        if (!(ray.ts[j] < ray.ts[j + 1]))
            throw std::invalid_argument("composite: ray distances must increase strictly");
    for (const IntervalRadiance& s : samples) {
        if (!std::isfinite(s.density) || s.density < 0.0)
            throw std::domain_error("composite: density must be finite and non-negative");
        for (int k = 0; k < 3; ++k)
            if (!(s.color[k] >= 0.0) || !(s.color[k] <= 1.0))
                throw std::domain_error("composite: color outside [0, 1]");
    }

    // Front-to-back: alpha_i = 1 - exp(-density_i delta_i) via expm1 so tiny
    // optical depths keep full precision; weights w_i = T_i alpha_i and the
    // final transmittance partition unity.
    CompositeResult out;
    double transmittance = 1.0;
    for (int i = 0; i < n; ++i) {
        double delta = ray.ts[i + 1] - ray.ts[i];
        double alpha = -std::expm1(-samples[i].density * delta);
        double w = transmittance * alpha;
        out.color += samples[i].color * w;
        transmittance *= 1.0 - alpha;
    }
    out.transmittance = transmittance;
    return out;
}

}  // namespace eipe
