// Copyright (c) the eipe authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "eipe/render.hpp"
#include "eipe/rng.hpp"

namespace {

using eipe::CompositeResult;
using eipe::IntervalRadiance;
using eipe::RaySamples;
using eipe::Vec3;

RaySamples manual_ray(std::vector<double> ts) {
    RaySamples r;
    r.t_near = ts.front();
    r.t_far = ts.back();
    r.ts = std::move(ts);
    return r;
}

}  // namespace

TEST(StratifiedTs, OneIntervalStratumBounds) {
    RaySamples r = eipe::stratified_ts(0.0, 1.0, 1, 7);
    ASSERT_EQ(r.ts.size(), 2u);
    EXPECT_EQ(r.intervals(), 1);
    EXPECT_GE(r.ts[0], 0.0);
    EXPECT_LT(r.ts[0], 0.5);
    EXPECT_GE(r.ts[1], 0.5);
    EXPECT_LE(r.ts[1], 1.0);
}

TEST(StratifiedTs, StrictlyIncreasingWithinRange) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        RaySamples r = eipe::stratified_ts(2.0, 6.0, 16, seed);
        ASSERT_EQ(r.ts.size(), 17u);
        EXPECT_GE(r.ts.front(), 2.0);
        EXPECT_LE(r.ts.back(), 6.0);
        for (std::size_t i = 0; i + 1 < r.ts.size(); ++i) EXPECT_LT(r.ts[i], r.ts[i + 1]);
    }
}

TEST(StratifiedTs, DeterministicPerSeed) {
    RaySamples a = eipe::stratified_ts(1.0, 3.0, 8, 42);
    RaySamples b = eipe::stratified_ts(1.0, 3.0, 8, 42);
    for (std::size_t i = 0; i < a.ts.size(); ++i) EXPECT_EQ(a.ts[i], b.ts[i]);
    RaySamples c = eipe::stratified_ts(1.0, 3.0, 8, 43);
    bool differs = false;
    for (std::size_t i = 0; i < a.ts.size(); ++i) differs |= a.ts[i] != c.ts[i];
    EXPECT_TRUE(differs);
}

TEST(StratifiedTs, RejectsInvalidRanges) {
    EXPECT_THROW(eipe::stratified_ts(1.0, 1.0, 4, 0), std::domain_error);
    EXPECT_THROW(eipe::stratified_ts(2.0, 1.0, 4, 0), std::domain_error);
    EXPECT_THROW(eipe::stratified_ts(0.0, 1.0, 0, 0), std::domain_error);
}

TEST(Composite, EmptySpacePassesRayThrough) {
    RaySamples ray = manual_ray({0.0, 0.5, 1.0, 2.0});
    std::vector<IntervalRadiance> s(3);
    for (auto& iv : s) iv = {{0.9, 0.4, 0.1}, 0.0};
    CompositeResult out = eipe::composite(s, ray);
    EXPECT_EQ(out.color.x, 0.0);
    EXPECT_EQ(out.color.y, 0.0);
    EXPECT_EQ(out.color.z, 0.0);
    EXPECT_EQ(out.transmittance, 1.0);
}

TEST(Composite, OpaqueIntervalReturnsItsColor) {
    RaySamples ray = manual_ray({1.0, 2.0});
    std::vector<IntervalRadiance> s = {{{0.25, 0.5, 0.75}, 1e9}};
    CompositeResult out = eipe::composite(s, ray);
    EXPECT_NEAR(out.color.x, 0.25, 1e-12);
    EXPECT_NEAR(out.color.y, 0.5, 1e-12);
    EXPECT_NEAR(out.color.z, 0.75, 1e-12);
    EXPECT_NEAR(out.transmittance, 0.0, 1e-12);
}

TEST(Composite, HalfTransparentThenOpaqueBlendsEqually) {
    RaySamples ray = manual_ray({0.0, 1.0, 2.0});
    std::vector<IntervalRadiance> s = {{{1.0, 0.0, 0.2}, std::numbers::ln2},
                                       {{0.0, 1.0, 0.8}, 1e9}};
    CompositeResult out = eipe::composite(s, ray);
    EXPECT_NEAR(out.color.x, 0.5, 1e-12);
    EXPECT_NEAR(out.color.y, 0.5, 1e-12);
    EXPECT_NEAR(out.color.z, 0.5 * 0.2 + 0.5 * 0.8, 1e-12);
    EXPECT_NEAR(out.transmittance, 0.0, 1e-12);
}

TEST(Composite, WeightsAndTransmittancePartitionUnity) {
    eipe::CounterRng rng(71, 11);
    for (int trial = 0; trial < 500; ++trial) {
        std::uint64_t c = 64 * static_cast<std::uint64_t>(trial);
        int n = 1 + static_cast<int>(rng.uniform(c, 0, 12));
        RaySamples ray = eipe::stratified_ts(0.5, 4.0, n, 1000 + trial);
        std::vector<IntervalRadiance> s(n);
        double weight_sum = 0;
        for (int i = 0; i < n; ++i) {
            std::uint64_t b = c + 4 * static_cast<std::uint64_t>(i);
            s[i].color = {rng.uniform(b + 1, 0, 1), rng.uniform(b + 2, 0, 1),
                          rng.uniform(b + 3, 0, 1)};
            s[i].density = std::exp(rng.uniform(b + 4, -4, 4));
        }
        CompositeResult out = eipe::composite(s, ray);

        // Recompute the weights independently and check the telescoping sum.
        double log_t = 0;
        for (int i = 0; i < n; ++i) {
            double delta = ray.ts[i + 1] - ray.ts[i];
            double alpha = -std::expm1(-s[i].density * delta);
            weight_sum += std::exp(log_t) * alpha;
            log_t -= s[i].density * delta;
        }
        EXPECT_NEAR(weight_sum + out.transmittance, 1.0, 1e-12);
        for (int k = 0; k < 3; ++k) {
            EXPECT_GE(out.color[k], 0.0);
            EXPECT_LE(out.color[k], 1.0);
        }
    }
}

TEST(Composite, DensityIncreaseNeverRaisesTransmittance) {
    RaySamples ray = manual_ray({0.0, 1.0, 2.0, 3.0});
    std::vector<IntervalRadiance> s = {{{0.1, 0.1, 0.1}, 0.3},
                                       {{0.2, 0.2, 0.2}, 0.7},
                                       {{0.3, 0.3, 0.3}, 0.5}};
    double prev = eipe::composite(s, ray).transmittance;
    for (double bump : {1.0, 2.0, 5.0}) {
        s[1].density = bump;
        double cur = eipe::composite(s, ray).transmittance;
        EXPECT_LE(cur, prev);
        prev = cur;
    }
}

TEST(Composite, RejectsInvalidInputs) {
    RaySamples ray = manual_ray({0.0, 1.0, 2.0});
    std::vector<IntervalRadiance> wrong_count = {{{0.1, 0.1, 0.1}, 0.5}};
    EXPECT_THROW(eipe::composite(wrong_count, ray), std::invalid_argument);

    std::vector<IntervalRadiance> negative = {{{0.1, 0.1, 0.1}, 0.5}, {{0.1, 0.1, 0.1}, -0.5}};
    EXPECT_THROW(eipe::composite(negative, ray), std::domain_error);

    std::vector<IntervalRadiance> bad_color = {{{0.1, 0.1, 0.1}, 0.5}, {{1.5, 0.1, 0.1}, 0.5}};
    EXPECT_THROW(eipe::composite(bad_color, ray), std::domain_error);

    RaySamples unsorted = manual_ray({0.0, 1.0, 1.0});
    std::vector<IntervalRadiance> two = {{{0.1, 0.1, 0.1}, 0.5}, {{0.1, 0.1, 0.1}, 0.5}};
    EXPECT_THROW(eipe::composite(two, unsorted), std::invalid_argument);
}
