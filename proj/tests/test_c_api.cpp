// Copyright (c) the eipe authors.
// SPDX-License-Identifier: Apache-2.0
//
// The C interface must agree bit-for-bit with the C++ core it wraps and map
// every failure class to its status code.

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <cstring>
#include <limits>
#include <vector>

#include "eipe/baseline.hpp"
#include "eipe/corpus.hpp"
#include "eipe/eipe.h"
#include "eipe/exact.hpp"
#include "eipe/geometry.hpp"
#include "eipe/oracle.hpp"
#include "eipe/render.hpp"

namespace {

using eipe::Frustum;
using eipe::Vec3;

struct Handle {
    eipe_frustum* f = nullptr;
    ~Handle() { eipe_frustum_free(f); }
};

std::array<double, 24> flatten(const Frustum& f) {
    std::array<double, 24> v{};
    for (int i = 0; i < 8; ++i)
        for (int k = 0; k < 3; ++k) v[3 * i + k] = f.vertex(i)[k];
    return v;
}

const double kCube[24] = {1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0,
                          1, 1, 1, 1, 0, 1, 0, 0, 1, 0, 1, 1};

}  // namespace

TEST(CApi, VersionAndStatusNames) {
    EXPECT_STREQ(eipe_version(), "0.1.0");
    EXPECT_STREQ(eipe_status_name(EIPE_OK), "EIPE_OK");
    EXPECT_STREQ(eipe_status_name(EIPE_ERR_DOMAIN), "EIPE_ERR_DOMAIN");
    EXPECT_STREQ(eipe_status_name(EIPE_ERR_NONCONVEX), "EIPE_ERR_NONCONVEX");
    EXPECT_STREQ(eipe_status_name(static_cast<eipe_status>(99)), "EIPE_ERR_UNKNOWN");
}

TEST(CApi, FrustumLifecycleAndAccessors) {
    Handle h;
    ASSERT_EQ(eipe_frustum_from_vertices(kCube, &h.f), EIPE_OK);

    double back[24];
    ASSERT_EQ(eipe_frustum_vertices(h.f, back), EIPE_OK);
    for (int i = 0; i < 24; ++i) EXPECT_EQ(back[i], kCube[i]);

    double vol = 0;
    ASSERT_EQ(eipe_frustum_volume(h.f, &vol), EIPE_OK);
    EXPECT_NEAR(vol, 1.0, 1e-14);

    double c[3];
    ASSERT_EQ(eipe_frustum_centroid(h.f, c), EIPE_OK);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(c[k], 0.5, 1e-13);

    eipe_frustum_free(nullptr);  // must be a no-op
    EXPECT_EQ(eipe_frustum_from_vertices(nullptr, &h.f), EIPE_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(eipe_frustum_from_vertices(kCube, nullptr), EIPE_ERR_INVALID_ARGUMENT);
}

TEST(CApi, FromPoseMatchesCore) {
    const double R[9] = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    const double o[3] = {0.1, -0.2, 0.3};
    const double dir[3] = {0.05, -0.1, 1.0};
    Handle h;
    ASSERT_EQ(eipe_frustum_from_pose(R, o, 0.25, dir, 0.8, 2.5, &h.f), EIPE_OK);

    eipe::CameraPose pose(eipe::Mat3::identity(), {0.1, -0.2, 0.3}, 0.25);
    Frustum want = eipe::frustum_from_pixel(pose, {0.05, -0.1, 1.0}, 0.8, 2.5);
    double got[24];
    ASSERT_EQ(eipe_frustum_vertices(h.f, got), EIPE_OK);
    std::array<double, 24> expect = flatten(want);
    for (int i = 0; i < 24; ++i) EXPECT_EQ(got[i], expect[i]);
}

TEST(CApi, ContractMatchesCore) {
    double far_point[3] = {3, 0, 0}, out[3];
    eipe_contract_point(far_point, out);
    Vec3 want = eipe::contract_point({3, 0, 0});
    EXPECT_EQ(out[0], want.x);
    EXPECT_EQ(out[1], want.y);
    EXPECT_EQ(out[2], want.z);

    Frustum f = eipe::random_convex_frustum(5, 6);
    std::array<double, 24> verts = flatten(f);
    Handle h, hc;
    ASSERT_EQ(eipe_frustum_from_vertices(verts.data(), &h.f), EIPE_OK);
    ASSERT_EQ(eipe_frustum_contract(h.f, &hc.f), EIPE_OK);
    double got[24];
    ASSERT_EQ(eipe_frustum_vertices(hc.f, got), EIPE_OK);
    std::array<double, 24> expect = flatten(eipe::contract_frustum(f));
    for (int i = 0; i < 24; ++i) EXPECT_EQ(got[i], expect[i]);
}

TEST(CApi, EncodeExactMatchesCoreBitForBit) {
    Frustum f = eipe::random_convex_frustum(5, 2);
    std::array<double, 24> verts = flatten(f);
    Handle h;
    ASSERT_EQ(eipe_frustum_from_vertices(verts.data(), &h.f), EIPE_OK);

    const int L = 4;
    std::vector<double> out(6 * L);
    eipe_guard_stats cstats{};
    ASSERT_EQ(eipe_encode_exact(h.f, L, 1, out.data(), &cstats), EIPE_OK);

    eipe::GuardStats stats;
    auto tris = eipe::triangulate(f);
    eipe::Encoding want = eipe::eipe(tris, L, {.guard = true}, &stats);
    for (int i = 0; i < 6 * L; ++i) EXPECT_EQ(out[i], want.values()[i]);
    for (int k = 0; k < 3; ++k) {
        EXPECT_EQ(cstats.snapped[k], stats.snapped[k]);
        EXPECT_EQ(cstats.dispatched[k], stats.dispatched[k]);
    }

    // Layout: sin block octave-major/axis-minor, then the cos block.
    EXPECT_EQ(out[3 * 2 + 1], want.sin_at(2, 1));
    EXPECT_EQ(out[3 * (L + 2) + 1], want.cos_at(2, 1));
}

TEST(CApi, GuardToggleReachesCore) {
    Frustum f = eipe::degenerate_contracted_frustum(123, 1);
    std::array<double, 24> verts = flatten(f);
    Handle h;
    ASSERT_EQ(eipe_frustum_from_vertices(verts.data(), &h.f), EIPE_OK);

    std::vector<double> guarded(36), raw(36);
    ASSERT_EQ(eipe_encode_exact(h.f, 6, 1, guarded.data(), nullptr), EIPE_OK);
    ASSERT_EQ(eipe_encode_exact(h.f, 6, 0, raw.data(), nullptr), EIPE_OK);
    double worst_guarded = 0, worst_raw = 0;
    for (int i = 0; i < 36; ++i) {
        worst_guarded = std::max(worst_guarded, std::fabs(guarded[i]));
        worst_raw = std::max(worst_raw, std::fabs(raw[i]));
    }
    EXPECT_LE(worst_guarded, 1.0);
    EXPECT_GT(worst_raw, 1.0);
}

TEST(CApi, EncodePointMatchesCore) {
    const double x[3] = {0.37, -1.2, 2.6};
    std::vector<double> out(18);
    ASSERT_EQ(eipe_encode_point(x, 3, out.data()), EIPE_OK);
    eipe::Encoding want = eipe::pe({0.37, -1.2, 2.6}, 3);
    for (int i = 0; i < 18; ++i) EXPECT_EQ(out[i], want.values()[i]);
}

TEST(CApi, GaussianPipelineMatchesCore) {
    const double d[3] = {0.2, -0.3, 1.0};
    const double o[3] = {0.5, 0.25, -0.75};
    double mu[3], sigma[9];
    ASSERT_EQ(eipe_cone_gaussian(d, o, 0.05, 1.0, 2.5, mu, sigma), EIPE_OK);

    eipe::GaussianRegion want =
        eipe::cone_moments({0.2, -0.3, 1.0}, {0.5, 0.25, -0.75}, 0.05, 1.0, 2.5);
    for (int k = 0; k < 3; ++k) EXPECT_EQ(mu[k], want.mu()[k]);
    for (int i = 0; i < 9; ++i) EXPECT_EQ(sigma[i], want.sigma().m[i]);

    double cmu[3], csigma[9];
    ASSERT_EQ(eipe_contract_gaussian(mu, sigma, cmu, csigma), EIPE_OK);
    eipe::GaussianRegion cwant = eipe::contract_gaussian(want);
    for (int k = 0; k < 3; ++k) EXPECT_EQ(cmu[k], cwant.mu()[k]);
    for (int i = 0; i < 9; ++i) EXPECT_EQ(csigma[i], cwant.sigma().m[i]);

    std::vector<double> enc(24);
    ASSERT_EQ(eipe_encode_gaussian(cmu, csigma, 4, enc.data()), EIPE_OK);
    eipe::Encoding ewant = eipe::gaussian_ipe(cwant, 4);
    for (int i = 0; i < 24; ++i) EXPECT_EQ(enc[i], ewant.values()[i]);
}

TEST(CApi, SquarePyramidMatchesCore) {
    double c = std::cos(0.5), s = std::sin(0.5);
    const double R[9] = {c, -s, 0, s, c, 0, 0, 0, 1};
    const double o[3] = {0.1, -0.2, 0.05};
    std::vector<double> out(24);
    int fell_back[3] = {-1, -1, -1};
    ASSERT_EQ(eipe_encode_square_pyramid(R, o, 0.4, 1.0, 2.0, 4, out.data(), fell_back), EIPE_OK);

    eipe::Mat3 rot = {{c, -s, 0, s, c, 0, 0, 0, 1}};
    eipe::CameraPose pose(rot, {0.1, -0.2, 0.05}, 0.4);
    eipe::SquarePyramidEncoding want = eipe::square_pyramid_eipe(pose, 1.0, 2.0, 4);
    for (int i = 0; i < 24; ++i) EXPECT_EQ(out[i], want.enc.values()[i]);
    for (int k = 0; k < 3; ++k) EXPECT_EQ(fell_back[k] != 0, want.fell_back[k]);
}

TEST(CApi, NarrowF32) {
    const double in[4] = {0.8414709848078965, -1.0, 1e-40, 0.0};
    float out[4];
    eipe_narrow_f32(in, 4, out);
    for (int i = 0; i < 4; ++i) EXPECT_EQ(out[i], static_cast<float>(in[i]));
}

TEST(CApi, McEncodingMatchesCoreAndJobCountIsIrrelevant) {
    Frustum f = eipe::random_convex_frustum(5, 4);
    std::array<double, 24> verts = flatten(f);
    Handle h;
    ASSERT_EQ(eipe_frustum_from_vertices(verts.data(), &h.f), EIPE_OK);

    const int L = 2;
    const std::uint64_t n = 150'000;
    std::vector<double> mean(6 * L), se(6 * L), mean4(6 * L);
    ASSERT_EQ(eipe_mc_encoding(h.f, L, n, 19, 1, mean.data(), se.data()), EIPE_OK);
    ASSERT_EQ(eipe_mc_encoding(h.f, L, n, 19, 4, mean4.data(), nullptr), EIPE_OK);

    eipe::OracleEstimate want = eipe::mc_encoding(f, L, n, 19);
    for (int i = 0; i < 6 * L; ++i) {
        EXPECT_EQ(mean[i], want.mean[i]);
        EXPECT_EQ(se[i], want.std_error[i]);
        EXPECT_EQ(mean4[i], want.mean[i]);
    }
}

TEST(CApi, McMomentsMatchesCore) {
    const double d[3] = {0, 0, 1}, o[3] = {0, 0, 0};
    double mu[3], sigma[9], mu_se[3], sigma_se[9];
    ASSERT_EQ(eipe_mc_moments(d, o, 0.1, 1.0, 2.0, 50'000, 23, mu, sigma, mu_se, sigma_se),
              EIPE_OK);
    eipe::MomentEstimate want = eipe::mc_moments({0, 0, 1}, {0, 0, 0}, 0.1, 1.0, 2.0, 50'000, 23);
    for (int k = 0; k < 3; ++k) {
        EXPECT_EQ(mu[k], want.mean[k]);
        EXPECT_EQ(mu_se[k], want.mean_se[k]);
    }
    for (int i = 0; i < 9; ++i) {
        EXPECT_EQ(sigma[i], want.cov.m[i]);
        EXPECT_EQ(sigma_se[i], want.cov_se.m[i]);
    }
}

TEST(CApi, RenderingMatchesCore) {
    std::vector<double> ts(9);
    ASSERT_EQ(eipe_stratified_ts(1.0, 3.0, 8, 42, ts.data()), EIPE_OK);
    eipe::RaySamples want = eipe::stratified_ts(1.0, 3.0, 8, 42);
    for (int i = 0; i < 9; ++i) EXPECT_EQ(ts[i], want.ts[i]);

    const double colors[6] = {1.0, 0.0, 0.2, 0.0, 1.0, 0.8};
    const double densities[2] = {0.6931471805599453, 1e9};
    const double bounds[3] = {0.0, 1.0, 2.0};
    double rgb[3], t = -1;
    ASSERT_EQ(eipe_composite(colors, densities, bounds, 2, rgb, &t), EIPE_OK);
    EXPECT_NEAR(rgb[0], 0.5, 1e-12);
    EXPECT_NEAR(rgb[1], 0.5, 1e-12);
    EXPECT_NEAR(t, 0.0, 1e-12);
}

TEST(CApi, CorpusGeneratorsMatchCore) {
    double got[24];
    ASSERT_EQ(eipe_random_frustum(5, 12, got), EIPE_OK);
    std::array<double, 24> want = flatten(eipe::random_convex_frustum(5, 12));
    for (int i = 0; i < 24; ++i) EXPECT_EQ(got[i], want[i]);

    ASSERT_EQ(eipe_degenerate_frustum(123, 7, got), EIPE_OK);
    std::array<double, 24> dwant = flatten(eipe::degenerate_contracted_frustum(123, 7));
    for (int i = 0; i < 24; ++i) EXPECT_EQ(got[i], dwant[i]);
}

TEST(CApi, ErrorMapping) {
    double bad[24];
    std::memcpy(bad, kCube, sizeof(bad));
    bad[0] = std::numeric_limits<double>::quiet_NaN();
    Handle h;
    EXPECT_EQ(eipe_frustum_from_vertices(bad, &h.f), EIPE_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(h.f, nullptr);

    // Inside-out region: orientation failure surfaces at volume/encode time.
    double inverted[24];
    for (int i = 0; i < 8; ++i)
        for (int k = 0; k < 3; ++k) inverted[3 * i + k] = 1.0 - kCube[3 * i + k];
    Handle hi;
    ASSERT_EQ(eipe_frustum_from_vertices(inverted, &hi.f), EIPE_OK);
    double vol;
    EXPECT_EQ(eipe_frustum_volume(hi.f, &vol), EIPE_ERR_ORIENTATION);
    std::vector<double> buf(36);
    EXPECT_EQ(eipe_encode_exact(hi.f, 6, 1, buf.data(), nullptr), EIPE_ERR_ORIENTATION);

    Handle hc;
    ASSERT_EQ(eipe_frustum_from_vertices(kCube, &hc.f), EIPE_OK);
    EXPECT_EQ(eipe_encode_exact(hc.f, 0, 1, buf.data(), nullptr), EIPE_ERR_DOMAIN);
    EXPECT_EQ(eipe_encode_exact(hc.f, 63, 1, buf.data(), nullptr), EIPE_ERR_DOMAIN);
    EXPECT_EQ(eipe_encode_exact(nullptr, 4, 1, buf.data(), nullptr), EIPE_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(eipe_encode_exact(hc.f, 4, 1, nullptr, nullptr), EIPE_ERR_INVALID_ARGUMENT);

    // Non-convex region rejected by the sampling oracle.
    double dented[24];
    std::memcpy(dented, kCube, sizeof(dented));
    dented[18] = 0.45;  // vertex 6 pulled inside
    dented[19] = 0.45;
    dented[20] = 0.55;
    Handle hd;
    ASSERT_EQ(eipe_frustum_from_vertices(dented, &hd.f), EIPE_OK);
    double mean[12];
    EXPECT_EQ(eipe_mc_encoding(hd.f, 1, 10'000, 1, 1, mean, nullptr), EIPE_ERR_NONCONVEX);

    const double mu[3] = {0, 0, 0};
    const double asym[9] = {1, 0.5, 0, 0, 1, 0, 0, 0, 1};
    EXPECT_EQ(eipe_encode_gaussian(mu, asym, 2, buf.data()), EIPE_ERR_COVARIANCE);
    EXPECT_EQ(eipe_contract_gaussian(mu, asym, buf.data(), buf.data() + 3),
              EIPE_ERR_COVARIANCE);

    const double d[3] = {0, 0, 1}, origin[3] = {0, 0, 0};
    double m[3], s[9];
    EXPECT_EQ(eipe_cone_gaussian(d, origin, 0.1, 2.0, 1.0, m, s), EIPE_ERR_DOMAIN);

    const double colors[3] = {0.5, 0.5, 0.5};
    const double neg_density[1] = {-1.0};
    const double bounds[2] = {0.0, 1.0};
    double rgb[3], t;
    EXPECT_EQ(eipe_composite(colors, neg_density, bounds, 1, rgb, &t), EIPE_ERR_DOMAIN);
}
