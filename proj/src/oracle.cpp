// Copyright (c) the eipe authors.
// SPDX-License-Identifier: Apache-2.0

#include "eipe/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "eipe/errors.hpp"
#include "eipe/rng.hpp"

namespace eipe {

namespace {

// Fixed accumulation block: parallel workers produce per-block partial sums
// that are merged in block order, making the estimate independent of the
// thread schedule.
constexpr std::uint64_t kBlock = 65536;

double region_diameter(const Frustum& f) {
    Vec3 lo = f.vertex(0), hi = f.vertex(0);
    for (int i = 1; i < 8; ++i)
        for (int k = 0; k < 3; ++k) {
            lo[k] = std::min(lo[k], f.vertex(i)[k]);
            hi[k] = std::max(hi[k], f.vertex(i)[k]);
        }
    return norm(hi - lo);
}

// Uniform barycentric fold of three unit-cube coordinates (Rocchini-Cignoni).
Vec3 tet_point(const Tet& tet, double s, double t, double u) {
    if (s + t > 1.0) {
        s = 1.0 - s;
        t = 1.0 - t;
    }
    if (t + u > 1.0) {
        double tmp = u;
        u = 1.0 - s - t;
        t = 1.0 - tmp;
    } else if (s + t + u > 1.0) {
        double tmp = u;
        u = s + t + u - 1.0;
        s = 1.0 - t - tmp;
    }
    double a = 1.0 - s - t - u;
    return tet.v[0] * a + tet.v[1] * s + tet.v[2] * t + tet.v[3] * u;
}

Vec3 draw_point(const TetDecomposition& td, const CounterRng& rng, std::uint64_t i) {
    double target = rng.u01(4 * i) * td.total_volume;
    auto it = std::upper_bound(td.cum_volume.begin(), td.cum_volume.end(), target);
    std::size_t idx = std::min<std::size_t>(it - td.cum_volume.begin(), td.tets.size() - 1);
    return tet_point(td.tets[idx], rng.u01(4 * i + 1), rng.u01(4 * i + 2), rng.u01(4 * i + 3));
}

}  // namespace

TetDecomposition decompose(const Frustum& f) {
    const double diam = region_diameter(f);
    if (!(diam > 0.0)) throw NonConvexError("decompose: region has zero extent");

    // Convexity: every vertex on the inner side of every face plane.
    for (const auto& tri : kSurfaceTriangles) {
        Vec3 p0 = f.vertex(tri[0]);
        Vec3 n = cross(f.vertex(tri[1]) - p0, f.vertex(tri[2]) - p0);
        double nn = norm(n);
        if (nn == 0.0) continue;  // flat triangle constrains nothing
        for (int i = 0; i < 8; ++i)
            if (dot(f.vertex(i) - p0, n) / nn > 1e-9 * diam)
                throw NonConvexError("decompose: vertex outside a face plane");
    }

    TetDecomposition td;
    const Vec3 apex = f.vertex(0);
    Compensated<double> cum;
    for (const auto& tri : kSurfaceTriangles) {
        if (tri[0] == 0 || tri[1] == 0 || tri[2] == 0) continue;
        Tet tet{{apex, f.vertex(tri[0]), f.vertex(tri[1]), f.vertex(tri[2])}, 0.0};
        double vol =
            dot(tet.v[1] - apex, cross(tet.v[2] - apex, tet.v[3] - apex)) / 6.0;
        if (vol < -1e-12 * diam * diam * diam)
            throw OrientationError("decompose: inverted tetrahedron");
        if (vol <= 0.0) continue;  // flat sliver, carries no volume
        tet.volume = vol;
        cum.add(vol);
        td.tets.push_back(tet);
        td.cum_volume.push_back(cum.value());
    }
    if (td.tets.empty()) throw NonConvexError("decompose: region has zero volume");
    td.total_volume = cum.value();
    return td;
}

std::vector<Vec3> sample_uniform(const TetDecomposition& td, std::uint64_t n, std::uint64_t seed) {
    if (td.tets.empty()) throw std::invalid_argument("sample_uniform: empty decomposition");
    CounterRng rng(seed, kStreamMcEncoding);
    std::vector<Vec3> pts(n);
    for (std::uint64_t i = 0; i < n; ++i) pts[i] = draw_point(td, rng, i);
    return pts;
}

OracleEstimate mc_encoding(const Frustum& f, int octaves, std::uint64_t n, std::uint64_t seed,
                           int jobs) {
    if (octaves < 1 || octaves > 62)
        throw std::domain_error("mc_encoding: octave count out of range");
    if (n < 2) throw std::domain_error("mc_encoding: need at least two samples");
    if (jobs < 1) throw std::domain_error("mc_encoding: jobs must be >= 1");

    const TetDecomposition td = decompose(f);
    const CounterRng rng(seed, kStreamMcEncoding);
    const std::size_t m = 6 * static_cast<std::size_t>(octaves);
    const std::uint64_t nblocks = (n + kBlock - 1) / kBlock;

    // Per block: 6L sums followed by 6L sums of squares.
    std::vector<std::vector<double>> partial(nblocks);

    auto run_block = [&](std::uint64_t b) {
        std::vector<double>& acc = partial[b];
        acc.assign(2 * m, 0.0);
        const std::uint64_t lo = b * kBlock, hi = std::min(n, lo + kBlock);
        double s[3], c[3];
        for (std::uint64_t i = lo; i < hi; ++i) {
            Vec3 p = draw_point(td, rng, i);
            for (int k = 0; k < 3; ++k) {
                // Octave 0 evaluates sin/cos directly; higher octaves use the
                // double-angle recurrence (validated against pe()).
                __builtin_sincos(p[k], &s[k], &c[k]);
            }
            for (int l = 0; l < octaves; ++l) {
                const std::size_t base = 3 * static_cast<std::size_t>(l);
                for (int k = 0; k < 3; ++k) {
                    double sv = s[k], cv = c[k];
                    acc[base + k] += sv;
                    acc[m / 2 + base + k] += cv;
                    acc[m + base + k] += sv * sv;
                    acc[m + m / 2 + base + k] += cv * cv;
                    s[k] = 2.0 * sv * cv;
                    c[k] = 1.0 - 2.0 * sv * sv;
                }
            }
        }
    };

    const unsigned workers =
        std::min<std::uint64_t>(std::min<std::uint64_t>(jobs, nblocks), 64);
    if (workers <= 1) {
        for (std::uint64_t b = 0; b < nblocks; ++b) run_block(b);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::uint64_t b = next.fetch_add(1); b < nblocks; b = next.fetch_add(1))
                    run_block(b);
            });
        for (auto& th : pool) th.join();
    }

    OracleEstimate est;
    est.n = n;
    est.seed = seed;
    est.mean.resize(m);
    est.std_error.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        Compensated<long double> sum, sumsq;
        for (std::uint64_t b = 0; b < nblocks; ++b) {
            sum.add(partial[b][j]);
            sumsq.add(partial[b][m + j]);
        }
        long double s1 = sum.value(), s2 = sumsq.value();
        long double mean = s1 / n;
        long double var = (s2 - s1 * s1 / n) / (static_cast<long double>(n) - 1);
        est.mean[j] = static_cast<double>(mean);
        est.std_error[j] = static_cast<double>(std::sqrt(std::max(var, 0.0L) / n));
    }
    return est;
}

MomentEstimate mc_moments(const Vec3& d, const Vec3& o, double r_dot, double t0, double t1,
                          std::uint64_t n, std::uint64_t seed) {
    if (!is_finite(d) || !is_finite(o) || !std::isfinite(r_dot) || !std::isfinite(t0) ||
        !std::isfinite(t1))
        throw std::invalid_argument("mc_moments: non-finite input");
    if (!(t0 > 0.0) || !(t1 > t0)) throw std::domain_error("mc_moments: require t1 > t0 > 0");
    if (!(r_dot > 0.0)) throw std::domain_error("mc_moments: require r_dot > 0");
    if (n < 1000) throw std::domain_error("mc_moments: sample count too small");
    double dn = norm(d);
    if (dn == 0.0) throw std::domain_error("mc_moments: zero direction");

    // Orthonormal frame perpendicular to the axis.
    Vec3 w = d / dn;
    Vec3 up = std::fabs(w.x) > 0.9 ? Vec3{0, 1, 0} : Vec3{1, 0, 0};
    Vec3 u = cross(up, w);
    u = u / norm(u);
    Vec3 v = cross(w, u);

    // t has density ~ t^2 (cross-section area), sampled exactly by inverse
    // CDF; the disc offset comes from square rejection, so only the disc step
    // consumes a variable number of counters.
    CounterRng rng(seed, kStreamMcMoments);
    const double t0c = t0 * t0 * t0, t1c = t1 * t1 * t1;

    constexpr int kBatches = 100;
    struct Batch {
        double n = 0;
        double sx[3] = {0, 0, 0};
        double sxx[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    };
    std::vector<Batch> batches(kBatches);

    std::uint64_t counter = 0, proposals = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        double t = std::cbrt(t0c + rng.u01(counter++) * (t1c - t0c));
        double a, b;
        do {
            a = 2.0 * rng.u01(counter++) - 1.0;
            b = 2.0 * rng.u01(counter++) - 1.0;
            ++proposals;
        } while (a * a + b * b > 1.0);
        double r = r_dot * t;
        Vec3 p = o + t * d + (r * a) * u + (r * b) * v;
        Batch& bt = batches[static_cast<std::size_t>(i * kBatches / n)];
        bt.n += 1;
        for (int j = 0; j < 3; ++j) {
            bt.sx[j] += p[j];
            for (int k = j; k < 3; ++k) bt.sxx[j][k] += p[j] * p[k];
        }
    }

    // Global moments from pooled sums; standard errors from the spread of the
    // per-batch estimates.
    MomentEstimate est;
    est.n = n;
    est.acceptance = static_cast<double>(n) / static_cast<double>(proposals);

    double sx[3] = {0, 0, 0}, sxx[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    for (const Batch& bt : batches)
        for (int j = 0; j < 3; ++j) {
            sx[j] += bt.sx[j];
            for (int k = j; k < 3; ++k) sxx[j][k] += bt.sxx[j][k];
        }
    for (int j = 0; j < 3; ++j) est.mean[j] = sx[j] / static_cast<double>(n);
    for (int j = 0; j < 3; ++j)
        for (int k = j; k < 3; ++k) {
            double c = sxx[j][k] / static_cast<double>(n) - est.mean[j] * est.mean[k];
            est.cov(j, k) = est.cov(k, j) = c;
        }

    for (int j = 0; j < 3; ++j) {
        double acc = 0, acc2 = 0;
        for (const Batch& bt : batches) {
            double mb = bt.sx[j] / bt.n;
            acc += mb;
            acc2 += mb * mb;
        }
        double var = std::max(0.0, acc2 / kBatches - (acc / kBatches) * (acc / kBatches));
        est.mean_se[j] = std::sqrt(var / kBatches);
    }
    for (int j = 0; j < 3; ++j)
        for (int k = j; k < 3; ++k) {
            double acc = 0, acc2 = 0;
            for (const Batch& bt : batches) {
                double mj = bt.sx[j] / bt.n, mk = bt.sx[k] / bt.n;
                double cb = bt.sxx[j][k] / bt.n - mj * mk;
                acc += cb;
                acc2 += cb * cb;
            }
            double var = std::max(0.0, acc2 / kBatches - (acc / kBatches) * (acc / kBatches));
            est.cov_se(j, k) = est.cov_se(k, j) = std::sqrt(var / kBatches);
        }
    return est;
}

}  // namespace eipe
