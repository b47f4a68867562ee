// Copyright (c) the eipe authors.
// SPDX-License-Identifier: Apache-2.0

#include "eipe/exact.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "eipe/errors.hpp"

namespace eipe {

namespace {

// All kernels work on the scaled nodes y = 2^l x.  The generic forms are the
// second divided differences of cos / -sin; each coincident-node branch is
// the corresponding l'Hopital limit, so the guard only switches between two
// expressions for the same analytic function.

long double sigma_generic(long double y0, long double y1, long double y2) {
    long double num = std::cos(y0) * (y2 - y1) + std::cos(y1) * (y0 - y2) + std::cos(y2) * (y1 - y0);
    long double den = (y1 - y0) * (y2 - y0) * (y2 - y1);
    return num / den;
}

long double xi_generic(long double y0, long double y1, long double y2) {
    long double num = std::sin(y0) * (y2 - y1) + std::sin(y1) * (y0 - y2) + std::sin(y2) * (y1 - y0);
    long double den = (y1 - y0) * (y2 - y0) * (y2 - y1);
    return -num / den;
}

// Double node y1 (= y0), single node y2.
long double sigma_pair01(long double y1, long double y2) {
    long double d = y2 - y1;
    return ((d * std::sin(y1) - std::cos(y1)) + std::cos(y2)) / (d * d);
}

long double xi_pair01(long double y1, long double y2) {
    long double d = y2 - y1;
    return ((d * std::cos(y1) + std::sin(y1)) - std::sin(y2)) / (d * d);
}

// Double node y2 (= y0), single node y1.
long double sigma_pair02(long double y1, long double y2) {
    long double d = y2 - y1;
    return ((-d * std::sin(y2) + std::cos(y1)) - std::cos(y2)) / (d * d);
}

long double xi_pair02(long double y1, long double y2) {
    long double d = y2 - y1;
    return ((-d * std::cos(y2) - std::sin(y1)) + std::sin(y2)) / (d * d);
}

// Double node y2 (= y1), single node y0.
long double sigma_pair12(long double y0, long double y2) {
    long double d = y2 - y0;
    return ((-d * std::sin(y2) + std::cos(y0)) - std::cos(y2)) / (d * d);
}

long double xi_pair12(long double y0, long double y2) {
    long double d = y2 - y0;
    return ((-d * std::cos(y2) - std::sin(y0)) + std::sin(y2)) / (d * d);
}

void check_nodes(double x0, double x1, double x2, int l) {
    if (!std::isfinite(x0) || !std::isfinite(x1) || !std::isfinite(x2))
        throw std::invalid_argument("coefficient: non-finite coordinate");
    if (l < 0 || l > 62) throw std::domain_error("coefficient: octave index out of range");
}

long double sigma_scaled(long double y0, long double y1, long double y2, DegenClass cls) {
    switch (cls) {
        case DegenClass::kGeneric: return sigma_generic(y0, y1, y2);
        case DegenClass::kX0X1: return sigma_pair01(y1, y2);
        case DegenClass::kX0X2: return sigma_pair02(y1, y2);
        case DegenClass::kX1X2: return sigma_pair12(y0, y2);
        case DegenClass::kAllEqual: return -std::cos(y0) / 2.0L;
    }
    return 0;
}

long double xi_scaled(long double y0, long double y1, long double y2, DegenClass cls) {
    switch (cls) {
        case DegenClass::kGeneric: return xi_generic(y0, y1, y2);
        case DegenClass::kX0X1: return xi_pair01(y1, y2);
        case DegenClass::kX0X2: return xi_pair02(y1, y2);
        case DegenClass::kX1X2: return xi_pair12(y0, y2);
        case DegenClass::kAllEqual: return std::sin(y0) / 2.0L;
    }
    return 0;
}

}  // namespace

DegenClass classify_triple(double x0, double x1, double x2, double eps) {
    auto near = [eps](double a, double b) {
        double d = a - b;
        return d == 0.0 || std::fabs(d) < eps;
    };
    int n01 = near(x0, x1), n02 = near(x0, x2), n12 = near(x1, x2);
    // Two coincident pairs share a node, so the whole triple merges.
    if (n01 + n02 + n12 >= 2) return DegenClass::kAllEqual;
    if (n01) return DegenClass::kX0X1;
    if (n02) return DegenClass::kX0X2;
    if (n12) return DegenClass::kX1X2;
    return DegenClass::kGeneric;
}

double sigma_coeff(double x0, double x1, double x2, int l, DegenClass cls) {
    check_nodes(x0, x1, x2, l);
    return static_cast<double>(sigma_scaled(std::ldexp(static_cast<long double>(x0), l),
                                            std::ldexp(static_cast<long double>(x1), l),
                                            std::ldexp(static_cast<long double>(x2), l), cls));
}

double xi_coeff(double x0, double x1, double x2, int l, DegenClass cls) {
    check_nodes(x0, x1, x2, l);
    return static_cast<double>(xi_scaled(std::ldexp(static_cast<long double>(x0), l),
                                         std::ldexp(static_cast<long double>(x1), l),
                                         std::ldexp(static_cast<long double>(x2), l), cls));
}

double sigma_coeff(double x0, double x1, double x2, int l) {
    return sigma_coeff(x0, x1, x2, l, classify_triple(x0, x1, x2));
}

double xi_coeff(double x0, double x1, double x2, int l) {
    return xi_coeff(x0, x1, x2, l, classify_triple(x0, x1, x2));
}

namespace {

// Merges coordinate values on one axis whose gaps are below eps (single
// linkage, so chains of near values collapse together) and replaces each
// cluster by its mean.  Returns the number of distinct values that moved.
std::uint32_t snap_axis(std::vector<TriangleFace>& work, int k, double eps) {
    std::vector<double> vals;
    vals.reserve(work.size() * 3);
    for (const TriangleFace& tri : work) {
        vals.push_back(tri.p0[k]);
        vals.push_back(tri.p1[k]);
        vals.push_back(tri.p2[k]);
    }
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());

    std::vector<double> rep(vals.size());
    std::uint32_t moved = 0;
    for (std::size_t i = 0; i < vals.size();) {
        std::size_t j = i + 1;
        while (j < vals.size() && vals[j] - vals[j - 1] < eps) ++j;
        if (j - i > 1) {
            Compensated<long double> mean;
            for (std::size_t m = i; m < j; ++m) mean.add(static_cast<long double>(vals[m]));
            double mv = static_cast<double>(mean.value() / static_cast<long double>(j - i));
            for (std::size_t m = i; m < j; ++m) rep[m] = mv;
            moved += static_cast<std::uint32_t>(j - i);
        } else {
            rep[i] = vals[i];
        }
        i = j;
    }

    auto snap = [&](double v) {
        std::size_t idx = static_cast<std::size_t>(
            std::lower_bound(vals.begin(), vals.end(), v) - vals.begin());
        return rep[idx];
    };
    for (TriangleFace& tri : work) {
        tri.p0[k] = snap(tri.p0[k]);
        tri.p1[k] = snap(tri.p1[k]);
        tri.p2[k] = snap(tri.p2[k]);
    }
    return moved;
}

}  // namespace

Encoding eipe(std::span<const TriangleFace> tris, int octaves, const EipeOptions& opts,
              GuardStats* stats) {
    if (octaves < 1 || octaves > 62) throw std::domain_error("eipe: octave count out of range");
    if (tris.empty()) throw std::invalid_argument("eipe: empty surface");
    if (stats) *stats = GuardStats{};

    for (const TriangleFace& tri : tris)
        if (!is_finite(tri.p0) || !is_finite(tri.p1) || !is_finite(tri.p2))
            throw std::invalid_argument("eipe: non-finite vertex");

    const double eps = opts.guard ? kGuardEps : 0.0;
    const std::size_t nt = tris.size();

    // With the guard on, sub-threshold coordinate gaps are removed from the
    // surface itself: values are merged per axis and normals recomputed, so
    // every triangle sees the same snapped geometry.  The assembled sums are
    // then the exact encoding of a genuinely closed nearby region, which
    // keeps each component inside [-1,1] instead of amplifying per-triangle
    // rounding disagreements through the small volume.
    std::vector<TriangleFace> work(tris.begin(), tris.end());
    if (opts.guard) {
        std::array<std::uint32_t, 3> moved{};
        for (int k = 0; k < 3; ++k) moved[k] = snap_axis(work, k, eps);
        if (moved[0] + moved[1] + moved[2] > 0)
            for (TriangleFace& tri : work)
                tri.normal = cross(tri.p1 - tri.p0, tri.p2 - tri.p0);
        if (stats) stats->snapped = moved;
    }

    // Classification depends only on the coordinates, not the octave.  After
    // snapping, surviving gaps are at least eps apart, so only exactly equal
    // nodes dispatch to a coincident branch.
    std::vector<DegenClass> cls(nt * 3);
    Compensated<long double> vol6;
    for (std::size_t t = 0; t < nt; ++t) {
        const TriangleFace& tri = work[t];
        vol6.add(static_cast<long double>(dot(tri.p0, tri.normal)));
        for (int k = 0; k < 3; ++k) {
            cls[3 * t + k] = classify_triple(tri.p0[k], tri.p1[k], tri.p2[k], eps);
            if (stats && cls[3 * t + k] != DegenClass::kGeneric) ++stats->dispatched[k];
        }
    }
    long double vol = vol6.value() / 6.0L;
    if (!std::isfinite(static_cast<double>(vol)) || vol <= 0.0L)
        throw OrientationError("eipe: surface volume is not positive");

    Encoding enc(octaves);
    for (int l = 0; l < octaves; ++l) {
        for (int k = 0; k < 3; ++k) {
            Compensated<long double> sin_sum, cos_sum;
            for (std::size_t t = 0; t < nt; ++t) {
                const TriangleFace& tri = work[t];
                long double y0 = std::ldexp(static_cast<long double>(tri.p0[k]), l);
                long double y1 = std::ldexp(static_cast<long double>(tri.p1[k]), l);
                long double y2 = std::ldexp(static_cast<long double>(tri.p2[k]), l);
                DegenClass c = cls[3 * t + k];
                long double nk = tri.normal[k];
                sin_sum.add(sigma_scaled(y0, y1, y2, c) * nk);
                cos_sum.add(xi_scaled(y0, y1, y2, c) * nk);
            }
            double s = static_cast<double>(std::ldexp(sin_sum.value(), -l) / vol);
            double co = static_cast<double>(std::ldexp(cos_sum.value(), -l) / vol);
            if (opts.guard) {
                if (!(std::fabs(s) <= 1.0 + 1e-9) || !(std::fabs(co) <= 1.0 + 1e-9))
                    throw ConsistencyError("eipe: guarded component escaped [-1, 1]");
                s = std::clamp(s, -1.0, 1.0);
                co = std::clamp(co, -1.0, 1.0);
            }
            enc.sin_at(l, k) = s;
            enc.cos_at(l, k) = co;
        }
    }
    return enc;
}

}  // namespace eipe
