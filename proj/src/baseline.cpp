// Copyright (c) the eipe authors.
// SPDX-License-Identifier: Apache-2.0

#include "eipe/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "eipe/errors.hpp"
#include "eipe/exact.hpp"

namespace eipe {

namespace {

void check_octaves(int octaves) {
    if (octaves < 1 || octaves > 62) throw std::domain_error("encoding: octave count out of range");
}

double max_abs(const Mat3& m) {
    double r = 0;
    for (double v : m.m) r = std::max(r, std::fabs(v));
    return r;
}

// Eigenvalues of a symmetric 3x3 matrix by the trigonometric closed form.
std::array<double, 3> sym_eigenvalues(const Mat3& a) {
    double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    if (p1 == 0.0) return {a(0, 0), a(1, 1), a(2, 2)};
    double q = (a(0, 0) + a(1, 1) + a(2, 2)) / 3.0;
    double p2 = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q) +
                (a(2, 2) - q) * (a(2, 2) - q) + 2.0 * p1;
    double p = std::sqrt(p2 / 6.0);
    Mat3 b = (a + Mat3::identity() * -q) * (1.0 / p);
    double r = std::clamp(b.det() / 2.0, -1.0, 1.0);
    double phi = std::acos(r) / 3.0;
    double e1 = q + 2.0 * p * std::cos(phi);
    double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    return {e1, 3.0 * q - e1 - e3, e3};
}

}  // namespace

GaussianRegion::GaussianRegion(const Vec3& mu, const Mat3& sigma) : mu_(mu), sigma_(sigma) {
    if (!is_finite(mu) || !sigma.finite())
        throw std::invalid_argument("GaussianRegion: non-finite moments");
    double tol = 1e-12 * std::max(1.0, max_abs(sigma));
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (std::fabs(sigma(i, j) - sigma(j, i)) > tol)
                throw CovarianceError("GaussianRegion: covariance is not symmetric");
    // Store the symmetrized matrix so downstream consumers see exact symmetry.
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            double v = 0.5 * (sigma(i, j) + sigma(j, i));
            sigma_(i, j) = sigma_(j, i) = v;
        }
    for (double e : sym_eigenvalues(sigma_))
        if (e < -tol) throw CovarianceError("GaussianRegion: covariance has a negative eigenvalue");
}

std::vector<double> frequency_lift(const Vec3& x, int octaves) {
    check_octaves(octaves);
    if (!is_finite(x)) throw std::invalid_argument("frequency_lift: non-finite input");
    std::vector<double> out(3 * static_cast<std::size_t>(octaves));
    for (int l = 0; l < octaves; ++l)
        for (int k = 0; k < 3; ++k) out[3 * static_cast<std::size_t>(l) + k] = std::ldexp(x[k], l);
    return out;
}

Encoding pe(const Vec3& x, int octaves) {
    std::vector<double> lifted = frequency_lift(x, octaves);
    Encoding enc(octaves);
    for (int l = 0; l < octaves; ++l)
        for (int k = 0; k < 3; ++k) {
            double y = lifted[3 * static_cast<std::size_t>(l) + k];
            enc.sin_at(l, k) = std::sin(y);
            enc.cos_at(l, k) = std::cos(y);
        }
    return enc;
}

Encoding gaussian_ipe(const GaussianRegion& g, int octaves) {
    check_octaves(octaves);
    Encoding enc(octaves);
    for (int l = 0; l < octaves; ++l)
        for (int k = 0; k < 3; ++k) {
            // exp(-2^(2l) Sigma_kk / 2); the constructor bounds how negative a
            // diagonal entry can be, so tiny negatives are treated as zero.
            double var = std::max(0.0, g.sigma()(k, k));
            double damp = std::exp(-0.5 * std::ldexp(var, 2 * l));
            double y = std::ldexp(g.mu()[k], l);
            enc.sin_at(l, k) = std::sin(y) * damp;
            enc.cos_at(l, k) = std::cos(y) * damp;
        }
    return enc;
}

GaussianRegion cone_moments(const Vec3& d, const Vec3& o, double r_dot, double t0, double t1) {
    if (!is_finite(d) || !is_finite(o) || !std::isfinite(r_dot) || !std::isfinite(t0) ||
        !std::isfinite(t1))
        throw std::invalid_argument("cone_moments: non-finite input");
    if (!(t0 > 0.0) || !(t1 > t0)) throw std::domain_error("cone_moments: require t1 > t0 > 0");
    if (!(r_dot > 0.0)) throw std::domain_error("cone_moments: require r_dot > 0");
    double d2 = dot(d, d);
    if (d2 == 0.0) throw std::domain_error("cone_moments: zero direction");

    // Mean and variances of t under the conical-volume density p(t) ~ t^2 on
    // [t0, t1], in the numerically stable midpoint/half-width form.
    double tm = 0.5 * (t0 + t1);
    double td = 0.5 * (t1 - t0);
    double tm2 = tm * tm, td2 = td * td;
    double denom = 3.0 * tm2 + td2;
    double mu_t = tm + 2.0 * tm * td2 / denom;
    double var_t = td2 / 3.0 - 4.0 * td2 * td2 * (12.0 * tm2 - td2) / (15.0 * denom * denom);
    double var_r = r_dot * r_dot * (tm2 / 4.0 + 5.0 * td2 / 12.0 - 4.0 * td2 * td2 / (15.0 * denom));

    Mat3 dd = outer(d, d);
    Mat3 sigma = dd * var_t + (Mat3::identity() + dd * (-1.0 / d2)) * var_r;
    return GaussianRegion(o + mu_t * d, sigma);
}

Mat3 contraction_jacobian(const Vec3& x) {
    if (!is_finite(x)) throw std::invalid_argument("contraction_jacobian: non-finite input");
    double r = norm(x);
    if (r <= 1.0) return Mat3::identity();
    // f(x) = a(r) x with a = 2/r - 1/r^2; J = a I + (a'/r) x x^T.
    double a = 2.0 / r - 1.0 / (r * r);
    double aprime_over_r = (-2.0 / (r * r) + 2.0 / (r * r * r)) / r;
    return Mat3::identity() * a + outer(x, x) * aprime_over_r;
}

GaussianRegion contract_gaussian(const GaussianRegion& g) {
    Mat3 j = contraction_jacobian(g.mu());
    Mat3 s = j * g.sigma() * j.transposed();
    // Conjugation is symmetric analytically; enforce it exactly.
    for (int i = 0; i < 3; ++i)
        for (int k = i + 1; k < 3; ++k) {
            double v = 0.5 * (s(i, k) + s(k, i));
            s(i, k) = s(k, i) = v;
        }
    return GaussianRegion(contract_point(g.mu()), s);
}

SquarePyramidEncoding square_pyramid_eipe(const CameraPose& pose, double t0, double t1,
                                          int octaves) {
    check_octaves(octaves);
    if (!std::isfinite(t0) || !std::isfinite(t1))
        throw std::invalid_argument("square_pyramid_eipe: non-finite ray extent");
    if (!(t0 > 0.0) || !(t1 > t0)) throw std::domain_error("square_pyramid_eipe: require t1 > t0 > 0");
    if (t1 - t0 <= 1e-9 * std::max({1.0, t0, t1}))
        throw std::domain_error("square_pyramid_eipe: degenerate slab");

    constexpr double kDenomEps = 1e-6;
    const double h = pose.omega() / 2.0;
    const long double lt0 = t0, lt1 = t1;
    const long double vol =
        static_cast<long double>(pose.omega()) * pose.omega() * (lt1 * lt1 * lt1 - lt0 * lt0 * lt0) / 3.0L;

    // Corner directions (+-h, +-h, 1) paired with the inclusion-exclusion
    // signs of the separable double antiderivative.
    const double corner[4][2] = {{h, h}, {h, -h}, {-h, h}, {-h, -h}};
    const double csign[4] = {1.0, -1.0, -1.0, 1.0};

    SquarePyramidEncoding out(octaves);
    bool have_general = false;
    Encoding general(octaves);

    for (int k = 0; k < 3; ++k) {
        Vec3 r = pose.rotation().row(k);
        double ok = pose.origin()[k];
        double zeta[4];
        bool degenerate = std::fabs(r.x) < kDenomEps || std::fabs(r.y) < kDenomEps;
        for (int j = 0; j < 4 && !degenerate; ++j) {
            zeta[j] = corner[j][0] * r.x + corner[j][1] * r.y + r.z;
            if (std::fabs(zeta[j]) < kDenomEps) degenerate = true;
        }
        if (degenerate) {
            // Axis-aligned rotation entries zero out a denominator; integrate
            // the triangulated surface instead (same region, same answer).
            if (!have_general) {
                Frustum f = frustum_from_pixel(pose, {0, 0, 1}, t0, t1);
                auto tris = triangulate(f);
                general = eipe(tris, octaves);
                have_general = true;
            }
            for (int l = 0; l < octaves; ++l) {
                out.enc.sin_at(l, k) = general.sin_at(l, k);
                out.enc.cos_at(l, k) = general.cos_at(l, k);
            }
            out.fell_back[k] = true;
            continue;
        }

        for (int l = 0; l < octaves; ++l) {
            Compensated<long double> sin_sum, cos_sum;
            for (int j = 0; j < 4; ++j) {
                long double z = zeta[j];
                long double a1 = std::ldexp(lt1 * z + ok, l);
                long double a0 = std::ldexp(lt0 * z + ok, l);
                long double c = std::cos(a1) - std::cos(a0);
                long double s = std::sin(a1) - std::sin(a0);
                sin_sum.add(csign[j] * c / z);
                cos_sum.add(-csign[j] * s / z);
            }
            // Integral = corner sum / (2^(3l) r1 r2); component = integral / V.
            long double scale = std::ldexp(1.0L / (static_cast<long double>(r.x) * r.y), -3 * l);
            double sv = static_cast<double>(sin_sum.value() * scale / vol);
            double cv = static_cast<double>(cos_sum.value() * scale / vol);
            out.enc.sin_at(l, k) = std::clamp(sv, -1.0, 1.0);
            out.enc.cos_at(l, k) = std::clamp(cv, -1.0, 1.0);
        }
    }
    return out;
}

}  // namespace eipe
