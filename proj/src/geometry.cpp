// Copyright (c) the eipe authors.
// SPDX-License-Identifier: Apache-2.0

#include "eipe/geometry.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

#include "eipe/errors.hpp"

namespace eipe {

namespace {

constexpr double kPoseTol = 1e-12;

void check_rotation(const Mat3& R) {
    if (!R.finite()) throw std::invalid_argument("CameraPose: non-finite rotation");
    Mat3 g = R * R.transposed();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double want = i == j ? 1.0 : 0.0;
            if (std::fabs(g(i, j) - want) > kPoseTol)
                throw std::domain_error("CameraPose: R is not orthonormal");
        }
    if (std::fabs(R.det() - 1.0) > kPoseTol)
        throw std::domain_error("CameraPose: R is not a proper rotation");
}

}  // namespace

CameraPose::CameraPose(const Mat3& R, const Vec3& o, double omega) : R_(R), o_(o), omega_(omega) {
    check_rotation(R);
    if (!is_finite(o)) throw std::invalid_argument("CameraPose: non-finite origin");
    if (!std::isfinite(omega) || omega <= 0.0)
        throw std::domain_error("CameraPose: pixel footprint must be positive");
}

Frustum Frustum::from_vertices(const std::array<Vec3, 8>& v) {
    Frustum f;
    for (const Vec3& p : v)
        if (!is_finite(p)) throw std::invalid_argument("Frustum: non-finite vertex");
    f.v_ = v;
    return f;
}

Frustum Frustum::from_vertices(std::span<const double, 24> flat) {
    std::array<Vec3, 8> v;
    for (int i = 0; i < 8; ++i) v[i] = {flat[3 * i], flat[3 * i + 1], flat[3 * i + 2]};
    return from_vertices(v);
}

Frustum frustum_from_pixel(const CameraPose& pose, const Vec3& dir_cam, double t_near,
                           double t_far) {
    if (!is_finite(dir_cam)) throw std::invalid_argument("frustum_from_pixel: non-finite direction");
    if (std::fabs(dir_cam.z - 1.0) > 1e-12)
        throw std::domain_error("frustum_from_pixel: direction must have unit z component");
    if (!std::isfinite(t_near) || !std::isfinite(t_far))
        throw std::invalid_argument("frustum_from_pixel: non-finite ray extent");
    if (t_near < 0.0 || t_far <= t_near)
        throw std::domain_error("frustum_from_pixel: require 0 <= t_near < t_far");

    // Corner order (+,+), (+,-), (-,-), (-,+): counter-clockwise as seen from
    // the camera, which makes every face of the index table below outward.
    static constexpr double kCorner[4][2] = {{1, 1}, {1, -1}, {-1, -1}, {-1, 1}};
    Frustum f;
    double h = pose.omega() / 2.0;
    for (int face = 0; face < 2; ++face) {
        double t = face == 0 ? t_near : t_far;
        for (int c = 0; c < 4; ++c) {
            Vec3 d = {dir_cam.x + kCorner[c][0] * h, dir_cam.y + kCorner[c][1] * h, 1.0};
            f.v_[4 * face + c] = pose.origin() + t * (pose.rotation() * d);
        }
    }
    f.t_near_ = t_near;
    f.t_far_ = t_far;
    return f;
}

const std::array<std::array<int, 3>, 12> kSurfaceTriangles = {{
    {0, 1, 2}, {0, 2, 3},  // near face (normal toward the camera)
    {7, 6, 5}, {7, 5, 4},  // far face
    {0, 4, 5}, {0, 5, 1},  // +x side
    {1, 5, 6}, {1, 6, 2},  // -y side
    {2, 6, 7}, {2, 7, 3},  // -x side
    {3, 7, 4}, {3, 4, 0},  // +y side
}};

std::array<TriangleFace, 12> triangulate(const Frustum& f) {
    std::array<TriangleFace, 12> tris;
    for (std::size_t i = 0; i < 12; ++i) {
        const auto& t = kSurfaceTriangles[i];
        tris[i] = TriangleFace::from_points(f.vertex(t[0]), f.vertex(t[1]), f.vertex(t[2]));
    }
    return tris;
}

double volume(std::span<const TriangleFace> tris) {
    // V = (1/6) sum_T P0 . N over a closed outward surface.
    Compensated<long double> acc;
    for (const TriangleFace& t : tris)
        acc.add(static_cast<long double>(dot(t.p0, t.normal)));
    double v = static_cast<double>(acc.value() / 6.0L);
    if (!std::isfinite(v)) throw std::invalid_argument("volume: non-finite surface");
    if (v <= 0.0) throw OrientationError("volume: surface is not positively oriented");
    return v;
}

Vec3 centroid(std::span<const TriangleFace> tris) {
    // Integral of x_k over the region equals sum_T N_k * h2(x_k,0..2) / 24,
    // where h2 is the complete homogeneous symmetric polynomial of degree 2
    // of the triangle's k-coordinates (divergence theorem applied to x^2/2).
    Compensated<long double> vol6;
    Compensated<long double> first[3];
    for (const TriangleFace& t : tris) {
        vol6.add(static_cast<long double>(dot(t.p0, t.normal)));
        for (int k = 0; k < 3; ++k) {
            long double a = t.p0[k], b = t.p1[k], c = t.p2[k];
            long double h2 = a * a + b * b + c * c + a * b + a * c + b * c;
            first[k].add(t.normal[k] * h2);
        }
    }
    long double v = vol6.value() / 6.0L;
    if (!(v > 0.0L) || !std::isfinite(static_cast<double>(v)))
        throw OrientationError("centroid: surface is not positively oriented");
    return {static_cast<double>(first[0].value() / 24.0L / v),
            static_cast<double>(first[1].value() / 24.0L / v),
            static_cast<double>(first[2].value() / 24.0L / v)};
}

Vec3 contract_point(const Vec3& x) {
    if (!is_finite(x)) throw std::invalid_argument("contract_point: non-finite input");
    double r = norm(x);
    if (r <= 1.0) return x;
    return x * ((2.0 - 1.0 / r) / r);
}

Frustum contract_frustum(const Frustum& f) {
    std::array<Vec3, 8> v;
    for (int i = 0; i < 8; ++i) v[i] = contract_point(f.vertex(i));
    return Frustum::from_vertices(v);
}

namespace {

// Shortest decimal that round-trips to the same double.
void append_double(std::string& out, double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

}  // namespace

CameraPose parse_pose_record(std::string_view line) {
    std::array<double, 13> vals{};
    std::size_t pos = 0, count = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r'))
            ++pos;
        if (pos >= line.size()) break;
        if (count >= vals.size())
            throw std::invalid_argument("pose record: expected 13 numbers, got more");
        double v = 0;
        auto res = std::from_chars(line.data() + pos, line.data() + line.size(), v);
        if (res.ec != std::errc())
            throw std::invalid_argument("pose record: malformed number");
        vals[count++] = v;
        pos = static_cast<std::size_t>(res.ptr - line.data());
    }
    if (count != vals.size())
        throw std::invalid_argument("pose record: expected 13 numbers");
    Mat3 R;
    for (int i = 0; i < 9; ++i) R.m[i] = vals[i];
    return CameraPose(R, {vals[9], vals[10], vals[11]}, vals[12]);
}

std::string format_pose_record(const CameraPose& pose) {
    std::string out;
    for (int i = 0; i < 9; ++i) {
        append_double(out, pose.rotation().m[i]);
        out.push_back(' ');
    }
    for (int i = 0; i < 3; ++i) {
        append_double(out, pose.origin()[i]);
        out.push_back(' ');
    }
    append_double(out, pose.omega());
    return out;
}

}  // namespace eipe
