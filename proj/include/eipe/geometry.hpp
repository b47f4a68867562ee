// Copyright (c) the eipe authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>

#include "eipe/vec.hpp"

namespace eipe {

// Camera pose with a square pixel footprint: R maps camera axes to world axes,
// o is the center of projection, omega is the pixel side length on the plane
// one unit along the camera z axis.
class CameraPose {
  public:
    CameraPose(const Mat3& R, const Vec3& o, double omega);

    const Mat3& rotation() const { return R_; }
    const Vec3& origin() const { return o_; }
    double omega() const { return omega_; }

  private:
    Mat3 R_;
    Vec3 o_;
    double omega_;
};

// One triangle of an oriented surface.  normal is the outward area vector
// (p1-p0)x(p2-p0); its length is twice the triangle area.
struct TriangleFace {
    Vec3 p0, p1, p2;
    Vec3 normal;

    static TriangleFace from_points(const Vec3& a, const Vec3& b, const Vec3& c) {
        return {a, b, c, cross(b - a, c - a)};
    }
};

// Pyramidal frustum spanned by a pixel: vertices 0-3 are the near face, 4-7
// the far face, both in the corner order (+,+), (+,-), (-,-), (-,+) of the
// pixel offsets, which reads counter-clockwise from the camera.
class Frustum {
  public:
    static Frustum from_vertices(const std::array<Vec3, 8>& v);
    static Frustum from_vertices(std::span<const double, 24> flat);

    const std::array<Vec3, 8>& vertices() const { return v_; }
    const Vec3& vertex(int i) const { return v_[i]; }

    // Ray extent; zero when the frustum was built from raw vertices.
    double t_near() const { return t_near_; }
    double t_far() const { return t_far_; }

  private:
    friend Frustum frustum_from_pixel(const CameraPose&, const Vec3&, double, double);
    std::array<Vec3, 8> v_{};
    double t_near_ = 0, t_far_ = 0;
};

// v_i = o + t * R * (dir_cam + corner_offset) for t in {t_near, t_far}; the
// pixel is centered on dir_cam (a camera-space direction with dir.z = 1) with
// corner offsets (+-omega/2, +-omega/2, 0).
Frustum frustum_from_pixel(const CameraPose& pose, const Vec3& dir_cam, double t_near,
                           double t_far);

// Vertex-index triples of the 12-triangle closed surface (2 per quad face:
// near, far, and the four sides), wound so every normal points outward.
extern const std::array<std::array<int, 3>, 12> kSurfaceTriangles;

std::array<TriangleFace, 12> triangulate(const Frustum& f);

// Volume and centroid of the region bounded by a closed outward-oriented
// triangulated surface (divergence theorem; exact for polyhedra).
double volume(std::span<const TriangleFace> tris);
Vec3 centroid(std::span<const TriangleFace> tris);

// Scene contraction: identity inside the unit ball, (2 - 1/|x|) * x/|x|
// outside; maps all of space into the ball of radius 2.
Vec3 contract_point(const Vec3& x);
Frustum contract_frustum(const Frustum& f);

// One pose per line as 13 whitespace-separated numbers: the 9 entries of R in
// row-major order, then o, then omega.  Formatting uses shortest
// round-trippable decimals, so format/parse is bit-exact.
CameraPose parse_pose_record(std::string_view line);
std::string format_pose_record(const CameraPose& pose);

}  // namespace eipe
