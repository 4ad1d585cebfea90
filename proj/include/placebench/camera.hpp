#pragma once

// Minimal 3D linear algebra, pinhole camera model and depth backprojection.

#include <cstdint>
#include <vector>

#include "placebench/mask.hpp"

namespace placebench {

struct Vec3 {
  double x = 0, y = 0, z = 0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const;
  Vec3 normalized() const;
};

// Row-major 3x3 matrix.
struct Mat3 {
  double m[9] = {1, 0, 0, 0, 1, 0, 0, 0, 1};

  static Mat3 identity() { return {}; }
  static Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2);
  static Mat3 axis_angle(const Vec3& axis, double angle_rad);

  Vec3 operator*(const Vec3& v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
            m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
  }
  Mat3 operator*(const Mat3& o) const;
  Mat3 transpose() const;
  double det() const;
};

// Rigid transform, camera frame to world frame.
struct Pose {
  Mat3 rot;
  Vec3 trans;

  Vec3 to_world(const Vec3& p_cam) const { return rot * p_cam + trans; }
  Vec3 to_local(const Vec3& p_world) const {
    return rot.transpose() * (p_world - trans);
  }
  // Orthonormal with det +1, within tol.
  bool rotation_valid(double tol = 1e-9) const;
};

// Pinhole intrinsics plus pose. Camera frame: +x right, +y down, +z forward.
struct CameraModel {
  double fx = 1, fy = 1, cx = 0, cy = 0;
  Pose pose;
};

CameraModel make_camera(double fx, double fy, double cx, double cy, Pose pose);

// Intrinsics from a horizontal field of view, square pixels, principal point
// at the image center.
CameraModel camera_from_fov(int width, int height, double hfov_deg, Pose pose);

struct PointCloud {
  std::vector<Vec3> points;
  std::vector<int32_t> labels;  // optional; empty or one per point

  bool has_labels() const { return !labels.empty(); }
  size_t size() const { return points.size(); }
};

// Depth in meters; values <= 0 or non-finite are invalid.
struct DepthImage {
  int width = 0;
  int height = 0;
  std::vector<double> meters;

  DepthImage() = default;
  DepthImage(int w, int h) : width(w), height(h), meters(static_cast<size_t>(w) * h, 0.0) {}
  double at(int row, int col) const { return meters[static_cast<size_t>(row) * width + col]; }
  void set(int row, int col, double v) { meters[static_cast<size_t>(row) * width + col] = v; }
};

bool depth_valid(double d);

// Pinhole backprojection of valid depth pixels into world coordinates:
// x=(u-cx)*d/fx, y=(v-cy)*d/fy, z=d in the camera frame, then posed. When a
// mask is given only set pixels are lifted; labels carry the flat pixel index.
PointCloud backproject(const DepthImage& depth, const CameraModel& cam,
                       const BinaryMask* mask = nullptr);

struct ProjectedPixel {
  double u = 0, v = 0;  // continuous pixel coordinates (col, row)
  double depth = 0;     // camera-frame z
  bool in_front = false;
};

ProjectedPixel project_point(const CameraModel& cam, const Vec3& world);

// World-frame ray direction for pixel (u, v), scaled so that advancing the
// parameter by t moves the camera-frame z coordinate by t.
Vec3 pixel_ray_dir(const CameraModel& cam, double u, double v);

}  // namespace placebench
