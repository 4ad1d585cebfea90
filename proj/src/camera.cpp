#include "placebench/camera.hpp"

#include <cmath>
#include <stdexcept>

namespace placebench {

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

Vec3 Vec3::normalized() const {
  double n = norm();
  if (n == 0) throw std::invalid_argument("normalized: zero vector");
  return {x / n, y / n, z / n};
}

Mat3 Mat3::from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
  Mat3 r;
  r.m[0] = c0.x; r.m[1] = c1.x; r.m[2] = c2.x;
  r.m[3] = c0.y; r.m[4] = c1.y; r.m[5] = c2.y;
  r.m[6] = c0.z; r.m[7] = c1.z; r.m[8] = c2.z;
  return r;
}

Mat3 Mat3::axis_angle(const Vec3& axis, double angle_rad) {
  Vec3 a = axis.normalized();
  double c = std::cos(angle_rad), s = std::sin(angle_rad), t = 1.0 - c;
  Mat3 r;
  r.m[0] = t * a.x * a.x + c;
  r.m[1] = t * a.x * a.y - s * a.z;
  r.m[2] = t * a.x * a.z + s * a.y;
  r.m[3] = t * a.x * a.y + s * a.z;
  r.m[4] = t * a.y * a.y + c;
  r.m[5] = t * a.y * a.z - s * a.x;
  r.m[6] = t * a.x * a.z - s * a.y;
  r.m[7] = t * a.y * a.z + s * a.x;
  r.m[8] = t * a.z * a.z + c;
  return r;
}

Mat3 Mat3::operator*(const Mat3& o) const {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0;
      for (int k = 0; k < 3; ++k) s += m[i * 3 + k] * o.m[k * 3 + j];
      r.m[i * 3 + j] = s;
    }
  return r;
}

Mat3 Mat3::transpose() const {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i * 3 + j] = m[j * 3 + i];
  return r;
}

double Mat3::det() const {
  return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

bool Pose::rotation_valid(double tol) const {
  Mat3 should_be_id = rot * rot.transpose();
  Mat3 id = Mat3::identity();
  for (int i = 0; i < 9; ++i)
    if (std::abs(should_be_id.m[i] - id.m[i]) > tol) return false;
  return std::abs(rot.det() - 1.0) <= tol;
}

CameraModel make_camera(double fx, double fy, double cx, double cy, Pose pose) {
  if (fx <= 0 || fy <= 0)
    throw std::invalid_argument("camera: focal lengths must be positive");
  return CameraModel{fx, fy, cx, cy, pose};
}

CameraModel camera_from_fov(int width, int height, double hfov_deg, Pose pose) {
  if (width <= 0 || height <= 0)
    throw std::invalid_argument("camera_from_fov: bad image size");
  double f = (width / 2.0) / std::tan(hfov_deg * M_PI / 180.0 / 2.0);
  return make_camera(f, f, (width - 1) / 2.0, (height - 1) / 2.0, pose);
}

bool depth_valid(double d) { return std::isfinite(d) && d > 0.0; }

PointCloud backproject(const DepthImage& depth, const CameraModel& cam,
                       const BinaryMask* mask) {
  if (mask && (mask->width() != depth.width || mask->height() != depth.height))
    throw std::invalid_argument("backproject: mask dimensions mismatch");
  PointCloud pc;
  for (int v = 0; v < depth.height; ++v) {
    for (int u = 0; u < depth.width; ++u) {
      if (mask && !mask->at(v, u)) continue;
      double d = depth.at(v, u);
      if (!depth_valid(d)) continue;
      Vec3 p_cam{(u - cam.cx) * d / cam.fx, (v - cam.cy) * d / cam.fy, d};
      pc.points.push_back(cam.pose.to_world(p_cam));
      pc.labels.push_back(v * depth.width + u);
    }
  }
  return pc;
}

ProjectedPixel project_point(const CameraModel& cam, const Vec3& world) {
  Vec3 p = cam.pose.to_local(world);
  ProjectedPixel out;
  out.depth = p.z;
  out.in_front = p.z > 0;
  if (out.in_front) {
    out.u = p.x * cam.fx / p.z + cam.cx;
    out.v = p.y * cam.fy / p.z + cam.cy;
  }
  return out;
}

Vec3 pixel_ray_dir(const CameraModel& cam, double u, double v) {
  Vec3 dir_cam{(u - cam.cx) / cam.fx, (v - cam.cy) / cam.fy, 1.0};
  return cam.pose.rot * dir_cam;
}

}  // namespace placebench
