#include "placebench/render.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "placebench/rng.hpp"

namespace placebench {

RaycastHit trace_ray(const SceneSpec& scene, const Vec3& origin, const Vec3& dir,
                     double max_t) {
  const double res = scene.resolution();
  const double rel[3] = {origin.x - scene.origin().x, origin.y - scene.origin().y,
                         origin.z - scene.origin().z};
  const double d[3] = {dir.x, dir.y, dir.z};
  int pos[3] = {static_cast<int>(std::floor(rel[0] / res)),
                static_cast<int>(std::floor(rel[1] / res)),
                static_cast<int>(std::floor(rel[2] / res))};
  const int n[3] = {scene.nx(), scene.ny(), scene.nz()};

  int step[3];
  double tmax[3], tdelta[3];
  constexpr double inf = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 3; ++a) {
    if (d[a] > 0) {
      step[a] = 1;
      tmax[a] = ((pos[a] + 1) * res - rel[a]) / d[a];
      tdelta[a] = res / d[a];
    } else if (d[a] < 0) {
      step[a] = -1;
      tmax[a] = (pos[a] * res - rel[a]) / d[a];
      tdelta[a] = -res / d[a];
    } else {
      step[a] = 0;
      tmax[a] = inf;
      tdelta[a] = inf;
    }
  }

  RaycastHit out;
  while (true) {
    int a = 0;
    if (tmax[1] < tmax[a]) a = 1;
    if (tmax[2] < tmax[a]) a = 2;
    double t = tmax[a];
    if (!(t <= max_t)) return out;  // left range (or all-infinite direction)
    pos[a] += step[a];
    if (pos[a] < 0 || pos[a] >= n[a]) return out;  // grid is convex; no re-entry
    tmax[a] += tdelta[a];
    int64_t idx = scene.idx(pos[0], pos[1], pos[2]);
    if (scene.occupied(idx)) {
      out.hit = true;
      out.t = t;
      out.cell = idx;
      return out;
    }
  }
}

namespace {

void validate_camera_cell(const SceneSpec& scene, const Vec3& origin) {
  Cell c = scene.cell_of_point(origin);
  if (!scene.in_bounds(c))
    throw std::invalid_argument("raycast: camera outside the scene grid");
  if (scene.occupied(c))
    throw std::invalid_argument("raycast: camera inside an occupied voxel");
}

}  // namespace

RenderView render_view(const SceneSpec& scene, const CameraModel& cam, int width,
                       int height, double max_range) {
  if (width <= 0 || height <= 0)
    throw std::invalid_argument("render: image size must be positive");
  validate_camera_cell(scene, cam.pose.trans);

  RenderView view;
  view.width = width;
  view.height = height;
  view.depth = DepthImage(width, height);
  view.labels.assign(static_cast<size_t>(width) * height, 0);
  view.instances.assign(static_cast<size_t>(width) * height, -1);
  view.hit_cells.assign(static_cast<size_t>(width) * height, -1);

  for (int v = 0; v < height; ++v) {
    for (int u = 0; u < width; ++u) {
      Vec3 dir = pixel_ray_dir(cam, u, v);
      RaycastHit hit = trace_ray(scene, cam.pose.trans, dir, max_range);
      if (!hit.hit) continue;
      size_t i = static_cast<size_t>(v) * width + u;
      view.depth.meters[i] = hit.t;
      view.labels[i] = scene.label_at(hit.cell);
      view.instances[i] = scene.instance_at(hit.cell);
      view.hit_cells[i] = hit.cell;
    }
  }
  return view;
}

DepthImage raycast_depth(const SceneSpec& scene, const CameraModel& cam, int width,
                         int height, double max_range) {
  return render_view(scene, cam, width, height, max_range).depth;
}

BinaryMask instance_mask(const RenderView& view, int instance_id) {
  BinaryMask m(view.width, view.height);
  for (size_t i = 0; i < view.instances.size(); ++i)
    m.bits()[i] = view.instances[i] == instance_id;
  return m;
}

BinaryMask label_mask(const RenderView& view, int16_t category) {
  BinaryMask m(view.width, view.height);
  for (size_t i = 0; i < view.labels.size(); ++i)
    m.bits()[i] = view.labels[i] == category;
  return m;
}

ImageRGB render_rgb(const SceneSpec& scene, const RenderView& view) {
  (void)scene;
  ImageRGB img(view.width, view.height, 24, 24, 28);
  for (int r = 0; r < view.height; ++r) {
    for (int c = 0; c < view.width; ++c) {
      int16_t lab = view.label_at(r, c);
      if (lab == 0) continue;
      uint64_t h = splitmix64(static_cast<uint64_t>(lab) * 0x9e37);
      img.set(r, c, static_cast<uint8_t>(64 + (h & 0x7f)),
              static_cast<uint8_t>(64 + ((h >> 8) & 0x7f)),
              static_cast<uint8_t>(64 + ((h >> 16) & 0x7f)));
    }
  }
  return img;
}

}  // namespace placebench
