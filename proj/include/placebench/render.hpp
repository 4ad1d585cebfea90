#pragma once

// Voxel-grid raycasting (DDA traversal) producing depth, semantic label and
// instance-id images from a camera.

#include <vector>

#include "placebench/image.hpp"
#include "placebench/scene.hpp"

namespace placebench {

struct RaycastHit {
  bool hit = false;
  double t = 0;        // camera-frame depth of the entry point
  int64_t cell = -1;   // flat index of the struck voxel
};

// March from `origin` along `dir` (parameterized so t equals camera depth)
// until the first occupied voxel. The origin must lie in a free, in-bounds
// cell.
RaycastHit trace_ray(const SceneSpec& scene, const Vec3& origin, const Vec3& dir,
                     double max_t);

struct RenderView {
  int width = 0, height = 0;
  DepthImage depth;                // 0 where no hit within range
  std::vector<int16_t> labels;     // category per pixel, 0 = background
  std::vector<int32_t> instances;  // instance id per pixel, -1 = none
  std::vector<int64_t> hit_cells;  // struck voxel per pixel, -1 = none

  int16_t label_at(int row, int col) const {
    return labels[static_cast<size_t>(row) * width + col];
  }
  int32_t instance_at(int row, int col) const {
    return instances[static_cast<size_t>(row) * width + col];
  }
  int64_t cell_at(int row, int col) const {
    return hit_cells[static_cast<size_t>(row) * width + col];
  }
};

// Per-pixel distance to the first occupied voxel; max-range pixels invalid (0).
DepthImage raycast_depth(const SceneSpec& scene, const CameraModel& cam, int width,
                         int height, double max_range = 20.0);

// Depth plus first-hit labels and instance ids from a single traversal.
RenderView render_view(const SceneSpec& scene, const CameraModel& cam, int width,
                       int height, double max_range = 20.0);

BinaryMask instance_mask(const RenderView& view, int instance_id);
BinaryMask label_mask(const RenderView& view, int16_t category);

// Flat per-category colors for RGB exports.
ImageRGB render_rgb(const SceneSpec& scene, const RenderView& view);

}  // namespace placebench
