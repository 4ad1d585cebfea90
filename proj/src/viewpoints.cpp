#include "placebench/viewpoints.hpp"

#include <cmath>

#include "placebench/agent.hpp"

namespace placebench {

std::vector<CameraModel> viewpoint_candidates(const SceneSpec& scene,
                                              const Instance& obj,
                                              const ViewpointParams& params) {
  (void)scene;  // candidates are pose-only; filtering happens in sample_viewpoints
  std::vector<CameraModel> out;
  int n_angles = static_cast<int>(std::round(360.0 / params.angle_step_deg));
  for (double r : params.radii) {
    for (int k = 0; k < n_angles; ++k) {
      double theta = k * params.angle_step_deg * M_PI / 180.0;
      Vec3 pos = obj.centroid + Vec3{r * std::cos(theta), r * std::sin(theta), 0};
      Vec3 forward = (obj.centroid - pos) * (1.0 / r);
      Pose pose{look_rotation(forward), pos};
      out.push_back(camera_from_fov(params.width, params.height, params.hfov_deg, pose));
    }
  }
  return out;
}

std::vector<CameraModel> sample_viewpoints(const SceneSpec& scene,
                                           const Instance& obj,
                                           const ViewpointParams& params) {
  std::vector<CameraModel> kept;
  for (const CameraModel& cam : viewpoint_candidates(scene, obj, params)) {
    Cell c = scene.cell_of_point(cam.pose.trans);
    if (!scene.in_bounds(c) || scene.occupied(c)) continue;
    RenderView view = render_view(scene, cam, params.width, params.height,
                                  params.max_range);
    int64_t covered = instance_mask(view, obj.id).area();
    double frac = static_cast<double>(covered) /
                  (static_cast<double>(params.width) * params.height);
    if (frac >= params.min_coverage) kept.push_back(cam);
  }
  return kept;
}

BinaryMask visible_instance_mask(const SceneSpec& scene, int instance_id,
                                 const CameraModel& cam, int width, int height,
                                 double max_range) {
  RenderView view = render_view(scene, cam, width, height, max_range);
  return instance_mask(view, instance_id);
}

}  // namespace placebench
