#pragma once

// Camera viewpoint sampling around object instances: polar candidates at
// fixed radii and angles, aimed at the object's centroid, filtered by free
// space and minimum frame coverage.

#include <vector>

#include "placebench/render.hpp"
#include "placebench/scene.hpp"

namespace placebench {

struct ViewpointParams {
  std::vector<double> radii = {0.5, 1.0, 1.5, 2.0};
  double angle_step_deg = 10.0;
  double min_coverage = 0.05;  // object pixels / frame pixels
  int width = 128;
  int height = 96;
  double hfov_deg = 58.0;
  double max_range = 20.0;
};

// All (radius, angle) candidates, unfiltered: cameras on horizontal circles
// around the centroid, principal axis through it.
std::vector<CameraModel> viewpoint_candidates(const SceneSpec& scene,
                                              const Instance& obj,
                                              const ViewpointParams& params = {});

// Candidates whose position is free space and whose rendered view shows the
// object covering at least min_coverage of the frame.
std::vector<CameraModel> sample_viewpoints(const SceneSpec& scene,
                                           const Instance& obj,
                                           const ViewpointParams& params = {});

// Pixels where the instance is the first hit; the ground-truth mask for a
// with/without-object render pair.
BinaryMask visible_instance_mask(const SceneSpec& scene, int instance_id,
                                 const CameraModel& cam, int width, int height,
                                 double max_range = 20.0);

}  // namespace placebench
