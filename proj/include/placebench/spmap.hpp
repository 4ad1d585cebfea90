#pragma once

// Top-down semantic placement map: accumulated SP evidence from thresholded,
// backprojected and height-collapsed predictions, plus explored/occupied
// bookkeeping for frontier exploration.

#include <optional>
#include <vector>

#include "placebench/agent.hpp"
#include "placebench/modelmath.hpp"
#include "placebench/scene.hpp"

namespace placebench {

struct SPMap2D {
  int nx = 0, ny = 0;
  int bin_nz = 0;  // height bins used when accumulating evidence
  double resolution = 0.05;
  Vec3 origin;
  double inflate_radius = 0.17;
  std::vector<double> evidence;
  std::vector<uint8_t> explored;
  std::vector<uint8_t> occupied;
  std::vector<uint8_t> inflated;  // near an occupied cell, kept incrementally

  static SPMap2D from_scene(const SceneSpec& scene, double agent_radius);

  size_t idx(const Cell2& c) const { return static_cast<size_t>(c.y) * nx + c.x; }
  bool in_bounds(const Cell2& c) const {
    return c.x >= 0 && c.x < nx && c.y >= 0 && c.y < ny;
  }
  Cell2 cell_of(double wx, double wy) const;
  void cell_center(const Cell2& c, double& wx, double& wy) const;

  void mark_occupied(const Cell2& c);
  // Paint the cell one footprint ahead of the agent as occupied; used when a
  // forward step collides with something the map has not seen.
  void mark_blocked_ahead(const AgentState& state, const AgentConfig& cfg);

  double total_evidence() const;
};

// Threshold the heatmap at tau, backproject the masked pixels, bin them into
// the map's voxel extents and height-collapse into evidence. The full depth
// image updates explored space and occupancy.
void update_sp_map(SPMap2D& map, const Heatmap& heat, const DepthImage& depth,
                   const CameraModel& cam, double tau,
                   double floor_height_cutoff = 0.15, double obstacle_max_z = 1.5);

struct Goal {
  Cell2 centroid;
  std::vector<Cell2> area;  // cells of the selected evidence component
};

// Largest-area connected component of positive evidence; its centroid cell is
// the navigation goal. Ties break to the component with the lowest
// (min row, min col).
std::optional<Goal> select_goal(const SPMap2D& map);

}  // namespace placebench
