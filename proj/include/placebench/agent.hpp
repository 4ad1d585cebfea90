#pragma once

// Discrete agent embodiment: pose state, fixed-magnitude navigation actions,
// footprint collision against the scene, and the head camera model.

#include <optional>

#include "placebench/render.hpp"
#include "placebench/scene.hpp"

namespace placebench {

enum class NavAction { MoveForward, TurnLeft, TurnRight, LookUp, LookDown };

const char* nav_action_name(NavAction a);

struct AgentConfig {
  double forward_step = 0.25;  // meters
  double turn_deg = 30.0;
  double look_deg = 30.0;
  double radius = 0.17;        // base footprint radius
  double camera_height = 1.31;
  double min_tilt_deg = -90.0;
  double max_tilt_deg = 30.0;
  double obstacle_max_z = 1.5;  // voxels above this height do not block the base
};

struct AgentState {
  double x = 0, y = 0;
  double heading_deg = 0;  // [0, 360)
  double tilt_deg = 0;
  std::optional<int> held_instance;
};

struct StepResult {
  AgentState state;
  bool collided = false;
};

struct Cell2 {
  int x = 0, y = 0;
  friend bool operator==(const Cell2&, const Cell2&) = default;
};

// Top-down traversability derived from the scene: a column blocks the base if
// any voxel above the ground layer and below obstacle_max_z is occupied.
class NavGrid {
 public:
  NavGrid() = default;
  static NavGrid from_scene(const SceneSpec& scene, const AgentConfig& cfg);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double resolution() const { return res_; }

  bool in_bounds(const Cell2& c) const {
    return c.x >= 0 && c.x < nx_ && c.y >= 0 && c.y < ny_;
  }
  bool blocked(const Cell2& c) const {
    return blocked_[static_cast<size_t>(c.y) * nx_ + c.x] != 0;
  }
  Cell2 cell_of(double wx, double wy) const;
  // center of a cell in world coordinates
  void cell_center(const Cell2& c, double& wx, double& wy) const;
  // distance from a point to the closed cell rectangle
  double point_cell_distance(double wx, double wy, const Cell2& c) const;

  // true if a disc at (wx, wy) overlaps any blocked cell or leaves the grid
  bool disc_collides(double wx, double wy, double radius) const;

  // per-cell traversability for a disc of the given radius centered on the
  // cell center
  std::vector<uint8_t> inflate(double radius) const;

 private:
  int nx_ = 0, ny_ = 0;
  double res_ = 0.05;
  double ox_ = 0, oy_ = 0;
  std::vector<uint8_t> blocked_;
};

// Forward motion sweeps the base footprint and leaves the state unchanged on
// contact; turns and looks update angles exactly.
StepResult step_agent(const SceneSpec& scene, const AgentState& state, NavAction a,
                      const AgentConfig& cfg);
StepResult step_agent(const NavGrid& grid, const AgentState& state, NavAction a,
                      const AgentConfig& cfg);

// Head camera at the agent's pose. Camera z points along the heading,
// pitched by the tilt.
CameraModel agent_camera(const AgentState& state, const AgentConfig& cfg, int width,
                         int height, double hfov_deg);

// Rotation whose camera axes are x=right, y=down, z=forward.
Mat3 look_rotation(const Vec3& forward, const Vec3& world_up = {0, 0, 1});

double normalize_heading(double deg);  // wrap into [0, 360)
double heading_delta(double from_deg, double to_deg);  // signed, (-180, 180]

}  // namespace placebench
