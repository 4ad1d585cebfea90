#include "placebench/agent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace placebench {

const char* nav_action_name(NavAction a) {
  switch (a) {
    case NavAction::MoveForward: return "move_forward";
    case NavAction::TurnLeft: return "turn_left";
    case NavAction::TurnRight: return "turn_right";
    case NavAction::LookUp: return "look_up";
    case NavAction::LookDown: return "look_down";
  }
  return "?";
}

double normalize_heading(double deg) {
  double h = std::fmod(deg, 360.0);
  if (h < 0) h += 360.0;
  return h;
}

double heading_delta(double from_deg, double to_deg) {
  double d = std::fmod(to_deg - from_deg, 360.0);
  if (d > 180.0) d -= 360.0;
  if (d <= -180.0) d += 360.0;
  return d;
}

NavGrid NavGrid::from_scene(const SceneSpec& scene, const AgentConfig& cfg) {
  NavGrid g;
  g.nx_ = scene.nx();
  g.ny_ = scene.ny();
  g.res_ = scene.resolution();
  g.ox_ = scene.origin().x;
  g.oy_ = scene.origin().y;
  g.blocked_.assign(static_cast<size_t>(g.nx_) * g.ny_, 0);

  int z_top = std::min(scene.nz() - 1,
                       static_cast<int>(std::floor(cfg.obstacle_max_z / g.res_)));
  for (int y = 0; y < g.ny_; ++y) {
    for (int x = 0; x < g.nx_; ++x) {
      // ground layer (z = 0) is traversable floor
      for (int z = 1; z <= z_top; ++z) {
        if (scene.occupied(scene.idx(x, y, z))) {
          g.blocked_[static_cast<size_t>(y) * g.nx_ + x] = 1;
          break;
        }
      }
    }
  }
  return g;
}

Cell2 NavGrid::cell_of(double wx, double wy) const {
  return Cell2{static_cast<int>(std::floor((wx - ox_) / res_)),
               static_cast<int>(std::floor((wy - oy_) / res_))};
}

void NavGrid::cell_center(const Cell2& c, double& wx, double& wy) const {
  wx = ox_ + (c.x + 0.5) * res_;
  wy = oy_ + (c.y + 0.5) * res_;
}

double NavGrid::point_cell_distance(double wx, double wy, const Cell2& c) const {
  double lox = ox_ + c.x * res_, hix = lox + res_;
  double loy = oy_ + c.y * res_, hiy = loy + res_;
  double dx = std::max({lox - wx, 0.0, wx - hix});
  double dy = std::max({loy - wy, 0.0, wy - hiy});
  return std::sqrt(dx * dx + dy * dy);
}

bool NavGrid::disc_collides(double wx, double wy, double radius) const {
  Cell2 lo = cell_of(wx - radius, wy - radius);
  Cell2 hi = cell_of(wx + radius, wy + radius);
  for (int y = lo.y; y <= hi.y; ++y) {
    for (int x = lo.x; x <= hi.x; ++x) {
      Cell2 c{x, y};
      if (!in_bounds(c)) return true;  // leaving the grid counts as contact
      if (!blocked(c)) continue;
      if (point_cell_distance(wx, wy, c) < radius) return true;
    }
  }
  return false;
}

std::vector<uint8_t> NavGrid::inflate(double radius) const {
  std::vector<uint8_t> navigable(blocked_.size(), 0);
  for (int y = 0; y < ny_; ++y) {
    for (int x = 0; x < nx_; ++x) {
      double wx, wy;
      cell_center(Cell2{x, y}, wx, wy);
      navigable[static_cast<size_t>(y) * nx_ + x] = !disc_collides(wx, wy, radius);
    }
  }
  return navigable;
}

namespace {

StepResult step_impl(const NavGrid& grid, const AgentState& state, NavAction a,
                     const AgentConfig& cfg) {
  StepResult out{state, false};
  switch (a) {
    case NavAction::TurnLeft:
      out.state.heading_deg = normalize_heading(state.heading_deg + cfg.turn_deg);
      return out;
    case NavAction::TurnRight:
      out.state.heading_deg = normalize_heading(state.heading_deg - cfg.turn_deg);
      return out;
    case NavAction::LookUp:
      out.state.tilt_deg =
          std::min(state.tilt_deg + cfg.look_deg, cfg.max_tilt_deg);
      return out;
    case NavAction::LookDown:
      out.state.tilt_deg =
          std::max(state.tilt_deg - cfg.look_deg, cfg.min_tilt_deg);
      return out;
    case NavAction::MoveForward: {
      double rad = state.heading_deg * M_PI / 180.0;
      double dx = std::cos(rad), dy = std::sin(rad);
      int sweep_steps =
          std::max(2, static_cast<int>(std::ceil(cfg.forward_step / (grid.resolution() / 2))));
      for (int i = 1; i <= sweep_steps; ++i) {
        double t = cfg.forward_step * i / sweep_steps;
        if (grid.disc_collides(state.x + dx * t, state.y + dy * t, cfg.radius)) {
          out.collided = true;
          return out;  // state unchanged
        }
      }
      out.state.x = state.x + dx * cfg.forward_step;
      out.state.y = state.y + dy * cfg.forward_step;
      return out;
    }
  }
  return out;
}

}  // namespace

StepResult step_agent(const NavGrid& grid, const AgentState& state, NavAction a,
                      const AgentConfig& cfg) {
  return step_impl(grid, state, a, cfg);
}

StepResult step_agent(const SceneSpec& scene, const AgentState& state, NavAction a,
                      const AgentConfig& cfg) {
  return step_impl(NavGrid::from_scene(scene, cfg), state, a, cfg);
}

Mat3 look_rotation(const Vec3& forward, const Vec3& world_up) {
  Vec3 f = forward.normalized();
  Vec3 r = f.cross(world_up);
  if (r.norm() < 1e-12) r = Vec3{1, 0, 0};  // looking straight up/down
  r = r.normalized();
  Vec3 d = f.cross(r);  // camera down
  // columns are camera axes expressed in world coordinates
  return Mat3::from_columns(r, d, f);
}

CameraModel agent_camera(const AgentState& state, const AgentConfig& cfg, int width,
                         int height, double hfov_deg) {
  double th = state.heading_deg * M_PI / 180.0;
  double ph = state.tilt_deg * M_PI / 180.0;
  Vec3 forward{std::cos(th) * std::cos(ph), std::sin(th) * std::cos(ph),
               std::sin(ph)};
  Vec3 right{std::sin(th), -std::cos(th), 0};
  Vec3 down = forward.cross(right);
  Pose pose{Mat3::from_columns(right, down, forward),
            Vec3{state.x, state.y, cfg.camera_height}};
  return camera_from_fov(width, height, hfov_deg, pose);
}

}  // namespace placebench
