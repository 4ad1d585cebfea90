#include "placebench/policy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "placebench/render.hpp"

namespace placebench {

void PolicyConfig::validate() const {
  auto positive = [](double v, const char* what) {
    if (!(v > 0)) throw std::invalid_argument(std::string("policy config: ") + what +
                                              " must be positive");
  };
  positive(explore_steps, "explore_steps");
  positive(goal_reach_dist, "goal_reach_dist");
  positive(approach_dist, "approach_dist");
  positive(slab_height_tol, "slab_height_tol");
  positive(slab_xy_radius, "slab_xy_radius");
  positive(drop_height, "drop_height");
  positive(floor_height_cutoff, "floor_height_cutoff");
  positive(render_width, "render_width");
  positive(render_height, "render_height");
  positive(arm_min_reach, "arm_min_reach");
  positive(arm_max_reach, "arm_max_reach");
  positive(agent.forward_step, "forward_step");
  positive(agent.radius, "agent radius");
}

const char* failure_mode_name(FailureMode m) {
  switch (m) {
    case FailureMode::None: return "none";
    case FailureMode::NavFailure: return "nav_failure";
    case FailureMode::PlaceFailure: return "place_failure";
    case FailureMode::BadSpMask: return "bad_sp_mask";
  }
  return "?";
}

namespace {

double point_cell_gap(const SPMap2D& map, double wx, double wy, const Cell2& c,
                      double radius) {
  double lox = map.origin.x + c.x * map.resolution;
  double loy = map.origin.y + c.y * map.resolution;
  double dx = std::max({lox - wx, 0.0, wx - (lox + map.resolution)});
  double dy = std::max({loy - wy, 0.0, wy - (loy + map.resolution)});
  return std::max(0.0, std::sqrt(dx * dx + dy * dy) - radius);
}

double bearing_deg(double from_x, double from_y, double to_x, double to_y) {
  return normalize_heading(std::atan2(to_y - from_y, to_x - from_x) * 180.0 / M_PI);
}

NavAction turn_toward(double delta_deg) {
  return delta_deg >= 0 ? NavAction::TurnLeft : NavAction::TurnRight;
}

}  // namespace

double goal_gap(const SPMap2D& map, const AgentState& state, const Goal& goal,
                double agent_radius) {
  double best = std::numeric_limits<double>::infinity();
  for (const Cell2& c : goal.area)
    best = std::min(best, point_cell_gap(map, state.x, state.y, c, agent_radius));
  return best;
}

NavAction frontier_step(const SPMap2D& map, const AgentState& state,
                        const PolicyConfig& cfg, const NavGrid* scene_grid) {
  Cell2 start = map.cell_of(state.x, state.y);
  if (!map.in_bounds(start)) return NavAction::TurnLeft;

  auto traversable = [&](const Cell2& c) {
    return map.in_bounds(c) && map.explored[map.idx(c)] && !map.occupied[map.idx(c)] &&
           !map.inflated[map.idx(c)];
  };
  auto is_frontier = [&](const Cell2& c) {
    if (!map.explored[map.idx(c)] || map.occupied[map.idx(c)]) return false;
    static const int dx[] = {1, -1, 0, 0};
    static const int dy[] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      Cell2 q{c.x + dx[k], c.y + dy[k]};
      if (map.in_bounds(q) && !map.explored[map.idx(q)]) return true;
    }
    return false;
  };

  // breadth-first over traversable cells; all frontier cells at the first
  // depth where any appears are tie-broken by (row, col)
  std::vector<int32_t> parent(map.evidence.size(), -2);
  std::deque<Cell2> queue{start};
  parent[map.idx(start)] = -1;
  std::optional<Cell2> target;
  int found_depth = -1;
  std::vector<int> depth(map.evidence.size(), 0);
  while (!queue.empty()) {
    Cell2 c = queue.front();
    queue.pop_front();
    int d = depth[map.idx(c)];
    if (found_depth >= 0 && d > found_depth) break;
    if (is_frontier(c) && !(c == start)) {
      if (found_depth < 0) {
        found_depth = d;
        target = c;
      } else if (std::pair{c.y, c.x} < std::pair{target->y, target->x}) {
        target = c;
      }
      continue;
    }
    static const int dx[] = {1, -1, 0, 0};
    static const int dy[] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      Cell2 q{c.x + dx[k], c.y + dy[k]};
      if (!map.in_bounds(q) || parent[map.idx(q)] != -2) continue;
      bool expandable = traversable(q) || is_frontier(q);
      if (!expandable) continue;
      parent[map.idx(q)] = static_cast<int32_t>(map.idx(c));
      depth[map.idx(q)] = d + 1;
      queue.push_back(q);
    }
  }
  if (!target) return NavAction::TurnLeft;

  // walk the parent chain back to the step right after the start cell
  Cell2 step_cell = *target;
  while (parent[map.idx(step_cell)] != -1) {
    int32_t p = parent[map.idx(step_cell)];
    if (p == -1) break;
    Cell2 prev{static_cast<int>(p % map.nx), static_cast<int>(p / map.nx)};
    if (prev == start) break;
    step_cell = prev;
  }

  double wx, wy;
  map.cell_center(step_cell, wx, wy);
  double want = bearing_deg(state.x, state.y, wx, wy);
  double delta = heading_delta(state.heading_deg, want);
  if (std::abs(delta) > cfg.agent.turn_deg + 1e-9) return turn_toward(delta);

  if (scene_grid) {
    StepResult sim = step_agent(*scene_grid, state, NavAction::MoveForward, cfg.agent);
    if (sim.collided) return turn_toward(delta == 0 ? 1 : delta);
  }
  return NavAction::MoveForward;
}

namespace {

// Distance field (in cells) from a target set across navigable cells.
std::vector<int32_t> distance_field(int nx, int ny,
                                    const std::vector<uint8_t>& navigable,
                                    const std::vector<Cell2>& targets) {
  std::vector<int32_t> dist(static_cast<size_t>(nx) * ny, -1);
  std::deque<Cell2> queue;
  for (const Cell2& t : targets) {
    size_t i = static_cast<size_t>(t.y) * nx + t.x;
    if (navigable[i] && dist[i] < 0) {
      dist[i] = 0;
      queue.push_back(t);
    }
  }
  static const int dx[] = {1, -1, 0, 0};
  static const int dy[] = {0, 0, 1, -1};
  while (!queue.empty()) {
    Cell2 c = queue.front();
    queue.pop_front();
    int32_t d = dist[static_cast<size_t>(c.y) * nx + c.x];
    for (int k = 0; k < 4; ++k) {
      Cell2 q{c.x + dx[k], c.y + dy[k]};
      if (q.x < 0 || q.x >= nx || q.y < 0 || q.y >= ny) continue;
      size_t i = static_cast<size_t>(q.y) * nx + q.x;
      if (!navigable[i] || dist[i] >= 0) continue;
      dist[i] = d + 1;
      queue.push_back(q);
    }
  }
  return dist;
}

struct GapField {
  const SPMap2D* map;
  const Goal* goal;
  double radius;
  double operator()(const AgentState& s) const {
    return goal_gap(*map, s, *goal, radius);
  }
};

// Turn to the requested heading (shorter direction) and step forward once.
bool execute_heading_and_forward(const NavGrid& grid, AgentState& state,
                                 double target_heading, const PolicyConfig& cfg,
                                 int& steps, int budget) {
  while (std::abs(heading_delta(state.heading_deg, target_heading)) > 1e-6) {
    if (steps >= budget) return false;
    double delta = heading_delta(state.heading_deg, target_heading);
    state = step_agent(grid, state, turn_toward(delta), cfg.agent).state;
    ++steps;
  }
  if (steps >= budget) return false;
  StepResult r = step_agent(grid, state, NavAction::MoveForward, cfg.agent);
  ++steps;
  if (r.collided) return false;
  state = r.state;
  return true;
}

// One greedy refinement move: try every reachable heading and keep the
// forward step that shrinks the gap most.
bool local_descent_step(const NavGrid& grid, AgentState& state, const GapField& gap,
                        const PolicyConfig& cfg, int& steps, int budget) {
  double current = gap(state);
  double best_gap = current - 1e-9;
  std::optional<double> best_heading;
  int n_headings = static_cast<int>(std::round(360.0 / cfg.agent.turn_deg));
  for (int k = 0; k < n_headings; ++k) {
    AgentState trial = state;
    trial.heading_deg = normalize_heading(state.heading_deg + k * cfg.agent.turn_deg);
    StepResult sim = step_agent(grid, trial, NavAction::MoveForward, cfg.agent);
    if (sim.collided) continue;
    double g = gap(sim.state);
    if (g < best_gap) {
      best_gap = g;
      best_heading = trial.heading_deg;
    }
  }
  if (!best_heading) return false;
  return execute_heading_and_forward(grid, state, *best_heading, cfg, steps, budget);
}

}  // namespace

// Evidence sits on top of its receptacle, whose footprint the base can touch
// but never enter; the reach test therefore extends the goal area across the
// blocked cells supporting it (bounded, so adjacent walls are not swallowed).
static Goal expand_reach_area(const NavGrid& grid, const Goal& goal,
                              double max_expand_m) {
  Goal expanded = goal;
  int limit = static_cast<int>(std::ceil(max_expand_m / grid.resolution()));
  int min_x = goal.area.front().x, max_x = min_x;
  int min_y = goal.area.front().y, max_y = min_y;
  for (const Cell2& c : goal.area) {
    min_x = std::min(min_x, c.x);
    max_x = std::max(max_x, c.x);
    min_y = std::min(min_y, c.y);
    max_y = std::max(max_y, c.y);
  }
  std::vector<uint8_t> seen(static_cast<size_t>(grid.nx()) * grid.ny(), 0);
  std::vector<Cell2> stack;
  auto push = [&](const Cell2& c) {
    if (!grid.in_bounds(c)) return;
    size_t i = static_cast<size_t>(c.y) * grid.nx() + c.x;
    if (seen[i]) return;
    seen[i] = 1;
    if (c.x < min_x - limit || c.x > max_x + limit || c.y < min_y - limit ||
        c.y > max_y + limit)
      return;
    if (!grid.blocked(c)) return;
    stack.push_back(c);
    expanded.area.push_back(c);
  };
  for (const Cell2& c : goal.area) {
    if (grid.in_bounds(c)) seen[static_cast<size_t>(c.y) * grid.nx() + c.x] = 1;
    if (grid.in_bounds(c) && grid.blocked(c)) stack.push_back(c);
  }
  while (!stack.empty()) {
    Cell2 c = stack.back();
    stack.pop_back();
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx)
        if (dx || dy) push(Cell2{c.x + dx, c.y + dy});
  }
  return expanded;
}

NavOutcome navigate_to(const SceneSpec& scene, AgentState state, const Goal& goal,
                       double reach_dist, const PolicyConfig& cfg) {
  NavGrid grid = NavGrid::from_scene(scene, cfg.agent);
  std::vector<uint8_t> navigable = grid.inflate(cfg.agent.radius);
  SPMap2D frame = SPMap2D::from_scene(scene, cfg.agent.radius);  // geometry only
  Goal reach_goal = expand_reach_area(grid, goal, 1.0);
  GapField gap{&frame, &reach_goal, cfg.agent.radius};

  NavOutcome out;
  out.state = state;
  if (gap(state) <= reach_dist) {
    out.reached = true;
    return out;
  }

  // candidate stop cells: navigable, within reach of the goal area, and
  // connected to the agent; prefer the one closest to the goal centroid so
  // the stop pose faces the area rather than clipping a corner of it
  Cell2 start = grid.cell_of(state.x, state.y);
  std::vector<int32_t> from_agent =
      grid.in_bounds(start)
          ? distance_field(grid.nx(), grid.ny(), navigable, {start})
          : std::vector<int32_t>(navigable.size(), -1);
  double gcx, gcy;
  frame.cell_center(goal.centroid, gcx, gcy);

  std::optional<Cell2> target;
  double best_key = std::numeric_limits<double>::infinity();
  double best_gap_fallback = std::numeric_limits<double>::infinity();
  std::optional<Cell2> fallback;
  for (int y = 0; y < grid.ny(); ++y) {
    for (int x = 0; x < grid.nx(); ++x) {
      Cell2 c{x, y};
      size_t i = static_cast<size_t>(y) * grid.nx() + x;
      if (!navigable[i] || from_agent[i] < 0) continue;
      double wx, wy;
      grid.cell_center(c, wx, wy);
      AgentState probe;
      probe.x = wx;
      probe.y = wy;
      double g = gap(probe);
      if (g <= reach_dist) {
        double key = std::hypot(wx - gcx, wy - gcy);
        if (key < best_key - 1e-12) {
          best_key = key;
          target = c;
        }
      } else if (g < best_gap_fallback - 1e-12) {
        best_gap_fallback = g;
        fallback = c;
      }
    }
  }
  if (!target) target = fallback;  // get as close as the map allows
  if (!target) return out;

  std::vector<int32_t> dist =
      distance_field(grid.nx(), grid.ny(), navigable, {*target});
  int32_t start_dist = grid.in_bounds(start)
                           ? dist[static_cast<size_t>(start.y) * grid.nx() + start.x]
                           : -1;
  int budget = std::max(
      cfg.nav_min_budget,
      static_cast<int>(cfg.nav_budget_factor *
                       (std::max(start_dist, 1) * grid.resolution() /
                            cfg.agent.forward_step +
                        12)));

  int no_progress = 0;
  double best_seen = gap(state);
  while (out.steps < budget) {
    if (gap(state) <= reach_dist) {
      out.reached = true;
      break;
    }
    Cell2 here = grid.cell_of(state.x, state.y);
    int32_t here_dist = grid.in_bounds(here)
                            ? dist[static_cast<size_t>(here.y) * grid.nx() + here.x]
                            : -1;

    bool advanced = false;
    if (here_dist > 0) {
      // descend the distance field
      static const int dx[] = {1, -1, 0, 0, 1, 1, -1, -1};
      static const int dy[] = {0, 0, 1, -1, 1, -1, 1, -1};
      Cell2 next = here;
      int32_t next_dist = here_dist;
      for (int k = 0; k < 8; ++k) {
        Cell2 q{here.x + dx[k], here.y + dy[k]};
        if (!grid.in_bounds(q)) continue;
        int32_t qd = dist[static_cast<size_t>(q.y) * grid.nx() + q.x];
        if (qd >= 0 && qd < next_dist) {
          next_dist = qd;
          next = q;
        }
      }
      if (!(next == here)) {
        double wx, wy;
        grid.cell_center(next, wx, wy);
        double want = bearing_deg(state.x, state.y, wx, wy);
        double delta = heading_delta(state.heading_deg, want);
        if (std::abs(delta) > cfg.agent.turn_deg + 1e-9) {
          state = step_agent(grid, state, turn_toward(delta), cfg.agent).state;
          ++out.steps;
          advanced = true;
        } else {
          StepResult r = step_agent(grid, state, NavAction::MoveForward, cfg.agent);
          ++out.steps;
          if (!r.collided) {
            state = r.state;
            advanced = true;
          }
        }
      }
    }
    if (!advanced) {
      if (!local_descent_step(grid, state, gap, cfg, out.steps, budget)) break;
    }

    double g = gap(state);
    if (g < best_seen - 1e-6) {
      best_seen = g;
      no_progress = 0;
    } else if (++no_progress > 30) {
      // try pure refinement before giving up
      if (!local_descent_step(grid, state, gap, cfg, out.steps, budget)) break;
      no_progress = 0;
    }
  }
  if (gap(state) <= reach_dist) out.reached = true;
  out.state = state;
  return out;
}

namespace {

PointCloud filtered_sp_points(const SceneSpec& scene, const RenderView& view,
                              const Heatmap& heat, const CameraModel& cam,
                              const PolicyConfig& cfg) {
  BinaryMask mask = threshold_heatmap(heat, cfg.sp_threshold);
  PointCloud pts = backproject(view.depth, cam, &mask);
  PointCloud keep;
  double floor_z = scene.origin().z + cfg.floor_height_cutoff;
  for (const Vec3& p : pts.points)
    if (p.z > floor_z) keep.points.push_back(p);
  return keep;
}

}  // namespace

std::optional<ScanResult> panoramic_place_scan(const SceneSpec& scene,
                                               AgentState state,
                                               Predictor& predictor,
                                               const std::string& category,
                                               const PolicyConfig& cfg) {
  NavGrid grid = NavGrid::from_scene(scene, cfg.agent);
  int steps = 0;
  int n_turns = static_cast<int>(std::round(360.0 / cfg.agent.turn_deg));
  for (int i = 0; i < n_turns; ++i) {
    CameraModel cam = agent_camera(state, cfg.agent, cfg.render_width,
                                   cfg.render_height, cfg.hfov_deg);
    RenderView view = render_view(scene, cam, cfg.render_width, cfg.render_height,
                                  cfg.max_range);
    ViewObservation obs{&scene, cam, view, ""};
    Heatmap heat = predictor.predict(obs, category);
    PointCloud pts = filtered_sp_points(scene, view, heat, cam, cfg);
    if (!pts.points.empty()) {
      ScanResult result;
      result.points = std::move(pts);
      result.depth = std::move(view.depth);
      result.cam = cam;
      result.state = state;
      result.steps = steps;
      return result;
    }
    state = step_agent(grid, state, NavAction::TurnLeft, cfg.agent).state;
    ++steps;
  }
  return std::nullopt;
}

int slab_score(const PointCloud& points, size_t i, const PolicyConfig& cfg) {
  if (i >= points.points.size())
    throw std::invalid_argument("slab_score: index out of range");
  const Vec3& p = points.points[i];
  int count = 0;
  for (const Vec3& q : points.points) {
    double dx = q.x - p.x, dy = q.y - p.y;
    if (dx * dx + dy * dy <= cfg.slab_xy_radius * cfg.slab_xy_radius &&
        std::abs(q.z - p.z) <= cfg.slab_height_tol)
      ++count;
  }
  return count;
}

namespace {

// Hash-grid accelerated slab scores for every point. Buckets are keyed by
// integer grid coordinates; queries walk the 3x3 neighborhood in integer
// space so boundary points never miss a bucket.
std::vector<int> slab_scores_all(const PointCloud& points, const PolicyConfig& cfg) {
  const double cell = cfg.slab_xy_radius;
  auto grid_of = [&](double v) { return static_cast<int64_t>(std::floor(v / cell)); };
  auto key = [](int64_t gx, int64_t gy) {
    return gx * 73856093LL ^ gy * 19349663LL;
  };
  std::unordered_map<int64_t, std::vector<size_t>> buckets;
  for (size_t i = 0; i < points.points.size(); ++i)
    buckets[key(grid_of(points.points[i].x), grid_of(points.points[i].y))]
        .push_back(i);

  std::vector<int> scores(points.points.size(), 0);
  for (size_t i = 0; i < points.points.size(); ++i) {
    const Vec3& p = points.points[i];
    int64_t gx0 = grid_of(p.x), gy0 = grid_of(p.y);
    int count = 0;
    for (int dgy = -1; dgy <= 1; ++dgy) {
      for (int dgx = -1; dgx <= 1; ++dgx) {
        auto it = buckets.find(key(gx0 + dgx, gy0 + dgy));
        if (it == buckets.end()) continue;
        for (size_t j : it->second) {
          const Vec3& q = points.points[j];
          double dx = q.x - p.x, dy = q.y - p.y;
          if (dx * dx + dy * dy <= cell * cell &&
              std::abs(q.z - p.z) <= cfg.slab_height_tol)
            ++count;
        }
      }
    }
    scores[i] = count;
  }
  return scores;
}

}  // namespace

Vec3 choose_placement(const PointCloud& points, const PolicyConfig& cfg) {
  if (points.points.empty())
    throw std::invalid_argument("choose_placement: empty point cloud");
  std::vector<int> scores = slab_scores_all(points, cfg);
  int best_score = *std::max_element(scores.begin(), scores.end());

  Vec3 centroid{0, 0, 0};
  int n = 0;
  for (size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] == best_score) {
      centroid = centroid + points.points[i];
      ++n;
    }
  }
  centroid = centroid * (1.0 / n);

  size_t best = points.points.size();
  double best_dist = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] != best_score) continue;
    double d = (points.points[i] - centroid).norm();
    if (d < best_dist - 1e-12) {
      best_dist = d;
      best = i;
    }
  }
  return points.points[best];
}

PlaceOutcome approach_and_place(const SceneSpec& scene, AgentState state,
                                Vec3 target, Predictor& predictor,
                                const std::string& category,
                                const PolicyConfig& cfg) {
  NavGrid grid = NavGrid::from_scene(scene, cfg.agent);
  PlaceOutcome out;

  auto face_target = [&](int max_turns) {
    for (int i = 0; i < max_turns; ++i) {
      double want = bearing_deg(state.x, state.y, target.x, target.y);
      double delta = heading_delta(state.heading_deg, want);
      if (std::abs(delta) <= cfg.agent.turn_deg / 2 + 1e-9) return;
      state = step_agent(grid, state, turn_toward(delta), cfg.agent).state;
      ++out.steps;
    }
  };

  auto distance = [&]() {
    return std::hypot(target.x - state.x, target.y - state.y);
  };

  // one sliding move that shrinks the target distance when the direct path
  // is blocked by the receptacle itself
  auto slide_toward_target = [&]() {
    double current = distance();
    std::optional<double> best_heading;
    double best = current - 1e-9;
    int n_headings = static_cast<int>(std::round(360.0 / cfg.agent.turn_deg));
    for (int k = 0; k < n_headings; ++k) {
      AgentState trial = state;
      trial.heading_deg = normalize_heading(k * cfg.agent.turn_deg);
      StepResult sim = step_agent(grid, trial, NavAction::MoveForward, cfg.agent);
      if (sim.collided) continue;
      double d = std::hypot(target.x - sim.state.x, target.y - sim.state.y);
      if (d >= cfg.arm_min_reach && d < best) {
        best = d;
        best_heading = trial.heading_deg;
      }
    }
    if (!best_heading) return false;
    return execute_heading_and_forward(grid, state, *best_heading, cfg, out.steps,
                                       cfg.approach_max_steps * 4);
  };

  face_target(6);
  for (int iter = 0; iter < cfg.approach_max_steps; ++iter) {
    double d = distance();
    if (d <= cfg.approach_dist) break;
    // stepping forward would overshoot past the arm's minimum reach
    if (d <= cfg.arm_max_reach && d - cfg.agent.forward_step < cfg.arm_min_reach)
      break;
    face_target(2);
    StepResult r = step_agent(grid, state, NavAction::MoveForward, cfg.agent);
    ++out.steps;
    if (r.collided) {
      if (d <= cfg.arm_max_reach) break;  // already placeable from here
      if (!slide_toward_target()) break;
      r.state = state;
    }
    state = r.state;

    // re-estimate from the new view; keep the previous target when the new
    // scan comes back empty
    CameraModel cam = agent_camera(state, cfg.agent, cfg.render_width,
                                   cfg.render_height, cfg.hfov_deg);
    RenderView view = render_view(scene, cam, cfg.render_width, cfg.render_height,
                                  cfg.max_range);
    ViewObservation obs{&scene, cam, view, ""};
    Heatmap heat = predictor.predict(obs, category);
    PointCloud pts = filtered_sp_points(scene, view, heat, cam, cfg);
    if (!pts.points.empty()) target = choose_placement(pts, cfg);
  }

  out.state = state;
  double d = distance();
  double z_rel = target.z - scene.origin().z;
  bool reachable = d >= cfg.arm_min_reach && d <= cfg.arm_max_reach &&
                   z_rel >= cfg.arm_min_height && z_rel <= cfg.arm_max_height;
  if (!reachable) return out;

  face_target(6);
  out.state = state;

  // drop from drop_height above the target and settle onto the first support
  Cell drop_cell = scene.cell_of_point(
      Vec3{target.x, target.y, target.z + cfg.drop_height});
  if (!scene.in_bounds(drop_cell)) return out;
  if (scene.occupied(drop_cell)) return out;  // no room for the gripper
  for (int z = drop_cell.z; z > 0; --z) {
    Cell below{drop_cell.x, drop_cell.y, z - 1};
    if (scene.occupied(below)) {
      out.placed = scene.cell_center(Cell{drop_cell.x, drop_cell.y, z});
      return out;
    }
  }
  return out;  // fell through open space
}

bool judge_success(const SceneSpec& scene, const Vec3& placed,
                   const std::string& category, const PlacementConfig& placement) {
  const std::vector<std::string>* receptacles = placement.priors.find(category);
  if (!receptacles) return false;
  std::vector<int> valid_ids;
  for (const std::string& name : *receptacles)
    if (auto id = scene.categories().find(name)) valid_ids.push_back(*id);
  if (valid_ids.empty()) return false;

  Cell c = scene.cell_of_point(placed);
  Cell below{c.x, c.y, c.z - 1};
  if (!scene.in_bounds(below) || !scene.occupied(below)) return false;
  int32_t inst_id = scene.instance_at(scene.idx(below.x, below.y, below.z));
  const Instance* inst = scene.find_instance(inst_id);
  if (!inst || !inst->receptacle) return false;
  if (std::find(valid_ids.begin(), valid_ids.end(), inst->category) ==
      valid_ids.end())
    return false;

  // the support cell must be part of the receptacle's placeable surface
  auto surfaces =
      extract_placeable_surfaces(scene, {inst->category}, placement.min_clearance);
  int64_t below_idx = scene.idx(below.x, below.y, below.z);
  for (const PlaceableSurface& s : surfaces) {
    if (s.instance_id != inst_id) continue;
    if (std::binary_search(s.cells.begin(), s.cells.end(), below_idx)) return true;
  }
  return false;
}

EpisodeResult run_episode(const SceneSpec& scene, const EpisodeSpec& episode,
                          Predictor& predictor, const PolicyConfig& cfg,
                          uint64_t seed) {
  (void)seed;  // the policy is deterministic; the seed names the episode stream
  cfg.validate();

  EpisodeResult result;
  result.episode_id = episode.episode_id;

  AgentState state;
  state.x = episode.start_x;
  state.y = episode.start_y;
  state.heading_deg = normalize_heading(episode.start_heading_deg);

  NavGrid grid = NavGrid::from_scene(scene, cfg.agent);
  SPMap2D map = SPMap2D::from_scene(scene, cfg.agent.radius);

  // phase 1: frontier exploration while accumulating SP evidence. The head
  // starts pitched down so support surfaces below eye level enter the
  // frustum at room-scale distances.
  state = step_agent(grid, state, NavAction::LookDown, cfg.agent).state;
  ++result.steps;
  for (int i = 0; i < cfg.explore_steps; ++i) {
    CameraModel cam = agent_camera(state, cfg.agent, cfg.render_width,
                                   cfg.render_height, cfg.hfov_deg);
    RenderView view = render_view(scene, cam, cfg.render_width, cfg.render_height,
                                  cfg.max_range);
    ViewObservation obs{&scene, cam, view, ""};
    Heatmap heat = predictor.predict(obs, episode.category);
    update_sp_map(map, heat, view.depth, cam, cfg.sp_threshold,
                  cfg.floor_height_cutoff, cfg.agent.obstacle_max_z);

    NavAction action = frontier_step(map, state, cfg, &grid);
    StepResult r = step_agent(grid, state, action, cfg.agent);
    if (action == NavAction::MoveForward && r.collided) {
      map.mark_blocked_ahead(state, cfg.agent);
      r = step_agent(grid, state, NavAction::TurnLeft, cfg.agent);
    }
    state = r.state;
    ++result.steps;
  }

  // phase 2: navigate to the largest evidence component
  std::optional<Goal> goal = select_goal(map);
  if (!goal) {
    result.failure_mode = FailureMode::NavFailure;
    return result;
  }
  NavOutcome nav = navigate_to(scene, state, *goal, cfg.goal_reach_dist, cfg);
  result.steps += nav.steps;
  state = nav.state;
  if (!nav.reached) {
    result.failure_mode = FailureMode::NavFailure;
    return result;
  }

  // phase 3: panoramic scan, slab selection, approach, drop. The head tilts
  // further down so nearby support surfaces stay inside the frustum.
  state = step_agent(grid, state, NavAction::LookDown, cfg.agent).state;
  ++result.steps;
  std::optional<ScanResult> scan =
      panoramic_place_scan(scene, state, predictor, episode.category, cfg);
  if (!scan) {
    result.failure_mode = FailureMode::PlaceFailure;
    return result;
  }
  state = scan->state;
  result.steps += scan->steps;

  Vec3 target = choose_placement(scan->points, cfg);
  PlaceOutcome placed =
      approach_and_place(scene, state, target, predictor, episode.category, cfg);
  result.steps += placed.steps;
  if (!placed.placed) {
    result.failure_mode = FailureMode::PlaceFailure;
    return result;
  }
  result.placement = placed.placed;
  if (judge_success(scene, *placed.placed, episode.category, cfg.placement)) {
    result.success = true;
    result.failure_mode = FailureMode::None;
  } else {
    result.failure_mode = FailureMode::BadSpMask;
  }
  return result;
}

std::vector<EpisodeResult> run_episode_batch(
    const std::vector<EpisodeJob>& jobs,
    const std::function<std::unique_ptr<Predictor>()>& predictor_factory,
    const PolicyConfig& cfg, int workers) {
  std::vector<EpisodeResult> results(jobs.size());
  if (jobs.empty()) return results;
  workers = std::max(1, std::min<int>(workers, static_cast<int>(jobs.size())));

  std::atomic<size_t> next{0};
  auto worker = [&]() {
    std::unique_ptr<Predictor> predictor = predictor_factory();
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= jobs.size()) break;
      const EpisodeJob& job = jobs[i];
      try {
        results[i] =
            run_episode(*job.scene, job.episode, *predictor, cfg, job.episode.seed);
      } catch (const std::exception&) {
        EpisodeResult err;
        err.episode_id = job.episode.episode_id;
        err.failure_mode = FailureMode::NavFailure;
        results[i] = err;  // isolated; the run continues
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return results;
}

double EpisodeSummary::success_rate() const {
  return episodes == 0 ? 0.0 : static_cast<double>(successes) / episodes;
}

std::string EpisodeSummary::failure_breakdown() const {
  int failures = nav_failures + place_failures + bad_sp_masks;
  auto pct = [&](int n) { return failures == 0 ? 0.0 : 100.0 * n / failures; };
  std::ostringstream os;
  os.precision(1);
  os << std::fixed;
  os << "navigation " << pct(nav_failures) << "% / place " << pct(place_failures)
     << "% / incorrect SP mask " << pct(bad_sp_masks) << "% (of " << failures
     << " failures)";
  return os.str();
}

EpisodeSummary summarize(const std::vector<EpisodeResult>& results) {
  EpisodeSummary s;
  s.episodes = static_cast<int>(results.size());
  for (const EpisodeResult& r : results) {
    if (r.success) ++s.successes;
    else if (r.failure_mode == FailureMode::NavFailure) ++s.nav_failures;
    else if (r.failure_mode == FailureMode::PlaceFailure) ++s.place_failures;
    else if (r.failure_mode == FailureMode::BadSpMask) ++s.bad_sp_masks;
  }
  return s;
}

}  // namespace placebench
