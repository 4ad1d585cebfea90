#include "placebench/spmap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "placebench/voxel.hpp"

namespace placebench {

SPMap2D SPMap2D::from_scene(const SceneSpec& scene, double agent_radius) {
  SPMap2D m;
  m.nx = scene.nx();
  m.ny = scene.ny();
  m.bin_nz = scene.nz();
  m.resolution = scene.resolution();
  m.origin = scene.origin();
  m.inflate_radius = agent_radius;
  size_t n = static_cast<size_t>(m.nx) * m.ny;
  m.evidence.assign(n, 0.0);
  m.explored.assign(n, 0);
  m.occupied.assign(n, 0);
  m.inflated.assign(n, 0);
  return m;
}

Cell2 SPMap2D::cell_of(double wx, double wy) const {
  return Cell2{static_cast<int>(std::floor((wx - origin.x) / resolution)),
               static_cast<int>(std::floor((wy - origin.y) / resolution))};
}

void SPMap2D::cell_center(const Cell2& c, double& wx, double& wy) const {
  wx = origin.x + (c.x + 0.5) * resolution;
  wy = origin.y + (c.y + 0.5) * resolution;
}

void SPMap2D::mark_occupied(const Cell2& c) {
  if (!in_bounds(c) || occupied[idx(c)]) return;
  occupied[idx(c)] = 1;
  int rad = static_cast<int>(std::ceil(inflate_radius / resolution));
  for (int dy = -rad; dy <= rad; ++dy)
    for (int dx = -rad; dx <= rad; ++dx) {
      Cell2 q{c.x + dx, c.y + dy};
      if (in_bounds(q)) inflated[idx(q)] = 1;
    }
}

void SPMap2D::mark_blocked_ahead(const AgentState& state, const AgentConfig& cfg) {
  double rad = state.heading_deg * M_PI / 180.0;
  double px = state.x + std::cos(rad) * (cfg.radius + resolution);
  double py = state.y + std::sin(rad) * (cfg.radius + resolution);
  Cell2 c = cell_of(px, py);
  if (in_bounds(c)) {
    explored[idx(c)] = 1;
    mark_occupied(c);
  }
}

double SPMap2D::total_evidence() const {
  return std::accumulate(evidence.begin(), evidence.end(), 0.0);
}

namespace {

void mark_line_explored(SPMap2D& map, Cell2 a, Cell2 b) {
  int dx = std::abs(b.x - a.x), dy = std::abs(b.y - a.y);
  int sx = a.x < b.x ? 1 : -1, sy = a.y < b.y ? 1 : -1;
  int err = dx - dy;
  Cell2 c = a;
  while (true) {
    if (map.in_bounds(c)) map.explored[map.idx(c)] = 1;
    if (c == b) break;
    int e2 = 2 * err;
    if (e2 > -dy) {
      err -= dy;
      c.x += sx;
    }
    if (e2 < dx) {
      err += dx;
      c.y += sy;
    }
  }
}

}  // namespace

void update_sp_map(SPMap2D& map, const Heatmap& heat, const DepthImage& depth,
                   const CameraModel& cam, double tau, double floor_height_cutoff,
                   double obstacle_max_z) {
  if (heat.width != depth.width || heat.height != depth.height)
    throw std::invalid_argument("update_sp_map: heatmap/depth dimension mismatch");

  // occupancy and explored space from the full depth image
  Cell2 agent = map.cell_of(cam.pose.trans.x, cam.pose.trans.y);
  if (map.in_bounds(agent)) map.explored[map.idx(agent)] = 1;
  PointCloud all = backproject(depth, cam);
  for (const Vec3& p : all.points) {
    Cell2 end = map.cell_of(p.x, p.y);
    mark_line_explored(map, agent, end);
    double z_rel = p.z - map.origin.z;
    if (map.in_bounds(end) && z_rel > floor_height_cutoff && z_rel <= obstacle_max_z)
      map.mark_occupied(end);
  }

  // SP evidence from the thresholded prediction
  BinaryMask mask = threshold_heatmap(heat, tau);
  if (mask.area() == 0) return;
  PointCloud sp = backproject(depth, cam, &mask);
  BinResult binned = bin_to_voxels(sp, map.origin, map.resolution,
                                   GridDims{map.nx, map.ny, map.bin_nz});
  CountMap2D flat = height_collapse(binned.grid);
  for (int y = 0; y < map.ny; ++y)
    for (int x = 0; x < map.nx; ++x)
      map.evidence[static_cast<size_t>(y) * map.nx + x] +=
          static_cast<double>(flat.at(x, y));
}

std::optional<Goal> select_goal(const SPMap2D& map) {
  std::vector<int32_t> comp(map.evidence.size(), -1);
  struct Component {
    std::vector<Cell2> cells;
    int min_y = 0, min_x = 0;
  };
  std::vector<Component> components;

  for (int y = 0; y < map.ny; ++y) {
    for (int x = 0; x < map.nx; ++x) {
      Cell2 seed{x, y};
      if (map.evidence[map.idx(seed)] <= 0 || comp[map.idx(seed)] >= 0) continue;
      int32_t id = static_cast<int32_t>(components.size());
      components.emplace_back();
      std::vector<Cell2> stack{seed};
      comp[map.idx(seed)] = id;
      while (!stack.empty()) {
        Cell2 c = stack.back();
        stack.pop_back();
        components[id].cells.push_back(c);
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            Cell2 q{c.x + dx, c.y + dy};
            if (!map.in_bounds(q) || map.evidence[map.idx(q)] <= 0 ||
                comp[map.idx(q)] >= 0)
              continue;
            comp[map.idx(q)] = id;
            stack.push_back(q);
          }
      }
      auto& cells = components[id].cells;
      components[id].min_y = cells.front().y;
      components[id].min_x = cells.front().x;
      for (const Cell2& c : cells) {
        if (c.y < components[id].min_y) components[id].min_y = c.y;
        if (c.x < components[id].min_x) components[id].min_x = c.x;
      }
    }
  }
  if (components.empty()) return std::nullopt;

  size_t best = 0;
  for (size_t i = 1; i < components.size(); ++i) {
    const auto& a = components[i];
    const auto& b = components[best];
    if (a.cells.size() > b.cells.size() ||
        (a.cells.size() == b.cells.size() &&
         std::pair{a.min_y, a.min_x} < std::pair{b.min_y, b.min_x}))
      best = i;
  }

  Goal goal;
  goal.area = components[best].cells;
  double sx = 0, sy = 0;
  for (const Cell2& c : goal.area) {
    sx += c.x;
    sy += c.y;
  }
  goal.centroid = Cell2{static_cast<int>(std::llround(sx / goal.area.size())),
                        static_cast<int>(std::llround(sy / goal.area.size()))};
  return goal;
}

}  // namespace placebench
