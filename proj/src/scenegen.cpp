#include "placebench/scenegen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "placebench/agent.hpp"
#include "placebench/rng.hpp"

namespace placebench {

namespace {

struct Rect {
  double x0, y0, x1, y1;
  bool overlaps(const Rect& o, double gap) const {
    return !(x1 + gap <= o.x0 || o.x1 + gap <= x0 || y1 + gap <= o.y0 ||
             o.y1 + gap <= y0);
  }
};

std::vector<int64_t> box_cells(const SceneSpec& scene, double x0, double y0,
                               double z0, double x1, double y1, double z1) {
  double res = scene.resolution();
  auto snap = [&](double v) { return static_cast<int>(std::llround(v / res)); };
  std::vector<int64_t> cells;
  for (int z = snap(z0); z < snap(z1); ++z)
    for (int y = snap(y0); y < snap(y1); ++y)
      for (int x = snap(x0); x < snap(x1); ++x) {
        Cell c{x, y, z};
        if (scene.in_bounds(c)) cells.push_back(scene.idx(x, y, z));
      }
  return cells;
}

enum class Kind { Solid, TableTop, Couch };

struct FurnitureSpec {
  const char* category;
  double w, d;
  Kind kind;
  double height;       // solid height or table-top upper z
  double back_height;  // couch only
};

const FurnitureSpec kCatalog[] = {
    {"Couch", 1.6, 0.8, Kind::Couch, 0.45, 0.95},
    {"Table", 0.8, 0.8, Kind::TableTop, 0.75, 0},
    {"Coffee Table", 0.9, 0.5, Kind::TableTop, 0.45, 0},
    {"Desk", 1.2, 0.6, Kind::TableTop, 0.75, 0},
    {"Kitchen Counter", 1.5, 0.6, Kind::Solid, 0.95, 0},
    {"Bed", 1.9, 1.4, Kind::Solid, 0.55, 0},
    {"Bedside Table", 0.45, 0.45, Kind::Solid, 0.55, 0},
    {"Chest of Drawers", 0.9, 0.45, Kind::Solid, 0.85, 0},
    {"Shelf", 0.8, 0.3, Kind::Solid, 1.05, 0},
};

struct ObjectSpec {
  const char* category;
  double height;
};

const ObjectSpec kObjects[] = {
    {"Cushion", 0.15},     {"Vase", 0.35},     {"Book", 0.05},
    {"Laptop", 0.05},      {"Alarm Clock", 0.10}, {"Potted Plant", 0.40},
    {"Toaster", 0.20},     {"Table Lamp", 0.45},
};

// Furniture footprints snap to the voxel grid; heights start above the floor
// layer at z = resolution.
int add_furniture(SceneSpec& scene, const FurnitureSpec& spec, double x0, double y0,
                  int orientation, DetRng& rng) {
  double res = scene.resolution();
  double w = spec.w, d = spec.d;
  if (orientation % 2 == 1) std::swap(w, d);
  double x1 = x0 + w, y1 = y0 + d;

  std::vector<int64_t> cells;
  switch (spec.kind) {
    case Kind::Solid:
      cells = box_cells(scene, x0, y0, res, x1, y1, spec.height);
      break;
    case Kind::TableTop: {
      double top0 = spec.height - 0.05;
      cells = box_cells(scene, x0, y0, top0, x1, y1, spec.height);
      double leg = 0.05;
      for (auto [lx, ly] : {std::pair{x0, y0}, {x1 - leg, y0}, {x0, y1 - leg},
                            {x1 - leg, y1 - leg}}) {
        auto leg_cells = box_cells(scene, lx, ly, res, lx + leg, ly + leg, top0);
        cells.insert(cells.end(), leg_cells.begin(), leg_cells.end());
      }
      break;
    }
    case Kind::Couch: {
      cells = box_cells(scene, x0, y0, res, x1, y1, spec.height);
      double back = 0.25;
      int side = static_cast<int>(rng.uniform_u32(4));
      double bx0 = x0, by0 = y0, bx1 = x1, by1 = y1;
      if (side == 0) by1 = y0 + back;
      else if (side == 1) by0 = y1 - back;
      else if (side == 2) bx1 = x0 + back;
      else bx0 = x1 - back;
      auto back_cells =
          box_cells(scene, bx0, by0, spec.height, bx1, by1, spec.back_height);
      cells.insert(cells.end(), back_cells.begin(), back_cells.end());
      break;
    }
  }
  return scene.add_instance(spec.category, true, std::move(cells));
}

SceneSpec make_room(double room_w, double room_d, const SceneGenConfig& cfg) {
  double res = cfg.resolution;
  int nx = static_cast<int>(std::llround(room_w / res)) + 2;
  int ny = static_cast<int>(std::llround(room_d / res)) + 2;
  int nz = static_cast<int>(std::llround(cfg.ceiling / res));
  SceneSpec scene(GridDims{nx, ny, nz}, res, Vec3{0, 0, 0});

  std::vector<int64_t> floor_cells;
  for (int y = 0; y < ny; ++y)
    for (int x = 0; x < nx; ++x) floor_cells.push_back(scene.idx(x, y, 0));
  scene.add_instance("Floor", false, std::move(floor_cells));

  std::vector<int64_t> wall_cells;
  int wall_top = static_cast<int>(std::llround(2.0 / res));
  for (int z = 1; z <= std::min(wall_top, nz - 1); ++z)
    for (int y = 0; y < ny; ++y)
      for (int x = 0; x < nx; ++x)
        if (x == 0 || x == nx - 1 || y == 0 || y == ny - 1)
          wall_cells.push_back(scene.idx(x, y, z));
  scene.add_instance("Wall", false, std::move(wall_cells));
  return scene;
}

// Snapped placement of a footprint in the room interior, keeping clearance
// from walls and other furniture.
std::optional<Rect> place_footprint(DetRng& rng, const std::vector<Rect>& placed,
                                    double w, double d, double room_w, double room_d,
                                    double res, double wall_margin, double gap) {
  for (int attempt = 0; attempt < 300; ++attempt) {
    double x0 = rng.uniform(res + wall_margin, res + room_w - wall_margin - w);
    double y0 = rng.uniform(res + wall_margin, res + room_d - wall_margin - d);
    x0 = std::round(x0 / res) * res;
    y0 = std::round(y0 / res) * res;
    Rect r{x0, y0, x0 + w, y0 + d};
    bool ok = true;
    for (const Rect& p : placed)
      if (r.overlaps(p, gap)) ok = false;
    if (ok) return r;
  }
  return std::nullopt;
}

void add_object_on_surface(SceneSpec& scene, const ObjectSpec& obj, DetRng& rng) {
  PlacementConfig pc;
  std::vector<int64_t> spots = placement_cells(scene, obj.category, pc);
  if (spots.empty()) return;
  int64_t at = spots[rng.uniform_u32(static_cast<uint32_t>(spots.size()))];
  Cell c = scene.cell_from_idx(at);

  double res = scene.resolution();
  int fr = static_cast<int>(
      std::floor(pc.footprints.side_for(obj.category) / (2.0 * res) + 1e-9));
  int zh = std::max(1, static_cast<int>(std::llround(obj.height / res)));
  std::vector<int64_t> cells;
  for (int dz = 1; dz <= zh; ++dz)
    for (int dy = -fr; dy <= fr; ++dy)
      for (int dx = -fr; dx <= fr; ++dx) {
        Cell q{c.x + dx, c.y + dy, c.z + dz};
        if (scene.in_bounds(q)) cells.push_back(scene.idx(q.x, q.y, q.z));
      }
  if (!cells.empty()) scene.add_instance(obj.category, false, std::move(cells));
}

}  // namespace

SceneSpec generate_scene(uint64_t seed, const SceneGenConfig& cfg) {
  DetRng rng(splitmix64(seed ^ 0x5ce9e5ULL));
  double room_w = std::round(rng.uniform(cfg.room_min, cfg.room_max) / cfg.resolution) *
                  cfg.resolution;
  double room_d = std::round(rng.uniform(cfg.room_min, cfg.room_max) / cfg.resolution) *
                  cfg.resolution;
  SceneSpec scene = make_room(room_w, room_d, cfg);

  int n_furniture = rng.uniform_int(cfg.min_furniture, cfg.max_furniture);
  std::vector<Rect> placed;
  for (int i = 0; i < n_furniture; ++i) {
    const FurnitureSpec& spec =
        kCatalog[rng.uniform_u32(static_cast<uint32_t>(std::size(kCatalog)))];
    int orientation = static_cast<int>(rng.uniform_u32(4));
    double w = spec.w, d = spec.d;
    if (orientation % 2 == 1) std::swap(w, d);
    auto rect = place_footprint(rng, placed, w, d, room_w, room_d, cfg.resolution,
                                0.5, 0.8);
    if (!rect) continue;
    placed.push_back(*rect);
    add_furniture(scene, spec, rect->x0, rect->y0, orientation, rng);
  }

  int n_objects = rng.uniform_int(0, cfg.max_objects);
  for (int i = 0; i < n_objects; ++i) {
    const ObjectSpec& obj =
        kObjects[rng.uniform_u32(static_cast<uint32_t>(std::size(kObjects)))];
    add_object_on_surface(scene, obj, rng);
  }
  return scene;
}

bool start_pose_free(const SceneSpec& scene, double x, double y, double radius) {
  AgentConfig acfg;
  acfg.radius = radius;
  NavGrid grid = NavGrid::from_scene(scene, acfg);
  return !grid.disc_collides(x, y, radius);
}

namespace {

struct EasyPair {
  const char* category;
  FurnitureSpec furniture;
};

// Receptacles sized so the slab center stays inside the arm's reach from the
// nearest contact position.
const EasyPair kEasyPairs[] = {
    {"Cushion", {"Couch", 1.5, 0.8, Kind::Couch, 0.45, 0.95}},
    {"Vase", {"Table", 0.6, 0.6, Kind::TableTop, 0.75, 0}},
    {"Toaster", {"Kitchen Counter", 1.2, 0.55, Kind::Solid, 0.95, 0}},
    {"Laptop", {"Desk", 1.0, 0.6, Kind::TableTop, 0.75, 0}},
    {"Alarm Clock", {"Bedside Table", 0.5, 0.5, Kind::Solid, 0.55, 0}},
    {"Book", {"Table", 0.6, 0.6, Kind::TableTop, 0.75, 0}},
    {"Potted Plant", {"Coffee Table", 0.8, 0.5, Kind::TableTop, 0.45, 0}},
    {"Table Lamp", {"Chest of Drawers", 0.8, 0.45, Kind::Solid, 0.85, 0}},
};

}  // namespace

GeneratedEpisode generate_easy_episode(uint64_t seed) {
  DetRng rng(splitmix64(seed ^ 0xea5e5eedULL));
  SceneGenConfig cfg;
  cfg.room_min = 5.0;
  cfg.room_max = 6.0;

  const EasyPair& pair =
      kEasyPairs[rng.uniform_u32(static_cast<uint32_t>(std::size(kEasyPairs)))];

  for (int attempt = 0; attempt < 50; ++attempt) {
    double room_w =
        std::round(rng.uniform(cfg.room_min, cfg.room_max) / cfg.resolution) *
        cfg.resolution;
    double room_d =
        std::round(rng.uniform(cfg.room_min, cfg.room_max) / cfg.resolution) *
        cfg.resolution;
    SceneSpec scene = make_room(room_w, room_d, cfg);

    double w = pair.furniture.w, d = pair.furniture.d;
    int orientation = static_cast<int>(rng.uniform_u32(4));
    if (orientation % 2 == 1) std::swap(w, d);
    auto rect = place_footprint(rng, {}, w, d, room_w, room_d, cfg.resolution,
                                1.0, 0.8);
    if (!rect) continue;
    add_furniture(scene, pair.furniture, rect->x0, rect->y0, orientation, rng);

    double cx_f = (rect->x0 + rect->x1) / 2, cy_f = (rect->y0 + rect->y1) / 2;
    for (int pose_try = 0; pose_try < 200; ++pose_try) {
      double ang = rng.uniform(0, 2 * M_PI);
      double dist = rng.uniform(1.0, 1.9);
      double sx = cx_f + dist * std::cos(ang);
      double sy = cy_f + dist * std::sin(ang);
      if (!start_pose_free(scene, sx, sy, 0.17)) continue;

      EpisodeSpec ep;
      ep.episode_id = "easy_" + std::to_string(seed);
      ep.start_x = sx;
      ep.start_y = sy;
      ep.start_heading_deg = 30.0 * rng.uniform_u32(12);
      ep.category = pair.category;
      ep.seed = seed;
      return GeneratedEpisode{std::move(scene), std::move(ep)};
    }
  }
  throw std::runtime_error("generate_easy_episode: no valid layout found");
}

GeneratedEpisode generate_mixed_episode(uint64_t seed) {
  DetRng rng(splitmix64(seed ^ 0x3a1cedULL));
  SceneSpec scene = generate_scene(rng.next_u32(), {});

  static const char* kMixedCategories[] = {
      "Cushion", "Vase",       "Toaster",    "Laptop",   "Alarm Clock",
      "Book",    "Table Lamp", "Potted Plant", "Trash Can"};
  std::string category =
      kMixedCategories[rng.uniform_u32(static_cast<uint32_t>(std::size(kMixedCategories)))];

  double room_w = scene.nx() * scene.resolution();
  double room_d = scene.ny() * scene.resolution();
  for (int pose_try = 0; pose_try < 500; ++pose_try) {
    double sx = rng.uniform(0.4, room_w - 0.4);
    double sy = rng.uniform(0.4, room_d - 0.4);
    if (!start_pose_free(scene, sx, sy, 0.17)) continue;
    EpisodeSpec ep;
    ep.episode_id = "mixed_" + std::to_string(seed);
    ep.start_x = sx;
    ep.start_y = sy;
    ep.start_heading_deg = 30.0 * rng.uniform_u32(12);
    ep.category = category;
    ep.seed = seed;
    return GeneratedEpisode{std::move(scene), std::move(ep)};
  }
  throw std::runtime_error("generate_mixed_episode: no free start pose");
}

std::string episode_to_json(const EpisodeSpec& ep) {
  nlohmann::ordered_json j;
  j["episode_id"] = ep.episode_id;
  j["scene_file"] = ep.scene_file;
  j["start_pose"] = {ep.start_x, ep.start_y, ep.start_heading_deg};
  j["category"] = ep.category;
  j["seed"] = ep.seed;
  return j.dump();
}

EpisodeSpec episode_from_json(const std::string& json) {
  nlohmann::json j = nlohmann::json::parse(json);
  EpisodeSpec ep;
  ep.episode_id = j.value("episode_id", "");
  ep.scene_file = j.value("scene_file", "");
  ep.start_x = j["start_pose"][0].get<double>();
  ep.start_y = j["start_pose"][1].get<double>();
  ep.start_heading_deg = j["start_pose"][2].get<double>();
  ep.category = j["category"].get<std::string>();
  ep.seed = j.value("seed", uint64_t{0});
  return ep;
}

}  // namespace placebench
