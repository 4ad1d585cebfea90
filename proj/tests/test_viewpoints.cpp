#include <doctest.h>

#include <cmath>

#include "placebench/scenegen.hpp"
#include "placebench/viewpoints.hpp"

using namespace placebench;

namespace {

const Instance* first_object(const SceneSpec& s) {
  auto floor_id = s.categories().find("Floor");
  auto wall_id = s.categories().find("Wall");
  for (const Instance& inst : s.instances())
    if (!inst.receptacle && inst.category != *floor_id && inst.category != *wall_id)
      return &inst;
  return nullptr;
}

// First seed from `start` whose generated scene contains a small object.
SceneSpec scene_with_object(uint64_t start) {
  for (uint64_t seed = start; seed < start + 64; ++seed) {
    SceneSpec s = generate_scene(seed);
    if (first_object(s)) return s;
  }
  throw std::runtime_error("no object-bearing scene in seed range");
}

}  // namespace

TEST_CASE("candidate set is 4 radii x 36 angles = 144 poses") {
  SceneSpec s = scene_with_object(12345);
  const Instance* obj = first_object(s);
  REQUIRE(obj != nullptr);
  auto candidates = viewpoint_candidates(s, *obj);
  CHECK(candidates.size() == 144);
}

TEST_CASE("candidates sit at the exact radii aimed at the centroid") {
  SceneSpec s = scene_with_object(12345);
  const Instance* obj = first_object(s);
  REQUIRE(obj != nullptr);
  for (const CameraModel& cam : viewpoint_candidates(s, *obj)) {
    double dist = (cam.pose.trans - obj->centroid).norm();
    double best = 1e9;
    for (double r : {0.5, 1.0, 1.5, 2.0}) best = std::min(best, std::abs(dist - r));
    CHECK(best < 1e-9);
    // principal axis passes through the centroid
    Vec3 fwd = cam.pose.rot * Vec3{0, 0, 1};
    Vec3 to_obj = (obj->centroid - cam.pose.trans).normalized();
    CHECK(fwd.dot(to_obj) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(cam.pose.rotation_valid(1e-9));
  }
}

TEST_CASE("kept viewpoints re-render with coverage above the threshold") {
  SceneSpec s = scene_with_object(901);
  const Instance* obj = first_object(s);
  REQUIRE(obj != nullptr);
  ViewpointParams params;
  params.width = 64;
  params.height = 48;
  auto kept = sample_viewpoints(s, *obj, params);
  for (const CameraModel& cam : kept) {
    BinaryMask m = visible_instance_mask(s, obj->id, cam, params.width, params.height);
    double frac = static_cast<double>(m.area()) / (params.width * params.height);
    CHECK(frac >= params.min_coverage);
    Cell c = s.cell_of_point(cam.pose.trans);
    CHECK(s.in_bounds(c));
    CHECK(!s.occupied(c));
  }
}

TEST_CASE("a fully walled-off object yields no viewpoints") {
  SceneSpec s(GridDims{60, 60, 30}, 0.05, Vec3{0, 0, 0});
  std::vector<int64_t> floor;
  for (int y = 0; y < 60; ++y)
    for (int x = 0; x < 60; ++x) floor.push_back(s.idx(x, y, 0));
  s.add_instance("Floor", false, std::move(floor));

  std::vector<int64_t> obj_cells;
  for (int z = 1; z < 4; ++z)
    for (int y = 29; y < 32; ++y)
      for (int x = 29; x < 32; ++x) obj_cells.push_back(s.idx(x, y, z));
  int obj = s.add_instance("Vase", false, std::move(obj_cells));

  // solid enclosure drowning all candidate rings
  std::vector<int64_t> shell;
  for (int z = 1; z < 25; ++z)
    for (int y = 5; y < 56; ++y)
      for (int x = 5; x < 56; ++x) {
        bool inside_hole = x >= 27 && x < 34 && y >= 27 && y < 34;
        if (!inside_hole) shell.push_back(s.idx(x, y, z));
      }
  s.add_instance("Wall", false, std::move(shell));

  auto kept = sample_viewpoints(s, *s.find_instance(obj));
  CHECK(kept.empty());
}
