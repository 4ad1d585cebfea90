#include <doctest.h>

#include <cmath>

#include "placebench/agent.hpp"
#include "placebench/scenegen.hpp"

using namespace placebench;

namespace {

SceneSpec open_room() {
  SceneGenConfig cfg;
  cfg.min_furniture = 0;
  cfg.max_furniture = 0;
  cfg.max_objects = 0;
  return generate_scene(3, cfg);
}

}  // namespace

TEST_CASE("forward step translates along the heading") {
  SceneSpec s = open_room();
  AgentConfig cfg;
  AgentState st;
  st.x = 2.0;
  st.y = 2.0;
  st.heading_deg = 0;
  StepResult r = step_agent(s, st, NavAction::MoveForward, cfg);
  CHECK(!r.collided);
  CHECK(r.state.x == doctest::Approx(2.25));
  CHECK(r.state.y == doctest::Approx(2.0));

  st.heading_deg = 90;
  r = step_agent(s, st, NavAction::MoveForward, cfg);
  CHECK(r.state.x == doctest::Approx(2.0));
  CHECK(r.state.y == doctest::Approx(2.25));
}

TEST_CASE("twelve left turns return the heading to start") {
  SceneSpec s = open_room();
  AgentConfig cfg;
  AgentState st;
  st.x = st.y = 2.0;
  st.heading_deg = 30;
  for (int i = 0; i < 12; ++i) st = step_agent(s, st, NavAction::TurnLeft, cfg).state;
  CHECK(st.heading_deg == doctest::Approx(30.0));
  // turns are exactly reversible
  AgentState back = step_agent(s, st, NavAction::TurnLeft, cfg).state;
  back = step_agent(s, back, NavAction::TurnRight, cfg).state;
  CHECK(back.heading_deg == st.heading_deg);
}

TEST_CASE("look actions clamp to the mechanical range") {
  SceneSpec s = open_room();
  AgentConfig cfg;
  AgentState st;
  st.x = st.y = 2.0;
  st.tilt_deg = 20;
  st = step_agent(s, st, NavAction::LookUp, cfg).state;
  CHECK(st.tilt_deg == doctest::Approx(cfg.max_tilt_deg));
  for (int i = 0; i < 6; ++i) st = step_agent(s, st, NavAction::LookDown, cfg).state;
  CHECK(st.tilt_deg == doctest::Approx(cfg.min_tilt_deg));
}

TEST_CASE("forward into a nearby wall collides and leaves the state unchanged") {
  SceneSpec s = open_room();
  AgentConfig cfg;
  AgentState st;
  // room interior starts at 0.05; heading straight at the -x wall
  st.x = 0.05 + cfg.radius + 0.10;  // wall 0.10 m beyond the footprint
  st.y = 2.0;
  st.heading_deg = 180;
  StepResult r = step_agent(s, st, NavAction::MoveForward, cfg);
  CHECK(r.collided);
  CHECK(r.state.x == st.x);
  CHECK(r.state.y == st.y);
}

TEST_CASE("sweep blocks tunneling through thin obstacles") {
  SceneSpec s = open_room();
  // thin pillar column between agent and target
  std::vector<int64_t> cells;
  for (int z = 1; z < 20; ++z) cells.push_back(s.idx(40, 40, z));
  s.add_instance("Pillar", false, std::move(cells));

  AgentConfig cfg;
  AgentState st;
  st.x = 40 * 0.05 + 0.025 - 0.24;  // just under one step before the pillar cell
  st.y = 40 * 0.05 + 0.025;
  st.heading_deg = 0;
  StepResult r = step_agent(s, st, NavAction::MoveForward, cfg);
  CHECK(r.collided);
}

TEST_CASE("agent camera points along heading and tilt") {
  AgentConfig cfg;
  AgentState st;
  st.x = 1.0;
  st.y = 2.0;
  st.heading_deg = 90;
  CameraModel cam = agent_camera(st, cfg, 64, 48, 58);
  CHECK(cam.pose.trans.z == doctest::Approx(cfg.camera_height));
  // forward column of the rotation is +y
  Vec3 fwd = cam.pose.rot * Vec3{0, 0, 1};
  CHECK(fwd.x == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(fwd.y == doctest::Approx(1.0));
  CHECK(fwd.z == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(cam.pose.rotation_valid(1e-9));

  st.tilt_deg = -30;
  CameraModel down = agent_camera(st, cfg, 64, 48, 58);
  Vec3 fwd2 = down.pose.rot * Vec3{0, 0, 1};
  CHECK(fwd2.z == doctest::Approx(-0.5));
  CHECK(down.pose.rotation_valid(1e-9));
}

TEST_CASE("nav grid marks furniture columns blocked and floor free") {
  SceneGenConfig cfg;
  cfg.min_furniture = 1;
  cfg.max_furniture = 1;
  cfg.max_objects = 0;
  SceneSpec s = generate_scene(17, cfg);
  AgentConfig acfg;
  NavGrid grid = NavGrid::from_scene(s, acfg);

  int blocked = 0, free_cells = 0;
  for (int y = 0; y < grid.ny(); ++y)
    for (int x = 0; x < grid.nx(); ++x)
      grid.blocked(Cell2{x, y}) ? ++blocked : ++free_cells;
  CHECK(blocked > 0);      // walls plus furniture
  CHECK(free_cells > 0);

  // furniture cells are blocked
  for (const Instance& inst : s.instances()) {
    if (!inst.receptacle) continue;
    Cell c = s.cell_from_idx(inst.cells.front());
    CHECK(grid.blocked(Cell2{c.x, c.y}));
  }
}
