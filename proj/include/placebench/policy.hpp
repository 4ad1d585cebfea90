#pragma once

// Embodied semantic placement policy: frontier exploration builds the SP map,
// the navigation phase drives within reach of its largest evidence component,
// and the place phase scans panoramically, picks a flat slab and drops the
// object. Episode results carry exactly one outcome.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "placebench/predict.hpp"
#include "placebench/scenegen.hpp"
#include "placebench/spmap.hpp"

namespace placebench {

struct PolicyConfig {
  int explore_steps = 250;
  double goal_reach_dist = 0.2;
  double approach_dist = 0.385;
  double slab_height_tol = 0.03;
  double slab_xy_radius = 0.10;
  double drop_height = 0.15;
  double floor_height_cutoff = 0.15;
  double sp_threshold = 0.5;

  int render_width = 128;
  int render_height = 96;
  double hfov_deg = 58.0;
  double max_range = 10.0;

  double arm_min_reach = 0.2;
  double arm_max_reach = 0.52;
  double arm_min_height = 0.2;
  double arm_max_height = 1.1;

  int nav_min_budget = 100;
  double nav_budget_factor = 2.0;
  int approach_max_steps = 60;

  AgentConfig agent;
  PlacementConfig placement;  // priors and footprints for success judgment

  void validate() const;
};

enum class FailureMode { None, NavFailure, PlaceFailure, BadSpMask };
const char* failure_mode_name(FailureMode m);

struct EpisodeResult {
  std::string episode_id;
  bool success = false;
  FailureMode failure_mode = FailureMode::None;
  int steps = 0;
  std::optional<Vec3> placement;
};

// Distance between the agent footprint and the goal area (surface-to-surface
// clearance in the XY plane; 0 when touching).
double goal_gap(const SPMap2D& map, const AgentState& state, const Goal& goal,
                double agent_radius);

// Next action toward the nearest frontier (explored-free cell adjacent to
// unexplored space); TurnLeft when no frontier remains. With a scene grid the
// emitted forward action is guaranteed collision-free.
NavAction frontier_step(const SPMap2D& map, const AgentState& state,
                        const PolicyConfig& cfg, const NavGrid* scene_grid = nullptr);

struct NavOutcome {
  AgentState state;
  bool reached = false;
  int steps = 0;
};

// Greedy path-following toward the goal area until the footprint gap drops
// below reach_dist or the budget runs out.
NavOutcome navigate_to(const SceneSpec& scene, AgentState state, const Goal& goal,
                       double reach_dist, const PolicyConfig& cfg);

struct ScanResult {
  PointCloud points;  // SP points above the floor cutoff, world frame
  DepthImage depth;
  CameraModel cam;
  AgentState state;
  int steps = 0;
};

// Rotate in turn increments (up to a full revolution) until a prediction
// survives the height filter.
std::optional<ScanResult> panoramic_place_scan(const SceneSpec& scene,
                                               AgentState state,
                                               Predictor& predictor,
                                               const std::string& category,
                                               const PolicyConfig& cfg);

// Number of points within the XY radius and height tolerance of point i,
// itself included.
int slab_score(const PointCloud& points, size_t i, const PolicyConfig& cfg);

// Point with the highest slab score; among ties, the one nearest the tied
// set's centroid, then the lowest index.
Vec3 choose_placement(const PointCloud& points, const PolicyConfig& cfg);

struct PlaceOutcome {
  std::optional<Vec3> placed;
  AgentState state;
  int steps = 0;
};

// Face the target, advance while it stays outside approach_dist (re-estimating
// from each new view), then drop from drop_height if the target lies within
// the arm's reach annulus and height band.
PlaceOutcome approach_and_place(const SceneSpec& scene, AgentState state,
                                Vec3 target, Predictor& predictor,
                                const std::string& category,
                                const PolicyConfig& cfg);

// True when the cell under the placed object is a placeable surface cell of a
// receptacle that the prior table lists for the category.
bool judge_success(const SceneSpec& scene, const Vec3& placed,
                   const std::string& category, const PlacementConfig& placement);

EpisodeResult run_episode(const SceneSpec& scene, const EpisodeSpec& episode,
                          Predictor& predictor, const PolicyConfig& cfg,
                          uint64_t seed);

struct EpisodeJob {
  const SceneSpec* scene = nullptr;
  EpisodeSpec episode;
};

// Runs episodes across a worker pool; results are merged by job order so the
// output is identical for any worker count. Each worker gets its own
// predictor from the factory.
std::vector<EpisodeResult> run_episode_batch(
    const std::vector<EpisodeJob>& jobs,
    const std::function<std::unique_ptr<Predictor>()>& predictor_factory,
    const PolicyConfig& cfg, int workers);

struct EpisodeSummary {
  int episodes = 0;
  int successes = 0;
  int nav_failures = 0;
  int place_failures = 0;
  int bad_sp_masks = 0;

  double success_rate() const;
  // Percentages over failed episodes, e.g. "nav 53.5% / place 31.0% / mask 15.5%".
  std::string failure_breakdown() const;
};

EpisodeSummary summarize(const std::vector<EpisodeResult>& results);

}  // namespace placebench
