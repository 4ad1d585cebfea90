#pragma once

// Procedural room generation: walled rooms with receptacle furniture and
// small objects resting on their surfaces, plus seeded episode suites.

#include <optional>
#include <string>
#include <vector>

#include "placebench/scene.hpp"
#include "placebench/surfaces.hpp"

namespace placebench {

struct SceneGenConfig {
  double resolution = 0.05;
  double room_min = 4.6;   // interior side, meters
  double room_max = 6.4;
  double ceiling = 2.2;
  int min_furniture = 2;
  int max_furniture = 4;
  int max_objects = 3;
};

SceneSpec generate_scene(uint64_t seed, const SceneGenConfig& cfg = {});

struct EpisodeSpec {
  std::string episode_id;
  std::string scene_file;  // empty when the scene travels in memory
  double start_x = 0, start_y = 0;
  double start_heading_deg = 0;
  std::string category;
  uint64_t seed = 0;
};

std::string episode_to_json(const EpisodeSpec& ep);
EpisodeSpec episode_from_json(const std::string& json);

struct GeneratedEpisode {
  SceneSpec scene;
  EpisodeSpec episode;
};

// One valid, uncluttered receptacle for the category within 2 m of the start
// pose; nothing else in the room.
GeneratedEpisode generate_easy_episode(uint64_t seed);

// Random furniture mix and clutter; the category may have no valid or no
// reachable receptacle.
GeneratedEpisode generate_mixed_episode(uint64_t seed);

// Free-space check used when validating start poses.
bool start_pose_free(const SceneSpec& scene, double x, double y, double radius);

}  // namespace placebench
