#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "placebench/scene.hpp"

namespace placebench {

namespace {

// Cell sets serialize as alternating skip/run lengths over flat indices,
// starting with a skip.
nlohmann::ordered_json cells_to_runs(const std::vector<int64_t>& cells) {
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  int64_t pos = 0;
  size_t i = 0;
  while (i < cells.size()) {
    int64_t start = cells[i];
    size_t j = i;
    while (j + 1 < cells.size() && cells[j + 1] == cells[j] + 1) ++j;
    runs.push_back(start - pos);              // skip
    runs.push_back(cells[j] - start + 1);     // run
    pos = cells[j] + 1;
    i = j + 1;
  }
  return runs;
}

std::vector<int64_t> runs_to_cells(const nlohmann::json& runs) {
  if (runs.size() % 2 != 0)
    throw std::invalid_argument("scene: malformed cell runs");
  std::vector<int64_t> cells;
  int64_t pos = 0;
  for (size_t i = 0; i < runs.size(); i += 2) {
    pos += runs[i].get<int64_t>();
    int64_t len = runs[i + 1].get<int64_t>();
    for (int64_t k = 0; k < len; ++k) cells.push_back(pos + k);
    pos += len;
  }
  return cells;
}

}  // namespace

std::string scene_to_json(const SceneSpec& scene) {
  nlohmann::ordered_json j;
  j["dims"] = {scene.nx(), scene.ny(), scene.nz()};
  j["resolution"] = scene.resolution();
  j["origin"] = {scene.origin().x, scene.origin().y, scene.origin().z};
  j["instances"] = nlohmann::ordered_json::array();
  for (const Instance& inst : scene.instances()) {
    nlohmann::ordered_json ji;
    ji["id"] = inst.id;
    ji["category"] = scene.categories().name(inst.category);
    ji["receptacle"] = inst.receptacle;
    ji["cells"] = cells_to_runs(inst.cells);
    j["instances"].push_back(std::move(ji));
  }
  return j.dump();
}

SceneSpec scene_from_json(const std::string& json) {
  nlohmann::json j = nlohmann::json::parse(json);
  GridDims dims{j["dims"][0].get<int>(), j["dims"][1].get<int>(),
                j["dims"][2].get<int>()};
  Vec3 origin{j["origin"][0].get<double>(), j["origin"][1].get<double>(),
              j["origin"][2].get<double>()};
  SceneSpec scene(dims, j["resolution"].get<double>(), origin);
  for (const auto& ji : j["instances"]) {
    scene.add_instance_with_id(ji["id"].get<int>(),
                               ji["category"].get<std::string>(),
                               ji["receptacle"].get<bool>(),
                               runs_to_cells(ji["cells"]));
  }
  return scene;
}

void save_scene(const SceneSpec& scene, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write scene: " + path);
  f << scene_to_json(scene) << "\n";
}

SceneSpec load_scene(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open scene: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return scene_from_json(ss.str());
}

}  // namespace placebench
