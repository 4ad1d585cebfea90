#pragma once

// Semantic voxel scenes: per-cell occupancy, category label and instance id,
// plus the instance table. Scenes are treated as immutable values once built;
// removal returns a modified copy.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "placebench/camera.hpp"
#include "placebench/voxel.hpp"

namespace placebench {

struct Cell {
  int x = 0, y = 0, z = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

// Category names with stable integer ids. Id 0 is the empty/background label.
// Lookup normalizes case and the shelf/shelve/shelves spelling variants so
// prior tables written with either form resolve to the same category.
class CategoryRegistry {
 public:
  CategoryRegistry();

  int id(const std::string& name);                       // registers if new
  std::optional<int> find(const std::string& name) const;
  const std::string& name(int id) const { return names_[static_cast<size_t>(id)]; }
  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }

  static std::string normalize(const std::string& name);

 private:
  std::vector<std::string> names_;
  std::map<std::string, int> by_normalized_;
};

struct Instance {
  int id = -1;
  int category = 0;
  bool receptacle = false;
  std::vector<int64_t> cells;  // sorted flat indices
  Vec3 centroid;
};

class SceneSpec {
 public:
  SceneSpec() = default;
  SceneSpec(GridDims dims, double resolution, Vec3 origin);

  int nx() const { return dims_.nx; }
  int ny() const { return dims_.ny; }
  int nz() const { return dims_.nz; }
  GridDims dims() const { return dims_; }
  double resolution() const { return resolution_; }
  const Vec3& origin() const { return origin_; }

  int64_t idx(int x, int y, int z) const {
    return (static_cast<int64_t>(z) * dims_.ny + y) * dims_.nx + x;
  }
  Cell cell_from_idx(int64_t i) const;
  bool in_bounds(const Cell& c) const {
    return c.x >= 0 && c.x < dims_.nx && c.y >= 0 && c.y < dims_.ny && c.z >= 0 &&
           c.z < dims_.nz;
  }

  bool occupied(int64_t i) const { return occupancy_[static_cast<size_t>(i)] != 0; }
  bool occupied(const Cell& c) const { return occupied(idx(c.x, c.y, c.z)); }
  int16_t label_at(int64_t i) const { return label_[static_cast<size_t>(i)]; }
  int32_t instance_at(int64_t i) const { return instance_[static_cast<size_t>(i)]; }

  // Cell containing a world point; may be out of bounds.
  Cell cell_of_point(const Vec3& p) const;
  Vec3 cell_center(const Cell& c) const;

  CategoryRegistry& categories() { return categories_; }
  const CategoryRegistry& categories() const { return categories_; }

  int add_instance(const std::string& category, bool receptacle,
                   std::vector<int64_t> cells);
  int add_instance_with_id(int id, const std::string& category, bool receptacle,
                           std::vector<int64_t> cells);
  const std::vector<Instance>& instances() const { return instances_; }
  const Instance* find_instance(int id) const;

  // Copy of the scene with the instance's cells freed.
  SceneSpec remove_object(int instance_id) const;

  uint64_t content_hash() const;

 private:
  GridDims dims_;
  double resolution_ = 0.05;
  Vec3 origin_;
  std::vector<uint8_t> occupancy_;
  std::vector<int16_t> label_;
  std::vector<int32_t> instance_;
  CategoryRegistry categories_;
  std::vector<Instance> instances_;
  int next_instance_id_ = 0;
};

// Scene + episode serialization (JSON; cell sets as skip/run RLE over flat
// indices).
std::string scene_to_json(const SceneSpec& scene);
SceneSpec scene_from_json(const std::string& json);
void save_scene(const SceneSpec& scene, const std::string& path);
SceneSpec load_scene(const std::string& path);

}  // namespace placebench
