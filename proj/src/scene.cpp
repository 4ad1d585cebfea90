#include "placebench/scene.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "placebench/rng.hpp"

namespace placebench {

CategoryRegistry::CategoryRegistry() {
  names_.push_back("void");
  by_normalized_["void"] = 0;
}

std::string CategoryRegistry::normalize(const std::string& name) {
  std::string out;
  out.reserve(name.size());
  for (char c : name) {
    if (c == '_') c = ' ';
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  // trim
  size_t a = out.find_first_not_of(' ');
  size_t b = out.find_last_not_of(' ');
  out = a == std::string::npos ? "" : out.substr(a, b - a + 1);
  if (out == "shelve" || out == "shelves") out = "shelf";
  return out;
}

int CategoryRegistry::id(const std::string& name) {
  std::string key = normalize(name);
  auto it = by_normalized_.find(key);
  if (it != by_normalized_.end()) return it->second;
  int new_id = static_cast<int>(names_.size());
  names_.push_back(name);
  by_normalized_[key] = new_id;
  return new_id;
}

std::optional<int> CategoryRegistry::find(const std::string& name) const {
  auto it = by_normalized_.find(normalize(name));
  if (it == by_normalized_.end()) return std::nullopt;
  return it->second;
}

SceneSpec::SceneSpec(GridDims dims, double resolution, Vec3 origin)
    : dims_(dims), resolution_(resolution), origin_(origin) {
  if (dims.nx <= 0 || dims.ny <= 0 || dims.nz <= 0)
    throw std::invalid_argument("scene: dims must be positive");
  if (resolution <= 0) throw std::invalid_argument("scene: resolution must be > 0");
  size_t n = static_cast<size_t>(dims.nx) * dims.ny * dims.nz;
  occupancy_.assign(n, 0);
  label_.assign(n, 0);
  instance_.assign(n, -1);
}

Cell SceneSpec::cell_from_idx(int64_t i) const {
  Cell c;
  c.x = static_cast<int>(i % dims_.nx);
  c.y = static_cast<int>((i / dims_.nx) % dims_.ny);
  c.z = static_cast<int>(i / (static_cast<int64_t>(dims_.nx) * dims_.ny));
  return c;
}

Cell SceneSpec::cell_of_point(const Vec3& p) const {
  return Cell{static_cast<int>(std::floor((p.x - origin_.x) / resolution_)),
              static_cast<int>(std::floor((p.y - origin_.y) / resolution_)),
              static_cast<int>(std::floor((p.z - origin_.z) / resolution_))};
}

Vec3 SceneSpec::cell_center(const Cell& c) const {
  return Vec3{origin_.x + (c.x + 0.5) * resolution_,
              origin_.y + (c.y + 0.5) * resolution_,
              origin_.z + (c.z + 0.5) * resolution_};
}

int SceneSpec::add_instance(const std::string& category, bool receptacle,
                            std::vector<int64_t> cells) {
  return add_instance_with_id(next_instance_id_, category, receptacle,
                              std::move(cells));
}

int SceneSpec::add_instance_with_id(int id, const std::string& category,
                                    bool receptacle, std::vector<int64_t> cells) {
  if (cells.empty()) throw std::invalid_argument("instance: empty cell set");
  if (find_instance(id)) throw std::invalid_argument("instance: duplicate id");
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());

  Instance inst;
  inst.id = id;
  inst.category = categories_.id(category);
  inst.receptacle = receptacle;

  Vec3 sum{0, 0, 0};
  for (int64_t i : cells) {
    if (i < 0 || i >= static_cast<int64_t>(occupancy_.size()))
      throw std::invalid_argument("instance: cell out of bounds");
    occupancy_[static_cast<size_t>(i)] = 1;
    label_[static_cast<size_t>(i)] = static_cast<int16_t>(inst.category);
    instance_[static_cast<size_t>(i)] = id;
    sum = sum + cell_center(cell_from_idx(i));
  }
  inst.centroid = sum * (1.0 / static_cast<double>(cells.size()));
  inst.cells = std::move(cells);
  instances_.push_back(std::move(inst));
  next_instance_id_ = std::max(next_instance_id_, id + 1);
  return id;
}

const Instance* SceneSpec::find_instance(int id) const {
  for (const Instance& inst : instances_)
    if (inst.id == id) return &inst;
  return nullptr;
}

SceneSpec SceneSpec::remove_object(int instance_id) const {
  const Instance* inst = find_instance(instance_id);
  if (!inst) throw std::invalid_argument("remove_object: unknown instance id");
  SceneSpec out = *this;
  for (int64_t i : inst->cells) {
    out.occupancy_[static_cast<size_t>(i)] = 0;
    out.label_[static_cast<size_t>(i)] = 0;
    out.instance_[static_cast<size_t>(i)] = -1;
  }
  out.instances_.erase(
      std::remove_if(out.instances_.begin(), out.instances_.end(),
                     [&](const Instance& it) { return it.id == instance_id; }),
      out.instances_.end());
  return out;
}

uint64_t SceneSpec::content_hash() const {
  uint64_t h = splitmix64(0xc0ffee ^ static_cast<uint64_t>(dims_.nx) ^
                          (static_cast<uint64_t>(dims_.ny) << 20) ^
                          (static_cast<uint64_t>(dims_.nz) << 40));
  for (size_t i = 0; i < occupancy_.size(); ++i) {
    uint64_t v = (static_cast<uint64_t>(occupancy_[i]) << 48) ^
                 (static_cast<uint64_t>(static_cast<uint16_t>(label_[i])) << 32) ^
                 static_cast<uint64_t>(static_cast<uint32_t>(instance_[i]));
    h = splitmix64(h ^ v ^ i);
  }
  return h;
}

}  // namespace placebench
