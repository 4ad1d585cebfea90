#include "placebench/priors.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "placebench/scene.hpp"

namespace placebench {

const std::vector<std::string>* ReceptaclePriorTable::find(
    const std::string& category) const {
  auto it = entries_.find(CategoryRegistry::normalize(category));
  if (it == entries_.end()) return nullptr;
  return &it->second;
}

const std::vector<std::string>& ReceptaclePriorTable::at(
    const std::string& category) const {
  const auto* v = find(category);
  if (!v) throw std::invalid_argument("prior table: category absent: " + category);
  return *v;
}

void ReceptaclePriorTable::set(const std::string& category,
                               std::vector<std::string> receptacles) {
  std::string key = CategoryRegistry::normalize(category);
  entries_[key] = std::move(receptacles);
  display_[key] = category;
}

ReceptaclePriorTable ReceptaclePriorTable::eval_builtin() {
  ReceptaclePriorTable t;
  t.set("Cushion", {"Couch", "Bed", "Sofa", "Armchair"});
  t.set("Potted Plant",
        {"Coffee Table", "Table", "Chest of Drawers", "Shelve", "Kitchen Counter"});
  t.set("Book", {"Coffee Table", "Table", "Shelves", "Couch", "Sofa"});
  t.set("Vase", {"Coffee Table", "Table", "Chest of Drawers", "Shelf", "Kitchen Counter"});
  t.set("Alarm Clock", {"Bedside Table", "Table", "Chest of Drawers"});
  t.set("Laptop", {"Bed", "Desk", "Coffee Table", "Table"});
  t.set("Table Lamp", {"Bedside Table", "Chest of Drawers"});
  t.set("Toaster", {"Kitchen Counter"});
  t.set("Trash Can", {});
  return t;
}

ReceptaclePriorTable ReceptaclePriorTable::baseline_builtin() {
  ReceptaclePriorTable t;
  t.set("Cushion", {"Couch", "Bed", "Sofa", "Armchair", "Bench"});
  t.set("Potted Plant",
        {"Window Sill", "Table", "Chest of Drawers", "Shelve", "Balcony"});
  t.set("Book", {"Coffee Table", "Table", "Bookshelf", "Desk", "Nightstand", "Bed"});
  t.set("Vase", {"Coffee Table", "Table", "Shelf", "Mantle", "Window Sill"});
  t.set("Alarm Clock", {"Bedside Table", "Nightstand", "Desk", "Shelf"});
  t.set("Laptop", {"Desk", "Table", "Workstation"});
  t.set("Table Lamp", {"Desk", "Nightstand", "End Table", "Shelf"});
  t.set("Toaster", {"Kitchen Counter", "Shelf", "Pantry"});
  t.set("Trash Can", {"Kitchen", "Bathroom", "Bedroom", "Office"});  // room labels
  return t;
}

std::string ReceptaclePriorTable::to_json() const {
  nlohmann::ordered_json j;
  for (const auto& [key, receptacles] : entries_) {
    auto it = display_.find(key);
    j[it == display_.end() ? key : it->second] = receptacles;
  }
  return j.dump(2);
}

ReceptaclePriorTable ReceptaclePriorTable::from_json(const std::string& json) {
  nlohmann::json j = nlohmann::json::parse(json);
  if (!j.is_object()) throw std::invalid_argument("prior table: expected an object");
  ReceptaclePriorTable t;
  for (auto& [key, value] : j.items())
    t.set(key, value.get<std::vector<std::string>>());
  return t;
}

ReceptaclePriorTable ReceptaclePriorTable::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open prior table: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return from_json(ss.str());
}

void ReceptaclePriorTable::save(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write prior table: " + path);
  f << to_json() << "\n";
}

double FootprintTable::side_for(const std::string& category) const {
  auto it = side_m.find(CategoryRegistry::normalize(category));
  return it == side_m.end() ? default_side : it->second;
}

FootprintTable FootprintTable::builtin() {
  FootprintTable t;
  auto put = [&](const std::string& name, double side) {
    t.side_m[CategoryRegistry::normalize(name)] = side;
  };
  put("Cushion", 0.45);
  put("Potted Plant", 0.30);
  put("Book", 0.20);
  put("Vase", 0.15);
  put("Alarm Clock", 0.10);
  put("Laptop", 0.30);
  put("Table Lamp", 0.20);
  put("Toaster", 0.25);
  put("Trash Can", 0.30);
  put("Lamp", 0.30);
  return t;
}

std::string FootprintTable::to_json() const {
  nlohmann::ordered_json j;
  j["default"] = default_side;
  for (const auto& [k, v] : side_m) j["sides"][k] = v;
  return j.dump(2);
}

FootprintTable FootprintTable::from_json(const std::string& json) {
  nlohmann::json j = nlohmann::json::parse(json);
  FootprintTable t;
  t.default_side = j.value("default", 0.30);
  if (j.contains("sides"))
    for (auto& [k, v] : j["sides"].items())
      t.side_m[CategoryRegistry::normalize(k)] = v.get<double>();
  return t;
}

const std::vector<std::string>& target_categories() {
  static const std::vector<std::string> kCategories = {
      "Potted Plant", "Lamp",       "Cushion",     "Vase",   "Trash Can",
      "Toaster",      "Table Lamp", "Alarm Clock", "Laptop"};
  return kCategories;
}

bool is_target_category(const std::string& name) {
  std::string key = CategoryRegistry::normalize(name);
  for (const auto& c : target_categories())
    if (CategoryRegistry::normalize(c) == key) return true;
  return false;
}

}  // namespace placebench
