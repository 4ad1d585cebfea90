#pragma once

// Category -> receptacle prior tables. Two distinct tables ship and are never
// merged: the surface-grounded table used by the RSP/RSR metrics and the
// LLM-style table used by the prior-based baseline predictor.

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace placebench {

class ReceptaclePriorTable {
 public:
  // Keys are matched with the same normalization as scene categories.
  const std::vector<std::string>* find(const std::string& category) const;
  const std::vector<std::string>& at(const std::string& category) const;
  void set(const std::string& category, std::vector<std::string> receptacles);
  const std::map<std::string, std::vector<std::string>>& entries() const {
    return entries_;
  }

  static ReceptaclePriorTable eval_builtin();
  static ReceptaclePriorTable baseline_builtin();

  std::string to_json() const;
  static ReceptaclePriorTable from_json(const std::string& json);
  static ReceptaclePriorTable load(const std::string& path);
  void save(const std::string& path) const;

 private:
  std::map<std::string, std::vector<std::string>> entries_;  // normalized key
  std::map<std::string, std::string> display_;               // key -> original
};

// Object footprint sizes (square side, meters) used when testing whether a
// placement patch can hold the category.
struct FootprintTable {
  std::map<std::string, double> side_m;  // normalized category name
  double default_side = 0.30;

  double side_for(const std::string& category) const;
  static FootprintTable builtin();
  std::string to_json() const;
  static FootprintTable from_json(const std::string& json);
};

// The nine pipeline target object categories.
const std::vector<std::string>& target_categories();
bool is_target_category(const std::string& name);

}  // namespace placebench
