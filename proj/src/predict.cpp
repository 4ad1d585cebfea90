#include "placebench/predict.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "placebench/image.hpp"

namespace placebench {

OraclePredictor::OraclePredictor(PlacementConfig cfg) : cfg_(std::move(cfg)) {}

Heatmap OraclePredictor::predict(const ViewObservation& obs,
                                 const std::string& category) {
  if (!obs.scene) throw std::invalid_argument("oracle predictor needs a scene");
  RegionSet regions = gt_placements(*obs.scene, category, obs.view, cfg_);
  Heatmap heat(obs.view.width, obs.view.height);
  for (const Region& r : regions.regions)
    for (const Pixel& p : r.pixels) heat.set(p.row, p.col, 1.0);
  return heat;
}

PriorPredictor::PriorPredictor(ReceptaclePriorTable table, bool surface_grounded,
                               int min_clearance)
    : table_(std::move(table)),
      surface_grounded_(surface_grounded),
      min_clearance_(min_clearance) {}

Heatmap PriorPredictor::predict(const ViewObservation& obs,
                                const std::string& category) {
  if (!obs.scene) throw std::invalid_argument("prior predictor needs a scene");
  const SceneSpec& scene = *obs.scene;
  const std::vector<std::string>& receptacles = table_.at(category);

  std::vector<int> valid_ids;
  for (const std::string& name : receptacles)
    if (auto id = scene.categories().find(name)) valid_ids.push_back(*id);

  Heatmap heat(obs.view.width, obs.view.height);
  if (valid_ids.empty()) {
    if (!receptacles.empty() && !warned_unresolvable_) {
      std::cerr << "prior predictor: no receptacle category for '" << category
                << "' resolves in this scene; emitting an empty prediction\n";
      warned_unresolvable_ = true;
    }
    return heat;
  }

  if (surface_grounded_) {
    auto surfaces = extract_placeable_surfaces(scene, valid_ids, min_clearance_);
    for (const PlaceableSurface& s : surfaces) {
      BinaryMask m = surface_view_mask(obs.view, s);
      for (int r = 0; r < heat.height; ++r)
        for (int c = 0; c < heat.width; ++c)
          if (m.at(r, c)) heat.set(r, c, 1.0);
    }
  } else {
    for (int r = 0; r < heat.height; ++r) {
      for (int c = 0; c < heat.width; ++c) {
        int32_t inst_id = obs.view.instance_at(r, c);
        if (inst_id < 0) continue;
        const Instance* inst = scene.find_instance(inst_id);
        if (!inst || !inst->receptacle) continue;
        if (std::find(valid_ids.begin(), valid_ids.end(), inst->category) !=
            valid_ids.end())
          heat.set(r, c, 1.0);
      }
    }
  }
  return heat;
}

Heatmap ConstantPredictor::predict(const ViewObservation& obs,
                                   const std::string& category) {
  (void)category;
  Heatmap heat(obs.view.width, obs.view.height);
  for (auto& v : heat.v) v = value_;
  return heat;
}

Heatmap FileHeatmapPredictor::predict(const ViewObservation& obs,
                                      const std::string& category) {
  (void)category;
  auto path = dir_ / (obs.image_id + ".png");
  return heatmap_from_gray16(png_to_gray16(read_file(path)));
}

std::unique_ptr<Predictor> make_predictor(const std::string& kind,
                                          const std::string& heatmap_dir) {
  if (kind == "oracle") return std::make_unique<OraclePredictor>();
  if (kind == "prior")
    return std::make_unique<PriorPredictor>(ReceptaclePriorTable::baseline_builtin(),
                                            /*surface_grounded=*/false);
  if (kind == "prior-surface")
    return std::make_unique<PriorPredictor>(ReceptaclePriorTable::eval_builtin(),
                                            /*surface_grounded=*/true);
  if (kind == "constant-zero") return std::make_unique<ConstantPredictor>(0.0);
  if (kind == "files") return std::make_unique<FileHeatmapPredictor>(heatmap_dir);
  throw std::invalid_argument("unknown predictor kind: " + kind);
}

Heatmap bbox_adapter(const std::vector<BBox>& boxes, int width, int height) {
  Heatmap heat(width, height);
  for (const BBox& b : boxes) {
    RasterizedBox raster = bbox_to_mask(b, width, height);
    for (int r = 0; r < height; ++r)
      for (int c = 0; c < width; ++c)
        if (raster.mask.at(r, c)) heat.set(r, c, 1.0);
  }
  return heat;
}

namespace {

std::vector<double> extract_numbers(const std::string& text, size_t cap) {
  std::vector<double> nums;
  const char* p = text.c_str();
  while (*p && nums.size() < cap) {
    if (std::isdigit(static_cast<unsigned char>(*p)) || *p == '.' ||
        ((*p == '-' || *p == '+') &&
         std::isdigit(static_cast<unsigned char>(p[1])))) {
      char* end = nullptr;
      nums.push_back(std::strtod(p, &end));
      p = end;
    } else {
      ++p;
    }
  }
  return nums;
}

// A bracketed group takes priority so prose like "box 2: [0,0,.25,.25]" keeps
// only the coordinates.
bool parse_box_line(const std::string& line, BBox& out) {
  std::string payload = line;
  size_t open = line.find('[');
  size_t close = line.find(']', open == std::string::npos ? 0 : open);
  if (open != std::string::npos && close != std::string::npos && close > open)
    payload = line.substr(open + 1, close - open - 1);
  std::vector<double> nums = extract_numbers(payload, 5);
  if (nums.size() != 4) return false;
  BBox b{nums[0], nums[1], nums[2], nums[3], BBox::Units::Normalized};
  if (!b.valid()) return false;
  out = b;
  return true;
}

}  // namespace

ParsedBoxes parse_bbox_lines(const std::string& text) {
  ParsedBoxes out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::string upper;
    for (char c : line) upper.push_back(static_cast<char>(std::toupper(
        static_cast<unsigned char>(c))));
    if (upper.find("NONE") != std::string::npos) {
      out.none_marker = true;
      continue;
    }
    bool has_digit = std::any_of(line.begin(), line.end(), [](char c) {
      return std::isdigit(static_cast<unsigned char>(c));
    });
    if (!has_digit) continue;  // prose line
    BBox box;
    if (parse_box_line(line, box))
      out.boxes.push_back(box);
    else
      ++out.skipped_lines;
  }
  return out;
}

Heatmap heatmap_from_gray16(const ImageGray16& img) {
  Heatmap heat(img.width, img.height);
  for (size_t i = 0; i < img.v.size(); ++i) heat.v[i] = img.v[i] / 65535.0;
  return heat;
}

ImageGray16 heatmap_to_gray16(const Heatmap& heat) {
  ImageGray16 img(heat.width, heat.height);
  for (size_t i = 0; i < heat.v.size(); ++i)
    img.v[i] = static_cast<uint16_t>(std::lround(heat.v[i] * 65535.0));
  return img;
}

std::string heatmap_to_json(const Heatmap& heat) {
  nlohmann::ordered_json j;
  j["w"] = heat.width;
  j["h"] = heat.height;
  j["v"] = heat.v;
  return j.dump();
}

Heatmap heatmap_from_json(const std::string& json) {
  nlohmann::json j = nlohmann::json::parse(json);
  Heatmap heat(j.at("w").get<int>(), j.at("h").get<int>());
  std::vector<double> values = j.at("v").get<std::vector<double>>();
  if (values.size() != heat.v.size())
    throw std::invalid_argument("heatmap json: value count does not match dims");
  heat.v = std::move(values);
  heat.validate();
  return heat;
}

}  // namespace placebench
