#pragma once

// Placement predictors behind a single interface: a ground-truth oracle, the
// receptacle-prior predictor, a constant predictor, a file-backed loader for
// externally produced heatmaps, and the bbox-list output adapter.

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "placebench/modelmath.hpp"
#include "placebench/surfaces.hpp"

namespace placebench {

// One rendered observation. Scene-aware predictors use the scene pointer and
// camera; file-backed predictors key off image_id.
struct ViewObservation {
  const SceneSpec* scene = nullptr;
  CameraModel cam;
  RenderView view;
  std::string image_id;
};

class Predictor {
 public:
  virtual ~Predictor() = default;
  virtual Heatmap predict(const ViewObservation& obs, const std::string& category) = 0;
  virtual std::string name() const = 0;
};

// Emits 1.0 exactly on the scene-derived ground-truth placement regions.
class OraclePredictor : public Predictor {
 public:
  explicit OraclePredictor(PlacementConfig cfg = {});
  Heatmap predict(const ViewObservation& obs, const std::string& category) override;
  std::string name() const override { return "oracle"; }

 private:
  PlacementConfig cfg_;
};

// Marks receptacles listed in the prior table for the category. The
// surface-grounded variant keeps only upward placeable-surface pixels; the
// full variant marks every visible pixel of the receptacle.
class PriorPredictor : public Predictor {
 public:
  PriorPredictor(ReceptaclePriorTable table, bool surface_grounded,
                 int min_clearance = 4);
  Heatmap predict(const ViewObservation& obs, const std::string& category) override;
  std::string name() const override {
    return surface_grounded_ ? "prior_surface" : "prior_full";
  }

 private:
  ReceptaclePriorTable table_;
  bool surface_grounded_;
  int min_clearance_;
  bool warned_unresolvable_ = false;
};

class ConstantPredictor : public Predictor {
 public:
  explicit ConstantPredictor(double value = 0.0) : value_(value) {}
  Heatmap predict(const ViewObservation& obs, const std::string& category) override;
  std::string name() const override { return "constant"; }

 private:
  double value_;
};

// Loads <dir>/<image_id>.png (16-bit grayscale, value/65535) per observation.
class FileHeatmapPredictor : public Predictor {
 public:
  explicit FileHeatmapPredictor(std::filesystem::path dir) : dir_(std::move(dir)) {}
  Heatmap predict(const ViewObservation& obs, const std::string& category) override;
  std::string name() const override { return "file"; }

 private:
  std::filesystem::path dir_;
};

std::unique_ptr<Predictor> make_predictor(const std::string& kind,
                                          const std::string& heatmap_dir = "");

// Union of rasterized normalized boxes as a {0,1} heatmap.
Heatmap bbox_adapter(const std::vector<BBox>& boxes, int width, int height);

struct ParsedBoxes {
  std::vector<BBox> boxes;
  bool none_marker = false;
  int skipped_lines = 0;
};

// One box per line as "[min x, min y, max x, max y]", tolerating surrounding
// prose; the literal NONE marker means no placement.
ParsedBoxes parse_bbox_lines(const std::string& text);

Heatmap heatmap_from_gray16(const ImageGray16& img);
ImageGray16 heatmap_to_gray16(const Heatmap& heat);

// Float-array JSON alternative to the 16-bit PNG form:
// {"w":int,"h":int,"v":[floats...]}.
std::string heatmap_to_json(const Heatmap& heat);
Heatmap heatmap_from_json(const std::string& json);

}  // namespace placebench
