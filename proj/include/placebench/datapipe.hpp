#pragma once

// Training-data pipeline decision logic over pluggable model clients:
// detection prompting, inpaint target/distractor sampling, re-detection
// filtering and record assembly. Heavy model inference stays behind the
// ModelClient contract; deterministic mocks ship for tests and offline runs.

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "placebench/image.hpp"
#include "placebench/mask.hpp"
#include "placebench/priors.hpp"
#include "placebench/rng.hpp"

namespace placebench {

struct Detection {
  std::string category;
  BBox bbox;  // pixel units
  double score = 0;
  std::optional<BinaryMask> mask;
};

struct ScoredMask {
  BinaryMask mask;
  double score = 0;
};

// The three request/response channels of the external model stack.
class ModelClient {
 public:
  virtual ~ModelClient() = default;
  virtual std::vector<Detection> detect(const ImageRGB& image) = 0;
  virtual std::vector<ScoredMask> segment(const ImageRGB& image, Pixel point) = 0;
  virtual ImageRGB inpaint(const ImageRGB& image, const BinaryMask& mask) = 0;
};

struct ProvenanceEntry {
  std::string op;
  uint64_t seed = 0;
  std::string note;
};

struct PipelineRecord {
  std::string source_id;
  std::string category;
  std::vector<std::string> variant_ids;
  BinaryMask sp_annotation;  // union of the removed target-instance masks
  std::vector<std::string> distractor_categories;
  std::vector<ProvenanceEntry> provenance;
};

std::string record_to_json(const PipelineRecord& record);
PipelineRecord record_from_json(const std::string& json);

// Center of the detection box, rounded to the nearest pixel; the segmentation
// point prompt.
Pixel sam_prompt(const Detection& det);

// Highest-confidence candidate; ties go to the first.
const BinaryMask& pick_best_mask(const std::vector<ScoredMask>& candidates);

struct TargetSelection {
  std::vector<Detection> targets;
  std::vector<Detection> distractors;
};

// Random non-empty subset of the category's instances (each kept with p=0.5,
// resampled while empty) plus 1-4 distractors drawn from the other target
// categories, fewer when unavailable.
TargetSelection select_inpaint_targets(const std::vector<Detection>& detections,
                                       const std::string& category, DetRng& rng);

enum class FilterDecision { Keep, Discard };

// Discard when any post-inpainting detection of a removed instance's category
// overlaps that instance with IoU above the threshold. Masks are compared
// when both sides have them, boxes otherwise (noted in the log).
FilterDecision verify_inpainting(const std::vector<Detection>& before,
                                 const std::vector<Detection>& after,
                                 const std::vector<Detection>& removed,
                                 double iou_threshold = 0.9,
                                 std::vector<std::string>* log = nullptr);

PipelineRecord build_record(const std::string& source_id, const std::string& category,
                            const std::vector<BinaryMask>& removed_target_masks,
                            std::vector<std::string> variant_ids,
                            std::vector<std::string> distractor_categories,
                            std::vector<ProvenanceEntry> provenance);

struct PipelineConfig {
  uint64_t seed = 0;
  double iou_threshold = 0.9;
};

struct PipelineStats {
  int images = 0;
  int detected_instances = 0;
  int inpainted = 0;
  int kept = 0;
  int filtered = 0;
  int skipped = 0;
  std::map<std::string, int> skip_reasons;
};

struct PipelineOutput {
  std::vector<PipelineRecord> records;
  PipelineStats stats;
};

using VariantWriter =
    std::function<void(const std::string& variant_id, const ImageRGB& image)>;

// Detect -> sample targets/distractors -> segment -> inpaint -> re-detect ->
// filter -> record, per image. Client failures skip the image and never abort
// the run. Deterministic for a fixed seed: every image derives its own stream
// from (seed, image id).
PipelineOutput run_pipeline(
    const std::vector<std::pair<std::string, ImageRGB>>& images,
    ModelClient& client, const PipelineConfig& cfg,
    const VariantWriter& write_variant = {});

// --- deterministic mock model stack ---

struct MockClientOptions {
  bool echo_inpaint = false;  // return the input unchanged (forces filtering)
  int border_ring = 5;        // ring width for mean-color fill
  double detect_score = 0.9;
};

// Categories render as exact palette colors; detection is connected-component
// extraction per color, segmentation floods the color region at the prompt,
// inpainting fills with the mean color of a ring around the mask.
class MockModelClient : public ModelClient {
 public:
  explicit MockModelClient(MockClientOptions options = {});
  std::vector<Detection> detect(const ImageRGB& image) override;
  std::vector<ScoredMask> segment(const ImageRGB& image, Pixel point) override;
  ImageRGB inpaint(const ImageRGB& image, const BinaryMask& mask) override;

 private:
  MockClientOptions options_;
};

struct Rgb {
  uint8_t r = 0, g = 0, b = 0;
};

// Fixed color assigned to each target category in fixture images.
Rgb category_color(const std::string& category);

// Synthetic indoor-photo stand-in: flat background plus colored rectangles
// for a few target-category instances.
ImageRGB make_fixture_image(DetRng& rng, int width = 96, int height = 72,
                            int max_instances = 5);

}  // namespace placebench
