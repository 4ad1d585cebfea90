#pragma once

// Region matching against ground truth and the aggregate dataset metrics:
// precision, recall, receptacle-surface precision/recall (RSP/RSR) and
// target precision (TrP).
//
// A ground-truth region counts as covered when some prediction has
// IoP(gt, pred) >= T. Multiple predictions inside one GT region still count
// as a single true positive; a prediction reaching no GT region at the
// threshold is a false positive; uncovered GT regions are false negatives.

#include <optional>
#include <string>
#include <vector>

#include "placebench/mask.hpp"

namespace placebench {

struct MatchConfig {
  double threshold = 0.5;  // T in (0, 1]
};

struct MatchResult {
  int tp = 0;
  int fp = 0;
  int fn = 0;
  // For each prediction, the GT index it matched (max IoP, ties to the lowest
  // index), or nullopt for false positives.
  std::vector<std::optional<int>> assignment;
};

MatchResult match_regions(const RegionSet& preds, const RegionSet& gts,
                          const MatchConfig& cfg);

struct ImageMetrics {
  std::optional<double> precision;  // undefined when tp+fp == 0
  std::optional<double> recall;     // undefined when the image has no GT
  MatchResult counts;
};

ImageMetrics image_metrics(const MatchResult& match, bool has_gt);

// Same matching semantics with receptacle surface masks in place of GT
// regions; yields the per-image RSP/RSR contributions.
ImageMetrics receptacle_surface_metrics(const RegionSet& preds,
                                        const RegionSet& surfaces,
                                        const MatchConfig& cfg);

// Precision against scene-derived exact placement regions (TrP contribution).
std::optional<double> target_precision(const RegionSet& preds,
                                       const RegionSet& gt_placements,
                                       const MatchConfig& cfg);

struct PerImageMetrics {
  std::string image_id;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> rsp;
  std::optional<double> rsr;
  std::optional<double> trp;
};

struct MetricMean {
  std::optional<double> mean;
  int images = 0;  // images where the metric was defined
};

struct DatasetReport {
  MetricMean precision;
  MetricMean recall;
  MetricMean rsp;
  MetricMean rsr;
  MetricMean trp;
  int total_images = 0;
};

// Arithmetic mean per metric over the images where it is defined.
DatasetReport aggregate(const std::vector<PerImageMetrics>& per_image);

std::string report_to_json(const DatasetReport& report);
std::string per_image_csv(const std::vector<PerImageMetrics>& per_image);

}  // namespace placebench
