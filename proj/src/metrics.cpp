#include "placebench/metrics.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace placebench {

MatchResult match_regions(const RegionSet& preds, const RegionSet& gts,
                          const MatchConfig& cfg) {
  if (cfg.threshold <= 0.0 || cfg.threshold > 1.0)
    throw std::invalid_argument("match_regions: threshold must be in (0, 1]");
  if (preds.width != gts.width || preds.height != gts.height)
    throw std::invalid_argument("match_regions: frame mismatch");

  MatchResult out;
  out.assignment.resize(preds.regions.size());
  std::vector<bool> covered(gts.regions.size(), false);

  for (size_t j = 0; j < preds.regions.size(); ++j) {
    double best = -1.0;
    int best_gt = -1;
    for (size_t i = 0; i < gts.regions.size(); ++i) {
      double v = iop_regions(gts.regions[i], preds.regions[j]);
      if (v > best) {
        best = v;
        best_gt = static_cast<int>(i);
      }
      if (v >= cfg.threshold) covered[i] = true;
    }
    if (best_gt >= 0 && best >= cfg.threshold) {
      out.assignment[j] = best_gt;
    } else {
      ++out.fp;
    }
  }
  for (bool c : covered) c ? ++out.tp : ++out.fn;
  return out;
}

ImageMetrics image_metrics(const MatchResult& match, bool has_gt) {
  ImageMetrics out;
  out.counts = match;
  if (match.tp + match.fp > 0)
    out.precision = static_cast<double>(match.tp) / (match.tp + match.fp);
  if (has_gt)
    out.recall = static_cast<double>(match.tp) / (match.tp + match.fn);
  return out;
}

ImageMetrics receptacle_surface_metrics(const RegionSet& preds,
                                        const RegionSet& surfaces,
                                        const MatchConfig& cfg) {
  MatchResult match = match_regions(preds, surfaces, cfg);
  return image_metrics(match, !surfaces.regions.empty());
}

std::optional<double> target_precision(const RegionSet& preds,
                                       const RegionSet& gt_placements,
                                       const MatchConfig& cfg) {
  MatchResult match = match_regions(preds, gt_placements, cfg);
  return image_metrics(match, !gt_placements.regions.empty()).precision;
}

namespace {

struct Accum {
  double sum = 0;
  int n = 0;
  void add(const std::optional<double>& v) {
    if (v) {
      sum += *v;
      ++n;
    }
  }
  MetricMean result() const {
    MetricMean m;
    m.images = n;
    if (n > 0) m.mean = sum / n;
    return m;
  }
};

}  // namespace

DatasetReport aggregate(const std::vector<PerImageMetrics>& per_image) {
  Accum precision, recall, rsp, rsr, trp;
  for (const auto& row : per_image) {
    precision.add(row.precision);
    recall.add(row.recall);
    rsp.add(row.rsp);
    rsr.add(row.rsr);
    trp.add(row.trp);
  }
  DatasetReport report;
  report.precision = precision.result();
  report.recall = recall.result();
  report.rsp = rsp.result();
  report.rsr = rsr.result();
  report.trp = trp.result();
  report.total_images = static_cast<int>(per_image.size());
  return report;
}

namespace {

nlohmann::ordered_json metric_json(const MetricMean& m) {
  nlohmann::ordered_json j;
  j["mean"] = m.mean ? nlohmann::ordered_json(*m.mean) : nlohmann::ordered_json(nullptr);
  j["images"] = m.images;
  return j;
}

std::string cell(const std::optional<double>& v) {
  if (!v) return "";
  std::ostringstream os;
  os << *v;
  return os.str();
}

}  // namespace

std::string report_to_json(const DatasetReport& report) {
  nlohmann::ordered_json j;
  j["precision"] = metric_json(report.precision);
  j["recall"] = metric_json(report.recall);
  j["rsp"] = metric_json(report.rsp);
  j["rsr"] = metric_json(report.rsr);
  j["trp"] = metric_json(report.trp);
  j["counts"] = {{"total_images", report.total_images}};
  return j.dump(2);
}

std::string per_image_csv(const std::vector<PerImageMetrics>& per_image) {
  std::ostringstream os;
  os << "image_id,precision,recall,rsp,rsr,trp\n";
  for (const auto& row : per_image) {
    os << row.image_id << ',' << cell(row.precision) << ',' << cell(row.recall) << ','
       << cell(row.rsp) << ',' << cell(row.rsr) << ',' << cell(row.trp) << '\n';
  }
  return os.str();
}

}  // namespace placebench
