#include "placebench/datapipe.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "placebench/scene.hpp"

namespace placebench {

namespace {

nlohmann::ordered_json mask_json(const BinaryMask& mask) {
  nlohmann::ordered_json j;
  j["w"] = mask.width();
  j["h"] = mask.height();
  j["rle"] = mask_to_rle(mask);
  return j;
}

BinaryMask mask_from_json(const nlohmann::json& j) {
  return mask_from_rle(j.at("w").get<int>(), j.at("h").get<int>(),
                       j.at("rle").get<std::vector<int64_t>>());
}

}  // namespace

std::string record_to_json(const PipelineRecord& record) {
  nlohmann::ordered_json j;
  j["source_id"] = record.source_id;
  j["category"] = record.category;
  j["variants"] = record.variant_ids;
  j["sp_annotation"] = mask_json(record.sp_annotation);
  j["distractors"] = record.distractor_categories;
  j["provenance"] = nlohmann::ordered_json::array();
  for (const ProvenanceEntry& p : record.provenance)
    j["provenance"].push_back({{"op", p.op}, {"seed", p.seed}, {"note", p.note}});
  return j.dump();
}

PipelineRecord record_from_json(const std::string& json) {
  nlohmann::json j = nlohmann::json::parse(json);
  PipelineRecord r;
  r.source_id = j.at("source_id").get<std::string>();
  r.category = j.at("category").get<std::string>();
  r.variant_ids = j.at("variants").get<std::vector<std::string>>();
  r.sp_annotation = mask_from_json(j.at("sp_annotation"));
  r.distractor_categories = j.at("distractors").get<std::vector<std::string>>();
  for (const auto& p : j.at("provenance"))
    r.provenance.push_back({p.at("op").get<std::string>(),
                            p.at("seed").get<uint64_t>(),
                            p.at("note").get<std::string>()});
  return r;
}

Pixel sam_prompt(const Detection& det) {
  return Pixel{static_cast<int>(std::llround((det.bbox.y_min + det.bbox.y_max) / 2.0)),
               static_cast<int>(std::llround((det.bbox.x_min + det.bbox.x_max) / 2.0))};
}

const BinaryMask& pick_best_mask(const std::vector<ScoredMask>& candidates) {
  if (candidates.empty())
    throw std::invalid_argument("pick_best_mask: empty candidate list");
  size_t best = 0;
  for (size_t i = 1; i < candidates.size(); ++i)
    if (candidates[i].score > candidates[best].score) best = i;
  return candidates[best].mask;
}

TargetSelection select_inpaint_targets(const std::vector<Detection>& detections,
                                       const std::string& category, DetRng& rng) {
  std::string key = CategoryRegistry::normalize(category);
  std::vector<size_t> of_category;
  std::vector<size_t> others;
  for (size_t i = 0; i < detections.size(); ++i) {
    std::string det_key = CategoryRegistry::normalize(detections[i].category);
    if (det_key == key)
      of_category.push_back(i);
    else if (is_target_category(detections[i].category))
      others.push_back(i);
  }
  if (of_category.empty())
    throw std::invalid_argument("select_inpaint_targets: no instance of " + category);

  TargetSelection out;
  while (out.targets.empty()) {
    for (size_t i : of_category)
      if (rng.bernoulli(0.5)) out.targets.push_back(detections[i]);
  }

  if (!others.empty()) {
    int want = rng.uniform_int(1, 4);
    // partial Fisher-Yates draw without replacement
    std::vector<size_t> pool = others;
    int take = std::min<int>(want, static_cast<int>(pool.size()));
    for (int k = 0; k < take; ++k) {
      uint32_t j = k + rng.uniform_u32(static_cast<uint32_t>(pool.size() - k));
      std::swap(pool[k], pool[j]);
      out.distractors.push_back(detections[pool[k]]);
    }
  }
  return out;
}

namespace {

double detection_overlap(const Detection& a, const Detection& b,
                         std::vector<std::string>* log) {
  if (a.mask && b.mask && same_dims(*a.mask, *b.mask)) return iou(*a.mask, *b.mask);
  if (log) log->push_back("overlap for '" + a.category + "' compared on boxes");
  return bbox_iou(a.bbox, b.bbox);
}

}  // namespace

FilterDecision verify_inpainting(const std::vector<Detection>& before,
                                 const std::vector<Detection>& after,
                                 const std::vector<Detection>& removed,
                                 double iou_threshold,
                                 std::vector<std::string>* log) {
  (void)before;  // the removed instances came from the original detections
  for (const Detection& a : after) {
    std::string a_key = CategoryRegistry::normalize(a.category);
    for (const Detection& r : removed) {
      if (CategoryRegistry::normalize(r.category) != a_key) continue;
      double overlap = detection_overlap(a, r, log);
      if (overlap > iou_threshold) {
        if (log)
          log->push_back("re-detected '" + a.category + "' with IoU " +
                         std::to_string(overlap));
        return FilterDecision::Discard;
      }
    }
  }
  return FilterDecision::Keep;
}

PipelineRecord build_record(const std::string& source_id, const std::string& category,
                            const std::vector<BinaryMask>& removed_target_masks,
                            std::vector<std::string> variant_ids,
                            std::vector<std::string> distractor_categories,
                            std::vector<ProvenanceEntry> provenance) {
  if (removed_target_masks.empty())
    throw std::invalid_argument("build_record: empty removal set");
  BinaryMask annotation = removed_target_masks.front();
  for (size_t i = 1; i < removed_target_masks.size(); ++i)
    annotation = mask_union(annotation, removed_target_masks[i]);
  if (annotation.area() == 0)
    throw std::invalid_argument("build_record: empty sp annotation");

  PipelineRecord record;
  record.source_id = source_id;
  record.category = category;
  record.variant_ids = std::move(variant_ids);
  record.sp_annotation = std::move(annotation);
  record.distractor_categories = std::move(distractor_categories);
  record.provenance = std::move(provenance);
  return record;
}

PipelineOutput run_pipeline(
    const std::vector<std::pair<std::string, ImageRGB>>& images,
    ModelClient& client, const PipelineConfig& cfg,
    const VariantWriter& write_variant) {
  PipelineOutput out;
  DetRng root(cfg.seed);

  for (const auto& [image_id, image] : images) {
    ++out.stats.images;
    DetRng rng(splitmix64(cfg.seed ^ hash_str64(image_id)));
    try {
      std::vector<Detection> detections = client.detect(image);
      out.stats.detected_instances += static_cast<int>(detections.size());

      std::vector<std::string> present;
      for (const Detection& d : detections)
        if (is_target_category(d.category) &&
            std::find(present.begin(), present.end(), d.category) == present.end())
          present.push_back(d.category);
      if (present.empty()) {
        ++out.stats.skipped;
        ++out.stats.skip_reasons["no-detection"];
        continue;
      }
      std::string category =
          present[rng.uniform_u32(static_cast<uint32_t>(present.size()))];
      TargetSelection sel = select_inpaint_targets(detections, category, rng);

      std::vector<ProvenanceEntry> provenance;
      provenance.push_back({"detect", cfg.seed, std::to_string(detections.size()) +
                                                     " instances"});

      // segmentation via the center-point prompt, best of the scored masks
      auto refine = [&](std::vector<Detection>& dets) {
        for (Detection& d : dets) {
          Pixel prompt = sam_prompt(d);
          std::vector<ScoredMask> masks = client.segment(image, prompt);
          d.mask = pick_best_mask(masks);
          provenance.push_back({"segment", cfg.seed,
                                d.category + " @" + std::to_string(prompt.col) + "," +
                                    std::to_string(prompt.row)});
        }
      };
      refine(sel.targets);
      refine(sel.distractors);

      BinaryMask inpaint_mask(image.width, image.height);
      for (const Detection& d : sel.targets)
        inpaint_mask = mask_union(inpaint_mask, *d.mask);
      for (const Detection& d : sel.distractors)
        inpaint_mask = mask_union(inpaint_mask, *d.mask);

      const char* model = rng.bernoulli(0.5) ? "lama" : "stable-diffusion";
      ImageRGB inpainted = client.inpaint(image, inpaint_mask);
      ++out.stats.inpainted;
      provenance.push_back({"inpaint", cfg.seed, model});

      std::vector<Detection> after = client.detect(inpainted);
      std::vector<Detection> removed = sel.targets;
      removed.insert(removed.end(), sel.distractors.begin(), sel.distractors.end());
      std::vector<std::string> filter_log;
      if (verify_inpainting(detections, after, removed, cfg.iou_threshold,
                            &filter_log) == FilterDecision::Discard) {
        ++out.stats.filtered;
        continue;
      }

      std::string variant_id = image_id + "_v0";
      if (write_variant) write_variant(variant_id, inpainted);

      std::vector<BinaryMask> target_masks;
      for (const Detection& d : sel.targets) target_masks.push_back(*d.mask);
      std::vector<std::string> distractor_cats;
      for (const Detection& d : sel.distractors)
        distractor_cats.push_back(d.category);

      out.records.push_back(build_record(image_id, category, target_masks,
                                         {variant_id}, distractor_cats,
                                         std::move(provenance)));
      ++out.stats.kept;
    } catch (const std::exception& e) {
      ++out.stats.skipped;
      ++out.stats.skip_reasons[std::string("error: ") + e.what()];
    }
  }
  return out;
}

// --- mock clients ---

namespace {

const std::array<Rgb, 9> kPalette = {{
    {46, 139, 87},    // Potted Plant
    {255, 215, 0},    // Lamp
    {220, 20, 60},    // Cushion
    {70, 130, 180},   // Vase
    {105, 105, 105},  // Trash Can
    {205, 133, 63},   // Toaster
    {238, 130, 238},  // Table Lamp
    {0, 206, 209},    // Alarm Clock
    {123, 104, 238},  // Laptop
}};

BinaryMask color_mask(const ImageRGB& image, Rgb color) {
  BinaryMask m(image.width, image.height);
  for (int r = 0; r < image.height; ++r)
    for (int c = 0; c < image.width; ++c)
      if (image.same_color(r, c, color.r, color.g, color.b)) m.set(r, c);
  return m;
}

BBox region_bbox(const Region& region) {
  int min_r = region.pixels.front().row, max_r = min_r;
  int min_c = region.min_col, max_c = region.min_col;
  for (const Pixel& p : region.pixels) {
    min_r = std::min(min_r, p.row);
    max_r = std::max(max_r, p.row);
    min_c = std::min(min_c, p.col);
    max_c = std::max(max_c, p.col);
  }
  return BBox{static_cast<double>(min_c), static_cast<double>(min_r),
              static_cast<double>(max_c), static_cast<double>(max_r),
              BBox::Units::Pixel};
}

BinaryMask dilate(const BinaryMask& m) {
  BinaryMask out = m;
  for (int r = 0; r < m.height(); ++r)
    for (int c = 0; c < m.width(); ++c) {
      if (!m.at(r, c)) continue;
      for (int dr = -1; dr <= 1; ++dr)
        for (int dc = -1; dc <= 1; ++dc) {
          int nr = r + dr, nc = c + dc;
          if (nr >= 0 && nr < m.height() && nc >= 0 && nc < m.width())
            out.set(nr, nc);
        }
    }
  return out;
}

BinaryMask erode(const BinaryMask& m) {
  BinaryMask out(m.width(), m.height());
  for (int r = 0; r < m.height(); ++r)
    for (int c = 0; c < m.width(); ++c) {
      if (!m.at(r, c)) continue;
      bool keep = true;
      for (int dr = -1; dr <= 1 && keep; ++dr)
        for (int dc = -1; dc <= 1 && keep; ++dc) {
          int nr = r + dr, nc = c + dc;
          if (nr < 0 || nr >= m.height() || nc < 0 || nc >= m.width() ||
              !m.at(nr, nc))
            keep = false;
        }
      if (keep) out.set(r, c);
    }
  return out;
}

}  // namespace

Rgb category_color(const std::string& category) {
  const auto& cats = target_categories();
  std::string key = CategoryRegistry::normalize(category);
  for (size_t i = 0; i < cats.size(); ++i)
    if (CategoryRegistry::normalize(cats[i]) == key) return kPalette[i];
  throw std::invalid_argument("category_color: not a target category: " + category);
}

MockModelClient::MockModelClient(MockClientOptions options) : options_(options) {}

std::vector<Detection> MockModelClient::detect(const ImageRGB& image) {
  std::vector<Detection> out;
  const auto& cats = target_categories();
  for (size_t i = 0; i < cats.size(); ++i) {
    BinaryMask m = color_mask(image, kPalette[i]);
    if (m.area() == 0) continue;
    RegionSet regions = connected_components(m);
    for (const Region& region : regions.regions) {
      Detection d;
      d.category = cats[i];
      d.bbox = region_bbox(region);
      d.score = options_.detect_score;
      d.mask = region.to_mask(image.width, image.height);
      out.push_back(std::move(d));
    }
  }
  return out;
}

std::vector<ScoredMask> MockModelClient::segment(const ImageRGB& image, Pixel point) {
  if (point.row < 0 || point.row >= image.height || point.col < 0 ||
      point.col >= image.width)
    throw std::invalid_argument("segment: prompt outside the image");
  size_t i = image.idx(point.row, point.col);
  Rgb color{image.rgb[i], image.rgb[i + 1], image.rgb[i + 2]};
  BinaryMask same = color_mask(image, color);
  // connected region containing the prompt
  RegionSet regions = connected_components(same);
  BinaryMask exact(image.width, image.height);
  for (const Region& region : regions.regions) {
    bool contains = false;
    for (const Pixel& p : region.pixels)
      if (p == point) contains = true;
    if (contains) {
      exact = region.to_mask(image.width, image.height);
      break;
    }
  }
  return {{exact, 0.9}, {dilate(exact), 0.6}, {erode(exact), 0.45}};
}

ImageRGB MockModelClient::inpaint(const ImageRGB& image, const BinaryMask& mask) {
  if (mask.width() != image.width || mask.height() != image.height)
    throw std::invalid_argument("inpaint: mask dimensions mismatch");
  if (options_.echo_inpaint) return image;

  // mean color of a ring around the mask
  BinaryMask ring = mask;
  for (int k = 0; k < options_.border_ring; ++k) ring = dilate(ring);
  uint64_t sum_r = 0, sum_g = 0, sum_b = 0, n = 0;
  for (int r = 0; r < image.height; ++r)
    for (int c = 0; c < image.width; ++c)
      if (ring.at(r, c) && !mask.at(r, c)) {
        size_t i = image.idx(r, c);
        sum_r += image.rgb[i];
        sum_g += image.rgb[i + 1];
        sum_b += image.rgb[i + 2];
        ++n;
      }
  Rgb fill{128, 128, 128};
  if (n > 0)
    fill = Rgb{static_cast<uint8_t>(sum_r / n), static_cast<uint8_t>(sum_g / n),
               static_cast<uint8_t>(sum_b / n)};

  ImageRGB out = image;
  for (int r = 0; r < image.height; ++r)
    for (int c = 0; c < image.width; ++c)
      if (mask.at(r, c)) out.set(r, c, fill.r, fill.g, fill.b);
  return out;
}

ImageRGB make_fixture_image(DetRng& rng, int width, int height, int max_instances) {
  uint8_t bg = static_cast<uint8_t>(170 + rng.uniform_u32(40));
  ImageRGB image(width, height, bg, bg, static_cast<uint8_t>(bg - 6));

  struct Placed {
    int r0, c0, r1, c1;
  };
  std::vector<Placed> placed;
  int n = rng.uniform_int(1, max_instances);
  const auto& cats = target_categories();
  for (int k = 0; k < n; ++k) {
    const std::string& category =
        cats[rng.uniform_u32(static_cast<uint32_t>(cats.size()))];
    Rgb color = category_color(category);
    int h = rng.uniform_int(4, std::max(5, height / 4));
    int w = rng.uniform_int(4, std::max(5, width / 4));
    for (int attempt = 0; attempt < 40; ++attempt) {
      int r0 = rng.uniform_int(1, height - h - 1);
      int c0 = rng.uniform_int(1, width - w - 1);
      bool clear = true;
      for (const Placed& p : placed)
        if (!(r0 + h + 1 < p.r0 || p.r1 + 1 < r0 || c0 + w + 1 < p.c0 ||
              p.c1 + 1 < c0))
          clear = false;
      if (!clear) continue;
      for (int r = r0; r < r0 + h; ++r)
        for (int c = c0; c < c0 + w; ++c) image.set(r, c, color.r, color.g, color.b);
      placed.push_back({r0, c0, r0 + h - 1, c0 + w - 1});
      break;
    }
  }
  return image;
}

}  // namespace placebench
