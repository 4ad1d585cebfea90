// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion pins its own tolerances and budgets.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <vector>

#include "placebench/commands.hpp"
#include "placebench/datapipe.hpp"
#include "placebench/metrics.hpp"
#include "placebench/policy.hpp"
#include "placebench/rng.hpp"
#include "placebench/viewpoints.hpp"

using namespace placebench;

namespace {

struct Criterion {
  int number;
  const char* title;
  std::function<bool(std::string&)> run;
  double budget_seconds;  // 0 = unbounded
};

BinaryMask block(int w, int h, int r0, int c0, int bh, int bw) {
  BinaryMask m(w, h);
  for (int r = r0; r < r0 + bh; ++r)
    for (int c = c0; c < c0 + bw; ++c) m.set(r, c);
  return m;
}

Region block_region(int r0, int c0, int bh, int bw) {
  std::vector<Pixel> px;
  for (int r = r0; r < r0 + bh; ++r)
    for (int c = c0; c < c0 + bw; ++c) px.push_back({r, c});
  return region_from_pixels(std::move(px));
}

bool check(bool cond, const char* what, std::string& detail) {
  if (!cond && detail.empty()) detail = what;
  return cond;
}

// ---------------------------------------------------------------- criterion 1
bool metric_definition_fidelity(std::string& detail) {
  BinaryMask gt = block(100, 100, 0, 0, 100, 100);
  BinaryMask pred_a = block(100, 100, 5, 5, 10, 10);
  BinaryMask pred_b = block(100, 100, 60, 60, 10, 10);

  bool ok = true;
  ok &= check(iop(gt, pred_a) == 1.0, "IoP(pred inside GT) != 1.0 exactly", detail);
  ok &= check(iop(gt, pred_b) == 1.0, "IoP(second pred) != 1.0 exactly", detail);
  ok &= check(iou(gt, pred_a) < 0.5, "IoU not < 0.5", detail);
  ok &= check(iou(gt, pred_b) < 0.5, "IoU not < 0.5", detail);

  RegionSet gts{100, 100, {block_region(0, 0, 100, 100)}};
  RegionSet preds{100, 100, {block_region(5, 5, 10, 10), block_region(60, 60, 10, 10)}};
  MatchResult m = match_regions(preds, gts, MatchConfig{0.5});
  ok &= check(m.tp == 1 && m.fp == 0 && m.fn == 0,
              "two contained preds must count as one TP, no FP/FN", detail);
  return ok;
}

// ---------------------------------------------------------------- criterion 2
RegionSet random_regions(DetRng& rng, int w, int h, int max_regions) {
  RegionSet rs;
  rs.width = w;
  rs.height = h;
  int n = rng.uniform_int(0, max_regions);
  for (int i = 0; i < n; ++i) {
    int bh = rng.uniform_int(1, std::max(1, h / 2));
    int bw = rng.uniform_int(1, std::max(1, w / 2));
    rs.regions.push_back(block_region(rng.uniform_int(0, h - bh),
                                      rng.uniform_int(0, w - bw), bh, bw));
  }
  return rs;
}

bool matching_oracle_equivalence(std::string& detail) {
  DetRng rng(0xace2);
  for (int trial = 0; trial < 1000; ++trial) {
    int w = rng.uniform_int(8, 64);
    int h = rng.uniform_int(8, 64);
    RegionSet gts = random_regions(rng, w, h, 6);
    RegionSet preds = random_regions(rng, w, h, 6);

    // exhaustive pairwise IoP table on rasterized masks
    std::vector<std::vector<double>> table(gts.regions.size());
    for (size_t i = 0; i < gts.regions.size(); ++i) {
      BinaryMask gm = gts.regions[i].to_mask(w, h);
      for (size_t j = 0; j < preds.regions.size(); ++j)
        table[i].push_back(iop(gm, preds.regions[j].to_mask(w, h)));
    }
    for (double T : {0.25, 0.5, 0.75, 1.0}) {
      int tp = 0, fp = 0, fn = 0;
      for (size_t i = 0; i < gts.regions.size(); ++i) {
        bool covered = false;
        for (size_t j = 0; j < preds.regions.size(); ++j)
          if (table[i][j] >= T) covered = true;
        covered ? ++tp : ++fn;
      }
      for (size_t j = 0; j < preds.regions.size(); ++j) {
        bool matched = false;
        for (size_t i = 0; i < gts.regions.size(); ++i)
          if (table[i][j] >= T) matched = true;
        if (!matched) ++fp;
      }
      MatchResult got = match_regions(preds, gts, MatchConfig{T});
      if (got.tp != tp || got.fp != fp || got.fn != fn) {
        std::ostringstream os;
        os << "mismatch at trial " << trial << " T=" << T << ": got (" << got.tp
           << "," << got.fp << "," << got.fn << ") want (" << tp << "," << fp << ","
           << fn << ")";
        detail = os.str();
        return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------- criterion 3
bool dice_gradient(std::string& detail) {
  DetRng rng(0xd1ce);
  const double step = 1e-6;
  double worst = 0;
  for (int trial = 0; trial < 200; ++trial) {
    BinaryMask target(8, 8);
    for (int r = 0; r < 8; ++r)
      for (int c = 0; c < 8; ++c)
        if (rng.bernoulli(0.5)) target.set(r, c);
    Heatmap pred(8, 8);
    for (auto& p : pred.v) p = rng.uniform01();

    DiceResult res = dice_loss(pred, target, 1.0);
    for (size_t i = 0; i < pred.v.size(); ++i) {
      Heatmap up = pred, dn = pred;
      up.v[i] += step;
      dn.v[i] -= step;
      double fd = (dice_loss(up, target, 1.0).loss - dice_loss(dn, target, 1.0).loss) /
                  (2 * step);
      double rel = std::abs(res.grad[i] - fd) / std::max(std::abs(fd), 1e-8);
      worst = std::max(worst, rel);
    }
  }
  if (worst > 1e-4) {
    detail = "max relative gradient error " + std::to_string(worst);
    return false;
  }
  return true;
}

// ---------------------------------------------------------------- criterion 4
Mat3 random_rotation(DetRng& rng) {
  Vec3 axis{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
  if (axis.norm() < 1e-6) axis = {0, 0, 1};
  return Mat3::axis_angle(axis, rng.uniform(0, 2 * M_PI));
}

bool projection_round_trip(std::string& detail) {
  DetRng rng(0x9014);
  for (int trial = 0; trial < 10000; ++trial) {
    CameraModel cam = make_camera(
        rng.uniform(40, 600), rng.uniform(40, 600), rng.uniform(0, 128),
        rng.uniform(0, 128),
        Pose{random_rotation(rng),
             {rng.uniform(-8, 8), rng.uniform(-8, 8), rng.uniform(-8, 8)}});
    int u = rng.uniform_int(0, 159);
    int v = rng.uniform_int(0, 119);
    double d = rng.uniform(0.05, 20.0);
    DepthImage depth(160, 120);
    depth.set(v, u, d);
    PointCloud pc = backproject(depth, cam);
    if (pc.size() != 1) {
      detail = "backproject produced wrong point count";
      return false;
    }
    ProjectedPixel back = project_point(cam, pc.points[0]);
    if (!back.in_front || std::abs(back.u - u) > 1e-6 || std::abs(back.v - v) > 1e-6) {
      detail = "pixel reprojection off by more than 1e-6";
      return false;
    }
  }

  // exact count conservation through binning and collapse
  PointCloud cloud;
  for (int i = 0; i < 20000; ++i)
    cloud.points.push_back({rng.uniform(-1, 2), rng.uniform(-1, 2), rng.uniform(-1, 2)});
  BinResult binned = bin_to_voxels(cloud, {0, 0, 0}, 0.2, {8, 8, 8});
  CountMap2D flat = height_collapse(binned.grid);
  if (flat.total() != binned.grid.total() ||
      static_cast<int64_t>(flat.total()) != binned.binned) {
    detail = "height_collapse lost counts";
    return false;
  }
  return true;
}

// ---------------------------------------------------------------- criterion 5
bool raycast_correctness(std::string& detail) {
  DetRng rng(0x5ca9);
  const double res = 0.05;
  const double diag = res * std::sqrt(3.0);
  for (int trial = 0; trial < 50; ++trial) {
    SceneSpec scene(GridDims{26, 26, 18}, res, Vec3{0, 0, 0});
    std::vector<int64_t> cells;
    std::set<int64_t> used;
    int n_voxels = rng.uniform_int(20, 120);
    for (int i = 0; i < n_voxels; ++i) {
      int x = rng.uniform_int(0, 25), y = rng.uniform_int(0, 25),
          z = rng.uniform_int(0, 17);
      if (x < 5 && y < 5 && z >= 6 && z < 11) continue;  // camera pocket
      int64_t idx = scene.idx(x, y, z);
      if (used.insert(idx).second) cells.push_back(idx);
    }
    if (cells.empty()) continue;
    scene.add_instance("Clutter", false, std::move(cells));

    Pose pose{random_rotation(rng),
              Vec3{rng.uniform(0.05, 0.2), rng.uniform(0.05, 0.2),
                   rng.uniform(0.32, 0.52)}};
    CameraModel cam = camera_from_fov(32, 32, 75, pose);
    DepthImage dda = raycast_depth(scene, cam, 32, 32, 12.0);

    for (int v = 0; v < 32; ++v) {
      for (int u = 0; u < 32; ++u) {
        Vec3 dir = pixel_ray_dir(cam, u, v);
        // entry parameter against every occupied voxel (slab method)
        double best = -1;
        for (int z = 0; z < scene.nz(); ++z)
          for (int y = 0; y < scene.ny(); ++y)
            for (int x = 0; x < scene.nx(); ++x) {
              if (!scene.occupied(scene.idx(x, y, z))) continue;
              double lo[3] = {x * res, y * res, z * res};
              double o[3] = {cam.pose.trans.x, cam.pose.trans.y, cam.pose.trans.z};
              double d3[3] = {dir.x, dir.y, dir.z};
              double t0 = 0, t1 = 12.0;
              bool miss = false;
              for (int a = 0; a < 3 && !miss; ++a) {
                if (d3[a] == 0) {
                  if (o[a] < lo[a] || o[a] >= lo[a] + res) miss = true;
                } else {
                  double ta = (lo[a] - o[a]) / d3[a];
                  double tb = (lo[a] + res - o[a]) / d3[a];
                  if (ta > tb) std::swap(ta, tb);
                  t0 = std::max(t0, ta);
                  t1 = std::min(t1, tb);
                  if (t0 > t1) miss = true;
                }
              }
              if (!miss && (best < 0 || t0 < best)) best = t0;
            }
        double got = dda.at(v, u);
        if (best >= 0) {
          if (!depth_valid(got) || std::abs(got - best) > diag) {
            std::ostringstream os;
            os << "trial " << trial << " pixel (" << u << "," << v << "): dda "
               << got << " vs brute " << best;
            detail = os.str();
            return false;
          }
        } else if (depth_valid(got)) {
          detail = "dda hit where brute force found nothing";
          return false;
        }
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------- criterion 6
bool pipeline_filter_rule(std::string& detail) {
  // containment fixtures: IoU = |after| / |removed| exactly
  BinaryMask removed_mask = block(64, 64, 10, 10, 10, 10);  // 100 px
  Detection removed;
  removed.category = "Cushion";
  removed.bbox = BBox{10, 10, 19, 19, BBox::Units::Pixel};
  removed.score = 0.9;
  removed.mask = removed_mask;

  auto redetect_with_pixels = [&](int pixels) {
    BinaryMask m(64, 64);
    int placed = 0;
    for (int r = 10; r < 20 && placed < pixels; ++r)
      for (int c = 10; c < 20 && placed < pixels; ++c) {
        m.set(r, c);
        ++placed;
      }
    Detection d = removed;
    d.mask = m;
    return d;
  };

  bool ok = true;
  ok &= check(verify_inpainting({removed}, {redetect_with_pixels(85)}, {removed}) ==
                  FilterDecision::Keep,
              "IoU 0.85 must keep", detail);
  ok &= check(verify_inpainting({removed}, {redetect_with_pixels(91)}, {removed}) ==
                  FilterDecision::Discard,
              "IoU 0.91 must discard", detail);
  ok &= check(verify_inpainting({removed}, {redetect_with_pixels(95)}, {removed}) ==
                  FilterDecision::Discard,
              "IoU 0.95 must discard", detail);

  // byte-reproducible mock pipeline run
  DetRng rng(0xf1);
  std::vector<std::pair<std::string, ImageRGB>> images;
  for (int i = 0; i < 8; ++i)
    images.emplace_back("img" + std::to_string(i), make_fixture_image(rng));
  MockModelClient client;
  PipelineConfig cfg;
  cfg.seed = 77;

  auto render_stream = [&]() {
    std::ostringstream os;
    PipelineOutput out = run_pipeline(images, client, cfg, [&](const std::string& id,
                                                               const ImageRGB& img) {
      std::vector<uint8_t> png = encode_png(img);
      os << id << ":" << png.size() << ":" << hash_str64({
             reinterpret_cast<const char*>(png.data()), png.size()}) << ";";
    });
    for (const PipelineRecord& r : out.records) os << record_to_json(r) << "\n";
    return os.str();
  };
  std::string first = render_stream();
  std::string second = render_stream();
  ok &= check(!first.empty() && first == second,
              "pipeline stream not byte-reproducible under fixed seed", detail);
  return ok;
}

// ---------------------------------------------------------------- criterion 7
bool viewpoint_sampler(std::string& detail) {
  SceneSpec scene;
  const Instance* obj = nullptr;
  for (uint64_t seed = 0xa2; !obj; ++seed) {
    if (seed > 0xa2 + 64) {
      detail = "no object-bearing scene generated";
      return false;
    }
    scene = generate_scene(seed);
    auto floor_id = scene.categories().find("Floor");
    auto wall_id = scene.categories().find("Wall");
    for (const Instance& inst : scene.instances())
      if (!inst.receptacle && inst.category != *floor_id && inst.category != *wall_id)
        obj = &inst;
  }

  ViewpointParams params;
  auto candidates = viewpoint_candidates(scene, *obj, params);
  if (candidates.size() != 144) {
    detail = "expected 144 unfiltered candidates, got " +
             std::to_string(candidates.size());
    return false;
  }
  auto kept = sample_viewpoints(scene, *obj, params);
  for (const CameraModel& cam : kept) {
    double dist = (cam.pose.trans - obj->centroid).norm();
    double nearest = 1e9;
    for (double r : {0.5, 1.0, 1.5, 2.0}) nearest = std::min(nearest, std::abs(dist - r));
    if (nearest > 1e-9) {
      detail = "kept viewpoint off the radius set by " + std::to_string(nearest);
      return false;
    }
    BinaryMask visible =
        visible_instance_mask(scene, obj->id, cam, params.width, params.height);
    double coverage = static_cast<double>(visible.area()) /
                      (static_cast<double>(params.width) * params.height);
    if (coverage < params.min_coverage) {
      detail = "kept viewpoint re-renders below 5% coverage";
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- criterion 8
bool prior_predictor_consistency(std::string& detail) {
  PlacementConfig placement;
  const ReceptaclePriorTable table = ReceptaclePriorTable::eval_builtin();
  PriorPredictor predictor(table, true);
  std::vector<PerImageMetrics> rows;
  int trash_can_rows = 0;

  for (int i = 0; i < 20; ++i) {
    SceneSpec scene = generate_scene(0x200 + i);
    std::vector<const Instance*> receptacles;
    for (const Instance& inst : scene.instances())
      if (inst.receptacle) receptacles.push_back(&inst);
    if (receptacles.empty()) continue;

    ViewpointParams params;
    params.width = 96;
    params.height = 72;
    params.radii = {1.5, 2.0};
    for (const Instance* rec : receptacles) {
      auto views = sample_viewpoints(scene, *rec, params);
      if (views.empty()) continue;
      const CameraModel& cam = views.front();
      RenderView view = render_view(scene, cam, params.width, params.height);
      ViewObservation obs{&scene, cam, view, ""};

      for (const auto& [category, receptacle_names] : table.entries()) {
        Heatmap heat = predictor.predict(obs, category);
        BinaryMask mask = threshold_heatmap(heat, 0.5);
        RegionSet preds = connected_components(mask);
        preds.width = view.width;
        preds.height = view.height;

        std::vector<int> valid_ids;
        for (const std::string& name : receptacle_names)
          if (auto id = scene.categories().find(name)) valid_ids.push_back(*id);
        std::vector<PlaceableSurface> surfaces;
        if (!valid_ids.empty())
          surfaces =
              extract_placeable_surfaces(scene, valid_ids, placement.min_clearance);
        RegionSet surface_regions = surfaces_as_regions(view, surfaces);
        ImageMetrics m = receptacle_surface_metrics(preds, surface_regions,
                                                    MatchConfig{0.5});
        PerImageMetrics row;
        row.rsp = m.precision;
        row.rsr = m.recall;
        rows.push_back(row);
        if (category == "trash can") {
          ++trash_can_rows;
          if (m.precision.has_value() || m.recall.has_value()) {
            detail = "trash can image produced a defined RSP/RSR";
            return false;
          }
        }
      }
    }
  }

  DatasetReport report = aggregate(rows);
  if (trash_can_rows == 0) {
    detail = "no trash can rows were evaluated";
    return false;
  }
  if (!report.rsp.mean.has_value() || report.rsp.images == 0) {
    detail = "no defined RSP rows";
    return false;
  }
  if (std::abs(*report.rsp.mean - 1.0) > 1e-12) {
    detail = "surface-variant prior RSP = " + std::to_string(*report.rsp.mean) +
             " over " + std::to_string(report.rsp.images) + " images";
    return false;
  }
  return true;
}

// ---------------------------------------------------------------- criterion 9
PolicyConfig suite_config() {
  PolicyConfig cfg;
  cfg.explore_steps = 40;
  cfg.render_width = 96;
  cfg.render_height = 72;
  return cfg;
}

bool results_equal(const std::vector<EpisodeResult>& a,
                   const std::vector<EpisodeResult>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].episode_id != b[i].episode_id || a[i].success != b[i].success ||
        a[i].failure_mode != b[i].failure_mode || a[i].steps != b[i].steps)
      return false;
    if (a[i].placement.has_value() != b[i].placement.has_value()) return false;
    if (a[i].placement &&
        (a[i].placement->x != b[i].placement->x ||
         a[i].placement->y != b[i].placement->y ||
         a[i].placement->z != b[i].placement->z))
      return false;
  }
  return true;
}

bool oracle_esp_suite(std::string& detail) {
  std::vector<GeneratedEpisode> episodes;
  for (int i = 0; i < 50; ++i) episodes.push_back(generate_easy_episode(1000 + i));
  std::vector<EpisodeJob> jobs;
  for (auto& e : episodes) jobs.push_back({&e.scene, e.episode});
  PolicyConfig cfg = suite_config();

  auto oracle_factory = []() -> std::unique_ptr<Predictor> {
    return std::make_unique<OraclePredictor>();
  };
  std::vector<EpisodeResult> run1 = run_episode_batch(jobs, oracle_factory, cfg, 2);
  EpisodeSummary summary = summarize(run1);
  std::printf("      oracle: %d/%d success (%.1f%%)\n", summary.successes,
              summary.episodes, 100.0 * summary.success_rate());
  if (summary.success_rate() < 0.8) {
    detail = "oracle success rate " + std::to_string(summary.success_rate());
    return false;
  }

  std::vector<EpisodeResult> run2 = run_episode_batch(jobs, oracle_factory, cfg, 1);
  if (!results_equal(run1, run2)) {
    detail = "identical seeds produced different result streams";
    return false;
  }

  auto zero_factory = []() -> std::unique_ptr<Predictor> {
    return std::make_unique<ConstantPredictor>(0.0);
  };
  std::vector<EpisodeResult> zeros = run_episode_batch(jobs, zero_factory, cfg, 2);
  for (const EpisodeResult& r : zeros) {
    if (r.success || r.failure_mode != FailureMode::NavFailure) {
      detail = "constant-zero predictor must yield 100% nav_failure";
      return false;
    }
  }
  return true;
}

// --------------------------------------------------------------- criterion 10
bool failure_taxonomy_totality(std::string& detail) {
  std::vector<GeneratedEpisode> episodes;
  for (int i = 0; i < 200; ++i) episodes.push_back(generate_mixed_episode(3000 + i));
  std::vector<EpisodeJob> jobs;
  for (auto& e : episodes) jobs.push_back({&e.scene, e.episode});

  PolicyConfig cfg = suite_config();
  cfg.explore_steps = 25;
  cfg.render_width = 80;
  cfg.render_height = 60;

  // three predictor kinds across three job slices so every taxonomy branch
  // gets exercised
  std::vector<EpisodeResult> results;
  for (int slice = 0; slice < 3; ++slice) {
    std::vector<EpisodeJob> part;
    for (size_t i = slice; i < jobs.size(); i += 3) part.push_back(jobs[i]);
    auto factory = [&]() -> std::unique_ptr<Predictor> {
      switch (slice) {
        case 0: return std::make_unique<OraclePredictor>();
        case 1: return std::make_unique<ConstantPredictor>(0.0);
        default:
          return std::make_unique<PriorPredictor>(
              ReceptaclePriorTable::eval_builtin(), false);
      }
    };
    auto part_results = run_episode_batch(part, factory, cfg, 2);
    results.insert(results.end(), part_results.begin(), part_results.end());
  }

  if (results.size() != 200) {
    detail = "expected 200 results";
    return false;
  }
  for (const EpisodeResult& r : results) {
    bool valid_mode = r.failure_mode == FailureMode::None ||
                      r.failure_mode == FailureMode::NavFailure ||
                      r.failure_mode == FailureMode::PlaceFailure ||
                      r.failure_mode == FailureMode::BadSpMask;
    if (!valid_mode || (r.success != (r.failure_mode == FailureMode::None))) {
      detail = "episode " + r.episode_id + " carries an inconsistent outcome";
      return false;
    }
  }
  EpisodeSummary s = summarize(results);
  if (s.successes + s.nav_failures + s.place_failures + s.bad_sp_masks != 200) {
    detail = "histogram does not partition the episodes";
    return false;
  }
  std::printf("      success %.1f%%; failure breakdown: %s\n",
              100.0 * s.success_rate(), s.failure_breakdown().c_str());
  return true;
}

// --------------------------------------------------------------- criterion 11
bool non_reproducibility_statement(std::string&) {
  std::printf(
      "      The published headline numbers (TrP 18.5 / RSP 24.9 / RSR 35.3;\n"
      "      embodied success 12.5%%; failure split 53.5/31.0/15.5) require the\n"
      "      trained CLIP-UNet weights and the HSSD asset library, neither of\n"
      "      which ships here. They are reference points, not acceptance\n"
      "      targets; the property suites above stand in for them.\n");
  return true;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "metric definition fidelity (IoP=1, IoU<0.5, single TP)",
       metric_definition_fidelity, 1.0},
      {2, "matching equals exhaustive pairwise-IoP recount, 1000 sets",
       matching_oracle_equivalence, 30.0},
      {3, "dice gradient vs central finite differences <= 1e-4", dice_gradient, 5.0},
      {4, "projection round trip < 1e-6 px; exact count conservation",
       projection_round_trip, 5.0},
      {5, "raycast equals brute-force ray-box minimum", raycast_correctness, 60.0},
      {6, "inpainting filter rule and byte-reproducible pipeline",
       pipeline_filter_rule, 0.0},
      {7, "viewpoint sampler: 144 candidates, coverage and radii",
       viewpoint_sampler, 0.0},
      {8, "surface-variant prior predictor scores RSP 1.0",
       prior_predictor_consistency, 0.0},
      {9, "oracle embodied suite >= 80%, zero predictor all-nav, deterministic",
       oracle_esp_suite, 300.0},
      {10, "failure taxonomy total and exclusive over 200 mixed episodes",
       failure_taxonomy_totality, 0.0},
      {11, "published headline numbers are out of scope by design",
       non_reproducibility_statement, 0.0},
  };

  int failures = 0;
  for (Criterion& criterion : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = criterion.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && criterion.budget_seconds > 0 && elapsed > criterion.budget_seconds) {
      ok = false;
      detail = "exceeded time budget of " + std::to_string(criterion.budget_seconds) +
               "s (" + std::to_string(elapsed) + "s)";
    }
    std::printf("[%s] %2d. %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", criterion.number,
                criterion.title, elapsed, detail.empty() ? "" : " -- ",
                detail.c_str());
    if (!ok) ++failures;
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
