#include "placebench/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "placebench/datapipe.hpp"
#include "placebench/metrics.hpp"
#include "placebench/viewpoints.hpp"
#include "placebench/wire.hpp"

namespace placebench {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(f, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

void ensure_dir(const std::string& dir) {
  if (!dir.empty()) fs::create_directories(dir);
}

RegionSet regions_from_masks(const nlohmann::json& masks, int width, int height) {
  RegionSet out;
  out.width = width;
  out.height = height;
  for (const auto& mj : masks) {
    BinaryMask m = mask_from_rle(mj.at("w").get<int>(), mj.at("h").get<int>(),
                                 mj.at("rle").get<std::vector<int64_t>>());
    RegionSet comps = connected_components(m);
    for (Region& r : comps.regions) out.regions.push_back(std::move(r));
  }
  return out;
}

nlohmann::ordered_json mask_rle_json(const BinaryMask& mask) {
  return {{"w", mask.width()}, {"h", mask.height()}, {"rle", mask_to_rle(mask)}};
}

bool has_metric(const std::string& selection, const char* name) {
  return selection.find(name) != std::string::npos;
}

}  // namespace

int cmd_eval(const EvalArgs& args) {
  ensure_dir(args.out_dir);
  std::vector<std::string> lines;
  try {
    lines = read_lines(args.manifest);
  } catch (const std::exception& e) {
    std::cerr << "eval: " << e.what() << "\n";
    return 1;
  }

  MatchConfig match{args.threshold};
  std::vector<PerImageMetrics> per_image;
  int missing = 0;
  std::vector<std::string> missing_ids;

  for (const std::string& line : lines) {
    nlohmann::json row = nlohmann::json::parse(line);
    std::string id = row.at("id").get<std::string>();
    int width = row.at("width").get<int>();
    int height = row.at("height").get<int>();

    Heatmap heat;
    try {
      std::string pred_path = row.contains("pred")
                                  ? row.at("pred").get<std::string>()
                                  : (fs::path(args.pred_dir) / (id + ".png")).string();
      heat = heatmap_from_gray16(png_to_gray16(read_file(pred_path)));
    } catch (const std::exception&) {
      ++missing;
      missing_ids.push_back(id);
      continue;
    }
    if (heat.width != width || heat.height != height) {
      ++missing;
      missing_ids.push_back(id);
      continue;
    }

    BinaryMask mask = threshold_heatmap(heat, args.tau, args.min_area);
    RegionSet preds = connected_components(mask);
    preds.width = width;
    preds.height = height;

    PerImageMetrics m;
    m.image_id = id;
    if (row.contains("gt") &&
        (has_metric(args.metrics, "precision") || has_metric(args.metrics, "recall"))) {
      RegionSet gts = regions_from_masks(row.at("gt"), width, height);
      ImageMetrics im = image_metrics(match_regions(preds, gts, match),
                                      !gts.regions.empty());
      if (has_metric(args.metrics, "precision")) m.precision = im.precision;
      if (has_metric(args.metrics, "recall")) m.recall = im.recall;
    }
    if (row.contains("surfaces") &&
        (has_metric(args.metrics, "rsp") || has_metric(args.metrics, "rsr"))) {
      RegionSet surfaces = regions_from_masks(row.at("surfaces"), width, height);
      ImageMetrics im = receptacle_surface_metrics(preds, surfaces, match);
      if (has_metric(args.metrics, "rsp")) m.rsp = im.precision;
      if (has_metric(args.metrics, "rsr")) m.rsr = im.recall;
    }
    if (row.contains("placements") && has_metric(args.metrics, "trp")) {
      RegionSet placements = regions_from_masks(row.at("placements"), width, height);
      m.trp = target_precision(preds, placements, match);
    }
    per_image.push_back(std::move(m));
  }

  DatasetReport report = aggregate(per_image);
  if (!args.out_dir.empty()) {
    std::ofstream rep(fs::path(args.out_dir) / "report.json");
    rep << report_to_json(report) << "\n";
    std::ofstream csv(fs::path(args.out_dir) / "per_image.csv");
    csv << per_image_csv(per_image);
  }
  std::cout << report_to_json(report) << "\n";
  for (const std::string& id : missing_ids)
    std::cerr << "eval: missing prediction for " << id << " (excluded)\n";

  if (!lines.empty() &&
      static_cast<double>(missing) / lines.size() > args.max_missing) {
    std::cerr << "eval: " << missing << "/" << lines.size()
              << " rows lack predictions\n";
    return 1;
  }
  return 0;
}

PolicyConfig policy_config_from_json(const std::string& json, PolicyConfig base) {
  nlohmann::json j = nlohmann::json::parse(json);
  PolicyConfig cfg = base;
  cfg.explore_steps = j.value("explore_steps", cfg.explore_steps);
  cfg.goal_reach_dist = j.value("goal_reach_dist", cfg.goal_reach_dist);
  cfg.approach_dist = j.value("approach_dist", cfg.approach_dist);
  cfg.slab_height_tol = j.value("slab_height_tol", cfg.slab_height_tol);
  cfg.slab_xy_radius = j.value("slab_xy_radius", cfg.slab_xy_radius);
  cfg.drop_height = j.value("drop_height", cfg.drop_height);
  cfg.floor_height_cutoff = j.value("floor_height_cutoff", cfg.floor_height_cutoff);
  cfg.sp_threshold = j.value("sp_threshold", cfg.sp_threshold);
  cfg.render_width = j.value("render_width", cfg.render_width);
  cfg.render_height = j.value("render_height", cfg.render_height);
  cfg.hfov_deg = j.value("hfov_deg", cfg.hfov_deg);
  cfg.max_range = j.value("max_range", cfg.max_range);
  cfg.arm_min_reach = j.value("arm_min_reach", cfg.arm_min_reach);
  cfg.arm_max_reach = j.value("arm_max_reach", cfg.arm_max_reach);
  cfg.arm_min_height = j.value("arm_min_height", cfg.arm_min_height);
  cfg.arm_max_height = j.value("arm_max_height", cfg.arm_max_height);
  cfg.agent.radius = j.value("agent_radius", cfg.agent.radius);
  cfg.agent.camera_height = j.value("camera_height", cfg.agent.camera_height);
  cfg.validate();
  return cfg;
}

std::string episode_result_to_json(const EpisodeResult& result) {
  nlohmann::ordered_json j;
  j["episode_id"] = result.episode_id;
  j["success"] = result.success;
  j["failure_mode"] = failure_mode_name(result.failure_mode);
  j["steps"] = result.steps;
  if (result.placement)
    j["placement"] = {result.placement->x, result.placement->y, result.placement->z};
  return j.dump();
}

EpisodeResult episode_result_from_json(const std::string& json) {
  nlohmann::json j = nlohmann::json::parse(json);
  EpisodeResult r;
  r.episode_id = j.at("episode_id").get<std::string>();
  r.success = j.at("success").get<bool>();
  std::string mode = j.at("failure_mode").get<std::string>();
  if (mode == "none") r.failure_mode = FailureMode::None;
  else if (mode == "nav_failure") r.failure_mode = FailureMode::NavFailure;
  else if (mode == "place_failure") r.failure_mode = FailureMode::PlaceFailure;
  else if (mode == "bad_sp_mask") r.failure_mode = FailureMode::BadSpMask;
  else throw std::invalid_argument("unknown failure mode: " + mode);
  r.steps = j.at("steps").get<int>();
  if (j.contains("placement"))
    r.placement = Vec3{j["placement"][0].get<double>(), j["placement"][1].get<double>(),
                       j["placement"][2].get<double>()};
  return r;
}

namespace {

void print_episode_summary(const EpisodeSummary& s) {
  std::cout << "episodes: " << s.episodes << "\n";
  std::cout << "success rate: " << 100.0 * s.success_rate() << "% (" << s.successes
            << "/" << s.episodes << ")\n";
  std::cout << "failure breakdown: " << s.failure_breakdown() << "\n";
}

}  // namespace

int cmd_episodes(const EpisodesArgs& args) {
  PolicyConfig cfg;
  try {
    if (!args.config_file.empty()) {
      std::ifstream f(args.config_file);
      if (!f) throw std::runtime_error("cannot open config: " + args.config_file);
      std::stringstream ss;
      ss << f.rdbuf();
      cfg = policy_config_from_json(ss.str());
    }
  } catch (const std::exception& e) {
    std::cerr << "episodes: " << e.what() << "\n";
    return 1;
  }

  std::vector<EpisodeSpec> episodes;
  std::map<std::string, SceneSpec> scenes;
  try {
    fs::path manifest_dir = fs::path(args.manifest).parent_path();
    for (const std::string& line : read_lines(args.manifest)) {
      EpisodeSpec ep = episode_from_json(line);
      if (ep.scene_file.empty())
        throw std::runtime_error("episode " + ep.episode_id + " has no scene_file");
      fs::path scene_path = fs::path(ep.scene_file);
      if (scene_path.is_relative()) scene_path = manifest_dir / scene_path;
      ep.scene_file = scene_path.string();
      if (!scenes.count(ep.scene_file))
        scenes.emplace(ep.scene_file, load_scene(ep.scene_file));
      episodes.push_back(std::move(ep));
    }
  } catch (const std::exception& e) {
    std::cerr << "episodes: " << e.what() << "\n";
    return 1;
  }

  std::vector<EpisodeJob> jobs;
  for (const EpisodeSpec& ep : episodes) jobs.push_back({&scenes.at(ep.scene_file), ep});

  auto factory = [&]() -> std::unique_ptr<Predictor> {
    return make_predictor(args.predictor, args.heatmap_dir);
  };
  try {
    factory();  // validate the predictor kind up front
  } catch (const std::exception& e) {
    std::cerr << "episodes: " << e.what() << "\n";
    return 1;
  }

  std::vector<EpisodeResult> results =
      run_episode_batch(jobs, factory, cfg, args.workers);

  ensure_dir(args.out_dir);
  if (!args.out_dir.empty()) {
    std::ofstream out(fs::path(args.out_dir) / "results.jsonl");
    for (const EpisodeResult& r : results) out << episode_result_to_json(r) << "\n";
  }
  EpisodeSummary summary = summarize(results);
  if (!args.out_dir.empty()) {
    nlohmann::ordered_json j;
    j["episodes"] = summary.episodes;
    j["successes"] = summary.successes;
    j["success_rate"] = summary.success_rate();
    j["nav_failures"] = summary.nav_failures;
    j["place_failures"] = summary.place_failures;
    j["bad_sp_masks"] = summary.bad_sp_masks;
    std::ofstream out(fs::path(args.out_dir) / "summary.json");
    out << j.dump(2) << "\n";
  }
  print_episode_summary(summary);
  return 0;
}

int cmd_genscenes(const GenScenesArgs& args) {
  if (args.count <= 0) {
    std::cerr << "genscenes: count must be positive\n";
    return 1;
  }
  ensure_dir(args.out_dir);
  fs::path out(args.out_dir);
  fs::create_directories(out / "scenes");
  fs::create_directories(out / "views");
  fs::create_directories(out / "predictions");

  std::ofstream episodes_out(out / "episodes.jsonl");
  std::ofstream views_out(out / "views" / "manifest.jsonl");
  PlacementConfig placement;
  OraclePredictor oracle;
  DetRng rng(args.seed);

  for (int i = 0; i < args.count; ++i) {
    uint64_t scene_seed = splitmix64(args.seed ^ (0xabcdULL + i));
    SceneSpec scene;
    EpisodeSpec episode;
    if (args.suite == "easy") {
      GeneratedEpisode ge = generate_easy_episode(scene_seed);
      scene = std::move(ge.scene);
      episode = std::move(ge.episode);
    } else if (args.suite == "mixed") {
      GeneratedEpisode ge = generate_mixed_episode(scene_seed);
      scene = std::move(ge.scene);
      episode = std::move(ge.episode);
    } else if (args.suite == "standard") {
      scene = generate_scene(scene_seed);
      GeneratedEpisode ge = generate_mixed_episode(scene_seed);
      scene = std::move(ge.scene);
      episode = std::move(ge.episode);
    } else {
      std::cerr << "genscenes: unknown suite " << args.suite << "\n";
      return 1;
    }

    char name[64];
    std::snprintf(name, sizeof(name), "scene_%04d.json", i);
    save_scene(scene, (out / "scenes" / name).string());
    episode.episode_id = args.suite + "_" + std::to_string(i);
    episode.scene_file = (fs::path("scenes") / name).string();
    episodes_out << episode_to_json(episode) << "\n";

    // with/without-object view pairs with GT annotations
    auto floor_id = scene.categories().find("Floor");
    auto wall_id = scene.categories().find("Wall");
    int view_index = 0;
    for (const Instance& inst : scene.instances()) {
      if (inst.receptacle) continue;
      if (floor_id && inst.category == *floor_id) continue;
      if (wall_id && inst.category == *wall_id) continue;
      std::string category = scene.categories().name(inst.category);
      if (!placement.priors.find(category)) continue;

      ViewpointParams params;
      params.width = args.width;
      params.height = args.height;
      std::vector<CameraModel> views = sample_viewpoints(scene, inst, params);
      if (views.empty()) continue;
      SceneSpec without = scene.remove_object(inst.id);

      int take = std::min<int>(args.views_per_object, static_cast<int>(views.size()));
      for (int v = 0; v < take; ++v) {
        size_t pick = views.size() <= static_cast<size_t>(take)
                          ? static_cast<size_t>(v)
                          : rng.uniform_u32(static_cast<uint32_t>(views.size()));
        const CameraModel& cam = views[pick];
        char view_id[96];
        std::snprintf(view_id, sizeof(view_id), "scene_%04d_view_%02d", i,
                      view_index++);

        RenderView with_view = render_view(scene, cam, args.width, args.height);
        RenderView without_view = render_view(without, cam, args.width, args.height);
        BinaryMask gt = instance_mask(with_view, inst.id);
        if (gt.area() == 0) continue;

        write_file(out / "views" / (std::string(view_id) + "_rgb.png"),
                   encode_png(render_rgb(scene, with_view)));
        write_file(out / "views" / (std::string(view_id) + "_rgb_without.png"),
                   encode_png(render_rgb(without, without_view)));
        write_file(out / "views" / (std::string(view_id) + "_depth.png"),
                   encode_png(depth_to_millimeters(without_view.depth)));
        write_file(out / "views" / (std::string(view_id) + "_gt.png"), encode_png(gt));

        // reference sets, computed on the without-object scene
        nlohmann::ordered_json row;
        row["id"] = view_id;
        row["width"] = args.width;
        row["height"] = args.height;
        row["category"] = category;
        row["scene"] = (fs::path("scenes") / name).string();
        row["gt"] = nlohmann::ordered_json::array();
        row["gt"].push_back(mask_rle_json(gt));

        std::vector<int> valid_ids;
        for (const std::string& rec : placement.priors.at(category))
          if (auto id = without.categories().find(rec)) valid_ids.push_back(*id);
        row["surfaces"] = nlohmann::ordered_json::array();
        if (!valid_ids.empty()) {
          auto surfaces = extract_placeable_surfaces(without, valid_ids,
                                                     placement.min_clearance);
          for (const PlaceableSurface& s : surfaces) {
            BinaryMask sm = surface_view_mask(without_view, s);
            if (sm.area() > 0) row["surfaces"].push_back(mask_rle_json(sm));
          }
        }

        RegionSet placements = gt_placements(without, category, without_view, placement);
        row["placements"] = nlohmann::ordered_json::array();
        for (const Region& region : placements.regions)
          row["placements"].push_back(
              mask_rle_json(region.to_mask(args.width, args.height)));
        views_out << row.dump() << "\n";

        // oracle prediction heatmap for golden evaluation runs
        ViewObservation obs{&without, cam, without_view, view_id};
        Heatmap heat = oracle.predict(obs, category);
        write_file(out / "predictions" / (std::string(view_id) + ".png"),
                   encode_png(heatmap_to_gray16(heat)));
      }
    }
  }
  std::cout << "genscenes: wrote " << args.count << " scenes to " << args.out_dir
            << "\n";
  return 0;
}

int cmd_pipeline(const PipelineArgs& args) {
  std::vector<std::pair<std::string, ImageRGB>> images;
  try {
    if (args.generate > 0) {
      DetRng rng(args.seed);
      for (int i = 0; i < args.generate; ++i)
        images.emplace_back("img" + std::to_string(i), make_fixture_image(rng));
    } else {
      fs::path manifest_dir = fs::path(args.manifest).parent_path();
      for (const std::string& line : read_lines(args.manifest)) {
        nlohmann::json row = nlohmann::json::parse(line);
        fs::path png = row.at("png").get<std::string>();
        if (png.is_relative()) png = manifest_dir / png;
        images.emplace_back(row.at("id").get<std::string>(),
                            png_to_rgb(read_file(png)));
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "pipeline: " << e.what() << "\n";
    return 1;
  }

  std::unique_ptr<ModelClient> client;
  try {
    if (args.clients == "mock") {
      client = std::make_unique<MockModelClient>();
    } else if (args.clients == "mock-echo") {
      MockClientOptions opts;
      opts.echo_inpaint = true;
      client = std::make_unique<MockModelClient>(opts);
    } else if (args.clients.rfind("socket:", 0) == 0) {
      client = std::make_unique<SocketModelClient>(args.clients.substr(7));
    } else {
      std::cerr << "pipeline: unknown client mode " << args.clients << "\n";
      return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "pipeline: " << e.what() << "\n";
    return 2;  // external dependency unavailable
  }

  ensure_dir(args.out_dir);
  fs::path out(args.out_dir);
  fs::create_directories(out / "blobs");

  PipelineConfig cfg;
  cfg.seed = args.seed;
  cfg.iou_threshold = args.iou_threshold;
  VariantWriter writer;
  if (!args.out_dir.empty())
    writer = [&](const std::string& variant_id, const ImageRGB& image) {
      write_file(out / "blobs" / (variant_id + ".png"), encode_png(image));
    };

  PipelineOutput result;
  try {
    result = run_pipeline(images, *client, cfg, writer);
  } catch (const std::exception& e) {
    std::cerr << "pipeline: " << e.what() << "\n";
    return 2;
  }

  if (!args.out_dir.empty()) {
    std::ofstream records(out / "records.jsonl");
    for (const PipelineRecord& r : result.records)
      records << record_to_json(r) << "\n";
    nlohmann::ordered_json stats;
    stats["images"] = result.stats.images;
    stats["detected_instances"] = result.stats.detected_instances;
    stats["inpainted"] = result.stats.inpainted;
    stats["kept"] = result.stats.kept;
    stats["filtered"] = result.stats.filtered;
    stats["skipped"] = result.stats.skipped;
    stats["skip_reasons"] = result.stats.skip_reasons;
    std::ofstream sf(out / "stats.json");
    sf << stats.dump(2) << "\n";
  }

  std::cout << "pipeline funnel: images " << result.stats.images << " -> detected "
            << result.stats.detected_instances << " instances -> inpainted "
            << result.stats.inpainted << " -> kept " << result.stats.kept
            << " (filtered " << result.stats.filtered << ", skipped "
            << result.stats.skipped << ")\n";
  return 0;
}

int cmd_report(const ReportArgs& args) {
  try {
    if (!args.episode_results.empty()) {
      std::vector<EpisodeResult> results;
      for (const std::string& line : read_lines(args.episode_results))
        results.push_back(episode_result_from_json(line));
      print_episode_summary(summarize(results));
      return 0;
    }
    if (!args.eval_report.empty()) {
      std::ifstream f(args.eval_report);
      if (!f) throw std::runtime_error("cannot open: " + args.eval_report);
      std::stringstream ss;
      ss << f.rdbuf();
      std::cout << ss.str();
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "report: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "report: nothing to report (pass --episodes or --eval)\n";
  return 1;
}

}  // namespace placebench
