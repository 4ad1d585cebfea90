#pragma once

// Command implementations behind the CLI: dataset evaluation, episode
// batches, scene/dataset generation, pipeline runs and report printing.
// Exit codes: 0 success, 1 validation error, 2 external-dependency failure.

#include <cstdint>
#include <string>

#include "placebench/policy.hpp"

namespace placebench {

struct EvalArgs {
  std::string manifest;
  std::string pred_dir;       // <dir>/<image_id>.png when a row has no "pred"
  std::string out_dir;
  double threshold = 0.5;     // matching threshold T
  double tau = 0.5;           // heatmap binarization
  int64_t min_area = 25;      // component suppression, pixels
  std::string metrics = "precision,recall,rsp,rsr,trp";
  double max_missing = 0.01;  // tolerated fraction of rows without predictions
};
int cmd_eval(const EvalArgs& args);

struct EpisodesArgs {
  std::string manifest;
  std::string predictor = "oracle";
  std::string heatmap_dir;
  std::string config_file;
  std::string out_dir;
  int workers = 1;
  uint64_t seed = 0;
};
int cmd_episodes(const EpisodesArgs& args);

struct GenScenesArgs {
  int count = 5;
  uint64_t seed = 0;
  std::string out_dir;
  std::string suite = "standard";  // standard | easy | mixed
  int views_per_object = 3;
  int width = 128;
  int height = 96;
};
int cmd_genscenes(const GenScenesArgs& args);

struct PipelineArgs {
  std::string manifest;    // jsonl rows {"id","png"}; empty with generate > 0
  int generate = 0;        // synthesize fixture images instead of reading
  std::string clients = "mock";  // mock | mock-echo | socket:<host:port>
  uint64_t seed = 0;
  std::string out_dir;
  double iou_threshold = 0.9;
};
int cmd_pipeline(const PipelineArgs& args);

struct ReportArgs {
  std::string episode_results;  // results.jsonl from cmd_episodes
  std::string eval_report;      // report.json from cmd_eval
};
int cmd_report(const ReportArgs& args);

// JSON overrides for a subset of PolicyConfig fields.
PolicyConfig policy_config_from_json(const std::string& json, PolicyConfig base = {});

std::string episode_result_to_json(const EpisodeResult& result);
EpisodeResult episode_result_from_json(const std::string& json);

}  // namespace placebench
