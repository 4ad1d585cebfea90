// placebench: evaluation metrics, synthetic scenes and the embodied placement
// policy behind one command surface.

#include <CLI11.hpp>

#include "placebench/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"semantic placement benchmark toolkit"};
  app.require_subcommand(1);

  placebench::EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand("eval", "score predictions against a manifest");
  eval->add_option("--manifest", eval_args.manifest, "jsonl manifest")->required();
  eval->add_option("--pred-dir", eval_args.pred_dir,
                   "directory of <id>.png 16-bit heatmaps");
  eval->add_option("--out", eval_args.out_dir, "output directory");
  eval->add_option("--threshold", eval_args.threshold, "matching threshold T");
  eval->add_option("--tau", eval_args.tau, "heatmap binarization threshold");
  eval->add_option("--min-area", eval_args.min_area, "component suppression, px");
  eval->add_option("--metrics", eval_args.metrics, "comma list of metrics");
  eval->add_option("--max-missing", eval_args.max_missing,
                   "tolerated fraction of rows without predictions");

  placebench::EpisodesArgs ep_args;
  CLI::App* episodes = app.add_subcommand("episodes", "run embodied placement episodes");
  episodes->add_option("--manifest", ep_args.manifest, "jsonl episode manifest")
      ->required();
  episodes->add_option("--predictor", ep_args.predictor,
                       "oracle|prior|prior-surface|constant-zero|files");
  episodes->add_option("--heatmap-dir", ep_args.heatmap_dir,
                       "heatmap directory for the files predictor");
  episodes->add_option("--config", ep_args.config_file, "policy config json");
  episodes->add_option("--out", ep_args.out_dir, "output directory");
  episodes->add_option("--workers", ep_args.workers, "worker threads");
  episodes->add_option("--seed", ep_args.seed, "base seed");

  placebench::GenScenesArgs gen_args;
  CLI::App* gen = app.add_subcommand("genscenes", "generate scenes and datasets");
  gen->add_option("--count", gen_args.count, "number of scenes")->required();
  gen->add_option("--seed", gen_args.seed, "generator seed")->required();
  gen->add_option("--out", gen_args.out_dir, "output directory")->required();
  gen->add_option("--suite", gen_args.suite, "standard|easy|mixed");
  gen->add_option("--views-per-object", gen_args.views_per_object,
                  "view pairs per object instance");
  gen->add_option("--width", gen_args.width, "render width");
  gen->add_option("--height", gen_args.height, "render height");

  placebench::PipelineArgs pipe_args;
  CLI::App* pipe = app.add_subcommand("pipeline", "run the data generation pipeline");
  pipe->add_option("--in", pipe_args.manifest, "jsonl manifest of {id, png}");
  pipe->add_option("--generate", pipe_args.generate,
                   "synthesize N fixture images instead of --in");
  pipe->add_option("--clients", pipe_args.clients, "mock|mock-echo|socket:<host:port>");
  pipe->add_option("--seed", pipe_args.seed, "pipeline seed")->required();
  pipe->add_option("--out", pipe_args.out_dir, "output directory");
  pipe->add_option("--iou-threshold", pipe_args.iou_threshold,
                   "re-detection filter threshold");

  placebench::ReportArgs report_args;
  CLI::App* report = app.add_subcommand("report", "print summaries of prior runs");
  report->add_option("--episodes", report_args.episode_results, "results.jsonl");
  report->add_option("--eval", report_args.eval_report, "report.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (eval->parsed()) return placebench::cmd_eval(eval_args);
    if (episodes->parsed()) return placebench::cmd_episodes(ep_args);
    if (gen->parsed()) return placebench::cmd_genscenes(gen_args);
    if (pipe->parsed()) return placebench::cmd_pipeline(pipe_args);
    if (report->parsed()) return placebench::cmd_report(report_args);
  } catch (const std::exception& e) {
    std::cerr << "placebench: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
