/* Copyright 2026 The Dataforge Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include "dataforge/cli/commands.hpp"

#include <iostream>
#include <map>
#include <optional>
#include <set>

#include "CLI11.hpp"
#include "dataforge/augment/rewriter.hpp"
#include "dataforge/core/errors.hpp"
#include "dataforge/core/parallel.hpp"
#include "dataforge/ingest/bev.hpp"
#include "dataforge/ingest/manifest.hpp"
#include "dataforge/ingest/source_adapters.hpp"
#include "dataforge/metrics/evaluate.hpp"
#include "dataforge/perceptgen/grounding.hpp"
#include "dataforge/promptkit/prompt.hpp"

namespace dataforge::cli {
namespace {

constexpr std::size_t kMaxListedFailures = 20;

std::string join_lines(const std::vector<Json>& rows) {
  std::string out;
  for (const auto& r : rows) {
    out += r.dump();
    out += '\n';
  }
  return out;
}

std::vector<std::vector<Sample>> group_by_dataset(const std::vector<Sample>& samples) {
  std::map<DatasetId, std::vector<Sample>> groups;
  for (const auto& s : samples) groups[s.dataset].push_back(s);
  std::vector<std::vector<Sample>> out;
  for (auto& [id, g] : groups) out.push_back(std::move(g));
  return out;
}

}  // namespace

std::vector<Sample> run_ingest(const PipelineConfig& cfg) {
  if (cfg.sources.empty()) throw ConfigError("no sources configured");
  std::vector<Sample> all;
  std::set<std::string> seen;
  for (const auto& src : cfg.sources) {
    std::vector<Sample> part;
    try {
      part = ingest::parse_source(src.dataset, ingest::read_file(src.path));
    } catch (const SchemaError& e) {
      throw DataError(src.path.string() + ": " + e.what());
    }
    for (auto& s : part) {
      if (!seen.insert(s.id).second) {
        throw DataError(src.path.string() + ": duplicate sample id " + s.id);
      }
      all.push_back(std::move(s));
    }
  }
  return all;
}

std::vector<Sample> run_standardize(const std::vector<Sample>& samples,
                                    const PipelineConfig& cfg) {
  std::vector<Sample> out(samples.size());
  std::vector<std::string> errors(samples.size());
  parallel_for(samples.size(), cfg.jobs, [&](std::size_t i) {
    try {
      out[i] = standardize::standardize_sample(samples[i], cfg.standardize);
    } catch (const DataError& e) {
      errors[i] = e.what();
    }
  });
  std::string message;
  std::size_t failed = 0;
  for (const auto& e : errors) {
    if (e.empty()) continue;
    if (++failed <= kMaxListedFailures) message += "\n  " + e;
  }
  if (failed > 0) {
    throw DataError(std::to_string(failed) + " sample(s) failed to standardize:" + message);
  }
  return out;
}

augment::ExpansionResult run_augment(const std::vector<Sample>& samples,
                                     const PipelineConfig& cfg) {
  const std::uint64_t seed = cfg.require_seed();
  std::unique_ptr<augment::Rewriter> rewriter;
  if (cfg.augment.rewriter && !cfg.offline) {
    rewriter = std::make_unique<augment::HttpRewriter>(*cfg.augment.rewriter,
                                                       cfg.augment.temperature);
  } else {
    rewriter = std::make_unique<augment::LocalRewriter>(cfg.augment.rules);
  }
  augment::ExpansionResult all;
  for (const auto& group : group_by_dataset(samples)) {
    auto r = augment::expand_dataset(group, cfg.augment.policy_for(group.front().dataset),
                                     *rewriter, seed, cfg.jobs);
    for (auto& s : r.samples) all.samples.push_back(std::move(s));
    for (auto& f : r.failures) all.failures.push_back(std::move(f));
  }
  return all;
}

std::vector<Sample> run_gen_perception(std::string_view annotations, const PipelineConfig& cfg) {
  const std::uint64_t seed = cfg.require_seed();
  const auto scenes = perceptgen::parse_annotations(annotations);
  std::vector<Sample> out(scenes.size());
  parallel_for(scenes.size(), cfg.jobs, [&](std::size_t i) {
    try {
      out[i] = perceptgen::make_grounding_sample(scenes[i], cfg.perceptgen, seed);
    } catch (const DataError& e) {
      throw DataError("scene " + scenes[i].id + ": " + e.what());
    }
  });
  return out;
}

PromptArtifacts run_build_prompts(const std::vector<Sample>& samples, const PipelineConfig& cfg) {
  PromptArtifacts art;
  art.prompts.resize(samples.size());
  art.budgets.resize(samples.size());
  std::vector<char> fits(samples.size(), 1);
  const auto& pc = cfg.promptkit;
  parallel_for(samples.size(), cfg.jobs, [&](std::size_t i) {
    const Sample& s = samples[i];
    const auto prompt = promptkit::assemble_prompt(s, pc.tpl);
    Json plan = Json::array();
    for (const auto& slot : prompt.plan) {
      plan.push_back({{"index", slot.index},
                      {"camera", to_string(slot.media.camera)},
                      {"kind", to_string(slot.media.kind)},
                      {"placeholder", slot.placeholder}});
    }
    art.prompts[i] = {{"id", s.id}, {"prompt", prompt.text}, {"placeholders", std::move(plan)}};
    const auto budget = promptkit::check_budget(s, pc.tpl, pc.grid, promptkit::estimate_text_tokens,
                                                pc.sequence_limit);
    art.budgets[i] = promptkit::budget_report_to_json(s.id, budget);
    fits[i] = budget.fits ? 1 : 0;
  });
  for (char f : fits) art.over_budget += f ? 0 : 1;
  return art;
}

std::string modality_of(const Sample& s) {
  bool video = false;
  for (const auto& m : s.media) video = video || m.kind == MediaKind::kVideo;
  const bool multi = s.media.size() > 1;
  return std::string(multi ? "multi_" : "single_") + (video ? "video" : "image");
}

Json run_stats(const std::vector<Sample>& samples) {
  std::map<std::string, std::size_t> by_dataset, by_modality, by_provenance, by_style;
  std::size_t qa_pairs = 0;
  for (const auto& s : samples) {
    ++by_dataset[std::string(to_string(s.dataset))];
    ++by_modality[modality_of(s)];
    for (const auto& qa : s.qa) {
      ++qa_pairs;
      ++by_provenance[std::string(to_string(qa.provenance))];
      ++by_style[std::string(to_string(qa.style))];
    }
  }
  auto to_json = [](const std::map<std::string, std::size_t>& m) {
    Json j = Json::object();
    for (const auto& [k, v] : m) j[k] = v;
    return j;
  };
  return Json{{"samples", samples.size()},
              {"qa_pairs", qa_pairs},
              {"by_dataset", to_json(by_dataset)},
              {"by_modality", to_json(by_modality)},
              {"by_provenance", to_json(by_provenance)},
              {"by_style", to_json(by_style)}};
}

std::size_t run_plan_curriculum(const PipelineConfig& cfg, const std::filesystem::path& dir) {
  std::size_t issues = 0;
  for (int stage = 1; stage <= 4; ++stage) {
    const auto plan = curriculum::build_stage_plan(stage, cfg.registry);
    const auto check =
        curriculum::validate_plan_totals(plan, curriculum::default_expectation(stage));
    for (const auto& issue : check.issues) {
      std::cerr << "stage " << stage << ": " << issue.rule << ": " << issue.detail << "\n";
    }
    issues += check.issues.size();
    ingest::write_file(dir / ("stage" + std::to_string(stage) + ".json"),
                       curriculum::plan_to_json(plan).dump(2) + "\n");
  }
  return issues;
}

namespace {

struct CommonFlags {
  std::string config;
  std::uint64_t seed = 0;
  bool offline = false;
  unsigned jobs = 1;
  std::string out;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* jobs_opt = nullptr;
  CLI::Option* out_opt = nullptr;
};

void add_common(CLI::App* sub, CommonFlags& f) {
  sub->add_option("--config", f.config, "Pipeline config JSON");
  f.seed_opt = sub->add_option("--seed", f.seed, "Global seed");
  sub->add_flag("--offline", f.offline, "Forbid network calls");
  f.jobs_opt = sub->add_option("--jobs", f.jobs, "Worker threads")->check(CLI::PositiveNumber);
  f.out_opt = sub->add_option("--out", f.out, "Output directory");
}

PipelineConfig resolve_config(const CommonFlags& f) {
  PipelineConfig cfg = f.config.empty() ? PipelineConfig{} : load_config(f.config);
  if (f.seed_opt->count() > 0) cfg.seed = f.seed;
  if (f.offline || offline_from_env()) cfg.offline = true;
  if (f.jobs_opt->count() > 0) cfg.jobs = f.jobs;
  if (f.out_opt->count() > 0) cfg.output_dir = f.out;
  if (cfg.offline && cfg.metrics.judge) cfg.metrics.judge->offline = true;
  return cfg;
}

std::filesystem::path output_path(const PipelineConfig& cfg, const std::string& explicit_path,
                                  const char* default_name) {
  if (!explicit_path.empty()) return explicit_path;
  return cfg.output_dir / default_name;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"dataforge: driving QA dataset unification toolkit"};
  app.require_subcommand(1);
  std::map<CLI::App*, CommonFlags> common;
  std::string in_path;
  std::string output;

  auto* ingest_cmd = app.add_subcommand("ingest", "Parse configured sources into a manifest");
  std::vector<std::string> source_args;
  ingest_cmd->add_option("--source", source_args, "DATASET=PATH, repeatable");
  auto* standardize_cmd = app.add_subcommand("standardize", "Unify object tokens");
  auto* augment_cmd = app.add_subcommand("augment", "Paraphrase and MC expansion");
  auto* perception_cmd = app.add_subcommand("gen-perception", "Grounding QA from annotations");
  std::string annotations;
  perception_cmd->add_option("--annotations", annotations, "Annotation JSON")->required();
  auto* prompts_cmd = app.add_subcommand("build-prompts", "Prompts and token budgets");
  std::string budget_output;
  prompts_cmd->add_option("--budget-output", budget_output, "Budget report JSONL");
  auto* plan_cmd = app.add_subcommand("plan-curriculum", "Emit stage plans");
  auto* eval_cmd = app.add_subcommand("evaluate", "Score predictions");
  std::string predictions;
  eval_cmd->add_option("--predictions", predictions, "Predictions JSONL")->required();
  auto* stats_cmd = app.add_subcommand("stats", "Manifest summary");
  auto* bev_cmd = app.add_subcommand("bev", "Rasterize a LiDAR sweep to a BEV image");
  std::string points;
  int fields = 5;
  std::string mode = "occupancy";
  ingest::BevGridConfig grid;
  bev_cmd->add_option("--points", points, "Binary float32 point file")->required();
  bev_cmd->add_option("--fields", fields, "Floats per point");
  bev_cmd->add_option("--mode", mode, "occupancy or max_intensity");
  bev_cmd->add_option("--range", grid.x_range, "Half extent in meters");
  bev_cmd->add_option("--cell", grid.cell_size, "Cell size in meters");

  for (auto* sub : {ingest_cmd, standardize_cmd, augment_cmd, perception_cmd, prompts_cmd,
                    plan_cmd, eval_cmd, stats_cmd, bev_cmd}) {
    add_common(sub, common[sub]);
    sub->add_option("--output", output, "Output file (or directory for plan-curriculum)");
  }
  for (auto* sub : {standardize_cmd, augment_cmd, prompts_cmd, stats_cmd}) {
    sub->add_option("--in", in_path, "Input manifest")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    CLI::App* chosen = app.get_subcommands().front();
    PipelineConfig cfg = resolve_config(common.at(chosen));
    if (ingest_cmd->parsed()) {
      for (const auto& arg : source_args) {
        const auto eq = arg.find('=');
        const auto id = parse_dataset_id(arg.substr(0, eq));
        if (eq == std::string::npos || !id) throw ConfigError("bad --source '" + arg + "'");
        cfg.sources.push_back({*id, arg.substr(eq + 1)});
      }
      const auto samples = run_ingest(cfg);
      const auto path = output_path(cfg, output, "ingested.jsonl");
      ingest::write_manifest(samples, path);
      std::cout << "ingested " << samples.size() << " samples -> " << path.string() << "\n";
    } else if (standardize_cmd->parsed()) {
      const auto samples = run_standardize(ingest::read_manifest(in_path), cfg);
      const auto path = output_path(cfg, output, "standardized.jsonl");
      ingest::write_manifest(samples, path);
      std::cout << "standardized " << samples.size() << " samples -> " << path.string() << "\n";
    } else if (augment_cmd->parsed()) {
      auto result = run_augment(ingest::read_manifest(in_path), cfg);
      for (const auto& f : result.failures) {
        std::cerr << "warning: " << f.sample_id << " qa[" << f.qa_index
                  << "]: rewriter failed, used local paraphrase: " << f.reason << "\n";
      }
      const auto path = output_path(cfg, output, "augmented.jsonl");
      const std::size_t n = result.samples.size();
      ingest::write_manifest(std::move(result.samples), path);
      std::cout << "augmented to " << n << " samples -> " << path.string() << "\n";
    } else if (perception_cmd->parsed()) {
      const auto samples = run_gen_perception(ingest::read_file(annotations), cfg);
      const auto path = output_path(cfg, output, "perception.jsonl");
      ingest::write_manifest(samples, path);
      std::cout << "generated " << samples.size() << " grounding samples -> " << path.string()
                << "\n";
    } else if (prompts_cmd->parsed()) {
      const auto art = run_build_prompts(ingest::read_manifest(in_path), cfg);
      const auto path = output_path(cfg, output, "prompts.jsonl");
      const auto budget_path = output_path(cfg, budget_output, "budget.jsonl");
      ingest::write_file(path, join_lines(art.prompts));
      ingest::write_file(budget_path, join_lines(art.budgets));
      std::cout << art.prompts.size() << " prompts -> " << path.string() << ", "
                << art.over_budget << " over the " << cfg.promptkit.sequence_limit
                << "-token budget\n";
    } else if (plan_cmd->parsed()) {
      const std::filesystem::path dir =
          output.empty() ? cfg.output_dir / "plans" : std::filesystem::path(output);
      const std::size_t issues = run_plan_curriculum(cfg, dir);
      std::cout << "wrote 4 stage plans -> " << dir.string() << "\n";
      if (issues > 0) return 1;
    } else if (eval_cmd->parsed()) {
      const auto records = metrics::parse_predictions(ingest::read_file(predictions));
      Json reports = Json::array();
      for (const auto& r : metrics::evaluate(records, cfg.metrics)) {
        reports.push_back(metrics::report_to_json(r));
      }
      const auto path = output_path(cfg, output, "metrics.json");
      ingest::write_file(path, reports.dump(2) + "\n");
      std::cout << reports.dump(2) << "\n";
    } else if (stats_cmd->parsed()) {
      const Json stats = run_stats(ingest::read_manifest(in_path));
      if (!output.empty()) ingest::write_file(output, stats.dump(2) + "\n");
      std::cout << stats.dump(2) << "\n";
    } else if (bev_cmd->parsed()) {
      if (mode == "occupancy") {
        grid.mode = ingest::BevMode::kOccupancy;
      } else if (mode == "max_intensity") {
        grid.mode = ingest::BevMode::kMaxIntensity;
      } else {
        throw ConfigError("--mode must be occupancy or max_intensity");
      }
      grid.y_range = grid.x_range;
      const std::filesystem::path src(points);
      const auto path = output_path(cfg, output, (src.stem().string() + "_bev.pgm").c_str());
      const auto cloud = ingest::read_lidar_bin(src, fields);
      const auto raster = ingest::project_lidar_bev(cloud, grid, path.string());
      ingest::write_pgm(raster, path);
      std::cout << media_to_json(raster.media).dump() << "\n";
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 2;
  } catch (const NetworkError& e) {
    std::cerr << "network error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace dataforge::cli
