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
#ifndef DATAFORGE_CLI_COMMANDS_HPP_
#define DATAFORGE_CLI_COMMANDS_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "dataforge/augment/expand.hpp"
#include "dataforge/cli/config.hpp"
#include "dataforge/core/serialize.hpp"
#include "dataforge/core/types.hpp"

namespace dataforge::cli {

// Library form of each subcommand. They throw the module errors; run_cli
// turns those into exit codes.

std::vector<Sample> run_ingest(const PipelineConfig& cfg);

// Throws DataError listing every failing sample when any sample fails.
std::vector<Sample> run_standardize(const std::vector<Sample>& samples,
                                    const PipelineConfig& cfg);

// Expands each dataset group with its policy. Uses the HTTP rewriter only
// when one is configured and the run is online.
augment::ExpansionResult run_augment(const std::vector<Sample>& samples,
                                     const PipelineConfig& cfg);

std::vector<Sample> run_gen_perception(std::string_view annotations,
                                       const PipelineConfig& cfg);

struct PromptArtifacts {
  std::vector<Json> prompts;  // {id, prompt, placeholders}
  std::vector<Json> budgets;  // BudgetReport per sample
  std::size_t over_budget = 0;
};
PromptArtifacts run_build_prompts(const std::vector<Sample>& samples,
                                  const PipelineConfig& cfg);

// Counts per dataset, modality, provenance and QA style.
Json run_stats(const std::vector<Sample>& samples);

// "single_image", "multi_image", "single_video" or "multi_video".
std::string modality_of(const Sample& s);

// Writes stage{1..4}.json under dir; returns the number of plan issues.
std::size_t run_plan_curriculum(const PipelineConfig& cfg, const std::filesystem::path& dir);

int run_cli(int argc, char** argv);

}  // namespace dataforge::cli

#endif  // DATAFORGE_CLI_COMMANDS_HPP_
