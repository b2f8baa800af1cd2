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
#ifndef DATAFORGE_CLI_CONFIG_HPP_
#define DATAFORGE_CLI_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dataforge/augment/expand.hpp"
#include "dataforge/augment/paraphrase.hpp"
#include "dataforge/core/chat_client.hpp"
#include "dataforge/core/serialize.hpp"
#include "dataforge/curriculum/stage_plan.hpp"
#include "dataforge/metrics/evaluate.hpp"
#include "dataforge/perceptgen/grounding.hpp"
#include "dataforge/promptkit/prompt.hpp"
#include "dataforge/standardize/standardize.hpp"

namespace dataforge::cli {

struct SourceEntry {
  DatasetId dataset = DatasetId::kGeneric;
  std::filesystem::path path;
};

struct AugmentConfig {
  std::map<DatasetId, augment::ExpansionPolicy> policies;  // overrides
  std::optional<ChatEndpointConfig> rewriter;  // unset: local paraphraser
  double temperature = 1.0;
  augment::ParaphraseRules rules = augment::ParaphraseRules::defaults();

  augment::ExpansionPolicy policy_for(DatasetId dataset) const;
};

struct PromptConfig {
  promptkit::PromptTemplate tpl = promptkit::PromptTemplate::defaults();
  promptkit::GridConfig grid;
  std::int64_t sequence_limit = promptkit::kSequenceLimit;
};

// A single JSON file; every key is optional. Relative paths resolve against
// the directory holding the file. Documented in docs/config.md.
struct PipelineConfig {
  std::optional<std::uint64_t> seed;
  bool offline = false;
  unsigned jobs = 1;
  std::filesystem::path output_dir = "out";
  std::vector<SourceEntry> sources;
  standardize::StandardizeConfig standardize;
  AugmentConfig augment;
  perceptgen::GroundingSpec perceptgen;
  PromptConfig promptkit;
  metrics::EvalConfig metrics;
  curriculum::DatasetRegistry registry = curriculum::default_registry();

  // Throws ConfigError when unset; every randomized step needs it.
  std::uint64_t require_seed() const;
};

// Throws ConfigError or IoError.
PipelineConfig load_config(const std::filesystem::path& path);
PipelineConfig config_from_json(const Json& j, const std::filesystem::path& base_dir);

// DATAFORGE_OFFLINE=1 (or "true") in the environment.
bool offline_from_env();

}  // namespace dataforge::cli

#endif  // DATAFORGE_CLI_CONFIG_HPP_
