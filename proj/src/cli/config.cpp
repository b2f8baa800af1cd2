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
#include "dataforge/cli/config.hpp"

#include <cstdlib>
#include <string_view>

#include "dataforge/core/errors.hpp"
#include "dataforge/ingest/manifest.hpp"

namespace dataforge::cli {
namespace {

DatasetId dataset_named(const std::string& name) {
  const auto id = parse_dataset_id(name);
  if (!id) throw ConfigError("unknown dataset '" + name + "'");
  return *id;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return (path.is_absolute() || base.empty() ? path : base / path).lexically_normal();
}

ChatEndpointConfig endpoint_from_json(const Json& j) {
  ChatEndpointConfig e;
  e.url = j.at("url").get<std::string>();
  e.model = j.value("model", e.model);
  e.timeout_ms = j.value("timeout_ms", e.timeout_ms);
  e.retries = j.value("retries", e.retries);
  e.backoff_ms = j.value("backoff_ms", e.backoff_ms);
  e.max_in_flight = j.value("max_in_flight", e.max_in_flight);
  return e;
}

Json load_json_file(const std::filesystem::path& path) {
  const Json j = Json::parse(ingest::read_file(path), nullptr, false);
  if (j.is_discarded()) throw ConfigError(path.string() + ": not valid JSON");
  return j;
}

AugmentConfig augment_from_json(const Json& j, const std::filesystem::path& base) {
  AugmentConfig a;
  if (j.is_null()) return a;
  if (j.contains("policies")) {
    for (const auto& [name, p] : j.at("policies").items()) {
      const DatasetId id = dataset_named(name);
      augment::ExpansionPolicy pol = augment::ExpansionPolicy::default_for(id);
      pol.factor = p.value("factor", pol.factor);
      pol.mc_fraction = p.value("mc_fraction", pol.mc_fraction);
      if (pol.factor < 1) throw ConfigError("augment factor for " + name + " must be >= 1");
      if (!(pol.mc_fraction >= 0 && pol.mc_fraction <= 1)) {
        throw ConfigError("mc_fraction for " + name + " must be in [0, 1]");
      }
      a.policies[id] = pol;
    }
  }
  if (j.contains("rewriter") && !j.at("rewriter").is_null()) {
    a.rewriter = endpoint_from_json(j.at("rewriter"));
    a.temperature = j.at("rewriter").value("temperature", a.temperature);
  }
  if (j.contains("paraphrase_rules")) {
    const Json& r = j.at("paraphrase_rules");
    a.rules = augment::ParaphraseRules::from_json(
        r.is_string() ? load_json_file(resolve(base, r.get<std::string>())) : r);
  }
  return a;
}

PromptConfig prompt_from_json(const Json& j, const std::filesystem::path& base) {
  PromptConfig p;
  if (j.is_null()) return p;
  if (j.contains("template")) {
    const Json& t = j.at("template");
    p.tpl = promptkit::PromptTemplate::from_json(
        t.is_string() ? load_json_file(resolve(base, t.get<std::string>())) : t);
  }
  if (j.contains("grid")) p.grid = promptkit::grid_config_from_json(j.at("grid"));
  p.sequence_limit = j.value("sequence_limit", p.sequence_limit);
  if (p.sequence_limit <= 0) throw ConfigError("sequence_limit must be positive");
  return p;
}

}  // namespace

augment::ExpansionPolicy AugmentConfig::policy_for(DatasetId dataset) const {
  auto it = policies.find(dataset);
  return it != policies.end() ? it->second : augment::ExpansionPolicy::default_for(dataset);
}

std::uint64_t PipelineConfig::require_seed() const {
  if (!seed) throw ConfigError("a seed is required (config \"seed\" or --seed)");
  return *seed;
}

PipelineConfig config_from_json(const Json& j, const std::filesystem::path& base) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  PipelineConfig c;
  try {
    if (j.contains("seed")) {
      if (!j.at("seed").is_number_unsigned()) throw ConfigError("seed must be a non-negative integer");
      c.seed = j.at("seed").get<std::uint64_t>();
    }
    c.offline = j.value("offline", c.offline);
    if (j.contains("jobs")) {
      const int jobs = j.at("jobs").get<int>();
      if (jobs < 1) throw ConfigError("jobs must be >= 1");
      c.jobs = static_cast<unsigned>(jobs);
    }
    if (j.contains("output_dir")) c.output_dir = resolve(base, j.at("output_dir").get<std::string>());
    if (j.contains("sources")) {
      for (const auto& s : j.at("sources")) {
        c.sources.push_back({dataset_named(s.at("dataset").get<std::string>()),
                             resolve(base, s.at("path").get<std::string>())});
      }
    }
    if (j.contains("standardize")) {
      c.standardize = standardize::StandardizeConfig::from_json(j.at("standardize"));
    }
    if (j.contains("augment")) c.augment = augment_from_json(j.at("augment"), base);
    if (j.contains("perceptgen")) {
      c.perceptgen = perceptgen::grounding_spec_from_json(j.at("perceptgen"));
    }
    if (j.contains("promptkit")) c.promptkit = prompt_from_json(j.at("promptkit"), base);
    if (j.contains("metrics")) c.metrics = metrics::EvalConfig::from_json(j.at("metrics"));
    if (j.contains("registry")) {
      const Json& r = j.at("registry");
      c.registry = curriculum::registry_from_json(
          r.is_string() ? load_json_file(resolve(base, r.get<std::string>())) : r);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  return config_from_json(load_json_file(path), path.parent_path());
}

bool offline_from_env() {
  const char* v = std::getenv("DATAFORGE_OFFLINE");
  if (v == nullptr) return false;
  const std::string_view s(v);
  return s == "1" || s == "true" || s == "TRUE" || s == "yes";
}

}  // namespace dataforge::cli
