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
#ifndef DATAFORGE_CURRICULUM_STAGE_PLAN_HPP_
#define DATAFORGE_CURRICULUM_STAGE_PLAN_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dataforge/core/serialize.hpp"
#include "dataforge/core/types.hpp"

namespace dataforge::curriculum {

inline constexpr int kSequenceLength = 8192;

enum class Trainability { kFrozen, kTrainable };
enum class Modality { kSingleImage, kMultiImage, kSingleVideo, kMultiVideo, kLanguage };

std::string_view to_string(Trainability t);
std::string_view to_string(Modality m);

struct ComponentFlags {
  Trainability vision_encoder = Trainability::kTrainable;
  Trainability projector = Trainability::kTrainable;
  Trainability llm = Trainability::kTrainable;
  bool operator==(const ComponentFlags&) const = default;
};

struct DataMixEntry {
  std::string name;
  Modality modality = Modality::kSingleImage;
  std::int64_t count = 0;
  std::string note;  // e.g. "rounded figure"
  bool operator==(const DataMixEntry&) const = default;
};

// Learning rates of frozen components are 0 and serialize as null.
struct StagePlan {
  int stage = 1;
  std::string name;
  std::vector<DataMixEntry> mix;
  ComponentFlags flags;
  double lr_vision = 0;
  double lr_projector = 0;
  double lr_llm = 0;
  int batch_size = 0;
  int epochs = 1;
  int sequence_length = kSequenceLength;

  std::int64_t total() const;
  bool operator==(const StagePlan&) const = default;
};

using DatasetRegistry = std::map<DatasetId, std::int64_t>;

// Per-dataset training sample counts of the six driving datasets.
const DatasetRegistry& default_registry();
// {"CODA_LM": 184480, ...}. Throws ConfigError.
DatasetRegistry registry_from_json(const Json& j);

// Throws MissingDatasetCount when stage 4 needs a dataset the registry lacks,
// std::invalid_argument for a stage outside 1..4.
StagePlan build_stage_plan(int stage, const DatasetRegistry& registry);

struct TotalExpectation {
  std::int64_t total = 0;
  double relative_tolerance = 0;  // 0 means exact
};

struct PlanIssue {
  std::string rule;
  std::string detail;
};

struct PlanCheckReport {
  std::int64_t actual_total = 0;
  std::vector<PlanIssue> issues;
  bool ok() const { return issues.empty(); }
};

PlanCheckReport validate_plan_totals(const StagePlan& plan, const TotalExpectation& expect);

// Expected totals: 558000, 3143000, 2906000 exact; 1.5M within 2%.
TotalExpectation default_expectation(int stage);

Json plan_to_json(const StagePlan& plan);

}  // namespace dataforge::curriculum

#endif  // DATAFORGE_CURRICULUM_STAGE_PLAN_HPP_
