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
#ifndef DATAFORGE_METRICS_EVALUATE_HPP_
#define DATAFORGE_METRICS_EVALUATE_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dataforge/core/chat_client.hpp"
#include "dataforge/core/serialize.hpp"
#include "dataforge/core/types.hpp"

namespace dataforge::metrics {

// One line of a predictions file:
//   {"sample_id": "DRIVELM/...", "task": "perception", "predicted": ..., "gold": ...}
// "dataset" is optional and otherwise taken from the sample id prefix.
struct PredictionRecord {
  std::string sample_id;
  DatasetId dataset = DatasetId::kGeneric;
  std::string task;
  Json predicted;
  Json gold;
};

// Throws SchemaError with the 1-based line number.
std::vector<PredictionRecord> parse_predictions(std::string_view jsonl);

enum class MetricKind { kAccuracy, kBleu, kMae, kLocalization, kJudge };

std::string_view to_string(MetricKind k);
std::optional<MetricKind> parse_metric_kind(std::string_view name);

struct EvalConfig {
  // Task name to metric. Unlisted tasks use MAE for numeric gold and BLEU
  // otherwise.
  std::map<std::string, MetricKind> task_metrics = {
      {"classification", MetricKind::kAccuracy}, {"multiple_choice", MetricKind::kAccuracy},
      {"regression", MetricKind::kMae},          {"detection", MetricKind::kLocalization},
      {"grounding", MetricKind::kLocalization},  {"judge", MetricKind::kJudge},
  };
  bool strict_accuracy = false;
  double iou_threshold = 0.5;
  // 16 px on a 1600 px wide frame.
  double match_radius = 1.0;
  std::optional<ChatEndpointConfig> judge;
  std::string judge_rubric = "Rate the candidate answer from 0 to 100.";

  static EvalConfig from_json(const Json& j);
};

MetricKind metric_for(const PredictionRecord& r, const EvalConfig& cfg);

struct MetricEntry {
  std::optional<double> value;  // unset when skipped or undefined
  std::size_t n_samples = 0;
  std::string status = "ok";    // ok | skipped | undefined
};

// Keys: accuracy, bleu, mae, map, match_score, llm_judge.
struct MetricReport {
  DatasetId dataset = DatasetId::kGeneric;
  std::map<std::string, MetricEntry> entries;
};

// Objects named in a localization answer, either as object tokens or as a
// grounding answer "Detected car: [CAM_FRONT, 1.000, ...], [...]". Array
// values may hold token strings or {"token": ..., "confidence": ...}.
struct LocalizedObject {
  ObjectRef ref;
  double confidence = 1.0;
};
std::vector<LocalizedObject> parse_localized_objects(const Json& value);

// Localization records score MAP when the gold geometry is boxes (groups of
// category and camera) and the center match score when it is points. Reports
// come back in dataset order.
std::vector<MetricReport> evaluate(const std::vector<PredictionRecord>& records,
                                   const EvalConfig& cfg);

Json report_to_json(const MetricReport& r);

}  // namespace dataforge::metrics

#endif  // DATAFORGE_METRICS_EVALUATE_HPP_
