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
#include "dataforge/metrics/evaluate.hpp"

#include <algorithm>

#include "dataforge/core/errors.hpp"
#include "dataforge/core/object_token.hpp"
#include "dataforge/core/text.hpp"
#include "dataforge/metrics/judge.hpp"
#include "dataforge/metrics/metrics.hpp"

namespace dataforge::metrics {
namespace {

std::string as_text(const Json& v, const std::string& id, const char* side) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  throw DataError(id + ": " + side + " must be a string");
}

double as_number(const Json& v, const std::string& id, const char* side) {
  if (v.is_number()) return v.get<double>();
  throw DataError(id + ": " + side + " must be a number");
}

std::vector<LocalizedObject> parse_grounding_text(std::string_view text) {
  std::vector<LocalizedObject> out;
  const auto spans = find_token_candidates(text);
  if (!spans.empty()) {
    for (const auto& s : spans) {
      out.push_back({parse_object_token(text.substr(s.begin, s.end - s.begin)).ref, 1.0});
    }
    return out;
  }
  // "Detected <category>: [..], [..]"
  constexpr std::string_view kLead = "Detected ";
  const auto lead = text.find(kLead);
  const auto colon = text.find(':', lead == std::string_view::npos ? 0 : lead);
  if (lead == std::string_view::npos || colon == std::string_view::npos) return out;
  const std::string category(text::trim(text.substr(lead + kLead.size(), colon - lead - kLead.size())));
  std::size_t pos = colon;
  while ((pos = text.find('[', pos)) != std::string_view::npos) {
    const auto close = text.find(']', pos);
    if (close == std::string_view::npos) break;
    const std::string token = "<" + category + ">" + std::string(text.substr(pos, close - pos + 1));
    out.push_back({parse_object_token(token).ref, 1.0});
    pos = close + 1;
  }
  return out;
}

std::string camera_key(const ObjectRef& ref) {
  if (ref.camera) return std::string(to_string(*ref.camera));
  return ref.camera_tag;
}

std::optional<BBoxNorm> box_of(const ObjectRef& ref) {
  if (const auto* b = std::get_if<BBoxNorm>(&ref.geometry)) return *b;
  return std::nullopt;
}

std::optional<PointNorm> point_of(const ObjectRef& ref) {
  if (const auto* p = std::get_if<PointNorm>(&ref.geometry)) return *p;
  if (const auto* b = std::get_if<BBoxNorm>(&ref.geometry)) {
    return PointNorm{NormCoord((b->x_min.milli() + b->x_max.milli() + 1) / 2),
                     NormCoord((b->y_min.milli() + b->y_max.milli() + 1) / 2)};
  }
  return std::nullopt;
}

void require_normalized(const std::vector<LocalizedObject>& objs, const std::string& id) {
  for (const auto& o : objs) {
    if (!is_normalized(o.ref.geometry)) {
      throw DataError(id + ": localization answers must use normalized coordinates");
    }
  }
}

struct Accumulator {
  std::vector<TextPair> accuracy;
  double bleu_sum = 0;
  std::size_t bleu_n = 0;
  std::vector<NumericPair> mae;
  std::map<std::string, DetectionGroup> groups;
  std::size_t map_records = 0;
  double match_weighted = 0;
  std::size_t match_gt = 0;
  std::size_t match_records = 0;
  double judge_sum = 0;
  std::size_t judge_n = 0;
  std::size_t judge_skipped = 0;
};

void add_localization(Accumulator& acc, const PredictionRecord& r, const EvalConfig& cfg) {
  const auto gold = parse_localized_objects(r.gold);
  const auto pred = parse_localized_objects(r.predicted);
  require_normalized(gold, r.sample_id);
  require_normalized(pred, r.sample_id);
  const bool boxes = !gold.empty() && std::all_of(gold.begin(), gold.end(), [](const auto& o) {
    return is_box(o.ref.geometry);
  });
  if (boxes) {
    ++acc.map_records;
    // One image per record within each (category, camera) group.
    std::map<std::string, ImageDetections> per_group;
    for (const auto& g : gold) {
      per_group[g.ref.category + "|" + camera_key(g.ref)].ground_truth.push_back(*box_of(g.ref));
    }
    for (const auto& p : pred) {
      if (auto b = box_of(p.ref)) {
        per_group[p.ref.category + "|" + camera_key(p.ref)].detections.push_back(
            {*b, p.confidence});
      }
    }
    for (auto& [key, image] : per_group) {
      auto& group = acc.groups[key];
      group.key = key;
      group.images.push_back(std::move(image));
    }
    return;
  }
  std::vector<CameraPoint> gp;
  std::vector<CameraPoint> pp;
  for (const auto& g : gold) {
    gp.push_back({g.ref.camera.value_or(CameraId::kFrontOnly), *point_of(g.ref)});
  }
  for (const auto& p : pred) {
    pp.push_back({p.ref.camera.value_or(CameraId::kFrontOnly), *point_of(p.ref)});
  }
  ++acc.match_records;
  if (gp.empty()) return;
  acc.match_weighted += center_match_score(pp, gp, cfg.match_radius) * gp.size();
  acc.match_gt += gp.size();
}

MetricReport finish(DatasetId dataset, const Accumulator& acc, double iou_threshold) {
  MetricReport rep;
  rep.dataset = dataset;
  if (!acc.accuracy.empty()) {
    rep.entries["accuracy"] = {accuracy(acc.accuracy), acc.accuracy.size(), "ok"};
  }
  if (acc.bleu_n > 0) rep.entries["bleu"] = {acc.bleu_sum / acc.bleu_n, acc.bleu_n, "ok"};
  if (!acc.mae.empty()) rep.entries["mae"] = {mae(acc.mae), acc.mae.size(), "ok"};
  if (acc.map_records > 0) {
    std::vector<DetectionGroup> groups;
    for (const auto& [k, g] : acc.groups) groups.push_back(g);
    const auto v = mean_average_precision(groups, iou_threshold);
    rep.entries["map"] = {v, acc.map_records, v ? "ok" : "undefined"};
  }
  if (acc.match_records > 0) {
    if (acc.match_gt > 0) {
      rep.entries["match_score"] = {acc.match_weighted / acc.match_gt, acc.match_records, "ok"};
    } else {
      rep.entries["match_score"] = {std::nullopt, acc.match_records, "undefined"};
    }
  }
  if (acc.judge_skipped > 0) {
    rep.entries["llm_judge"] = {std::nullopt, acc.judge_skipped, "skipped"};
  } else if (acc.judge_n > 0) {
    rep.entries["llm_judge"] = {acc.judge_sum / acc.judge_n, acc.judge_n, "ok"};
  }
  return rep;
}

}  // namespace

std::string_view to_string(MetricKind k) {
  switch (k) {
    case MetricKind::kAccuracy: return "accuracy";
    case MetricKind::kBleu: return "bleu";
    case MetricKind::kMae: return "mae";
    case MetricKind::kLocalization: return "localization";
    case MetricKind::kJudge: return "judge";
  }
  return "?";
}

std::optional<MetricKind> parse_metric_kind(std::string_view name) {
  for (auto k : {MetricKind::kAccuracy, MetricKind::kBleu, MetricKind::kMae,
                 MetricKind::kLocalization, MetricKind::kJudge}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::vector<PredictionRecord> parse_predictions(std::string_view jsonl) {
  using namespace json_field;
  std::vector<PredictionRecord> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < jsonl.size()) {
    auto nl = jsonl.find('\n', start);
    if (nl == std::string_view::npos) nl = jsonl.size();
    const std::string_view line = jsonl.substr(start, nl - start);
    start = nl + 1;
    ++line_no;
    if (text::trim(line).empty()) continue;
    const Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw SchemaError::at_line(line_no, "not a JSON object");
    }
    try {
      PredictionRecord r;
      r.sample_id = string_at(j, "sample_id", "$");
      r.task = string_at(j, "task", "$");
      r.predicted = member(j, "predicted", "$");
      r.gold = member(j, "gold", "$");
      std::string ds;
      if (optional_member(j, "dataset", "$")) {
        ds = string_at(j, "dataset", "$");
      } else {
        ds = r.sample_id.substr(0, r.sample_id.find('/'));
      }
      const auto id = parse_dataset_id(ds);
      if (!id) throw FieldError("$.dataset", "unknown dataset '" + ds + "'");
      r.dataset = *id;
      out.push_back(std::move(r));
    } catch (const FieldError& e) {
      throw SchemaError::at_line(line_no, e.path() + ": " + e.reason());
    }
  }
  return out;
}

EvalConfig EvalConfig::from_json(const Json& j) {
  EvalConfig cfg;
  if (j.is_null()) return cfg;
  try {
    if (j.contains("task_metrics")) {
      for (const auto& [task, kind] : j.at("task_metrics").items()) {
        const auto k = parse_metric_kind(kind.get<std::string>());
        if (!k) throw ConfigError("unknown metric '" + kind.get<std::string>() + "'");
        cfg.task_metrics[task] = *k;
      }
    }
    cfg.strict_accuracy = j.value("strict_accuracy", cfg.strict_accuracy);
    cfg.iou_threshold = j.value("iou_threshold", cfg.iou_threshold);
    cfg.match_radius = j.value("match_radius", cfg.match_radius);
    cfg.judge_rubric = j.value("judge_rubric", cfg.judge_rubric);
    if (j.contains("judge") && !j.at("judge").is_null()) {
      const Json& jj = j.at("judge");
      ChatEndpointConfig e;
      e.url = jj.at("url").get<std::string>();
      e.model = jj.value("model", e.model);
      e.timeout_ms = jj.value("timeout_ms", e.timeout_ms);
      e.retries = jj.value("retries", e.retries);
      cfg.judge = e;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid metrics config: ") + e.what());
  }
  if (!(cfg.match_radius > 0)) throw ConfigError("match_radius must be positive");
  if (!(cfg.iou_threshold > 0 && cfg.iou_threshold <= 1)) {
    throw ConfigError("iou_threshold must be in (0, 1]");
  }
  return cfg;
}

MetricKind metric_for(const PredictionRecord& r, const EvalConfig& cfg) {
  auto it = cfg.task_metrics.find(r.task);
  if (it != cfg.task_metrics.end()) return it->second;
  return r.gold.is_number() ? MetricKind::kMae : MetricKind::kBleu;
}

std::vector<LocalizedObject> parse_localized_objects(const Json& value) {
  if (value.is_string()) return parse_grounding_text(value.get<std::string>());
  if (!value.is_array()) throw DataError("localization value must be a string or an array");
  std::vector<LocalizedObject> out;
  for (const auto& item : value) {
    if (item.is_string()) {
      out.push_back({parse_object_token(item.get<std::string>()).ref, 1.0});
    } else if (item.is_object() && item.contains("token") && item.at("token").is_string()) {
      LocalizedObject o{parse_object_token(item.at("token").get<std::string>()).ref, 1.0};
      if (item.contains("confidence")) {
        if (!item.at("confidence").is_number()) throw DataError("confidence must be a number");
        o.confidence = item.at("confidence").get<double>();
      }
      out.push_back(std::move(o));
    } else {
      throw DataError("localization entries must be tokens or {token, confidence}");
    }
  }
  return out;
}

std::vector<MetricReport> evaluate(const std::vector<PredictionRecord>& records,
                                   const EvalConfig& cfg) {
  std::map<DatasetId, Accumulator> acc;
  std::optional<LlmJudge> judge;
  if (cfg.judge) judge.emplace(*cfg.judge);
  for (const auto& r : records) {
    Accumulator& a = acc[r.dataset];
    try {
      switch (metric_for(r, cfg)) {
        case MetricKind::kAccuracy:
          a.accuracy.push_back({as_text(r.predicted, r.sample_id, "predicted"),
                                as_text(r.gold, r.sample_id, "gold")});
          break;
        case MetricKind::kBleu: {
          const std::string gold = as_text(r.gold, r.sample_id, "gold");
          const std::string pred = as_text(r.predicted, r.sample_id, "predicted");
          const std::vector<std::string> refs{gold};
          a.bleu_sum += text::split_whitespace(pred).empty() ? 0.0 : bleu(pred, refs);
          ++a.bleu_n;
          break;
        }
        case MetricKind::kMae:
          a.mae.push_back({as_number(r.predicted, r.sample_id, "predicted"),
                           as_number(r.gold, r.sample_id, "gold")});
          break;
        case MetricKind::kLocalization:
          add_localization(a, r, cfg);
          break;
        case MetricKind::kJudge: {
          if (!judge) {
            ++a.judge_skipped;
            break;
          }
          const auto outcome = judge->score(as_text(r.predicted, r.sample_id, "predicted"),
                                            as_text(r.gold, r.sample_id, "gold"), cfg.judge_rubric);
          if (outcome.skipped) {
            ++a.judge_skipped;
          } else {
            a.judge_sum += *outcome.score;
            ++a.judge_n;
          }
          break;
        }
      }
    } catch (const TokenGrammarError& e) {
      throw DataError(r.sample_id + ": " + e.what());
    }
  }
  std::vector<MetricReport> out;
  for (const auto& [dataset, a] : acc) out.push_back(finish(dataset, a, cfg.iou_threshold));
  return out;
}

Json report_to_json(const MetricReport& r) {
  Json entries = Json::object();
  for (const auto& [name, e] : r.entries) {
    entries[name] = {{"value", e.value ? Json(*e.value) : Json(nullptr)},
                     {"n_samples", e.n_samples},
                     {"status", e.status}};
  }
  return Json{{"dataset", to_string(r.dataset)}, {"metrics", std::move(entries)}};
}

}  // namespace dataforge::metrics
