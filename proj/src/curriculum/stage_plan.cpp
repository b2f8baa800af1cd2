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
#include "dataforge/curriculum/stage_plan.hpp"

#include <cmath>
#include <stdexcept>

#include "dataforge/core/errors.hpp"

namespace dataforge::curriculum {
namespace {

constexpr double kLrAlignment = 1e-3;
constexpr double kLrVision = 2e-6;
constexpr double kLrFull = 1e-5;
constexpr int kBatchAlignment = 512;
constexpr int kBatchFull = 256;

StagePlan full_finetune(int stage, std::string name) {
  StagePlan p;
  p.stage = stage;
  p.name = std::move(name);
  p.lr_vision = kLrVision;
  p.lr_projector = kLrFull;
  p.lr_llm = kLrFull;
  p.batch_size = kBatchFull;
  return p;
}

struct DrivingSet {
  DatasetId id;
  const char* name;
  Modality modality;
};

constexpr DrivingSet kDrivingSets[] = {
    {DatasetId::kCodaLm, "CODA-LM", Modality::kSingleImage},
    {DatasetId::kMaplm, "MAPLM", Modality::kMultiImage},
    {DatasetId::kDriveLm, "DriveLM", Modality::kMultiImage},
    {DatasetId::kLingoQa, "LingoQA", Modality::kSingleVideo},
    {DatasetId::kOmniDrive, "OmniDrive", Modality::kMultiVideo},
    {DatasetId::kNuInstruct, "NuInstruct", Modality::kMultiVideo},
};

Json lr_json(double lr, Trainability t) {
  if (t == Trainability::kFrozen) return nullptr;
  return lr;
}

}  // namespace

std::string_view to_string(Trainability t) {
  return t == Trainability::kFrozen ? "frozen" : "trainable";
}

std::string_view to_string(Modality m) {
  switch (m) {
    case Modality::kSingleImage: return "single_image";
    case Modality::kMultiImage: return "multi_image";
    case Modality::kSingleVideo: return "single_video";
    case Modality::kMultiVideo: return "multi_video";
    case Modality::kLanguage: return "language";
  }
  return "?";
}

std::int64_t StagePlan::total() const {
  std::int64_t sum = 0;
  for (const auto& e : mix) sum += e.count;
  return sum;
}

const DatasetRegistry& default_registry() {
  static const DatasetRegistry reg = {
      {DatasetId::kCodaLm, 184480},  {DatasetId::kMaplm, 94970},
      {DatasetId::kDriveLm, 376181}, {DatasetId::kLingoQa, 413829},
      {DatasetId::kOmniDrive, 374329}, {DatasetId::kNuInstruct, 71842},
  };
  return reg;
}

DatasetRegistry registry_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("dataset registry must be a JSON object");
  DatasetRegistry reg;
  for (const auto& [name, value] : j.items()) {
    const auto id = parse_dataset_id(name);
    if (!id) throw ConfigError("unknown dataset in registry: " + name);
    if (!value.is_number_integer() || value.get<std::int64_t>() <= 0) {
      throw ConfigError("registry count for " + name + " must be a positive integer");
    }
    reg[*id] = value.get<std::int64_t>();
  }
  return reg;
}

StagePlan build_stage_plan(int stage, const DatasetRegistry& registry) {
  switch (stage) {
    case 1: {
      StagePlan p;
      p.stage = 1;
      p.name = "language-image alignment";
      p.flags = {Trainability::kFrozen, Trainability::kTrainable, Trainability::kFrozen};
      p.lr_projector = kLrAlignment;
      p.batch_size = kBatchAlignment;
      p.mix = {{"LCS-558K", Modality::kSingleImage, 558000, "rounded figure"}};
      return p;
    }
    case 2: {
      StagePlan p = full_finetune(2, "single-image pre-training");
      p.mix = {{"single-image", Modality::kSingleImage, 3000000, "rounded figure"},
               {"Evo-Instruct", Modality::kLanguage, 143000, "rounded figure"}};
      return p;
    }
    case 3: {
      StagePlan p = full_finetune(3, "multi-capacity pre-training");
      p.mix = {{"single-image", Modality::kSingleImage, 1500000, "rounded figure"},
               {"multi-view image", Modality::kMultiImage, 760000, "rounded figure"},
               {"single video", Modality::kSingleVideo, 501000, "rounded figure"},
               {"multi-view video", Modality::kMultiVideo, 145000, "rounded figure"}};
      return p;
    }
    case 4: {
      StagePlan p = full_finetune(4, "driving fine-tuning");
      for (const auto& d : kDrivingSets) {
        auto it = registry.find(d.id);
        if (it == registry.end()) {
          throw MissingDatasetCount("registry has no count for " + std::string(to_string(d.id)));
        }
        p.mix.push_back({d.name, d.modality, it->second, ""});
      }
      return p;
    }
    default:
      throw std::invalid_argument("stage must be 1..4, got " + std::to_string(stage));
  }
}

TotalExpectation default_expectation(int stage) {
  switch (stage) {
    case 1: return {558000, 0};
    case 2: return {3143000, 0};
    case 3: return {2906000, 0};
    case 4: return {1500000, 0.02};
    default: throw std::invalid_argument("stage must be 1..4");
  }
}

PlanCheckReport validate_plan_totals(const StagePlan& plan, const TotalExpectation& expect) {
  PlanCheckReport r;
  if (plan.mix.empty()) r.issues.push_back({"mix_present", "stage has no data mix entries"});
  for (const auto& e : plan.mix) {
    if (e.count <= 0) {
      r.issues.push_back({"count_positive", e.name + " has count " + std::to_string(e.count)});
    }
  }
  const bool any_trainable = plan.flags.vision_encoder == Trainability::kTrainable ||
                             plan.flags.projector == Trainability::kTrainable ||
                             plan.flags.llm == Trainability::kTrainable;
  if (!any_trainable) r.issues.push_back({"trainable_component", "every component is frozen"});
  if (plan.sequence_length != kSequenceLength) {
    r.issues.push_back({"sequence_length", std::to_string(plan.sequence_length)});
  }
  r.actual_total = plan.total();
  const double diff = std::abs(static_cast<double>(r.actual_total - expect.total));
  const bool total_ok = expect.relative_tolerance == 0
                            ? r.actual_total == expect.total
                            : diff <= expect.relative_tolerance * static_cast<double>(expect.total);
  if (!total_ok) {
    r.issues.push_back({"total", "expected " + std::to_string(expect.total) + ", got " +
                                     std::to_string(r.actual_total)});
  }
  return r;
}

Json plan_to_json(const StagePlan& plan) {
  Json mix = Json::array();
  for (const auto& e : plan.mix) {
    Json entry = {{"name", e.name}, {"modality", to_string(e.modality)}, {"count", e.count}};
    if (!e.note.empty()) entry["note"] = e.note;
    mix.push_back(std::move(entry));
  }
  return Json{{"stage", plan.stage},
              {"name", plan.name},
              {"mix", std::move(mix)},
              {"total", plan.total()},
              {"components",
               {{"vision_encoder", to_string(plan.flags.vision_encoder)},
                {"projector", to_string(plan.flags.projector)},
                {"llm", to_string(plan.flags.llm)}}},
              {"learning_rate",
               {{"vision_encoder", lr_json(plan.lr_vision, plan.flags.vision_encoder)},
                {"projector", lr_json(plan.lr_projector, plan.flags.projector)},
                {"llm", lr_json(plan.lr_llm, plan.flags.llm)}}},
              {"batch_size", plan.batch_size},
              {"epochs", plan.epochs},
              {"sequence_length", plan.sequence_length}};
}

}  // namespace dataforge::curriculum
