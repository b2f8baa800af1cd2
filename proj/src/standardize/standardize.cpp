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
#include "dataforge/standardize/standardize.hpp"

#include <cmath>
#include <set>

#include "dataforge/core/errors.hpp"
#include "dataforge/core/object_token.hpp"

namespace dataforge::standardize {
namespace {

// Absolute slack, in thousandths, for treating a scaled value as an exact tie.
constexpr double kTieSlack = 1e-7;

std::int32_t round_milli(double scaled, Rounding rounding) {
  if (rounding == Rounding::kHalfUp) {
    return static_cast<std::int32_t>(std::floor(scaled + 0.5 + kTieSlack));
  }
  const double lower = std::floor(scaled);
  const double frac = scaled - lower;
  if (frac > 0.5 + kTieSlack) return static_cast<std::int32_t>(lower) + 1;
  if (frac < 0.5 - kTieSlack) return static_cast<std::int32_t>(lower);
  const auto l = static_cast<std::int32_t>(lower);
  return (l % 2 == 0) ? l : l + 1;
}

}  // namespace

NormCoord normalize_coord(double px, int extent, Rounding rounding) {
  if (extent <= 0) throw BoundsError("image extent must be positive");
  if (!std::isfinite(px) || px < 0 || px > extent) {
    throw BoundsError("coordinate " + std::to_string(px) + " outside [0, " +
                      std::to_string(extent) + "]");
  }
  const double scaled = (px * 100.0 * NormCoord::kScale) / extent;
  return NormCoord(round_milli(scaled, rounding));
}

BBoxNorm normalize_bbox(const BBoxPx& box, int width, int height, Rounding rounding) {
  if (box.x_min > box.x_max || box.y_min > box.y_max) {
    throw BoundsError("box corners are mis-ordered");
  }
  return {normalize_coord(box.x_min, width, rounding),
          normalize_coord(box.y_min, height, rounding),
          normalize_coord(box.x_max, width, rounding),
          normalize_coord(box.y_max, height, rounding)};
}

PointNorm normalize_point(const PointPx& p, int width, int height, Rounding rounding) {
  return {normalize_coord(p.x, width, rounding), normalize_coord(p.y, height, rounding)};
}

BBoxPx denormalize_bbox(const BBoxNorm& box, int width, int height) {
  constexpr double kFull = 100.0 * NormCoord::kScale;
  return {box.x_min.milli() * width / kFull, box.y_min.milli() * height / kFull,
          box.x_max.milli() * width / kFull, box.y_max.milli() * height / kFull};
}

PointPx denormalize_point(const PointNorm& p, int width, int height) {
  constexpr double kFull = 100.0 * NormCoord::kScale;
  return {p.x.milli() * width / kFull, p.y.milli() * height / kFull};
}

CameraIdMap::CameraIdMap(DatasetId dataset,
                         std::vector<std::pair<std::string, CameraId>> entries)
    : dataset_(dataset), entries_(std::move(entries)) {
  std::set<std::string> seen;
  for (const auto& [raw, cam] : entries_) {
    if (!seen.insert(raw).second) {
      throw ConfigError("camera map for " + std::string(to_string(dataset)) +
                        " repeats raw id '" + raw + "'");
    }
  }
  if (dataset_ == DatasetId::kNuInstruct && find("c6") != CameraId::kCamBackRight) {
    throw ConfigError("NUINSTRUCT camera map must send c6 to CAM_BACK_RIGHT");
  }
}

CameraIdMap CameraIdMap::identity(DatasetId dataset) {
  std::vector<std::pair<std::string, CameraId>> entries;
  for (auto cam : kAllCameras) entries.emplace_back(std::string(to_string(cam)), cam);
  return CameraIdMap(dataset, std::move(entries));
}

CameraIdMap CameraIdMap::nuinstruct_default() {
  std::vector<std::pair<std::string, CameraId>> entries;
  for (std::size_t i = 0; i < kSurroundCameras.size(); ++i) {
    entries.emplace_back("c" + std::to_string(i + 1), kSurroundCameras[i]);
  }
  return CameraIdMap(DatasetId::kNuInstruct, std::move(entries));
}

CameraIdMap CameraIdMap::default_for(DatasetId dataset) {
  return dataset == DatasetId::kNuInstruct ? nuinstruct_default() : identity(dataset);
}

std::optional<CameraId> CameraIdMap::find(std::string_view raw) const {
  for (const auto& [k, v] : entries_) {
    if (k == raw) return v;
  }
  return std::nullopt;
}

CameraId map_camera_id(std::string_view raw, const CameraIdMap& map) {
  if (auto cam = map.find(raw)) return *cam;
  throw UnknownCameraId(std::string(raw));
}

FormatInstruction default_box_instruction() {
  return {Representation::kBox,
          "Objects are referred to as <category>[CAMERA, x_min, y_min, x_max, "
          "y_max] with coordinates from 0 to 100."};
}

FormatInstruction default_center_instruction() {
  return {Representation::kCenter,
          "Objects are referred to as <category>[CAMERA, x_center, y_center] "
          "with coordinates from 0 to 100."};
}

std::string append_format_instruction(std::string_view question,
                                      const FormatInstruction& instr) {
  if (instr.text.empty() || question.ends_with(instr.text)) {
    return std::string(question);
  }
  return std::string(question) + " " + instr.text;
}

CameraIdMap StandardizeConfig::camera_map(DatasetId dataset) const {
  const auto it = camera_maps.find(dataset);
  return it != camera_maps.end() ? it->second : CameraIdMap::default_for(dataset);
}

std::string StandardizeConfig::category_for_class(DatasetId dataset,
                                                  const std::string& class_id) const {
  const auto it = class_names.find(dataset);
  if (it != class_names.end()) {
    const auto name = it->second.find(class_id);
    if (name != it->second.end()) return name->second;
  }
  return "object";
}

StandardizeConfig StandardizeConfig::from_json(const Json& j) {
  StandardizeConfig cfg;
  if (j.is_null()) return cfg;
  if (!j.is_object()) throw ConfigError("standardize config must be an object");
  auto dataset_key = [](const std::string& key) {
    const auto ds = parse_dataset_id(key);
    if (!ds) throw ConfigError("unknown dataset '" + key + "' in standardize config");
    return *ds;
  };
  if (j.contains("camera_maps")) {
    for (const auto& [ds_name, entries] : j.at("camera_maps").items()) {
      const DatasetId ds = dataset_key(ds_name);
      if (!entries.is_object()) throw ConfigError("camera map must be an object");
      std::vector<std::pair<std::string, CameraId>> list;
      for (const auto& [raw, cam_name] : entries.items()) {
        const auto cam = cam_name.is_string()
                             ? parse_camera_id(cam_name.get<std::string>())
                             : std::nullopt;
        if (!cam) throw ConfigError("camera map entry '" + raw + "' is not a camera name");
        list.emplace_back(raw, *cam);
      }
      cfg.camera_maps.insert_or_assign(ds, CameraIdMap(ds, std::move(list)));
    }
  }
  if (j.contains("class_names")) {
    for (const auto& [ds_name, names] : j.at("class_names").items()) {
      auto& table = cfg.class_names[dataset_key(ds_name)];
      for (const auto& [cls, name] : names.items()) {
        if (!name.is_string()) throw ConfigError("class name must be a string");
        table[cls] = name.get<std::string>();
      }
    }
  }
  if (j.contains("rounding")) {
    const auto r = j.at("rounding").get<std::string>();
    if (r == "half_up") {
      cfg.rounding = Rounding::kHalfUp;
    } else if (r == "half_even") {
      cfg.rounding = Rounding::kHalfEven;
    } else {
      throw ConfigError("rounding must be half_up or half_even");
    }
  }
  if (j.contains("instructions")) {
    const auto& ins = j.at("instructions");
    if (ins.contains("box")) cfg.box_instruction.text = ins.at("box").get<std::string>();
    if (ins.contains("center")) cfg.center_instruction.text = ins.at("center").get<std::string>();
  }
  return cfg;
}

namespace {

// Resolves the camera a parsed token refers to, or nullopt if the token has
// no camera field.
std::optional<CameraId> resolve_camera(const ParsedToken& parsed, const CameraIdMap& map) {
  if (parsed.ref.camera_tag.empty()) return std::nullopt;
  if (auto cam = map.find(parsed.ref.camera_tag)) return cam;
  if (parsed.ref.camera) return parsed.ref.camera;
  throw UnknownCameraId(parsed.ref.camera_tag);
}

std::string rewrite_parsed(const ParsedToken& parsed, std::optional<CameraId> camera,
                           const MediaRef& media, Rounding rounding,
                           std::string_view category) {
  ObjectRef out = parsed.ref;
  out.camera = camera ? *camera : media.camera;
  if (parsed.form == TokenForm::kAngleTuple || out.category.empty()) {
    out.category = std::string(category);
  }
  if (const auto* b = std::get_if<BBoxPx>(&out.geometry)) {
    out.geometry = normalize_bbox(*b, media.width, media.height, rounding);
  } else if (const auto* p = std::get_if<PointPx>(&out.geometry)) {
    out.geometry = normalize_point(*p, media.width, media.height, rounding);
  }
  return render_unified(out);
}

}  // namespace

std::string rewrite_object_token(std::string_view raw_token, DatasetId dataset,
                                 const MediaRef& media, const CameraIdMap& map,
                                 Rounding rounding, std::string_view category) {
  if (map.dataset() != dataset) {
    throw ConfigError("camera map for " + std::string(to_string(map.dataset())) +
                      " used with " + std::string(to_string(dataset)));
  }
  const ParsedToken parsed = parse_object_token(raw_token);
  if (parsed.unified) return std::string(raw_token);
  return rewrite_parsed(parsed, resolve_camera(parsed, map), media, rounding, category);
}

namespace {

struct TextResult {
  std::string text;
  bool has_box = false;
  bool has_center = false;
};

class SampleRewriter {
 public:
  SampleRewriter(const Sample& sample, const StandardizeConfig& cfg)
      : sample_(sample), cfg_(cfg), map_(cfg.camera_map(sample.dataset)) {}

  TextResult rewrite(const std::string& text, const std::string& field) {
    TextResult res;
    const auto spans = find_token_candidates(text);
    if (spans.empty()) {
      res.text = text;
      return res;
    }
    std::size_t pos = 0;
    for (const auto& span : spans) {
      res.text.append(text, pos, span.begin - pos);
      const std::string token = text.substr(span.begin, span.end - span.begin);
      try {
        std::string unified = rewrite_one(token);
        const bool box = is_box(parse_object_token(unified).ref.geometry);
        (box ? res.has_box : res.has_center) = true;
        res.text += unified;
      } catch (const DataError& e) {
        failures_.push_back({field, token, e.what()});
        res.text += token;
      }
      pos = span.end;
    }
    res.text.append(text, pos, std::string::npos);
    return res;
  }

  std::vector<TokenFailure>& failures() { return failures_; }

 private:
  std::string rewrite_one(const std::string& token) {
    const ParsedToken parsed = parse_object_token(token);
    if (parsed.unified) return token;
    const auto camera = resolve_camera(parsed, map_);
    const MediaRef* media = nullptr;
    if (camera) {
      for (const auto& m : sample_.media) {
        if (m.camera == *camera) {
          media = &m;
          break;
        }
      }
    } else if (sample_.media.size() == 1) {
      media = &sample_.media.front();
    }
    if (media == nullptr) {
      throw DataError(camera ? "no media for camera " + std::string(to_string(*camera))
                             : std::string("token has no camera and the sample has several media"));
    }
    const std::string category =
        parsed.ref.class_id.empty()
            ? std::string("object")
            : cfg_.category_for_class(sample_.dataset, parsed.ref.class_id);
    return rewrite_parsed(parsed, camera, *media, cfg_.rounding, category);
  }

  const Sample& sample_;
  const StandardizeConfig& cfg_;
  CameraIdMap map_;
  std::vector<TokenFailure> failures_;
};

}  // namespace

Sample standardize_sample(const Sample& sample, const StandardizeConfig& cfg) {
  Sample out = sample;
  SampleRewriter rewriter(sample, cfg);
  for (std::size_t i = 0; i < out.qa.size(); ++i) {
    QAPair& qa = out.qa[i];
    const std::string f = "qa[" + std::to_string(i) + "]";
    auto q = rewriter.rewrite(qa.question, f + ".question");
    auto a = rewriter.rewrite(qa.answer, f + ".answer");
    for (std::size_t k = 0; k < qa.options.size(); ++k) {
      qa.options[k].text =
          rewriter.rewrite(qa.options[k].text, f + ".options[" + std::to_string(k) + "]").text;
    }
    qa.question = std::move(q.text);
    qa.answer = std::move(a.text);

    const bool box = q.has_box || a.has_box;
    const bool center = q.has_center || a.has_center;
    if (box || center) {
      FormatInstruction instr;
      if (box && center) {
        instr.text = cfg.box_instruction.text + " " + cfg.center_instruction.text;
      } else {
        instr = box ? cfg.box_instruction : cfg.center_instruction;
      }
      qa.question = append_format_instruction(qa.question, instr);
    }
  }
  if (!rewriter.failures().empty()) {
    throw SampleError(sample.id, std::move(rewriter.failures()));
  }
  return out;
}

}  // namespace dataforge::standardize
