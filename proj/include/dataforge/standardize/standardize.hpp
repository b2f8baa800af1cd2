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
#ifndef DATAFORGE_STANDARDIZE_STANDARDIZE_HPP_
#define DATAFORGE_STANDARDIZE_STANDARDIZE_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dataforge/core/serialize.hpp"
#include "dataforge/core/types.hpp"

namespace dataforge::standardize {

enum class Rounding { kHalfUp, kHalfEven };

// round(100 * px / extent) at three decimals. Throws BoundsError when px is
// outside [0, extent] or not finite.
NormCoord normalize_coord(double px, int extent, Rounding rounding = Rounding::kHalfUp);

// (139, 343, 1511, 900) on 1600x900 -> (8.688, 38.111, 94.438, 100.000).
// Throws BoundsError when the box leaves the image or is mis-ordered.
BBoxNorm normalize_bbox(const BBoxPx& box, int width, int height,
                        Rounding rounding = Rounding::kHalfUp);
PointNorm normalize_point(const PointPx& p, int width, int height,
                          Rounding rounding = Rounding::kHalfUp);

BBoxPx denormalize_bbox(const BBoxNorm& box, int width, int height);
PointPx denormalize_point(const PointNorm& p, int width, int height);

// Raw camera label -> CameraId for one dataset.
class CameraIdMap {
 public:
  // Throws ConfigError on duplicate raw ids, or when a NUINSTRUCT map does
  // not send "c6" to CAM_BACK_RIGHT.
  CameraIdMap(DatasetId dataset, std::vector<std::pair<std::string, CameraId>> entries);

  // Every canonical camera name maps to itself.
  static CameraIdMap identity(DatasetId dataset);
  // c1..c6 = CAM_FRONT, CAM_FRONT_LEFT, CAM_FRONT_RIGHT, CAM_BACK,
  // CAM_BACK_LEFT, CAM_BACK_RIGHT.
  static CameraIdMap nuinstruct_default();
  static CameraIdMap default_for(DatasetId dataset);

  DatasetId dataset() const { return dataset_; }
  const std::vector<std::pair<std::string, CameraId>>& entries() const { return entries_; }
  std::optional<CameraId> find(std::string_view raw) const;

 private:
  DatasetId dataset_;
  std::vector<std::pair<std::string, CameraId>> entries_;
};

// Throws UnknownCameraId when raw is not in the map.
CameraId map_camera_id(std::string_view raw, const CameraIdMap& map);

enum class Representation { kBox, kCenter };

struct FormatInstruction {
  Representation representation = Representation::kBox;
  std::string text;
};

FormatInstruction default_box_instruction();
FormatInstruction default_center_instruction();

// question + " " + instr.text, unless the question already ends with it.
std::string append_format_instruction(std::string_view question,
                                      const FormatInstruction& instr);

struct StandardizeConfig {
  std::map<DatasetId, CameraIdMap> camera_maps;  // overrides of default_for()
  // Category names for class-id style tokens, e.g. DRIVELM {"c1": "car"}.
  std::map<DatasetId, std::map<std::string, std::string>> class_names;
  Rounding rounding = Rounding::kHalfUp;
  FormatInstruction box_instruction = default_box_instruction();
  FormatInstruction center_instruction = default_center_instruction();

  CameraIdMap camera_map(DatasetId dataset) const;
  std::string category_for_class(DatasetId dataset, const std::string& class_id) const;

  // Keys: camera_maps, class_names, rounding, instructions{box, center}.
  // Missing keys keep defaults. Throws ConfigError.
  static StandardizeConfig from_json(const Json& j);
};

// Rewrites one raw token into the unified grammar using `media` for the
// coordinate frame. Unified tokens come back unchanged. Tokens without a
// category (class-id style) use `category`, "object" by default.
// Throws TokenGrammarError, UnknownCameraId or BoundsError.
std::string rewrite_object_token(std::string_view raw_token, DatasetId dataset,
                                 const MediaRef& media, const CameraIdMap& map,
                                 Rounding rounding = Rounding::kHalfUp,
                                 std::string_view category = "object");

// Rewrites every object token in every QA, then appends the format
// instruction to each QA whose question or answer carries a token.
// Idempotent. Throws SampleError listing every failing token.
Sample standardize_sample(const Sample& sample, const StandardizeConfig& cfg = {});

}  // namespace dataforge::standardize

#endif  // DATAFORGE_STANDARDIZE_STANDARDIZE_HPP_
