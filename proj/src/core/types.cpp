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
#include "dataforge/core/types.hpp"

#include <algorithm>
#include <cstdio>

namespace dataforge {
namespace {

constexpr std::array<std::string_view, 7> kDatasetNames = {
    "CODA_LM", "MAPLM", "DRIVELM", "LINGOQA", "OMNIDRIVE", "NUINSTRUCT",
    "GENERIC"};

constexpr std::array<std::string_view, 8> kCameraNames = {
    "CAM_FRONT", "CAM_FRONT_LEFT", "CAM_FRONT_RIGHT", "CAM_BACK",
    "CAM_BACK_LEFT", "CAM_BACK_RIGHT", "FRONT_ONLY", "LIDAR_BEV"};

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<std::string_view, N>& names,
                           std::string_view name) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == name) return static_cast<Enum>(i);
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(DatasetId id) {
  return kDatasetNames[static_cast<std::size_t>(id)];
}

std::optional<DatasetId> parse_dataset_id(std::string_view name) {
  return lookup<DatasetId>(kDatasetNames, name);
}

std::string_view to_string(CameraId id) {
  return kCameraNames[static_cast<std::size_t>(id)];
}

std::optional<CameraId> parse_camera_id(std::string_view name) {
  return lookup<CameraId>(kCameraNames, name);
}

bool is_surround_camera(CameraId id) {
  return std::find(kSurroundCameras.begin(), kSurroundCameras.end(), id) !=
         kSurroundCameras.end();
}

int camera_rank(CameraId id) { return static_cast<int>(id); }

std::string_view to_string(MediaKind kind) {
  return kind == MediaKind::kImage ? "image" : "video";
}

std::optional<MediaKind> parse_media_kind(std::string_view name) {
  if (name == "image") return MediaKind::kImage;
  if (name == "video") return MediaKind::kVideo;
  return std::nullopt;
}

std::string NormCoord::render() const {
  const std::int32_t magnitude = milli_ < 0 ? -milli_ : milli_;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%d.%03d", milli_ < 0 ? "-" : "",
                magnitude / kScale, magnitude % kScale);
  return buf;
}

std::optional<NormCoord> NormCoord::parse(std::string_view text) {
  const auto dot = text.find('.');
  if (dot == std::string_view::npos || dot == 0 || text.size() - dot != 4) {
    return std::nullopt;
  }
  std::int64_t milli = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i == dot) continue;
    const char c = text[i];
    if (c < '0' || c > '9') return std::nullopt;
    milli = milli * 10 + (c - '0');
    if (milli > (std::int64_t{1} << 30)) return std::nullopt;
  }
  return NormCoord(static_cast<std::int32_t>(milli));
}

std::string BBoxNorm::render() const {
  return x_min.render() + ", " + y_min.render() + ", " + x_max.render() +
         ", " + y_max.render();
}

std::string PointNorm::render() const {
  return x.render() + ", " + y.render();
}

bool is_normalized(const Geometry& g) {
  return std::holds_alternative<BBoxNorm>(g) ||
         std::holds_alternative<PointNorm>(g);
}

bool is_box(const Geometry& g) {
  return std::holds_alternative<BBoxNorm>(g) ||
         std::holds_alternative<BBoxPx>(g);
}

std::string_view to_string(QAStyle style) {
  return style == QAStyle::kOpen ? "open" : "multiple_choice";
}

std::optional<QAStyle> parse_qa_style(std::string_view name) {
  if (name == "open") return QAStyle::kOpen;
  if (name == "multiple_choice") return QAStyle::kMultipleChoice;
  return std::nullopt;
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::kOriginal: return "original";
    case Provenance::kParaphrase: return "paraphrase";
    case Provenance::kMcTransform: return "mc_transform";
    case Provenance::kGeneratedPerception: return "generated_perception";
  }
  return "original";
}

std::optional<Provenance> parse_provenance(std::string_view name) {
  for (auto p : {Provenance::kOriginal, Provenance::kParaphrase,
                 Provenance::kMcTransform, Provenance::kGeneratedPerception}) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

}  // namespace dataforge
