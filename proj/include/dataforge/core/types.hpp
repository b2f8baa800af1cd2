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
#ifndef DATAFORGE_CORE_TYPES_HPP_
#define DATAFORGE_CORE_TYPES_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dataforge {

enum class DatasetId {
  kCodaLm,
  kMaplm,
  kDriveLm,
  kLingoQa,
  kOmniDrive,
  kNuInstruct,
  kGeneric,
};

inline constexpr std::array<DatasetId, 7> kAllDatasets = {
    DatasetId::kCodaLm,    DatasetId::kMaplm,      DatasetId::kDriveLm,
    DatasetId::kLingoQa,   DatasetId::kOmniDrive,  DatasetId::kNuInstruct,
    DatasetId::kGeneric};

// "CODA_LM", "MAPLM", ... as used in manifests and sample ids.
std::string_view to_string(DatasetId id);
std::optional<DatasetId> parse_dataset_id(std::string_view name);

enum class CameraId {
  kCamFront,
  kCamFrontLeft,
  kCamFrontRight,
  kCamBack,
  kCamBackLeft,
  kCamBackRight,
  kFrontOnly,
  kLidarBev,
};

inline constexpr std::array<CameraId, 8> kAllCameras = {
    CameraId::kCamFront,    CameraId::kCamFrontLeft, CameraId::kCamFrontRight,
    CameraId::kCamBack,     CameraId::kCamBackLeft,  CameraId::kCamBackRight,
    CameraId::kFrontOnly,   CameraId::kLidarBev};

// The six nuScenes surround cameras, in answer-ordering rank.
inline constexpr std::array<CameraId, 6> kSurroundCameras = {
    CameraId::kCamFront, CameraId::kCamFrontLeft, CameraId::kCamFrontRight,
    CameraId::kCamBack,  CameraId::kCamBackLeft,  CameraId::kCamBackRight};

std::string_view to_string(CameraId id);
std::optional<CameraId> parse_camera_id(std::string_view name);
bool is_surround_camera(CameraId id);
// Position in kSurroundCameras; non-surround cameras sort after them.
int camera_rank(CameraId id);

enum class MediaKind { kImage, kVideo };

std::string_view to_string(MediaKind kind);
std::optional<MediaKind> parse_media_kind(std::string_view name);

// Metadata for one image or video. Pixels are never decoded.
struct MediaRef {
  MediaKind kind = MediaKind::kImage;
  CameraId camera = CameraId::kFrontOnly;
  int frame_count = 1;
  int width = 0;
  int height = 0;
  std::string uri;

  bool operator==(const MediaRef&) const = default;
};

struct BBoxPx {
  double x_min = 0, y_min = 0, x_max = 0, y_max = 0;
  bool operator==(const BBoxPx&) const = default;
};

struct PointPx {
  double x = 0, y = 0;
  bool operator==(const PointPx&) const = default;
};

// A normalized coordinate stored as thousandths of a unit on the 0..100
// scale, so 8.688 is held as 8688. Rendering is always three decimals.
class NormCoord {
 public:
  static constexpr std::int32_t kScale = 1000;
  static constexpr std::int32_t kMaxMilli = 100 * kScale;

  constexpr NormCoord() = default;
  constexpr explicit NormCoord(std::int32_t milli) : milli_(milli) {}

  constexpr std::int32_t milli() const { return milli_; }
  double value() const { return static_cast<double>(milli_) / kScale; }
  bool in_range() const { return milli_ >= 0 && milli_ <= kMaxMilli; }

  std::string render() const;
  // Accepts exactly `digits.ddd`; anything else is nullopt.
  static std::optional<NormCoord> parse(std::string_view text);

  auto operator<=>(const NormCoord&) const = default;

 private:
  std::int32_t milli_ = 0;
};

struct BBoxNorm {
  NormCoord x_min, y_min, x_max, y_max;

  // "8.688, 38.111, 94.438, 100.000"
  std::string render() const;
  bool operator==(const BBoxNorm&) const = default;
};

struct PointNorm {
  NormCoord x, y;

  std::string render() const;
  bool operator==(const PointNorm&) const = default;
};

using Geometry = std::variant<BBoxPx, BBoxNorm, PointPx, PointNorm>;

bool is_normalized(const Geometry& g);
bool is_box(const Geometry& g);

// A scene object referenced inside question or answer text.
struct ObjectRef {
  std::string category;    // empty when the source token carries none
  std::string class_id;    // DriveLM-style class id ("c6"), else empty
  std::string camera_tag;  // camera field exactly as written, may be empty
  std::optional<CameraId> camera;  // resolved camera, if known
  Geometry geometry;
  std::string source_tag;  // the original token text

  bool operator==(const ObjectRef&) const = default;
};

enum class QAStyle { kOpen, kMultipleChoice };
enum class Provenance { kOriginal, kParaphrase, kMcTransform, kGeneratedPerception };

std::string_view to_string(QAStyle style);
std::optional<QAStyle> parse_qa_style(std::string_view name);
std::string_view to_string(Provenance p);
std::optional<Provenance> parse_provenance(std::string_view name);

struct Option {
  std::string label;
  std::string text;
  bool operator==(const Option&) const = default;
};

struct QAPair {
  std::string question;
  std::string answer;
  QAStyle style = QAStyle::kOpen;
  Provenance provenance = Provenance::kOriginal;
  std::vector<Option> options;  // only for multiple choice

  bool operator==(const QAPair&) const = default;
};

struct Sample {
  std::string id;
  DatasetId dataset = DatasetId::kGeneric;
  std::vector<MediaRef> media;
  std::vector<QAPair> qa;
  std::set<std::string> task_tags;

  bool operator==(const Sample&) const = default;
};

}  // namespace dataforge

#endif  // DATAFORGE_CORE_TYPES_HPP_
