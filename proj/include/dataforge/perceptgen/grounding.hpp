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
#ifndef DATAFORGE_PERCEPTGEN_GROUNDING_HPP_
#define DATAFORGE_PERCEPTGEN_GROUNDING_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dataforge/core/keyed_rng.hpp"
#include "dataforge/core/serialize.hpp"
#include "dataforge/core/types.hpp"
#include "dataforge/standardize/standardize.hpp"

namespace dataforge::perceptgen {

using standardize::Representation;

struct DetectedObject {
  std::string category;
  BBoxPx box;
  int frame_index = 0;
};

struct DetectionAnnotation {
  MediaRef media;
  std::vector<DetectedObject> objects;
};

struct GroundingSpec {
  // Unset: box or center with probability 0.5 each, per QA.
  std::optional<Representation> representation;
  bool with_camera_prefix = false;
  int frames_per_view = 1;
  // When false every view must share one resolution (MixedResolutionError
  // otherwise).
  bool per_camera_dims = true;
};

// "Detect all <category> in the image." with the category substituted.
std::string grounding_question(std::string_view category);

// Picks a category present in the image (uniformly, seeded) and answers with
// every object of that category, in annotation order:
//   "Detected car: [8.688, 38.111, 94.438, 100.000], [...]"
// Throws EmptyAnnotation when there are no objects.
QAPair gen_single_image_grounding(const DetectionAnnotation& ann, const GroundingSpec& spec,
                                  KeyedRng& rng);

// Surround-view variant. Tokens carry the camera name first and are ordered
// by camera rank, then annotation index. Requires spec.with_camera_prefix.
QAPair gen_multiview_grounding(std::span<const DetectionAnnotation> anns,
                               const GroundingSpec& spec, KeyedRng& rng);

// Multi-view video variant. Every view must be a video of exactly
// spec.frames_per_view frames (FrameCountMismatch otherwise); the question
// concerns the keyframe, which is the last frame, and only objects annotated
// on it are answered.
QAPair gen_multiview_video_grounding(std::span<const DetectionAnnotation> anns,
                                     const GroundingSpec& spec, KeyedRng& rng);

// One annotated scene as read from the annotation source file.
struct AnnotatedScene {
  std::string id;
  std::vector<DetectionAnnotation> views;
};

// Schema in docs/annotation_schema.md. Throws SchemaError.
std::vector<AnnotatedScene> parse_annotations(std::string_view payload);

// Builds a GENERIC sample "GENERIC/perception/<scene id>" choosing the
// single-image, multi-view or video generator from the shape of the scene.
Sample make_grounding_sample(const AnnotatedScene& scene, const GroundingSpec& spec,
                             std::uint64_t seed);

GroundingSpec grounding_spec_from_json(const Json& j);

}  // namespace dataforge::perceptgen

#endif  // DATAFORGE_PERCEPTGEN_GROUNDING_HPP_
