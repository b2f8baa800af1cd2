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
#ifndef DATAFORGE_METRICS_METRICS_HPP_
#define DATAFORGE_METRICS_METRICS_HPP_

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dataforge/core/types.hpp"

namespace dataforge::metrics {

struct TextPair {
  std::string predicted;
  std::string gold;
};

struct NumericPair {
  double predicted = 0;
  double gold = 0;
};

// Exact-match ratio. Unless strict, both sides are lower-cased and whitespace
// collapsed first. Throws EmptyInput.
double accuracy(std::span<const TextPair> records, bool strict = false);

// Sentence BLEU over whitespace tokens: geometric mean of modified n-gram
// precisions for n = 1..max_n with uniform weights, add-one smoothing for
// n > 1, times the brevity penalty against the closest reference length
// (shorter wins ties). Throws EmptyInput for an empty candidate or no
// non-empty reference.
double bleu(const std::string& candidate, std::span<const std::string> references,
            int max_n = 4);

// Mean absolute error. Throws EmptyInput.
double mae(std::span<const NumericPair> records);

double iou(const BBoxNorm& a, const BBoxNorm& b);

struct ScoredBox {
  BBoxNorm box;
  double confidence = 0;
};

// All-point interpolated AP. Detections are visited by descending confidence
// (stable), each matched to the unmatched ground truth of highest IoU when
// that IoU reaches the threshold. nullopt when there is no ground truth.
std::optional<double> average_precision(std::span<const ScoredBox> detections,
                                        std::span<const BBoxNorm> ground_truth,
                                        double iou_threshold = 0.5);

// Detections and ground truth of one image. Matching never crosses images.
struct ImageDetections {
  std::vector<ScoredBox> detections;
  std::vector<BBoxNorm> ground_truth;
};

// AP with detections from every image ranked together by confidence.
std::optional<double> pooled_average_precision(std::span<const ImageDetections> images,
                                               double iou_threshold = 0.5);

struct DetectionGroup {
  std::string key;  // e.g. "car|CAM_FRONT"
  std::vector<ImageDetections> images;
};

// Mean of the defined per-group APs; nullopt when no group has ground truth.
std::optional<double> mean_average_precision(std::span<const DetectionGroup> groups,
                                             double iou_threshold = 0.5);

struct CameraPoint {
  CameraId camera = CameraId::kFrontOnly;
  PointNorm point;
};

// 16 px expressed in normalized units for an image `width` pixels wide.
double default_match_radius(int width);

// Fraction of ground-truth points matched by a same-camera prediction within
// `radius` (L2, normalized units). Candidate pairs are taken nearest first and
// each point is used at most once. 1.0 when there is no ground truth.
double center_match_score(std::span<const CameraPoint> predictions,
                          std::span<const CameraPoint> ground_truth, double radius);

}  // namespace dataforge::metrics

#endif  // DATAFORGE_METRICS_METRICS_HPP_
