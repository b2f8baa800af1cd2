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
#include "dataforge/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

#include "dataforge/core/errors.hpp"
#include "dataforge/core/text.hpp"

namespace dataforge::metrics {
namespace {

using Tokens = std::vector<std::string>;
using NgramCounts = std::map<std::vector<std::string_view>, int>;

NgramCounts count_ngrams(const Tokens& tokens, int n) {
  NgramCounts counts;
  if (static_cast<int>(tokens.size()) < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::vector<std::string_view> key(tokens.begin() + i, tokens.begin() + i + n);
    ++counts[key];
  }
  return counts;
}

}  // namespace

double accuracy(std::span<const TextPair> records, bool strict) {
  if (records.empty()) throw EmptyInput("accuracy needs at least one record");
  std::size_t hits = 0;
  for (const auto& r : records) {
    const bool eq = strict ? r.predicted == r.gold
                           : text::normalize_for_match(r.predicted) ==
                                 text::normalize_for_match(r.gold);
    if (eq) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(records.size());
}

double bleu(const std::string& candidate, std::span<const std::string> references, int max_n) {
  if (max_n < 1) throw std::invalid_argument("max_n must be positive");
  const Tokens cand = text::split_whitespace(candidate);
  if (cand.empty()) throw EmptyInput("empty BLEU candidate");
  std::vector<Tokens> refs;
  for (const auto& r : references) {
    Tokens t = text::split_whitespace(r);
    if (!t.empty()) refs.push_back(std::move(t));
  }
  if (refs.empty()) throw EmptyInput("BLEU needs a non-empty reference");

  double log_sum = 0;
  for (int n = 1; n <= max_n; ++n) {
    const NgramCounts cand_counts = count_ngrams(cand, n);
    NgramCounts max_ref;
    for (const auto& r : refs) {
      for (const auto& [gram, c] : count_ngrams(r, n)) {
        int& slot = max_ref[gram];
        slot = std::max(slot, c);
      }
    }
    long matched = 0;
    long total = 0;
    for (const auto& [gram, c] : cand_counts) {
      total += c;
      auto it = max_ref.find(gram);
      if (it != max_ref.end()) matched += std::min(c, it->second);
    }
    double p;
    if (n == 1) {
      if (matched == 0) return 0.0;
      p = static_cast<double>(matched) / static_cast<double>(total);
    } else {
      p = static_cast<double>(matched + 1) / static_cast<double>(total + 1);
    }
    log_sum += std::log(p);
  }

  const auto c = static_cast<long>(cand.size());
  long r = static_cast<long>(refs.front().size());
  for (const auto& ref : refs) {
    const auto len = static_cast<long>(ref.size());
    const long d = std::labs(len - c);
    const long best = std::labs(r - c);
    if (d < best || (d == best && len < r)) r = len;
  }
  const double bp = c > r ? 1.0 : std::exp(1.0 - static_cast<double>(r) / static_cast<double>(c));
  return bp * std::exp(log_sum / max_n);
}

double mae(std::span<const NumericPair> records) {
  if (records.empty()) throw EmptyInput("mae needs at least one record");
  double sum = 0;
  for (const auto& r : records) sum += std::abs(r.predicted - r.gold);
  return sum / static_cast<double>(records.size());
}

double iou(const BBoxNorm& a, const BBoxNorm& b) {
  const double ix = std::max(0, std::min(a.x_max.milli(), b.x_max.milli()) -
                                    std::max(a.x_min.milli(), b.x_min.milli()));
  const double iy = std::max(0, std::min(a.y_max.milli(), b.y_max.milli()) -
                                    std::max(a.y_min.milli(), b.y_min.milli()));
  const double inter = ix * iy;
  auto area = [](const BBoxNorm& x) {
    return static_cast<double>(x.x_max.milli() - x.x_min.milli()) *
           static_cast<double>(x.y_max.milli() - x.y_min.milli());
  };
  const double uni = area(a) + area(b) - inter;
  return uni > 0 ? inter / uni : 0.0;
}

std::optional<double> pooled_average_precision(std::span<const ImageDetections> images,
                                               double iou_threshold) {
  std::size_t gt_total = 0;
  struct Ranked {
    double confidence;
    std::size_t image;
    const BBoxNorm* box;
  };
  std::vector<Ranked> ranked;
  for (std::size_t i = 0; i < images.size(); ++i) {
    gt_total += images[i].ground_truth.size();
    for (const auto& d : images[i].detections) {
      if (!std::isfinite(d.confidence)) throw std::invalid_argument("non-finite confidence");
      ranked.push_back({d.confidence, i, &d.box});
    }
  }
  if (gt_total == 0) return std::nullopt;
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const Ranked& a, const Ranked& b) { return a.confidence > b.confidence; });

  std::vector<std::vector<bool>> used(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    used[i].assign(images[i].ground_truth.size(), false);
  }
  std::vector<double> precision;
  std::vector<double> recall;
  std::size_t tp = 0;
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    const auto& gts = images[ranked[k].image].ground_truth;
    auto& taken = used[ranked[k].image];
    double best = -1;
    std::size_t best_gt = 0;
    for (std::size_t g = 0; g < gts.size(); ++g) {
      if (taken[g]) continue;
      const double v = iou(*ranked[k].box, gts[g]);
      if (v > best) {
        best = v;
        best_gt = g;
      }
    }
    if (best >= iou_threshold) {
      taken[best_gt] = true;
      ++tp;
    }
    precision.push_back(static_cast<double>(tp) / static_cast<double>(k + 1));
    recall.push_back(static_cast<double>(tp) / static_cast<double>(gt_total));
  }
  for (std::size_t i = precision.size(); i-- > 1;) {
    precision[i - 1] = std::max(precision[i - 1], precision[i]);
  }
  double ap = 0;
  double prev_recall = 0;
  for (std::size_t i = 0; i < precision.size(); ++i) {
    ap += (recall[i] - prev_recall) * precision[i];
    prev_recall = recall[i];
  }
  return ap;
}

std::optional<double> average_precision(std::span<const ScoredBox> detections,
                                        std::span<const BBoxNorm> ground_truth,
                                        double iou_threshold) {
  const ImageDetections image{{detections.begin(), detections.end()},
                              {ground_truth.begin(), ground_truth.end()}};
  return pooled_average_precision(std::span<const ImageDetections>(&image, 1), iou_threshold);
}

std::optional<double> mean_average_precision(std::span<const DetectionGroup> groups,
                                             double iou_threshold) {
  double sum = 0;
  int defined = 0;
  for (const auto& g : groups) {
    if (auto ap = pooled_average_precision(g.images, iou_threshold)) {
      sum += *ap;
      ++defined;
    }
  }
  if (defined == 0) return std::nullopt;
  return sum / defined;
}

double default_match_radius(int width) {
  if (width <= 0) throw std::invalid_argument("width must be positive");
  return 16.0 * 100.0 / width;
}

double center_match_score(std::span<const CameraPoint> predictions,
                          std::span<const CameraPoint> ground_truth, double radius) {
  if (!(radius > 0)) throw std::invalid_argument("radius must be positive");
  if (ground_truth.empty()) return 1.0;
  // (squared distance, gt index, prediction index)
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  for (std::size_t g = 0; g < ground_truth.size(); ++g) {
    for (std::size_t p = 0; p < predictions.size(); ++p) {
      if (predictions[p].camera != ground_truth[g].camera) continue;
      const double dx = predictions[p].point.x.value() - ground_truth[g].point.x.value();
      const double dy = predictions[p].point.y.value() - ground_truth[g].point.y.value();
      const double d2 = dx * dx + dy * dy;
      if (d2 <= radius * radius) pairs.emplace_back(d2, g, p);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<bool> gt_used(ground_truth.size(), false);
  std::vector<bool> pred_used(predictions.size(), false);
  std::size_t matched = 0;
  for (const auto& [d2, g, p] : pairs) {
    if (gt_used[g] || pred_used[p]) continue;
    gt_used[g] = pred_used[p] = true;
    ++matched;
  }
  return static_cast<double>(matched) / static_cast<double>(ground_truth.size());
}

}  // namespace dataforge::metrics
