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
#include "dataforge/core/validate.hpp"

#include <set>
#include <string_view>
#include <unordered_set>

#include "dataforge/core/errors.hpp"
#include "dataforge/core/object_token.hpp"

namespace dataforge {
namespace {

std::string num(double v) {
  std::string s = std::to_string(v);
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

const MediaRef* owning_media(const Sample& sample, const ObjectRef& ref) {
  if (ref.camera) {
    for (const auto& m : sample.media) {
      if (m.camera == *ref.camera) return &m;
    }
    return nullptr;
  }
  return sample.media.size() == 1 ? &sample.media.front() : nullptr;
}

void check_geometry(const Sample& sample, const ObjectRef& ref,
                    const std::string& field, ValidationReport& out) {
  const MediaRef* media = owning_media(sample, ref);
  if (ref.camera && media == nullptr) {
    out.push_back({field, "camera_not_in_media",
                   std::string(to_string(*ref.camera)) +
                       " is referenced but has no media"});
  }

  if (const auto* b = std::get_if<BBoxPx>(&ref.geometry)) {
    if (b->x_min > b->x_max || b->y_min > b->y_max) {
      out.push_back({field, "bbox_px_ordering",
                     "expected x_min <= x_max and y_min <= y_max in " +
                         ref.source_tag});
    }
    if (media) {
      const double w = media->width, h = media->height;
      const bool inside = b->x_min >= 0 && b->x_min <= w && b->x_max >= 0 &&
                          b->x_max <= w && b->y_min >= 0 && b->y_min <= h &&
                          b->y_max >= 0 && b->y_max <= h;
      if (!inside) {
        out.push_back({field, "bbox_px_bounds",
                       ref.source_tag + " exceeds " + num(w) + "x" + num(h)});
      }
    }
  } else if (const auto* p = std::get_if<PointPx>(&ref.geometry)) {
    if (media && (p->x < 0 || p->x > media->width || p->y < 0 ||
                  p->y > media->height)) {
      out.push_back({field, "point_px_bounds",
                     ref.source_tag + " exceeds " + num(media->width) + "x" +
                         num(media->height)});
    }
  } else if (const auto* n = std::get_if<BBoxNorm>(&ref.geometry)) {
    if (!n->x_min.in_range() || !n->y_min.in_range() || !n->x_max.in_range() ||
        !n->y_max.in_range()) {
      out.push_back({field, "bbox_norm_range",
                     ref.source_tag + " has components outside [0,100]"});
    }
    if (n->x_min > n->x_max || n->y_min > n->y_max) {
      out.push_back({field, "bbox_norm_ordering",
                     "expected x_min <= x_max and y_min <= y_max in " +
                         ref.source_tag});
    }
  } else if (const auto* pn = std::get_if<PointNorm>(&ref.geometry)) {
    if (!pn->x.in_range() || !pn->y.in_range()) {
      out.push_back({field, "point_norm_range",
                     ref.source_tag + " has components outside [0,100]"});
    }
  }
}

void check_text(const Sample& sample, const std::string& text,
                const std::string& field, ValidationReport& out) {
  for (const auto& span : find_token_candidates(text)) {
    const auto token =
        std::string_view(text).substr(span.begin, span.end - span.begin);
    try {
      const auto parsed = parse_object_token(token);
      check_geometry(sample, parsed.ref, field, out);
    } catch (const TokenGrammarError& e) {
      out.push_back({field, "token_grammar", e.what()});
    }
  }
}

}  // namespace

ValidationReport validate_sample(const Sample& sample) {
  ValidationReport out;
  if (sample.id.empty()) out.push_back({"id", "id_non_empty", "id is empty"});
  if (sample.media.empty()) {
    out.push_back({"media", "media_non_empty", "sample has no media"});
  }
  for (std::size_t i = 0; i < sample.media.size(); ++i) {
    const auto& m = sample.media[i];
    const std::string f = "media[" + std::to_string(i) + "]";
    if (m.frame_count < 1) {
      out.push_back({f + ".frame_count", "frame_count_positive",
                     "frame_count is " + std::to_string(m.frame_count)});
    }
    if (m.kind == MediaKind::kImage && m.frame_count != 1) {
      out.push_back({f + ".frame_count", "image_single_frame",
                     "image media must have frame_count 1"});
    }
    if (m.width <= 0 || m.height <= 0) {
      out.push_back({f, "dims_positive",
                     "width/height must be positive, got " +
                         std::to_string(m.width) + "x" +
                         std::to_string(m.height)});
    }
  }

  for (std::size_t i = 0; i < sample.qa.size(); ++i) {
    const auto& qa = sample.qa[i];
    const std::string f = "qa[" + std::to_string(i) + "]";
    if (qa.question.empty()) {
      out.push_back({f + ".question", "question_non_empty", "question is empty"});
    }
    if (qa.style == QAStyle::kMultipleChoice) {
      if (qa.options.empty()) {
        out.push_back({f + ".options", "mc_options_non_empty",
                       "multiple-choice QA has no options"});
      }
      std::set<std::string> labels;
      for (const auto& o : qa.options) {
        if (!labels.insert(o.label).second) {
          out.push_back({f + ".options", "mc_labels_unique",
                         "duplicate option label '" + o.label + "'"});
        }
      }
      if (!qa.options.empty() && labels.count(qa.answer) == 0) {
        out.push_back({f + ".answer", "mc_answer_is_label",
                       "answer '" + qa.answer + "' is not an option label"});
      }
    } else if (!qa.options.empty()) {
      out.push_back({f + ".options", "open_has_no_options",
                     "open QA must not carry options"});
    }
    check_text(sample, qa.question, f + ".question", out);
    check_text(sample, qa.answer, f + ".answer", out);
    for (std::size_t k = 0; k < qa.options.size(); ++k) {
      check_text(sample, qa.options[k].text,
                 f + ".options[" + std::to_string(k) + "]", out);
    }
  }
  return out;
}

ValidationReport validate_manifest(const std::vector<Sample>& samples) {
  ValidationReport out;
  std::unordered_set<std::string> seen;
  for (const auto& s : samples) {
    if (!seen.insert(s.id).second) {
      out.push_back({s.id + ":id", "id_unique", "duplicate sample id"});
    }
    for (auto v : validate_sample(s)) {
      v.field = s.id + ":" + v.field;
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::string format_report(const ValidationReport& report) {
  std::string out;
  for (const auto& v : report) {
    out += v.field + " [" + v.rule + "] " + v.detail + "\n";
  }
  return out;
}

}  // namespace dataforge
