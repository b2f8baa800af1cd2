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
#include "dataforge/perceptgen/grounding.hpp"

#include <algorithm>

#include "dataforge/core/errors.hpp"
#include "dataforge/core/text.hpp"

namespace dataforge::perceptgen {
namespace {

struct Located {
  const DetectedObject* object;
  const MediaRef* media;
};

std::string render_location(const Located& loc, Representation rep, bool with_camera) {
  const MediaRef& m = *loc.media;
  std::string coords;
  if (rep == Representation::kBox) {
    coords = standardize::normalize_bbox(loc.object->box, m.width, m.height).render();
  } else {
    const PointPx center{(loc.object->box.x_min + loc.object->box.x_max) / 2.0,
                         (loc.object->box.y_min + loc.object->box.y_max) / 2.0};
    coords = standardize::normalize_point(center, m.width, m.height).render();
  }
  if (with_camera) return "[" + std::string(to_string(m.camera)) + ", " + coords + "]";
  return "[" + coords + "]";
}

// `objects` are already in answer order.
QAPair build_answer(const std::vector<Located>& objects, std::string question_suffix,
                    const GroundingSpec& spec, KeyedRng& rng) {
  if (objects.empty()) throw EmptyAnnotation("annotation has no objects to ground");
  std::vector<std::string> categories;
  for (const auto& o : objects) {
    if (std::find(categories.begin(), categories.end(), o.object->category) == categories.end()) {
      categories.push_back(o.object->category);
    }
  }
  const std::string& category = categories[rng.uniform_index(categories.size())];
  const Representation rep =
      spec.representation ? *spec.representation
                          : (rng.bernoulli(0.5) ? Representation::kCenter : Representation::kBox);

  std::vector<std::string> tokens;
  for (const auto& o : objects) {
    if (o.object->category == category) {
      tokens.push_back(render_location(o, rep, spec.with_camera_prefix));
    }
  }
  QAPair qa;
  qa.question = "Detect all " + category + " " + question_suffix;
  qa.answer = "Detected " + category + ": " + text::join(tokens, ", ");
  qa.style = QAStyle::kOpen;
  qa.provenance = Provenance::kGeneratedPerception;
  return qa;
}

void check_objects(const DetectionAnnotation& ann) {
  for (const auto& o : ann.objects) {
    if (o.frame_index < 0 || o.frame_index >= ann.media.frame_count) {
      throw DataError("object '" + o.category + "' has frame index " +
                      std::to_string(o.frame_index) + " but the media has " +
                      std::to_string(ann.media.frame_count) + " frame(s)");
    }
    if (o.category.empty()) throw DataError("object without category");
  }
}

std::vector<Located> multiview_objects(std::span<const DetectionAnnotation> anns,
                                       const GroundingSpec& spec,
                                       std::optional<int> only_frame) {
  if (!spec.with_camera_prefix) {
    throw ConfigError("multi-view grounding requires with_camera_prefix");
  }
  for (const auto& a : anns) {
    if (!is_surround_camera(a.media.camera)) {
      throw DataError("camera " + std::string(to_string(a.media.camera)) +
                      " is not one of the six surround cameras");
    }
    check_objects(a);
    if (!spec.per_camera_dims && (a.media.width != anns.front().media.width ||
                                  a.media.height != anns.front().media.height)) {
      throw MixedResolutionError("views disagree on resolution and per-camera dims are disabled");
    }
  }
  std::vector<std::size_t> order(anns.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return camera_rank(anns[a].media.camera) < camera_rank(anns[b].media.camera);
  });
  std::vector<Located> out;
  for (auto i : order) {
    for (const auto& o : anns[i].objects) {
      if (only_frame && o.frame_index != *only_frame) continue;
      out.push_back({&o, &anns[i].media});
    }
  }
  return out;
}

}  // namespace

std::string grounding_question(std::string_view category) {
  return "Detect all " + std::string(category) + " in the image.";
}

QAPair gen_single_image_grounding(const DetectionAnnotation& ann, const GroundingSpec& spec,
                                  KeyedRng& rng) {
  check_objects(ann);
  std::vector<Located> objects;
  for (const auto& o : ann.objects) objects.push_back({&o, &ann.media});
  return build_answer(objects, "in the image.", spec, rng);
}

QAPair gen_multiview_grounding(std::span<const DetectionAnnotation> anns,
                               const GroundingSpec& spec, KeyedRng& rng) {
  return build_answer(multiview_objects(anns, spec, std::nullopt),
                      "in the multi-view images.", spec, rng);
}

QAPair gen_multiview_video_grounding(std::span<const DetectionAnnotation> anns,
                                     const GroundingSpec& spec, KeyedRng& rng) {
  for (const auto& a : anns) {
    if (a.media.kind != MediaKind::kVideo || a.media.frame_count != spec.frames_per_view) {
      throw FrameCountMismatch(std::string(to_string(a.media.camera)) + " has " +
                               std::to_string(a.media.frame_count) + " frame(s), expected " +
                               std::to_string(spec.frames_per_view));
    }
  }
  return build_answer(multiview_objects(anns, spec, spec.frames_per_view - 1),
                      "in the last frame of the multi-view videos.", spec, rng);
}

std::vector<AnnotatedScene> parse_annotations(std::string_view payload) {
  using namespace json_field;
  const Json doc = Json::parse(payload, nullptr, false);
  if (doc.is_discarded()) throw SchemaError::at_record(0, "$", "payload is not valid JSON");
  if (!doc.is_array()) throw SchemaError::at_record(0, "$", "payload must be a JSON array");
  std::vector<AnnotatedScene> scenes;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    try {
      AnnotatedScene scene;
      const Json& rec = doc[i];
      scene.id = string_at(rec, "id", "$");
      const Json& views = array_at(rec, "views", "$");
      for (std::size_t v = 0; v < views.size(); ++v) {
        const std::string vp = child(child("$", "views"), v);
        DetectionAnnotation ann;
        ann.media = media_from_json(object_at(views[v], "media", vp), child(vp, "media"));
        const Json& objects = array_at(views[v], "objects", vp);
        for (std::size_t k = 0; k < objects.size(); ++k) {
          const std::string op = child(child(vp, "objects"), k);
          DetectedObject o;
          o.category = string_at(objects[k], "category", op);
          const Json& box = array_at(objects[k], "box", op);
          if (box.size() != 4) throw FieldError(child(op, "box"), "expected 4 numbers");
          for (const auto& b : box) {
            if (!b.is_number()) throw FieldError(child(op, "box"), "expected 4 numbers");
          }
          o.box = {box[0].get<double>(), box[1].get<double>(), box[2].get<double>(),
                   box[3].get<double>()};
          if (optional_member(objects[k], "frame", op)) o.frame_index = int_at(objects[k], "frame", op);
          ann.objects.push_back(std::move(o));
        }
        scene.views.push_back(std::move(ann));
      }
      if (scene.views.empty()) throw FieldError("$.views", "scene has no views");
      scenes.push_back(std::move(scene));
    } catch (const FieldError& e) {
      throw SchemaError::at_record(i, e.path(), e.reason());
    }
  }
  return scenes;
}

Sample make_grounding_sample(const AnnotatedScene& scene, const GroundingSpec& spec,
                             std::uint64_t seed) {
  Sample s;
  s.id = "GENERIC/perception/" + scene.id;
  s.dataset = DatasetId::kGeneric;
  s.task_tags = {"grounding", "perception"};
  KeyedRng rng(seed, s.dataset, s.id, "grounding");

  const bool video = scene.views.front().media.kind == MediaKind::kVideo;
  std::vector<const DetectionAnnotation*> ordered;
  for (const auto& v : scene.views) ordered.push_back(&v);
  if (scene.views.size() == 1 && !video) {
    s.qa.push_back(gen_single_image_grounding(scene.views.front(), spec, rng));
  } else {
    GroundingSpec mv = spec;
    mv.with_camera_prefix = true;
    if (video) {
      mv.frames_per_view = scene.views.front().media.frame_count;
      if (spec.frames_per_view > 1) mv.frames_per_view = spec.frames_per_view;
      s.qa.push_back(gen_multiview_video_grounding(scene.views, mv, rng));
    } else {
      s.qa.push_back(gen_multiview_grounding(scene.views, mv, rng));
    }
    std::stable_sort(ordered.begin(), ordered.end(), [](auto* a, auto* b) {
      return camera_rank(a->media.camera) < camera_rank(b->media.camera);
    });
  }
  for (const auto* v : ordered) s.media.push_back(v->media);
  return s;
}

GroundingSpec grounding_spec_from_json(const Json& j) {
  GroundingSpec spec;
  if (j.is_null()) return spec;
  try {
    if (j.contains("representation") && !j.at("representation").is_null()) {
      const auto r = j.at("representation").get<std::string>();
      if (r == "box") {
        spec.representation = Representation::kBox;
      } else if (r == "center") {
        spec.representation = Representation::kCenter;
      } else {
        throw ConfigError("representation must be box or center");
      }
    }
    spec.with_camera_prefix = j.value("with_camera_prefix", spec.with_camera_prefix);
    spec.frames_per_view = j.value("frames_per_view", spec.frames_per_view);
    spec.per_camera_dims = j.value("per_camera_dims", spec.per_camera_dims);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid perceptgen config: ") + e.what());
  }
  if (spec.frames_per_view < 1) throw ConfigError("frames_per_view must be positive");
  return spec;
}

}  // namespace dataforge::perceptgen
