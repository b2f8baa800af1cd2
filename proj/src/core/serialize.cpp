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
#include "dataforge/core/serialize.hpp"

namespace dataforge {
namespace json_field {

std::string child(const std::string& path, std::string_view key) {
  return path + "." + std::string(key);
}

std::string child(const std::string& path, std::size_t index) {
  return path + "[" + std::to_string(index) + "]";
}

const Json& member(const Json& obj, std::string_view key, const std::string& path) {
  if (!obj.is_object()) throw FieldError(path, "expected an object");
  const auto it = obj.find(std::string(key));
  if (it == obj.end()) throw FieldError(child(path, key), "missing field");
  return *it;
}

const Json* optional_member(const Json& obj, std::string_view key,
                            const std::string& path) {
  if (!obj.is_object()) throw FieldError(path, "expected an object");
  const auto it = obj.find(std::string(key));
  if (it == obj.end() || it->is_null()) return nullptr;
  return &*it;
}

std::string string_at(const Json& obj, std::string_view key, const std::string& path) {
  const Json& v = member(obj, key, path);
  if (!v.is_string()) throw FieldError(child(path, key), "expected a string");
  return v.get<std::string>();
}

double number_at(const Json& obj, std::string_view key, const std::string& path) {
  const Json& v = member(obj, key, path);
  if (!v.is_number()) throw FieldError(child(path, key), "expected a number");
  return v.get<double>();
}

int int_at(const Json& obj, std::string_view key, const std::string& path) {
  const Json& v = member(obj, key, path);
  if (!v.is_number_integer()) {
    throw FieldError(child(path, key), "expected an integer");
  }
  const auto i = v.get<std::int64_t>();
  if (i < -(std::int64_t{1} << 31) || i >= (std::int64_t{1} << 31)) {
    throw FieldError(child(path, key), "integer out of range");
  }
  return static_cast<int>(i);
}

const Json& array_at(const Json& obj, std::string_view key, const std::string& path) {
  const Json& v = member(obj, key, path);
  if (!v.is_array()) throw FieldError(child(path, key), "expected an array");
  return v;
}

const Json& object_at(const Json& obj, std::string_view key, const std::string& path) {
  const Json& v = member(obj, key, path);
  if (!v.is_object()) throw FieldError(child(path, key), "expected an object");
  return v;
}

}  // namespace json_field

using namespace json_field;

Json media_to_json(const MediaRef& m) {
  Json j;
  j["kind"] = std::string(to_string(m.kind));
  j["camera"] = std::string(to_string(m.camera));
  j["frame_count"] = m.frame_count;
  j["width"] = m.width;
  j["height"] = m.height;
  j["uri"] = m.uri;
  return j;
}

MediaRef media_from_json(const Json& j, const std::string& path) {
  MediaRef m;
  const auto kind = parse_media_kind(string_at(j, "kind", path));
  if (!kind) throw FieldError(child(path, "kind"), "expected image or video");
  m.kind = *kind;
  const auto cam = string_at(j, "camera", path);
  const auto camera = parse_camera_id(cam);
  if (!camera) throw FieldError(child(path, "camera"), "unknown camera '" + cam + "'");
  m.camera = *camera;
  m.frame_count = int_at(j, "frame_count", path);
  m.width = int_at(j, "width", path);
  m.height = int_at(j, "height", path);
  m.uri = string_at(j, "uri", path);
  return m;
}

Json qa_to_json(const QAPair& qa) {
  Json j;
  j["question"] = qa.question;
  j["answer"] = qa.answer;
  j["style"] = std::string(to_string(qa.style));
  j["provenance"] = std::string(to_string(qa.provenance));
  if (!qa.options.empty()) {
    Json opts = Json::array();
    for (const auto& o : qa.options) {
      opts.push_back(Json{{"label", o.label}, {"text", o.text}});
    }
    j["options"] = std::move(opts);
  }
  return j;
}

QAPair qa_from_json(const Json& j, const std::string& path) {
  QAPair qa;
  qa.question = string_at(j, "question", path);
  qa.answer = string_at(j, "answer", path);
  const auto style = parse_qa_style(string_at(j, "style", path));
  if (!style) throw FieldError(child(path, "style"), "unknown style");
  qa.style = *style;
  const auto prov = parse_provenance(string_at(j, "provenance", path));
  if (!prov) throw FieldError(child(path, "provenance"), "unknown provenance");
  qa.provenance = *prov;
  if (const Json* opts = optional_member(j, "options", path)) {
    const std::string opath = child(path, "options");
    if (!opts->is_array()) throw FieldError(opath, "expected an array");
    for (std::size_t i = 0; i < opts->size(); ++i) {
      const std::string p = child(opath, i);
      qa.options.push_back(
          {string_at((*opts)[i], "label", p), string_at((*opts)[i], "text", p)});
    }
  }
  return qa;
}

Json sample_to_json(const Sample& s) {
  Json j;
  j["id"] = s.id;
  j["dataset"] = std::string(to_string(s.dataset));
  Json media = Json::array();
  for (const auto& m : s.media) media.push_back(media_to_json(m));
  j["media"] = std::move(media);
  Json qa = Json::array();
  for (const auto& q : s.qa) qa.push_back(qa_to_json(q));
  j["qa"] = std::move(qa);
  Json tags = Json::array();
  for (const auto& t : s.task_tags) tags.push_back(t);
  j["task_tags"] = std::move(tags);
  return j;
}

Sample sample_from_json(const Json& j, const std::string& path) {
  Sample s;
  s.id = string_at(j, "id", path);
  const auto ds = string_at(j, "dataset", path);
  const auto dataset = parse_dataset_id(ds);
  if (!dataset) throw FieldError(child(path, "dataset"), "unknown dataset '" + ds + "'");
  s.dataset = *dataset;
  const Json& media = array_at(j, "media", path);
  for (std::size_t i = 0; i < media.size(); ++i) {
    s.media.push_back(media_from_json(media[i], child(child(path, "media"), i)));
  }
  const Json& qa = array_at(j, "qa", path);
  for (std::size_t i = 0; i < qa.size(); ++i) {
    s.qa.push_back(qa_from_json(qa[i], child(child(path, "qa"), i)));
  }
  const Json& tags = array_at(j, "task_tags", path);
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (!tags[i].is_string()) {
      throw FieldError(child(child(path, "task_tags"), i), "expected a string");
    }
    s.task_tags.insert(tags[i].get<std::string>());
  }
  return s;
}

namespace {

Json geometry_to_json(const Geometry& g) {
  Json j;
  if (const auto* b = std::get_if<BBoxPx>(&g)) {
    j["type"] = "bbox_px";
    j["values"] = Json::array({b->x_min, b->y_min, b->x_max, b->y_max});
  } else if (const auto* p = std::get_if<PointPx>(&g)) {
    j["type"] = "point_px";
    j["values"] = Json::array({p->x, p->y});
  } else if (const auto* bn = std::get_if<BBoxNorm>(&g)) {
    j["type"] = "bbox_norm";
    j["values"] = Json::array({bn->x_min.render(), bn->y_min.render(),
                               bn->x_max.render(), bn->y_max.render()});
  } else {
    const auto& pn = std::get<PointNorm>(g);
    j["type"] = "point_norm";
    j["values"] = Json::array({pn.x.render(), pn.y.render()});
  }
  return j;
}

Geometry geometry_from_json(const Json& j, const std::string& path) {
  const std::string type = string_at(j, "type", path);
  const Json& values = array_at(j, "values", path);
  const std::string vpath = child(path, "values");
  const bool is_norm = type == "bbox_norm" || type == "point_norm";
  const std::size_t expected = (type == "bbox_px" || type == "bbox_norm") ? 4 : 2;
  if (!is_norm && type != "bbox_px" && type != "point_px") {
    throw FieldError(child(path, "type"), "unknown geometry type '" + type + "'");
  }
  if (values.size() != expected) {
    throw FieldError(vpath, "expected " + std::to_string(expected) + " values");
  }
  std::vector<double> px;
  std::vector<NormCoord> nc;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (is_norm) {
      if (!values[i].is_string()) throw FieldError(child(vpath, i), "expected a string");
      const auto c = NormCoord::parse(values[i].get<std::string>());
      if (!c) throw FieldError(child(vpath, i), "expected a three-decimal number");
      nc.push_back(*c);
    } else {
      if (!values[i].is_number()) throw FieldError(child(vpath, i), "expected a number");
      px.push_back(values[i].get<double>());
    }
  }
  if (type == "bbox_px") return BBoxPx{px[0], px[1], px[2], px[3]};
  if (type == "point_px") return PointPx{px[0], px[1]};
  if (type == "bbox_norm") return BBoxNorm{nc[0], nc[1], nc[2], nc[3]};
  return PointNorm{nc[0], nc[1]};
}

}  // namespace

Json object_ref_to_json(const ObjectRef& ref) {
  Json j;
  j["category"] = ref.category;
  if (!ref.class_id.empty()) j["class_id"] = ref.class_id;
  j["camera"] = ref.camera ? Json(std::string(to_string(*ref.camera))) : Json(nullptr);
  if (!ref.camera_tag.empty()) j["camera_tag"] = ref.camera_tag;
  j["geometry"] = geometry_to_json(ref.geometry);
  j["source_tag"] = ref.source_tag;
  return j;
}

ObjectRef object_ref_from_json(const Json& j, const std::string& path) {
  ObjectRef ref;
  ref.category = string_at(j, "category", path);
  if (optional_member(j, "class_id", path)) ref.class_id = string_at(j, "class_id", path);
  if (optional_member(j, "camera", path)) {
    const auto cam = string_at(j, "camera", path);
    ref.camera = parse_camera_id(cam);
    if (!ref.camera) throw FieldError(child(path, "camera"), "unknown camera '" + cam + "'");
  }
  if (optional_member(j, "camera_tag", path)) {
    ref.camera_tag = string_at(j, "camera_tag", path);
  }
  ref.geometry = geometry_from_json(object_at(j, "geometry", path), child(path, "geometry"));
  if (optional_member(j, "source_tag", path)) {
    ref.source_tag = string_at(j, "source_tag", path);
  }
  return ref;
}

std::string serialize_sample(const Sample& s) { return sample_to_json(s).dump(); }

Sample deserialize_sample(std::string_view line) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const Json::parse_error& e) {
    throw FieldError("$", std::string("invalid JSON: ") + e.what());
  }
  return sample_from_json(j);
}

}  // namespace dataforge
