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
#include "dataforge/ingest/source_adapters.hpp"

#include <unordered_set>

#include "dataforge/core/errors.hpp"
#include "dataforge/core/serialize.hpp"
#include "dataforge/core/validate.hpp"

namespace dataforge::ingest {
namespace {

using namespace json_field;

QAPair open_qa(std::string question, std::string answer) {
  QAPair qa;
  qa.question = std::move(question);
  qa.answer = std::move(answer);
  return qa;
}

CameraId camera_at(const Json& j, const std::string& path) {
  const auto name = string_at(j, "camera", path);
  const auto cam = parse_camera_id(name);
  if (!cam) throw FieldError(child(path, "camera"), "unknown camera '" + name + "'");
  return *cam;
}

// {"uri", "width", "height"[, "frame_count"]}
MediaRef media_at(const Json& j, const std::string& path, MediaKind kind,
                  CameraId camera) {
  MediaRef m;
  m.kind = kind;
  m.camera = camera;
  m.uri = string_at(j, "uri", path);
  m.width = int_at(j, "width", path);
  m.height = int_at(j, "height", path);
  m.frame_count = kind == MediaKind::kVideo ? int_at(j, "frame_count", path) : 1;
  return m;
}

std::string id_at(const Json& j, std::string_view key, const std::string& path) {
  const Json& v = member(j, key, path);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  throw FieldError(child(path, key), "expected a string or integer id");
}

void add_tags(const Json& rec, const std::string& path, Sample& s) {
  if (const Json* tags = optional_member(rec, "tags", path)) {
    if (!tags->is_array()) throw FieldError(child(path, "tags"), "expected an array");
    for (std::size_t i = 0; i < tags->size(); ++i) {
      if (!(*tags)[i].is_string()) {
        throw FieldError(child(child(path, "tags"), i), "expected a string");
      }
      s.task_tags.insert((*tags)[i].get<std::string>());
    }
  }
}

void add_optional_task(const Json& rec, const std::string& path, Sample& s) {
  if (optional_member(rec, "task", path)) s.task_tags.insert(string_at(rec, "task", path));
}

Sample parse_coda_lm(const Json& rec, const std::string& path) {
  Sample s;
  s.id = id_at(rec, "image_id", path);
  s.media.push_back(media_at(object_at(rec, "image", path), child(path, "image"),
                             MediaKind::kImage, CameraId::kFrontOnly));
  s.task_tags.insert(string_at(rec, "task", path));
  const Json& conv = array_at(rec, "conversation", path);
  for (std::size_t i = 0; i < conv.size(); ++i) {
    const std::string p = child(child(path, "conversation"), i);
    s.qa.push_back(open_qa(string_at(conv[i], "question", p), string_at(conv[i], "answer", p)));
  }
  return s;
}

Sample parse_maplm(const Json& rec, const std::string& path) {
  Sample s;
  s.id = id_at(rec, "frame_id", path);
  const Json& images = array_at(rec, "images", path);
  for (std::size_t i = 0; i < images.size(); ++i) {
    const std::string p = child(child(path, "images"), i);
    s.media.push_back(media_at(images[i], p, MediaKind::kImage, camera_at(images[i], p)));
  }
  add_optional_task(rec, path, s);
  const Json& qa = array_at(rec, "qa", path);
  for (std::size_t i = 0; i < qa.size(); ++i) {
    const std::string p = child(child(path, "qa"), i);
    QAPair pair = open_qa(string_at(qa[i], "question", p), string_at(qa[i], "answer", p));
    const std::string type = string_at(qa[i], "type", p);
    if (type == "choice") {
      pair.style = QAStyle::kMultipleChoice;
      const Json& choices = array_at(qa[i], "choices", p);
      for (std::size_t k = 0; k < choices.size(); ++k) {
        const std::string cp = child(child(p, "choices"), k);
        pair.options.push_back({string_at(choices[k], "label", cp),
                                string_at(choices[k], "text", cp)});
      }
    } else if (type != "open") {
      throw FieldError(child(p, "type"), "expected 'open' or 'choice'");
    }
    s.qa.push_back(std::move(pair));
  }
  return s;
}

Sample parse_drivelm(const Json& rec, const std::string& path) {
  Sample s;
  s.id = id_at(rec, "scene_token", path) + "_" + id_at(rec, "frame_token", path);
  const Json& key_frame = object_at(rec, "key_frame", path);
  const std::string kp = child(path, "key_frame");
  for (const auto& [name, view] : key_frame.items()) {
    const auto cam = parse_camera_id(name);
    if (!cam) throw FieldError(child(kp, name), "unknown camera '" + name + "'");
    s.media.push_back(media_at(view, child(kp, name), MediaKind::kImage, *cam));
  }
  const Json& groups = object_at(rec, "QA", path);
  const std::string gp = child(path, "QA");
  for (const auto& [task, items] : groups.items()) {
    const std::string tp = child(gp, task);
    if (!items.is_array()) throw FieldError(tp, "expected an array");
    if (!items.empty()) s.task_tags.insert(task);
    for (std::size_t i = 0; i < items.size(); ++i) {
      const std::string p = child(tp, i);
      s.qa.push_back(open_qa(string_at(items[i], "Q", p), string_at(items[i], "A", p)));
    }
  }
  return s;
}

Sample parse_lingoqa(const Json& rec, const std::string& path) {
  Sample s;
  s.id = id_at(rec, "segment_id", path) + "_" + id_at(rec, "question_id", path);
  s.media.push_back(media_at(object_at(rec, "video", path), child(path, "video"),
                             MediaKind::kVideo, CameraId::kFrontOnly));
  s.qa.push_back(open_qa(string_at(rec, "question", path), string_at(rec, "answer", path)));
  add_optional_task(rec, path, s);
  return s;
}

void parse_views(const Json& rec, const std::string& path, Sample& s) {
  const Json& views = array_at(rec, "views", path);
  for (std::size_t i = 0; i < views.size(); ++i) {
    const std::string p = child(child(path, "views"), i);
    s.media.push_back(media_at(views[i], p, MediaKind::kVideo, camera_at(views[i], p)));
  }
}

Sample parse_omnidrive(const Json& rec, const std::string& path) {
  Sample s;
  s.id = id_at(rec, "sample_token", path);
  parse_views(rec, path, s);
  add_optional_task(rec, path, s);
  const Json& conv = array_at(rec, "conversations", path);
  const std::string cp = child(path, "conversations");
  if (conv.size() % 2 != 0) throw FieldError(cp, "expected human/gpt turn pairs");
  for (std::size_t i = 0; i < conv.size(); i += 2) {
    const std::string hp = child(cp, i), gp = child(cp, i + 1);
    if (string_at(conv[i], "from", hp) != "human") {
      throw FieldError(child(hp, "from"), "expected 'human'");
    }
    if (string_at(conv[i + 1], "from", gp) != "gpt") {
      throw FieldError(child(gp, "from"), "expected 'gpt'");
    }
    s.qa.push_back(open_qa(string_at(conv[i], "value", hp), string_at(conv[i + 1], "value", gp)));
  }
  return s;
}

Sample parse_nuinstruct(const Json& rec, const std::string& path) {
  Sample s;
  s.id = id_at(rec, "id", path);
  parse_views(rec, path, s);
  s.task_tags.insert(string_at(rec, "task", path));
  s.qa.push_back(open_qa(string_at(rec, "question", path), string_at(rec, "answer", path)));
  return s;
}

Sample parse_generic(const Json& rec, const std::string& path) {
  if (const Json* ds = optional_member(rec, "dataset", path)) {
    if (!ds->is_string() || ds->get<std::string>() != "GENERIC") {
      throw FieldError(child(path, "dataset"), "GENERIC records must not name another dataset");
    }
  }
  Json copy = rec;
  copy["dataset"] = "GENERIC";
  return sample_from_json(copy, path);
}

Sample parse_record(SourceAdapterId adapter, const Json& rec) {
  const std::string path = "$";
  Sample s;
  switch (adapter) {
    case DatasetId::kCodaLm: s = parse_coda_lm(rec, path); break;
    case DatasetId::kMaplm: s = parse_maplm(rec, path); break;
    case DatasetId::kDriveLm: s = parse_drivelm(rec, path); break;
    case DatasetId::kLingoQa: s = parse_lingoqa(rec, path); break;
    case DatasetId::kOmniDrive: s = parse_omnidrive(rec, path); break;
    case DatasetId::kNuInstruct: s = parse_nuinstruct(rec, path); break;
    case DatasetId::kGeneric: s = parse_generic(rec, path); break;
  }
  if (adapter != DatasetId::kGeneric) add_tags(rec, path, s);
  s.dataset = adapter;
  s.id = std::string(to_string(adapter)) + "/" + s.id;
  return s;
}

}  // namespace

std::vector<Sample> parse_source(SourceAdapterId adapter, std::string_view payload) {
  const Json doc = Json::parse(payload, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw SchemaError::at_record(0, "$", "payload is not valid JSON");
  if (!doc.is_array()) throw SchemaError::at_record(0, "$", "payload must be a JSON array");

  std::vector<Sample> out;
  out.reserve(doc.size());
  std::unordered_set<std::string> ids;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    Sample s;
    try {
      s = parse_record(adapter, doc[i]);
    } catch (const FieldError& e) {
      throw SchemaError::at_record(i, e.path(), e.reason());
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError::at_record(i, "$", e.what());
    }
    const auto report = validate_sample(s);
    if (!report.empty()) {
      throw SchemaError::at_record(i, "$." + report.front().field,
                                   report.front().rule + ": " + report.front().detail);
    }
    if (!ids.insert(s.id).second) {
      throw SchemaError::at_record(i, "$", "duplicate id '" + s.id + "'");
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace dataforge::ingest
