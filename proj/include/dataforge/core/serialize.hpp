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
#ifndef DATAFORGE_CORE_SERIALIZE_HPP_
#define DATAFORGE_CORE_SERIALIZE_HPP_

#include <string>
#include <string_view>

#include "json.hpp"
#include "dataforge/core/errors.hpp"
#include "dataforge/core/types.hpp"

namespace dataforge {

using Json = nlohmann::ordered_json;

// A structural problem at a JSON path. Callers re-raise it as a SchemaError
// carrying a record index or line number.
class FieldError : public DataError {
 public:
  FieldError(std::string path, std::string reason)
      : DataError(path + ": " + reason),
        path_(std::move(path)),
        reason_(std::move(reason)) {}
  const std::string& path() const { return path_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string path_;
  std::string reason_;
};

// Typed accessors that throw FieldError naming the path.
namespace json_field {

const Json& member(const Json& obj, std::string_view key, const std::string& path);
const Json* optional_member(const Json& obj, std::string_view key,
                            const std::string& path);
std::string string_at(const Json& obj, std::string_view key, const std::string& path);
double number_at(const Json& obj, std::string_view key, const std::string& path);
int int_at(const Json& obj, std::string_view key, const std::string& path);
const Json& array_at(const Json& obj, std::string_view key, const std::string& path);
const Json& object_at(const Json& obj, std::string_view key, const std::string& path);
std::string child(const std::string& path, std::string_view key);
std::string child(const std::string& path, std::size_t index);

}  // namespace json_field

Json media_to_json(const MediaRef& m);
MediaRef media_from_json(const Json& j, const std::string& path);

Json qa_to_json(const QAPair& qa);
QAPair qa_from_json(const Json& j, const std::string& path);

// Keys in field order: id, dataset, media, qa, task_tags.
Json sample_to_json(const Sample& s);
Sample sample_from_json(const Json& j, const std::string& path = "$");

// Normalized geometry is written as three-decimal strings, pixel geometry as
// plain numbers.
Json object_ref_to_json(const ObjectRef& ref);
ObjectRef object_ref_from_json(const Json& j, const std::string& path);

// Compact single-line encoding used by manifests.
std::string serialize_sample(const Sample& s);
Sample deserialize_sample(std::string_view line);

}  // namespace dataforge

#endif  // DATAFORGE_CORE_SERIALIZE_HPP_
