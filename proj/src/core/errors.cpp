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
#include "dataforge/core/errors.hpp"

#include <utility>

namespace dataforge {

SchemaError::SchemaError(std::string message,
                         std::optional<std::size_t> record_index,
                         std::optional<std::size_t> line, std::string path,
                         std::string reason)
    : DataError(std::move(message)),
      record_index_(record_index),
      line_(line),
      path_(std::move(path)),
      reason_(std::move(reason)) {}

SchemaError SchemaError::at_record(std::size_t record_index, std::string path,
                                   std::string reason) {
  std::string msg = "schema error in record " + std::to_string(record_index) +
                    " at " + path + ": " + reason;
  return SchemaError(std::move(msg), record_index, std::nullopt,
                     std::move(path), std::move(reason));
}

SchemaError SchemaError::at_line(std::size_t line, std::string reason) {
  std::string msg =
      "schema error on line " + std::to_string(line) + ": " + reason;
  return SchemaError(std::move(msg), std::nullopt, line, "", std::move(reason));
}

UnknownCameraId::UnknownCameraId(std::string raw)
    : DataError("unknown camera id '" + raw + "'"), raw_(std::move(raw)) {}

TokenGrammarError::TokenGrammarError(std::string token, std::size_t position,
                                     std::string reason)
    : DataError("malformed object token '" + token + "' at offset " +
                std::to_string(position) + ": " + reason),
      token_(std::move(token)),
      position_(position) {}

namespace {

std::string describe(const std::string& sample_id,
                     const std::vector<TokenFailure>& failures) {
  std::string msg = "sample '" + sample_id + "': " +
                    std::to_string(failures.size()) + " token failure(s)";
  for (const auto& f : failures) {
    msg += "; " + f.field + " '" + f.token + "': " + f.reason;
  }
  return msg;
}

}  // namespace

SampleError::SampleError(std::string sample_id,
                         std::vector<TokenFailure> failures)
    : DataError(describe(sample_id, failures)),
      sample_id_(std::move(sample_id)),
      failures_(std::move(failures)) {}

ResponseFormatError::ResponseFormatError(const std::string& text)
    : DataError("response is not in 'Question: ... Answer: ...' format: '" +
                text.substr(0, 80) + "'"),
      excerpt_(text.substr(0, 80)) {}

}  // namespace dataforge
