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
#ifndef DATAFORGE_CORE_ERRORS_HPP_
#define DATAFORGE_CORE_ERRORS_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dataforge {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Problems with the data being processed. The CLI maps these to exit code 1.
class DataError : public Error {
 public:
  using Error::Error;
};

// Problems with configuration or the environment (exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class NetworkError : public Error {
 public:
  using Error::Error;
};

// Malformed source payload or manifest line. Exactly one of record_index or
// line is set.
class SchemaError : public DataError {
 public:
  static SchemaError at_record(std::size_t record_index, std::string path,
                               std::string reason);
  static SchemaError at_line(std::size_t line, std::string reason);

  const std::optional<std::size_t>& record_index() const { return record_index_; }
  const std::optional<std::size_t>& line() const { return line_; }
  const std::string& path() const { return path_; }
  const std::string& reason() const { return reason_; }

 private:
  SchemaError(std::string message, std::optional<std::size_t> record_index,
              std::optional<std::size_t> line, std::string path,
              std::string reason);

  std::optional<std::size_t> record_index_;
  std::optional<std::size_t> line_;
  std::string path_;
  std::string reason_;
};

class BoundsError : public DataError {
 public:
  using DataError::DataError;
};

class UnknownCameraId : public DataError {
 public:
  explicit UnknownCameraId(std::string raw);
  const std::string& raw() const { return raw_; }

 private:
  std::string raw_;
};

class TokenGrammarError : public DataError {
 public:
  TokenGrammarError(std::string token, std::size_t position, std::string reason);
  const std::string& token() const { return token_; }
  std::size_t position() const { return position_; }

 private:
  std::string token_;
  std::size_t position_;
};

// One failed object token inside a sample.
struct TokenFailure {
  std::string field;  // e.g. "qa[1].answer"
  std::string token;
  std::string reason;
};

class SampleError : public DataError {
 public:
  SampleError(std::string sample_id, std::vector<TokenFailure> failures);
  const std::string& sample_id() const { return sample_id_; }
  const std::vector<TokenFailure>& failures() const { return failures_; }

 private:
  std::string sample_id_;
  std::vector<TokenFailure> failures_;
};

class ResponseFormatError : public DataError {
 public:
  explicit ResponseFormatError(const std::string& text);
  const std::string& excerpt() const { return excerpt_; }

 private:
  std::string excerpt_;
};

class PoolTooSmall : public DataError {
 public:
  using DataError::DataError;
};

class ProvenanceError : public DataError {
 public:
  using DataError::DataError;
};

class EmptyAnnotation : public DataError {
 public:
  using DataError::DataError;
};

class MixedResolutionError : public DataError {
 public:
  using DataError::DataError;
};

class FrameCountMismatch : public DataError {
 public:
  using DataError::DataError;
};

class EmptyInput : public DataError {
 public:
  using DataError::DataError;
};

class MissingExplanation : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class MissingDatasetCount : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

}  // namespace dataforge

#endif  // DATAFORGE_CORE_ERRORS_HPP_
