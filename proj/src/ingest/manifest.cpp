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
#include "dataforge/ingest/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "dataforge/core/errors.hpp"
#include "dataforge/core/serialize.hpp"

namespace dataforge::ingest {

std::string render_manifest(std::vector<Sample> samples) {
  std::vector<std::pair<std::string, std::string>> lines;
  lines.reserve(samples.size());
  for (const auto& s : samples) {
    try {
      lines.emplace_back(s.id, serialize_sample(s));
    } catch (const nlohmann::json::exception& e) {
      throw DataError("sample '" + s.id + "' cannot be serialized: " + e.what());
    }
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& [id, line] : lines) {
    out += line;
    out += '\n';
  }
  return out;
}

std::vector<Sample> parse_manifest(std::string_view content) {
  std::vector<Sample> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    ++line_no;
    const auto nl = content.find('\n', pos);
    const auto line = content.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? content.size() : nl + 1;
    if (line.empty()) throw SchemaError::at_line(line_no, "blank line");
    try {
      out.push_back(deserialize_sample(line));
    } catch (const FieldError& e) {
      throw SchemaError::at_line(line_no, e.path() + ": " + e.reason());
    }
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path.string());
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

void write_manifest(std::vector<Sample> samples, const std::filesystem::path& path) {
  write_file(path, render_manifest(std::move(samples)));
}

std::vector<Sample> read_manifest(const std::filesystem::path& path) {
  return parse_manifest(read_file(path));
}

}  // namespace dataforge::ingest
