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
#ifndef DATAFORGE_INGEST_MANIFEST_HPP_
#define DATAFORGE_INGEST_MANIFEST_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dataforge/core/types.hpp"

namespace dataforge::ingest {

// JSON Lines, one sample per line, sorted by id. Identical sample lists in
// any order render to identical bytes.
std::string render_manifest(std::vector<Sample> samples);
// Throws SchemaError naming the 1-based line of the first bad line.
std::vector<Sample> parse_manifest(std::string_view content);

void write_manifest(std::vector<Sample> samples, const std::filesystem::path& path);
std::vector<Sample> read_manifest(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace dataforge::ingest

#endif  // DATAFORGE_INGEST_MANIFEST_HPP_
