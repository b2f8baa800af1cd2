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
#ifndef DATAFORGE_CORE_VALIDATE_HPP_
#define DATAFORGE_CORE_VALIDATE_HPP_

#include <string>
#include <vector>

#include "dataforge/core/types.hpp"

namespace dataforge {

struct Violation {
  std::string field;   // e.g. "media[0].frame_count"
  std::string rule;    // short rule id, e.g. "bbox_px_ordering"
  std::string detail;

  bool operator==(const Violation&) const = default;
};

using ValidationReport = std::vector<Violation>;

// Checks every structural invariant of a sample. Never throws; an empty
// report means the sample is valid.
ValidationReport validate_sample(const Sample& sample);

// validate_sample over every sample, plus id uniqueness. Field names are
// prefixed with the sample id.
ValidationReport validate_manifest(const std::vector<Sample>& samples);

std::string format_report(const ValidationReport& report);

}  // namespace dataforge

#endif  // DATAFORGE_CORE_VALIDATE_HPP_
