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
#ifndef DATAFORGE_INGEST_SOURCE_ADAPTERS_HPP_
#define DATAFORGE_INGEST_SOURCE_ADAPTERS_HPP_

#include <string_view>
#include <vector>

#include "dataforge/core/types.hpp"

namespace dataforge::ingest {

// One adapter per dataset; the adapter id is the dataset id.
using SourceAdapterId = DatasetId;

// Parses a source payload (a JSON array of records in the adapter's schema,
// see docs/source_schemas.md) into canonical samples with ids
// "<DATASET>/<source-id>". Every returned sample passes validate_sample.
// Throws SchemaError on the first bad record; nothing is returned partially.
std::vector<Sample> parse_source(SourceAdapterId adapter, std::string_view payload);

}  // namespace dataforge::ingest

#endif  // DATAFORGE_INGEST_SOURCE_ADAPTERS_HPP_
