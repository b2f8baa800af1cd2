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
#ifndef DATAFORGE_AUGMENT_EXPAND_HPP_
#define DATAFORGE_AUGMENT_EXPAND_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "dataforge/augment/rewriter.hpp"
#include "dataforge/core/types.hpp"

namespace dataforge::augment {

struct ExpansionPolicy {
  DatasetId dataset = DatasetId::kGeneric;
  int factor = 1;            // output count = factor * input count
  double mc_fraction = 0.2;  // chance that a paraphrased open QA becomes MC

  // CODA_LM x5 and MAPLM x2 (36,896 -> 184,480 and 47,485 -> 94,970);
  // every other dataset x1.
  static ExpansionPolicy default_for(DatasetId dataset);
};

struct ExpansionFailure {
  std::string sample_id;
  std::size_t qa_index = 0;
  std::string reason;
};

struct ExpansionResult {
  std::vector<Sample> samples;
  // Rewriter calls that failed and fell back to the local paraphraser.
  std::vector<ExpansionFailure> failures;
};

// Suffix marking augmented copies: "<id>#aug1", "<id>#aug2", ...
inline constexpr std::string_view kAugSuffix = "#aug";

// Each input yields itself, untouched, followed by factor-1 copies whose
// open QAs are paraphrased through `rewriter`; each paraphrased QA is then
// converted to multiple choice with probability mc_fraction, using answers
// of other samples sharing the same task tags as distractors (the whole
// dataset when that group has fewer than three to offer). All random
// choices are keyed on (seed, dataset, copy id, step), so the result does
// not depend on `jobs`.
//
// Throws std::invalid_argument if a sample belongs to another dataset or
// the factor is below 1, and ProvenanceError if the input already contains
// augmented samples.
ExpansionResult expand_dataset(const std::vector<Sample>& samples,
                               const ExpansionPolicy& policy, const Rewriter& rewriter,
                               std::uint64_t seed, unsigned jobs = 1);

}  // namespace dataforge::augment

#endif  // DATAFORGE_AUGMENT_EXPAND_HPP_
