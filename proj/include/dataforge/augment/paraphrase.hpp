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
#ifndef DATAFORGE_AUGMENT_PARAPHRASE_HPP_
#define DATAFORGE_AUGMENT_PARAPHRASE_HPP_

#include <map>
#include <string>
#include <vector>

#include "dataforge/core/keyed_rng.hpp"
#include "dataforge/core/serialize.hpp"
#include "dataforge/core/types.hpp"

namespace dataforge::augment {

// Rule tables for the offline paraphraser. The defaults are the contents of
// data/paraphrase_rules.json, compiled in.
struct ParaphraseRules {
  std::vector<std::string> question_lead_ins;  // "" means no lead-in
  std::vector<std::string> answer_lead_ins;
  // First words that are lower-cased when a lead-in is put in front of them.
  std::vector<std::string> lowercase_after_lead_in;
  // Lower-case whole word -> replacements.
  std::map<std::string, std::vector<std::string>> synonyms;
  double synonym_probability = 0.5;
  double reorder_probability = 0.5;
  // Text from the first occurrence of any of these phrases to the end is left
  // untouched (format instructions).
  std::vector<std::string> protected_phrases;

  static ParaphraseRules defaults();
  // Throws ConfigError.
  static ParaphraseRules from_json(const Json& j);
};

// Rule-based paraphrase of an open QA: optional "X because Y" clause
// reordering, synonym substitution and a lead-in phrase. Object tokens,
// placeholders and protected phrases are never edited. Questions of one
// word come back unchanged. Otherwise the question (and any answer of two or
// more words) always differs from the input. Output provenance is
// paraphrase. Deterministic for a given rng key.
QAPair local_paraphrase(const QAPair& qa, KeyedRng& rng,
                        const ParaphraseRules& rules = ParaphraseRules::defaults());

}  // namespace dataforge::augment

#endif  // DATAFORGE_AUGMENT_PARAPHRASE_HPP_
