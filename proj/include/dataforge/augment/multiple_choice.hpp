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
#ifndef DATAFORGE_AUGMENT_MULTIPLE_CHOICE_HPP_
#define DATAFORGE_AUGMENT_MULTIPLE_CHOICE_HPP_

#include <span>
#include <string>
#include <vector>

#include "dataforge/core/keyed_rng.hpp"
#include "dataforge/core/types.hpp"

namespace dataforge::augment {

inline constexpr int kOptionCount = 4;

// Deduplicated candidate distractor texts, sorted for deterministic sampling.
class DistractorPool {
 public:
  DistractorPool() = default;
  explicit DistractorPool(std::vector<std::string> texts);

  std::size_t size() const { return texts_.size(); }
  const std::vector<std::string>& texts() const { return texts_; }

  // Draws k distinct entries not in `exclude`, uniformly without
  // replacement, in draw order. Throws PoolTooSmall when fewer than k
  // eligible entries exist.
  std::vector<std::string> sample(std::size_t k, std::span<const std::string> exclude,
                                  KeyedRng& rng) const;

 private:
  std::vector<std::string> texts_;
};

// Converts an open QA into a four-option (A-D) question. Exactly one option
// is the original answer verbatim, placed at a uniformly drawn position; the
// answer becomes that label. `also_exclude` lists texts that must not be
// used as distractors besides the answer itself.
QAPair to_multiple_choice(const QAPair& qa, const DistractorPool& pool, KeyedRng& rng,
                          std::span<const std::string> also_exclude = {});
QAPair to_multiple_choice(const QAPair& qa, std::span<const std::string> pool, KeyedRng& rng);

}  // namespace dataforge::augment

#endif  // DATAFORGE_AUGMENT_MULTIPLE_CHOICE_HPP_
