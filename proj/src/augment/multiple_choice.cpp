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
#include "dataforge/augment/multiple_choice.hpp"

#include <algorithm>
#include <stdexcept>

#include "dataforge/core/errors.hpp"

namespace dataforge::augment {

DistractorPool::DistractorPool(std::vector<std::string> texts) : texts_(std::move(texts)) {
  std::erase_if(texts_, [](const std::string& t) { return t.empty(); });
  std::sort(texts_.begin(), texts_.end());
  texts_.erase(std::unique(texts_.begin(), texts_.end()), texts_.end());
}

std::vector<std::string> DistractorPool::sample(std::size_t k,
                                                std::span<const std::string> exclude,
                                                KeyedRng& rng) const {
  std::vector<std::size_t> excluded;
  for (const auto& e : exclude) {
    const auto it = std::lower_bound(texts_.begin(), texts_.end(), e);
    if (it != texts_.end() && *it == e) {
      excluded.push_back(static_cast<std::size_t>(it - texts_.begin()));
    }
  }
  std::sort(excluded.begin(), excluded.end());
  excluded.erase(std::unique(excluded.begin(), excluded.end()), excluded.end());
  if (texts_.size() - excluded.size() < k) {
    throw PoolTooSmall("distractor pool has " +
                       std::to_string(texts_.size() - excluded.size()) +
                       " eligible entries, need " + std::to_string(k));
  }
  std::vector<std::size_t> chosen;
  chosen.reserve(k);
  while (chosen.size() < k) {
    const std::size_t idx = rng.uniform_index(texts_.size());
    if (std::binary_search(excluded.begin(), excluded.end(), idx)) continue;
    if (std::find(chosen.begin(), chosen.end(), idx) != chosen.end()) continue;
    chosen.push_back(idx);
  }
  std::vector<std::string> out;
  out.reserve(k);
  for (auto idx : chosen) out.push_back(texts_[idx]);
  return out;
}

QAPair to_multiple_choice(const QAPair& qa, const DistractorPool& pool, KeyedRng& rng,
                          std::span<const std::string> also_exclude) {
  if (qa.style != QAStyle::kOpen) {
    throw std::invalid_argument("only open-style QA pairs can become multiple choice");
  }
  std::vector<std::string> exclude(also_exclude.begin(), also_exclude.end());
  exclude.push_back(qa.answer);
  const auto distractors = pool.sample(kOptionCount - 1, exclude, rng);
  const auto correct = static_cast<std::size_t>(rng.uniform_index(kOptionCount));

  QAPair out;
  out.question = qa.question;
  out.style = QAStyle::kMultipleChoice;
  out.provenance = Provenance::kMcTransform;
  std::size_t next = 0;
  for (std::size_t slot = 0; slot < kOptionCount; ++slot) {
    const std::string label(1, static_cast<char>('A' + slot));
    out.options.push_back({label, slot == correct ? qa.answer : distractors[next++]});
  }
  out.answer = out.options[correct].label;
  return out;
}

QAPair to_multiple_choice(const QAPair& qa, std::span<const std::string> pool, KeyedRng& rng) {
  return to_multiple_choice(qa, DistractorPool(std::vector<std::string>(pool.begin(), pool.end())),
                            rng);
}

}  // namespace dataforge::augment
