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
#include "dataforge/augment/expand.hpp"

#include <map>
#include <stdexcept>

#include "dataforge/augment/multiple_choice.hpp"
#include "dataforge/augment/paraphrase.hpp"
#include "dataforge/core/errors.hpp"
#include "dataforge/core/parallel.hpp"

namespace dataforge::augment {

ExpansionPolicy ExpansionPolicy::default_for(DatasetId dataset) {
  ExpansionPolicy p;
  p.dataset = dataset;
  switch (dataset) {
    case DatasetId::kCodaLm: p.factor = 5; break;
    case DatasetId::kMaplm: p.factor = 2; break;
    default: p.factor = 1; break;
  }
  return p;
}

namespace {

std::string tag_key(const Sample& s) {
  std::string key;
  for (const auto& t : s.task_tags) {
    key += t;
    key += '\x1f';
  }
  return key;
}

void check_not_augmented(const Sample& s) {
  if (s.id.find(kAugSuffix) != std::string::npos) {
    throw ProvenanceError("sample '" + s.id + "' is already an augmented copy");
  }
  for (const auto& qa : s.qa) {
    if (qa.provenance == Provenance::kParaphrase || qa.provenance == Provenance::kMcTransform) {
      throw ProvenanceError("sample '" + s.id + "' already contains augmented QA pairs");
    }
  }
}

}  // namespace

ExpansionResult expand_dataset(const std::vector<Sample>& samples,
                               const ExpansionPolicy& policy, const Rewriter& rewriter,
                               std::uint64_t seed, unsigned jobs) {
  if (policy.factor < 1) throw std::invalid_argument("expansion factor must be >= 1");
  if (policy.mc_fraction < 0 || policy.mc_fraction > 1) {
    throw std::invalid_argument("mc_fraction must lie in [0, 1]");
  }
  for (const auto& s : samples) {
    if (s.dataset != policy.dataset) {
      throw std::invalid_argument("sample '" + s.id + "' is not from " +
                                  std::string(to_string(policy.dataset)));
    }
    check_not_augmented(s);
  }

  std::map<std::string, std::vector<std::string>> pool_texts;
  std::vector<std::string> all_texts;
  for (const auto& s : samples) {
    auto& texts = pool_texts[tag_key(s)];
    for (const auto& qa : s.qa) {
      if (qa.style != QAStyle::kOpen) continue;
      texts.push_back(qa.answer);
      all_texts.push_back(qa.answer);
    }
  }
  std::map<std::string, DistractorPool> pools;
  for (auto& [key, texts] : pool_texts) pools.emplace(key, DistractorPool(std::move(texts)));
  // Used when a task group has too few distinct answers.
  const DistractorPool dataset_pool(std::move(all_texts));

  const LocalRewriter fallback;
  std::vector<std::vector<Sample>> slots(samples.size());
  std::vector<std::vector<ExpansionFailure>> slot_failures(samples.size());

  parallel_for(samples.size(), jobs, [&](std::size_t i) {
    const Sample& orig = samples[i];
    const DistractorPool& pool = pools.at(tag_key(orig));
    std::vector<std::string> own_answers;
    for (const auto& qa : orig.qa) own_answers.push_back(qa.answer);

    auto& out = slots[i];
    out.reserve(static_cast<std::size_t>(policy.factor));
    out.push_back(orig);
    for (int k = 1; k < policy.factor; ++k) {
      Sample copy = orig;
      copy.id = orig.id + std::string(kAugSuffix) + std::to_string(k);
      for (std::size_t q = 0; q < copy.qa.size(); ++q) {
        QAPair& qa = copy.qa[q];
        if (qa.style != QAStyle::kOpen) continue;
        const std::string n = std::to_string(q);
        KeyedRng rng(seed, orig.dataset, copy.id, "paraphrase/" + n);
        QAPair para;
        try {
          para = rewriter.rewrite(qa, rng);
        } catch (const Error& e) {
          slot_failures[i].push_back({copy.id, q, e.what()});
          KeyedRng local_rng(seed, orig.dataset, copy.id, "paraphrase-fallback/" + n);
          para = fallback.rewrite(qa, local_rng);
        }
        KeyedRng mc_rng(seed, orig.dataset, copy.id, "mc/" + n);
        if (mc_rng.bernoulli(policy.mc_fraction)) {
          try {
            para = to_multiple_choice(para, pool, mc_rng, own_answers);
          } catch (const PoolTooSmall&) {
            try {
              para = to_multiple_choice(para, dataset_pool, mc_rng, own_answers);
            } catch (const PoolTooSmall&) {
              // Too few distinct answers in the whole dataset; stays open.
            }
          }
        }
        qa = std::move(para);
      }
      out.push_back(std::move(copy));
    }
  });

  ExpansionResult result;
  result.samples.reserve(samples.size() * static_cast<std::size_t>(policy.factor));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (auto& s : slots[i]) result.samples.push_back(std::move(s));
    for (auto& f : slot_failures[i]) result.failures.push_back(std::move(f));
  }
  return result;
}

}  // namespace dataforge::augment
