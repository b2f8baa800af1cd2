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
#ifndef DATAFORGE_CORE_KEYED_RNG_HPP_
#define DATAFORGE_CORE_KEYED_RNG_HPP_

#include <cstdint>
#include <random>
#include <string_view>

#include "dataforge/core/types.hpp"

namespace dataforge {

// 64-bit FNV-1a over bytes, used only to derive stream keys.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL);

// Random stream derived from (global_seed, dataset, sample_id, step). The
// stream depends only on the key, never on scheduling, so work can be split
// across threads without changing results.
class KeyedRng {
 public:
  KeyedRng(std::uint64_t global_seed, DatasetId dataset,
           std::string_view sample_id, std::string_view step);

  std::uint64_t key() const { return key_; }

  std::uint64_t next_u64() { return engine_(); }
  // Uniform over [0, n). n must be positive. Rejection sampling keeps the
  // result portable across standard libraries.
  std::uint64_t uniform_index(std::uint64_t n);
  // Uniform over [0, 1).
  double uniform01();
  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::uint64_t key_;
  std::mt19937_64 engine_;
};

}  // namespace dataforge

#endif  // DATAFORGE_CORE_KEYED_RNG_HPP_
