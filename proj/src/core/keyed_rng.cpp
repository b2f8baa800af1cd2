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
#include "dataforge/core/keyed_rng.hpp"

#include <limits>

namespace dataforge {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

KeyedRng::KeyedRng(std::uint64_t global_seed, DatasetId dataset,
                   std::string_view sample_id, std::string_view step) {
  std::uint64_t h = splitmix64(global_seed);
  h = fnv1a64(to_string(dataset), h);
  h = fnv1a64(std::string_view("\x1f", 1), h);
  h = fnv1a64(sample_id, h);
  h = fnv1a64(std::string_view("\x1f", 1), h);
  h = fnv1a64(step, h);
  key_ = splitmix64(h);
  engine_.seed(key_);
}

std::uint64_t KeyedRng::uniform_index(std::uint64_t n) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

double KeyedRng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

}  // namespace dataforge
