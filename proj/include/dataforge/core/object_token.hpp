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
#ifndef DATAFORGE_CORE_OBJECT_TOKEN_HPP_
#define DATAFORGE_CORE_OBJECT_TOKEN_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dataforge/core/types.hpp"

namespace dataforge {

// Two surface forms are recognized:
//
//   bracketed    <category>[CAM, a, b, c, d]   <category>[CAM, a, b]
//                <category>[a, b, c, d]        <category>[a, b]
//   angle tuple  <class_id, CAM, x, y>
//
// The bracketed form covers NuInstruct-style raw tokens ("<car>[c6, 139, 343,
// 1511, 900]") as well as the unified output form. The angle tuple is the
// DriveLM style ("<c6, CAM_BACK, 1088.3, 497.5>"), where the first field is a
// class id and the coordinates are a pixel center.
enum class TokenForm { kBracketed, kAngleTuple };

struct TokenSpan {
  std::size_t begin = 0;
  std::size_t end = 0;  // one past the last character
  TokenForm form = TokenForm::kBracketed;
};

struct ParsedToken {
  ObjectRef ref;
  TokenForm form = TokenForm::kBracketed;
  // Bracketed, canonical camera name, and every coordinate written as a
  // three-decimal normalized number.
  bool unified = false;
};

// Spans that look like object tokens. A span qualifies only if it contains a
// digit, so prose such as "<category>[CAMERA, x_min, ...]" and placeholders
// like "<image>" are skipped. Candidates may still be malformed.
std::vector<TokenSpan> find_token_candidates(std::string_view text);

// Throws TokenGrammarError with the offending offset.
ParsedToken parse_object_token(std::string_view token);

// "<car>[CAM_BACK_RIGHT, 8.688, 38.111, 94.438, 100.000]". Requires a
// normalized geometry and a resolved camera; throws std::invalid_argument
// otherwise.
std::string render_unified(const ObjectRef& ref);

// Every well-formed object token in the sample's QA text, in order
// (question, answer, then option texts per QA). Throws TokenGrammarError on
// the first malformed candidate.
std::vector<ObjectRef> extract_object_refs(const Sample& sample);

}  // namespace dataforge

#endif  // DATAFORGE_CORE_OBJECT_TOKEN_HPP_
