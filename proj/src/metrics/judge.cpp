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
#include "dataforge/metrics/judge.hpp"

#include <cctype>
#include <charconv>

#include "dataforge/core/errors.hpp"

namespace dataforge::metrics {

JudgeRequest judge_request(std::string_view predicted, std::string_view gold,
                           std::string_view rubric) {
  JudgeRequest r;
  r.system_text = "You grade answers against a reference answer.";
  r.user_text = std::string(rubric) + "\nReference answer: " + std::string(gold) +
                "\nCandidate answer: " + std::string(predicted) +
                "\nReply with a line of the form \"Score: <number>\".";
  return r;
}

double parse_judge_score(std::string_view reply) {
  constexpr std::string_view kMarker = "Score:";
  const auto pos = reply.find(kMarker);
  if (pos == std::string_view::npos) throw ResponseFormatError(std::string(reply));
  std::size_t i = pos + kMarker.size();
  while (i < reply.size() && std::isspace(static_cast<unsigned char>(reply[i]))) ++i;
  double value = 0;
  const char* begin = reply.data() + i;
  const char* end = reply.data() + reply.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr == begin) throw ResponseFormatError(std::string(reply));
  return value;
}

LlmJudge::LlmJudge(ChatEndpointConfig endpoint) : client_(std::move(endpoint)) {}

JudgeOutcome LlmJudge::score(std::string_view predicted, std::string_view gold,
                             std::string_view rubric) const {
  if (client_.config().offline) return {true, std::nullopt};
  const JudgeRequest req = judge_request(predicted, gold, rubric);
  return {false, parse_judge_score(client_.complete(req.system_text, req.user_text, 0.0))};
}

}  // namespace dataforge::metrics
