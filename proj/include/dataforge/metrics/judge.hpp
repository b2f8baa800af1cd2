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
#ifndef DATAFORGE_METRICS_JUDGE_HPP_
#define DATAFORGE_METRICS_JUDGE_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "dataforge/core/chat_client.hpp"

namespace dataforge::metrics {

struct JudgeRequest {
  std::string system_text;
  std::string user_text;
};

// Rubric prompt for a text-only judge. The reply is expected to contain
// "Score: <number>".
JudgeRequest judge_request(std::string_view predicted, std::string_view gold,
                           std::string_view rubric);

// Throws ResponseFormatError when no score can be read.
double parse_judge_score(std::string_view reply);

struct JudgeOutcome {
  bool skipped = false;
  std::optional<double> score;
};

// Transport only; scores are whatever the endpoint returns.
class LlmJudge {
 public:
  explicit LlmJudge(ChatEndpointConfig endpoint);
  // skipped in offline mode. Throws NetworkError or ResponseFormatError.
  JudgeOutcome score(std::string_view predicted, std::string_view gold,
                     std::string_view rubric) const;

 private:
  ChatClient client_;
};

}  // namespace dataforge::metrics

#endif  // DATAFORGE_METRICS_JUDGE_HPP_
