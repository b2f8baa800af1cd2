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
#include "dataforge/augment/rewriter.hpp"

#include <stdexcept>

#include "dataforge/core/errors.hpp"
#include "dataforge/core/text.hpp"

namespace dataforge::augment {

std::string_view rewriter_user_template() {
  return "I have a question and its corresponding answer. I need your assistance "
         "in revising and refining them. Please make some changes to the written "
         "content while preserving the meaning. The question and answer that "
         "require modifications are:\n{QA}. Please provide the revised question "
         "and answer in the format: Question: <question> Answer: <answer>.";
}

RewriterRequest build_rewriter_request(const QAPair& qa) {
  if (qa.style != QAStyle::kOpen) {
    throw std::invalid_argument("only open-style QA pairs can be rewritten");
  }
  const std::string_view tpl = rewriter_user_template();
  const auto slot = tpl.find("{QA}");
  std::string user(tpl.substr(0, slot));
  user += "Question: " + qa.question + " Answer: " + qa.answer;
  user += tpl.substr(slot + 4);
  return {std::string(kRewriterSystemText), std::move(user)};
}

QAPair parse_rewriter_response(std::string_view text) {
  constexpr std::string_view kQuestion = "Question:";
  constexpr std::string_view kAnswer = "Answer:";
  const auto q = text.find(kQuestion);
  if (q == std::string_view::npos) throw ResponseFormatError(std::string(text));
  const auto a = text.find(kAnswer, q + kQuestion.size());
  if (a == std::string_view::npos) throw ResponseFormatError(std::string(text));
  QAPair out;
  out.question = std::string(text::trim(text.substr(q + kQuestion.size(),
                                                    a - q - kQuestion.size())));
  out.answer = std::string(text::trim(text.substr(a + kAnswer.size())));
  out.style = QAStyle::kOpen;
  out.provenance = Provenance::kParaphrase;
  return out;
}

QAPair LocalRewriter::rewrite(const QAPair& qa, KeyedRng& rng) const {
  return local_paraphrase(qa, rng, rules_);
}

HttpRewriter::HttpRewriter(ChatEndpointConfig endpoint, double temperature)
    : client_(std::move(endpoint)), temperature_(temperature) {}

QAPair HttpRewriter::rewrite(const QAPair& qa, KeyedRng& /*rng*/) const {
  const RewriterRequest req = build_rewriter_request(qa);
  return parse_rewriter_response(
      client_.complete(req.system_text, req.user_text, temperature_));
}

}  // namespace dataforge::augment
