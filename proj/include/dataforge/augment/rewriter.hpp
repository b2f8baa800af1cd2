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
#ifndef DATAFORGE_AUGMENT_REWRITER_HPP_
#define DATAFORGE_AUGMENT_REWRITER_HPP_

#include <memory>
#include <string>
#include <string_view>

#include "dataforge/augment/paraphrase.hpp"
#include "dataforge/core/chat_client.hpp"
#include "dataforge/core/keyed_rng.hpp"
#include "dataforge/core/types.hpp"

namespace dataforge::augment {

inline constexpr std::string_view kRewriterSystemText = "You are an English improver.";

// The user message, with "{QA}" standing for "Question: <q> Answer: <a>".
std::string_view rewriter_user_template();

struct RewriterRequest {
  std::string system_text;
  std::string user_text;

  bool operator==(const RewriterRequest&) const = default;
};

// Requires an open-style QA (std::invalid_argument otherwise).
RewriterRequest build_rewriter_request(const QAPair& qa);

// Splits "Question: ... Answer: ..." into an open QA with paraphrase
// provenance. Throws ResponseFormatError if either marker is missing or they
// appear in the wrong order.
QAPair parse_rewriter_response(std::string_view text);

// Produces a paraphrased copy of an open QA. Implementations must be safe to
// call from several threads at once.
class Rewriter {
 public:
  virtual ~Rewriter() = default;
  virtual QAPair rewrite(const QAPair& qa, KeyedRng& rng) const = 0;
};

// Deterministic offline rewriter backed by local_paraphrase.
class LocalRewriter : public Rewriter {
 public:
  explicit LocalRewriter(ParaphraseRules rules = ParaphraseRules::defaults())
      : rules_(std::move(rules)) {}
  QAPair rewrite(const QAPair& qa, KeyedRng& rng) const override;

 private:
  ParaphraseRules rules_;
};

// Sends the rewriter prompt to a chat endpoint. The rng is unused; sampling
// happens on the service side at `temperature`.
class HttpRewriter : public Rewriter {
 public:
  HttpRewriter(ChatEndpointConfig endpoint, double temperature);
  QAPair rewrite(const QAPair& qa, KeyedRng& rng) const override;

 private:
  ChatClient client_;
  double temperature_;
};

}  // namespace dataforge::augment

#endif  // DATAFORGE_AUGMENT_REWRITER_HPP_
