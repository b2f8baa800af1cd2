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
#include "dataforge/augment/paraphrase.hpp"

#include <cctype>
#include <stdexcept>

#include "dataforge/core/errors.hpp"
#include "dataforge/core/text.hpp"
#include "dataforge/embedded_data.hpp"

namespace dataforge::augment {

ParaphraseRules ParaphraseRules::defaults() {
  static const ParaphraseRules rules =
      from_json(Json::parse(embedded::kParaphraseRulesJson));
  return rules;
}

ParaphraseRules ParaphraseRules::from_json(const Json& j) {
  ParaphraseRules r;
  try {
    r.question_lead_ins = j.at("question_lead_ins").get<std::vector<std::string>>();
    r.answer_lead_ins = j.at("answer_lead_ins").get<std::vector<std::string>>();
    r.lowercase_after_lead_in =
        j.at("lowercase_after_lead_in").get<std::vector<std::string>>();
    for (const auto& [word, alts] : j.at("synonyms").items()) {
      r.synonyms[text::to_lower(word)] = alts.get<std::vector<std::string>>();
    }
    r.synonym_probability = j.value("synonym_probability", 0.5);
    r.reorder_probability = j.value("reorder_probability", 0.5);
    if (j.contains("protected_phrases")) {
      r.protected_phrases = j.at("protected_phrases").get<std::vector<std::string>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid paraphrase rules: ") + e.what());
  }
  for (const auto& [word, alts] : r.synonyms) {
    if (alts.empty()) throw ConfigError("synonym entry '" + word + "' has no replacements");
  }
  return r;
}

namespace {

bool is_word_char(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '\'';
}

bool starts_upper(std::string_view s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s.front()));
}

std::string with_case_of(std::string replacement, std::string_view original) {
  if (starts_upper(original) && !replacement.empty()) {
    replacement[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(replacement[0])));
  }
  return replacement;
}

// Half-open ranges of text that must not be edited: "<...>" groups with an
// optional "[...]" suffix.
std::vector<std::pair<std::size_t, std::size_t>> protected_spans(std::string_view s) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '<') {
      ++i;
      continue;
    }
    const auto close = s.find_first_of("<>\n", i + 1);
    if (close == std::string_view::npos || s[close] != '>') {
      ++i;
      continue;
    }
    std::size_t end = close + 1;
    if (end < s.size() && s[end] == '[') {
      const auto rb = s.find_first_of("[]\n", end + 1);
      if (rb != std::string_view::npos && s[rb] == ']') end = rb + 1;
    }
    out.emplace_back(i, end);
    i = end;
  }
  return out;
}

std::string substitute_synonyms(const std::string& head, KeyedRng& rng,
                                const ParaphraseRules& rules) {
  const auto spans = protected_spans(head);
  std::string out;
  std::size_t span_idx = 0;
  std::size_t i = 0;
  while (i < head.size()) {
    if (span_idx < spans.size() && i == spans[span_idx].first) {
      out.append(head, i, spans[span_idx].second - i);
      i = spans[span_idx].second;
      ++span_idx;
      continue;
    }
    if (!is_word_char(head[i])) {
      out += head[i++];
      continue;
    }
    std::size_t j = i;
    const std::size_t limit = span_idx < spans.size() ? spans[span_idx].first : head.size();
    while (j < limit && is_word_char(head[j])) ++j;
    const std::string word = head.substr(i, j - i);
    const auto it = rules.synonyms.find(text::to_lower(word));
    if (it != rules.synonyms.end() && rng.bernoulli(rules.synonym_probability)) {
      out += with_case_of(it->second[rng.uniform_index(it->second.size())], word);
    } else {
      out += word;
    }
    i = j;
  }
  return out;
}

// "X because Y." -> "Because Y, x."
std::optional<std::string> reorder_because(const std::string& head) {
  constexpr std::string_view kBecause = " because ";
  const auto pos = head.find(kBecause);
  if (pos == std::string::npos || pos == 0) return std::nullopt;
  if (head.find(kBecause, pos + 1) != std::string::npos) return std::nullopt;
  std::string cause = head.substr(pos + kBecause.size());
  std::string punct;
  while (!cause.empty() && (cause.back() == '.' || cause.back() == '!' || cause.back() == '?')) {
    punct.insert(punct.begin(), cause.back());
    cause.pop_back();
  }
  if (cause.empty()) return std::nullopt;
  std::string effect = head.substr(0, pos);
  if (!effect.empty()) {
    effect[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(effect[0])));
  }
  return "Because " + cause + ", " + effect + (punct.empty() ? "." : punct);
}

std::string apply_lead_in(const std::string& lead, const std::string& head,
                          const ParaphraseRules& rules) {
  if (lead.empty()) return head;
  std::string body = head;
  std::size_t end = 0;
  while (end < body.size() && is_word_char(body[end])) ++end;
  const std::string first = text::to_lower(body.substr(0, end));
  for (const auto& w : rules.lowercase_after_lead_in) {
    if (w == first) {
      body[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(body[0])));
      break;
    }
  }
  return lead + " " + body;
}

std::string paraphrase_text(const std::string& input, KeyedRng& rng,
                            const ParaphraseRules& rules,
                            const std::vector<std::string>& lead_ins) {
  std::size_t cut = input.size();
  for (const auto& phrase : rules.protected_phrases) {
    const auto p = input.find(phrase);
    if (p != std::string::npos && p < cut) cut = p;
  }
  // Keep the separator before a protected tail inside the tail.
  while (cut > 0 && cut < input.size() && input[cut - 1] == ' ') --cut;
  const std::string original_head = input.substr(0, cut);
  const std::string tail = input.substr(cut);
  std::string head = original_head;
  if (head.empty()) return input;

  if (protected_spans(head).empty()) {
    if (auto reordered = reorder_because(head)) {
      if (rng.bernoulli(rules.reorder_probability)) head = *reordered;
    }
  }
  head = substitute_synonyms(head, rng, rules);
  if (!lead_ins.empty()) {
    head = apply_lead_in(lead_ins[rng.uniform_index(lead_ins.size())], head, rules);
  }
  if (head == original_head) {
    std::vector<const std::string*> non_empty;
    for (const auto& l : lead_ins) {
      if (!l.empty()) non_empty.push_back(&l);
    }
    if (!non_empty.empty()) {
      head = apply_lead_in(*non_empty[rng.uniform_index(non_empty.size())], head, rules);
    }
  }
  return head + tail;
}

}  // namespace

QAPair local_paraphrase(const QAPair& qa, KeyedRng& rng, const ParaphraseRules& rules) {
  if (qa.style != QAStyle::kOpen) {
    throw std::invalid_argument("only open-style QA pairs can be paraphrased");
  }
  QAPair out = qa;
  out.provenance = Provenance::kParaphrase;
  if (text::split_whitespace(qa.question).size() <= 1) return out;
  out.question = paraphrase_text(qa.question, rng, rules, rules.question_lead_ins);
  if (text::split_whitespace(qa.answer).size() >= 2) {
    out.answer = paraphrase_text(qa.answer, rng, rules, rules.answer_lead_ins);
  }
  return out;
}

}  // namespace dataforge::augment
