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
#include "dataforge/core/object_token.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>

#include "dataforge/core/errors.hpp"

namespace dataforge {
namespace {

bool has_digit(std::string_view s) {
  for (char c : s) {
    if (c >= '0' && c <= '9') return true;
  }
  return false;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) {
    return false;
  }
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

// -?digits(.digits)?
bool is_number(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto dot = s.find('.');
  auto all_digits = [](std::string_view d) {
    if (d.empty()) return false;
    for (char c : d) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };
  if (dot == std::string_view::npos) return all_digits(s);
  return all_digits(s.substr(0, dot)) && all_digits(s.substr(dot + 1));
}

double to_double(std::string_view s) {
  double v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

struct Field {
  std::string_view text;
  std::size_t offset;  // within the token
};

// Splits on commas, trimming spaces, remembering offsets for error reports.
std::vector<Field> split_fields(std::string_view body, std::size_t base) {
  std::vector<Field> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= body.size(); ++i) {
    if (i == body.size() || body[i] == ',') {
      std::size_t b = start, e = i;
      while (b < e && body[b] == ' ') ++b;
      while (e > b && body[e - 1] == ' ') --e;
      out.push_back({body.substr(b, e - b), base + b});
      start = i + 1;
    }
  }
  return out;
}

[[noreturn]] void fail(std::string_view token, std::size_t pos,
                       const std::string& reason) {
  throw TokenGrammarError(std::string(token), pos, reason);
}

ParsedToken parse_bracketed(std::string_view token, std::size_t close_angle) {
  ParsedToken out;
  out.form = TokenForm::kBracketed;
  ObjectRef& ref = out.ref;
  ref.source_tag = std::string(token);

  const std::string_view category = token.substr(1, close_angle - 1);
  if (category.empty() || category.find(',') != std::string_view::npos) {
    fail(token, 1, "category must be non-empty and contain no commas");
  }
  ref.category = std::string(category);

  if (token.back() != ']') fail(token, token.size() - 1, "expected ']'");
  const std::size_t body_start = close_angle + 2;
  const auto fields = split_fields(
      token.substr(body_start, token.size() - 1 - body_start), body_start);

  std::size_t first_coord = 0;
  if (!fields.empty() && !is_number(fields[0].text)) {
    if (!is_identifier(fields[0].text)) {
      fail(token, fields[0].offset, "camera field is not an identifier");
    }
    ref.camera_tag = std::string(fields[0].text);
    ref.camera = parse_camera_id(fields[0].text);
    first_coord = 1;
  }
  const std::size_t n_coords = fields.size() - first_coord;
  if (n_coords != 2 && n_coords != 4) {
    fail(token, body_start,
         "expected 2 or 4 coordinates, found " + std::to_string(n_coords));
  }
  bool all_three_decimal = true;
  for (std::size_t i = first_coord; i < fields.size(); ++i) {
    if (!is_number(fields[i].text)) {
      fail(token, fields[i].offset,
           "'" + std::string(fields[i].text) + "' is not a number");
    }
    if (!NormCoord::parse(fields[i].text)) all_three_decimal = false;
  }

  auto coord = [&](std::size_t k) { return fields[first_coord + k].text; };
  if (all_three_decimal) {
    auto nc = [&](std::size_t k) { return *NormCoord::parse(coord(k)); };
    if (n_coords == 4) {
      ref.geometry = BBoxNorm{nc(0), nc(1), nc(2), nc(3)};
    } else {
      ref.geometry = PointNorm{nc(0), nc(1)};
    }
  } else if (n_coords == 4) {
    ref.geometry = BBoxPx{to_double(coord(0)), to_double(coord(1)),
                          to_double(coord(2)), to_double(coord(3))};
  } else {
    ref.geometry = PointPx{to_double(coord(0)), to_double(coord(1))};
  }
  out.unified = all_three_decimal && ref.camera.has_value();
  return out;
}

ParsedToken parse_angle_tuple(std::string_view token) {
  ParsedToken out;
  out.form = TokenForm::kAngleTuple;
  ObjectRef& ref = out.ref;
  ref.source_tag = std::string(token);

  if (token.back() != '>') fail(token, token.size() - 1, "expected '>'");
  const auto fields = split_fields(token.substr(1, token.size() - 2), 1);
  if (fields.size() != 4) {
    fail(token, 1, "expected 4 fields, found " + std::to_string(fields.size()));
  }
  if (!is_identifier(fields[0].text)) {
    fail(token, fields[0].offset, "class id is not an identifier");
  }
  if (!is_identifier(fields[1].text)) {
    fail(token, fields[1].offset, "camera field is not an identifier");
  }
  for (std::size_t i = 2; i < 4; ++i) {
    if (!is_number(fields[i].text)) {
      fail(token, fields[i].offset,
           "'" + std::string(fields[i].text) + "' is not a number");
    }
  }
  ref.class_id = std::string(fields[0].text);
  ref.camera_tag = std::string(fields[1].text);
  ref.camera = parse_camera_id(fields[1].text);
  ref.geometry = PointPx{to_double(fields[2].text), to_double(fields[3].text)};
  return out;
}

}  // namespace

std::vector<TokenSpan> find_token_candidates(std::string_view text) {
  std::vector<TokenSpan> spans;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '<') {
      ++i;
      continue;
    }
    const auto close = text.find_first_of("<>\n", i + 1);
    if (close == std::string_view::npos || text[close] != '>') {
      ++i;
      continue;
    }
    const std::string_view inner = text.substr(i + 1, close - i - 1);
    if (close + 1 < text.size() && text[close + 1] == '[') {
      const auto rb = text.find_first_of("[]\n", close + 2);
      if (rb != std::string_view::npos && text[rb] == ']') {
        const std::string_view body = text.substr(close + 2, rb - close - 2);
        if (has_digit(body)) {
          spans.push_back({i, rb + 1, TokenForm::kBracketed});
          i = rb + 1;
          continue;
        }
      }
    } else if (inner.find(',') != std::string_view::npos && has_digit(inner)) {
      spans.push_back({i, close + 1, TokenForm::kAngleTuple});
      i = close + 1;
      continue;
    }
    ++i;
  }
  return spans;
}

ParsedToken parse_object_token(std::string_view token) {
  if (token.size() < 3 || token.front() != '<') {
    fail(token, 0, "token must start with '<'");
  }
  const auto close = token.find('>');
  if (close == std::string_view::npos) fail(token, token.size(), "missing '>'");
  if (close + 1 < token.size()) {
    if (token[close + 1] != '[') fail(token, close + 1, "expected '['");
    return parse_bracketed(token, close);
  }
  if (token.substr(1).find(',') == std::string_view::npos) {
    fail(token, 1, "angle tuple requires comma-separated fields");
  }
  return parse_angle_tuple(token);
}

std::string render_unified(const ObjectRef& ref) {
  if (!ref.camera) {
    throw std::invalid_argument("render_unified: camera is unresolved");
  }
  std::string coords;
  if (const auto* b = std::get_if<BBoxNorm>(&ref.geometry)) {
    coords = b->render();
  } else if (const auto* p = std::get_if<PointNorm>(&ref.geometry)) {
    coords = p->render();
  } else {
    throw std::invalid_argument("render_unified: geometry is not normalized");
  }
  return "<" + ref.category + ">[" + std::string(to_string(*ref.camera)) +
         ", " + coords + "]";
}

std::vector<ObjectRef> extract_object_refs(const Sample& sample) {
  std::vector<ObjectRef> refs;
  auto scan = [&](const std::string& s) {
    for (const auto& span : find_token_candidates(s)) {
      refs.push_back(
          parse_object_token(std::string_view(s).substr(
                                 span.begin, span.end - span.begin))
              .ref);
    }
  };
  for (const auto& qa : sample.qa) {
    scan(qa.question);
    scan(qa.answer);
    for (const auto& opt : qa.options) scan(opt.text);
  }
  return refs;
}

}  // namespace dataforge
