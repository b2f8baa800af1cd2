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
#include "dataforge/promptkit/prompt.hpp"

#include "dataforge/core/errors.hpp"
#include "dataforge/core/text.hpp"
#include "dataforge/embedded_data.hpp"

namespace dataforge::promptkit {
namespace {

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  if (from.empty()) return;
  for (std::size_t pos = s.find(from); pos != std::string::npos;
       pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
}

std::string render_label(const PromptTemplate& tpl, int index, CameraId camera) {
  std::string label = tpl.view_label_format;
  replace_all(label, "{i}", std::to_string(index));
  replace_all(label, "{CAMERA_NAME}", to_string(camera));
  return label;
}

std::string render_dialogue(const Sample& sample) {
  std::string out;
  for (const auto& qa : sample.qa) {
    out += "USER: " + qa.question + "\n";
    for (const auto& o : qa.options) out += o.label + ". " + o.text + "\n";
    out += "ASSISTANT: " + qa.answer + "\n";
  }
  return out;
}

}  // namespace

TokenLayout make_layout(int n, int f, bool pooled, const GridConfig& grid) {
  TokenLayout t;
  t.n = n;
  t.f = f;
  t.grid_h = grid.grid_h;
  t.grid_w = grid.grid_w;
  t.pooled = pooled;
  t.tokens_per_frame = pooled ? std::int64_t{grid.grid_h / 2} * (grid.grid_w / 2)
                              : std::int64_t{grid.grid_h} * grid.grid_w;
  t.total_visual_tokens = std::int64_t{n} * f * t.tokens_per_frame;
  return t;
}

TokenLayout visual_token_count(const MediaRef& media, const GridConfig& grid) {
  const bool video = media.kind == MediaKind::kVideo;
  return make_layout(1, video ? media.frame_count : 1, video, grid);
}

const PromptTemplate& PromptTemplate::defaults() {
  static const PromptTemplate tpl = from_json(Json::parse(embedded::kPromptTemplateJson));
  return tpl;
}

PromptTemplate PromptTemplate::from_json(const Json& j) {
  PromptTemplate tpl;
  if (!j.is_object()) throw ConfigError("prompt template must be a JSON object");
  try {
    tpl.image_placeholder = j.value("image_placeholder", tpl.image_placeholder);
    tpl.video_placeholder = j.value("video_placeholder", tpl.video_placeholder);
    tpl.view_label_format = j.value("view_label_format", tpl.view_label_format);
    if (j.contains("camera_explanations")) {
      for (const auto& [name, text] : j.at("camera_explanations").items()) {
        const auto cam = parse_camera_id(name);
        if (!cam) throw ConfigError("unknown camera in prompt template: " + name);
        tpl.camera_explanations[*cam] = text.get<std::string>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid prompt template: ") + e.what());
  }
  if (tpl.image_placeholder.empty() || tpl.video_placeholder.empty() ||
      tpl.image_placeholder == tpl.video_placeholder) {
    throw ConfigError("placeholders must be non-empty and distinct");
  }
  return tpl;
}

AssembledPrompt assemble_prompt(const Sample& sample, const PromptTemplate& tpl) {
  AssembledPrompt out;
  std::string media_block;
  std::string media_block_bare;
  int index = 0;
  for (const auto& m : sample.media) {
    ++index;
    auto it = tpl.camera_explanations.find(m.camera);
    if (it == tpl.camera_explanations.end()) {
      throw MissingExplanation("prompt template has no explanation for camera " +
                               std::string(to_string(m.camera)));
    }
    const std::string& placeholder =
        m.kind == MediaKind::kVideo ? tpl.video_placeholder : tpl.image_placeholder;
    const std::string head = render_label(tpl, index, m.camera) + " " + it->second;
    media_block += head + " " + placeholder + "\n";
    media_block_bare += head + "\n";
    out.plan.push_back({index, m, placeholder});
  }
  const std::string dialogue = render_dialogue(sample);
  out.text = media_block + dialogue;
  out.text_without_placeholders = media_block_bare + dialogue;
  return out;
}

std::int64_t estimate_text_tokens(std::string_view text) {
  const auto words = static_cast<std::int64_t>(text::split_whitespace(text).size());
  return (words * 13 + 9) / 10;
}

BudgetReport check_budget(const Sample& sample, const PromptTemplate& tpl,
                          const GridConfig& grid, const TextTokenCounter& counter,
                          std::int64_t limit) {
  const AssembledPrompt prompt = assemble_prompt(sample, tpl);
  BudgetReport r;
  r.limit = limit;
  r.text_tokens = counter(prompt.text_without_placeholders);
  for (const auto& m : sample.media) {
    r.per_media.push_back(visual_token_count(m, grid));
    r.visual_tokens += r.per_media.back().total_visual_tokens;
  }
  r.fits = r.text_tokens + r.visual_tokens <= r.limit;
  return r;
}

GridConfig grid_config_from_json(const Json& j) {
  GridConfig g;
  if (j.is_null()) return g;
  try {
    g.grid_h = j.value("grid_h", g.grid_h);
    g.grid_w = j.value("grid_w", g.grid_w);
    if (j.contains("feature_dim") && !j.at("feature_dim").is_null()) {
      g.feature_dim = j.at("feature_dim").get<int>();
    }
    if (j.contains("embed_dim") && !j.at("embed_dim").is_null()) {
      g.embed_dim = j.at("embed_dim").get<int>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid grid config: ") + e.what());
  }
  if (g.grid_h <= 0 || g.grid_w <= 0) throw ConfigError("grid_h and grid_w must be positive");
  return g;
}

Json budget_report_to_json(const std::string& sample_id, const BudgetReport& r) {
  Json layouts = Json::array();
  for (const auto& t : r.per_media) {
    layouts.push_back({{"f", t.f},
                       {"grid_h", t.grid_h},
                       {"grid_w", t.grid_w},
                       {"pooled", t.pooled},
                       {"tokens_per_frame", t.tokens_per_frame},
                       {"total_visual_tokens", t.total_visual_tokens}});
  }
  return Json{{"id", sample_id},
              {"text_tokens", r.text_tokens},
              {"visual_tokens", r.visual_tokens},
              {"limit", r.limit},
              {"fits", r.fits},
              {"media", std::move(layouts)}};
}

}  // namespace dataforge::promptkit
