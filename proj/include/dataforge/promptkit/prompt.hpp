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
#ifndef DATAFORGE_PROMPTKIT_PROMPT_HPP_
#define DATAFORGE_PROMPTKIT_PROMPT_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dataforge/core/serialize.hpp"
#include "dataforge/core/types.hpp"

namespace dataforge::promptkit {

inline constexpr std::int64_t kSequenceLimit = 8192;

// Patch grid of the vision encoder for one frame. The feature and embedding
// widths are carried as metadata only.
struct GridConfig {
  int grid_h = 27;
  int grid_w = 27;
  std::optional<int> feature_dim;
  std::optional<int> embed_dim;
};

struct TokenLayout {
  int n = 1;  // camera count
  int f = 1;  // frames per view
  int grid_h = 0;
  int grid_w = 0;
  bool pooled = false;
  std::int64_t tokens_per_frame = 0;
  std::int64_t total_visual_tokens = 0;

  bool operator==(const TokenLayout&) const = default;
};

// Images unpooled; videos 2x2 pooled with floor on odd grids.
TokenLayout visual_token_count(const MediaRef& media, const GridConfig& grid);
// n views of identical kind and frame count.
TokenLayout make_layout(int n, int f, bool pooled, const GridConfig& grid);

struct PromptTemplate {
  std::string image_placeholder = "<image>";
  std::string video_placeholder = "<video>";
  // {i} is the 1-based view number, {CAMERA_NAME} the camera name.
  std::string view_label_format = "View {i} ({CAMERA_NAME}):";
  std::map<CameraId, std::string> camera_explanations;

  // Parsed from the bundled config/prompt_template.json.
  static const PromptTemplate& defaults();
  static PromptTemplate from_json(const Json& j);
};

struct PlaceholderSlot {
  int index = 0;  // 1-based
  MediaRef media;
  std::string placeholder;
};

struct AssembledPrompt {
  std::string text;
  std::vector<PlaceholderSlot> plan;
  // `text` with every placeholder removed, for text-token estimates.
  std::string text_without_placeholders;
};

// Media block first, one line per media, then the dialogue:
//   View 1 (CAM_FRONT): captured by the front camera. <image>
//   USER: question
//   ASSISTANT: answer
// Throws MissingExplanation.
AssembledPrompt assemble_prompt(const Sample& sample, const PromptTemplate& tpl);

using TextTokenCounter = std::function<std::int64_t(std::string_view)>;

// ceil(whitespace words * 1.3), computed in integers.
std::int64_t estimate_text_tokens(std::string_view text);

struct BudgetReport {
  std::int64_t text_tokens = 0;
  std::int64_t visual_tokens = 0;
  std::int64_t limit = kSequenceLimit;
  bool fits = true;
  std::vector<TokenLayout> per_media;
};

BudgetReport check_budget(const Sample& sample, const PromptTemplate& tpl,
                          const GridConfig& grid,
                          const TextTokenCounter& counter = estimate_text_tokens,
                          std::int64_t limit = kSequenceLimit);

GridConfig grid_config_from_json(const Json& j);
Json budget_report_to_json(const std::string& sample_id, const BudgetReport& r);

}  // namespace dataforge::promptkit

#endif  // DATAFORGE_PROMPTKIT_PROMPT_HPP_
