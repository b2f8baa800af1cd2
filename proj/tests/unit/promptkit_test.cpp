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
#include <gtest/gtest.h>

#include <cstdlib>
#include <set>

#include "dataforge/core/errors.hpp"
#include "dataforge/ingest/manifest.hpp"
#include "dataforge/promptkit/prompt.hpp"
#include "support/synthetic.hpp"

namespace dataforge::promptkit {
namespace {

std::size_t count_of(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

Sample with_media(std::vector<MediaRef> media, std::string question = "What should the ego car do?",
                  std::string answer = "Keep the lane.") {
  Sample s;
  s.id = "GENERIC/p";
  s.media = std::move(media);
  s.qa.push_back({std::move(question), std::move(answer), QAStyle::kOpen, Provenance::kOriginal, {}});
  return s;
}

MediaRef front_image() { return {MediaKind::kImage, CameraId::kFrontOnly, 1, 1600, 900, "f.jpg"}; }

TEST(TokenLayoutTest, Counts) {
  const GridConfig g;
  EXPECT_EQ(visual_token_count(front_image(), g).total_visual_tokens, 729);
  MediaRef video{MediaKind::kVideo, CameraId::kCamFront, 5, 1600, 900, "v.mp4"};
  const auto v = visual_token_count(video, g);
  EXPECT_TRUE(v.pooled);
  EXPECT_EQ(v.tokens_per_frame, 169);
  EXPECT_EQ(v.total_visual_tokens, 845);
  EXPECT_EQ(make_layout(6, 5, true, g).total_visual_tokens, 5070);
  EXPECT_EQ(make_layout(6, 1, false, g).total_visual_tokens, 4374);
  EXPECT_EQ(make_layout(12, 1, false, g).total_visual_tokens, 8748);
}

TEST(TokenLayoutTest, QuarterLawAndMonotone) {
  for (int h = 2; h <= 40; h += 2) {
    for (int w = 2; w <= 40; w += 2) {
      const GridConfig g{h, w, std::nullopt, std::nullopt};
      EXPECT_EQ(make_layout(1, 1, true, g).tokens_per_frame * 4,
                make_layout(1, 1, false, g).tokens_per_frame);
    }
  }
  const GridConfig g;
  for (bool pooled : {false, true}) {
    for (int n = 1; n < 8; ++n) {
      for (int f = 1; f < 8; ++f) {
        EXPECT_LT(make_layout(n, f, pooled, g).total_visual_tokens,
                  make_layout(n + 1, f, pooled, g).total_visual_tokens);
        EXPECT_LT(make_layout(n, f, pooled, g).total_visual_tokens,
                  make_layout(n, f + 1, pooled, g).total_visual_tokens);
      }
    }
  }
}

TEST(AssembleTest, SixViewImages) {
  const auto s = with_media(testing::surround_media(MediaKind::kImage, 1, 1600, 900));
  const auto p = assemble_prompt(s, PromptTemplate::defaults());
  EXPECT_EQ(count_of(p.text, "<image>"), 6u);
  EXPECT_EQ(count_of(p.text, "<video>"), 0u);
  std::set<std::string> explanations;
  for (int i = 1; i <= 6; ++i) {
    const auto label = "View " + std::to_string(i) + " (" +
                       std::string(to_string(kSurroundCameras[i - 1])) + "):";
    EXPECT_NE(p.text.find(label), std::string::npos) << label;
    explanations.insert(PromptTemplate::defaults().camera_explanations.at(kSurroundCameras[i - 1]));
  }
  EXPECT_EQ(explanations.size(), 6u);
  ASSERT_EQ(p.plan.size(), 6u);
  for (int i = 0; i < 6; ++i) {
    EXPECT_EQ(p.plan[i].index, i + 1);
    EXPECT_EQ(p.plan[i].media, s.media[i]);
    EXPECT_EQ(p.plan[i].placeholder, "<image>");
  }
  // Question after the media block.
  EXPECT_GT(p.text.find("USER: What should"), p.text.rfind("<image>"));
  EXPECT_EQ(p.text_without_placeholders.find("<image>"), std::string::npos);
}

TEST(AssembleTest, VideoAndLidar) {
  const auto video =
      with_media({{MediaKind::kVideo, CameraId::kFrontOnly, 8, 1920, 1080, "clip.mp4"}});
  const auto pv = assemble_prompt(video, PromptTemplate::defaults());
  EXPECT_EQ(count_of(pv.text, "<video>"), 1u);
  EXPECT_EQ(count_of(pv.text, "<image>"), 0u);

  const auto lidar = with_media({{MediaKind::kImage, CameraId::kLidarBev, 1, 400, 400, "bev.pgm"}});
  const auto pl = assemble_prompt(lidar, PromptTemplate::defaults());
  EXPECT_NE(pl.text.find("LiDAR"), std::string::npos);
}

TEST(AssembleTest, MissingExplanationAndPurity) {
  PromptTemplate tpl = PromptTemplate::defaults();
  tpl.camera_explanations.erase(CameraId::kCamBack);
  const auto s = with_media(testing::surround_media(MediaKind::kImage, 1, 1600, 900));
  EXPECT_THROW(assemble_prompt(s, tpl), MissingExplanation);
  EXPECT_EQ(assemble_prompt(s, PromptTemplate::defaults()).text,
            assemble_prompt(s, PromptTemplate::defaults()).text);
}

TEST(AssembleTest, PlaceholderCountMatchesMedia) {
  for (const auto& s : testing::synthetic_mixed(120, 5)) {
    const auto p = assemble_prompt(s, PromptTemplate::defaults());
    std::size_t images = 0, videos = 0;
    for (const auto& m : s.media) (m.kind == MediaKind::kImage ? images : videos)++;
    EXPECT_EQ(count_of(p.text, "<image>"), images) << s.id;
    EXPECT_EQ(count_of(p.text, "<video>"), videos) << s.id;
  }
}

TEST(TemplateTest, FromJson) {
  EXPECT_THROW(PromptTemplate::from_json(Json::parse(R"({"camera_explanations":{"CAM_TOP":"x"}})")),
               ConfigError);
  EXPECT_THROW(PromptTemplate::from_json(
                   Json::parse(R"({"image_placeholder":"<m>","video_placeholder":"<m>"})")),
               ConfigError);
  const auto tpl = PromptTemplate::from_json(Json::parse(
      R"({"view_label_format":"[{i}|{CAMERA_NAME}]","camera_explanations":{"FRONT_ONLY":"front."}})"));
  const auto p = assemble_prompt(with_media({front_image()}, "Q?", "A."), tpl);
  EXPECT_EQ(p.text, "[1|FRONT_ONLY] front. <image>\nUSER: Q?\nASSISTANT: A.\n");
}

TEST(BudgetTest, Examples) {
  const GridConfig g;
  const auto& tpl = PromptTemplate::defaults();
  const auto one = check_budget(with_media({front_image()}, "", ""), tpl, g);
  EXPECT_EQ(one.visual_tokens, 729);
  EXPECT_TRUE(one.fits);

  const auto six = with_media(testing::surround_media(MediaKind::kImage, 1, 1600, 900));
  const auto r = check_budget(six, tpl, g, [](std::string_view) { return std::int64_t{500}; });
  EXPECT_EQ(r.visual_tokens, 4374);
  EXPECT_EQ(r.text_tokens, 500);
  EXPECT_TRUE(r.fits);
  EXPECT_EQ(r.per_media.size(), 6u);

  auto twelve_media = testing::surround_media(MediaKind::kImage, 1, 1600, 900);
  const auto more = twelve_media;
  twelve_media.insert(twelve_media.end(), more.begin(), more.end());
  const auto r12 = check_budget(with_media(twelve_media, "", ""), tpl, g,
                                [](std::string_view) { return std::int64_t{0}; });
  EXPECT_EQ(r12.visual_tokens, 8748);
  EXPECT_FALSE(r12.fits);

  const auto vids = with_media(testing::surround_media(MediaKind::kVideo, 5, 1600, 900));
  const auto rv = check_budget(vids, tpl, g);
  EXPECT_EQ(rv.visual_tokens, 5070);
  EXPECT_TRUE(rv.fits);
  EXPECT_EQ(rv.fits, rv.text_tokens + rv.visual_tokens <= rv.limit);
}

TEST(BudgetTest, TextEstimate) {
  EXPECT_EQ(estimate_text_tokens(""), 0);
  EXPECT_EQ(estimate_text_tokens("one"), 2);
  EXPECT_EQ(estimate_text_tokens("a b c d e f g h i j"), 13);
  EXPECT_EQ(estimate_text_tokens("a  b\tc\n"), 4);
}

TEST(GoldenTest, Prompts) {
  const std::string dir = std::string(DATAFORGE_TEST_DIR) + "/golden/prompts/";
  Sample mc = with_media(testing::surround_media(MediaKind::kImage, 1, 1600, 900),
                         "Which object is closest to the ego car?", "B");
  mc.qa[0].style = QAStyle::kMultipleChoice;
  mc.qa[0].options = {{"A", "A parked truck."}, {"B", "A pedestrian."}, {"C", "A cyclist."},
                      {"D", "A traffic cone."}};
  const Sample video = with_media(testing::surround_media(MediaKind::kVideo, 5, 1600, 900),
                                  "Detect all car in the last frame of the multi-view videos.",
                                  "Detected car: [CAM_FRONT, 10.000, 20.000, 30.000, 40.000]");
  const Sample lidar = with_media(
      {front_image(), {MediaKind::kImage, CameraId::kLidarBev, 1, 400, 400, "bev.pgm"}},
      "Is the lane ahead clear?", "Yes.");
  const std::vector<std::pair<std::string, Sample>> cases = {
      {"multi_view_choice.txt", mc}, {"multi_view_video.txt", video}, {"front_lidar.txt", lidar}};
  for (const auto& [name, s] : cases) {
    const std::string text = assemble_prompt(s, PromptTemplate::defaults()).text;
    if (std::getenv("DATAFORGE_UPDATE_GOLDEN")) ingest::write_file(dir + name, text);
    EXPECT_EQ(text, ingest::read_file(dir + name)) << name;
  }
}

TEST(GridTest, FromJson) {
  const auto g = grid_config_from_json(Json::parse(R"({"grid_h":24,"grid_w":24,"feature_dim":1152})"));
  EXPECT_EQ(g.grid_h, 24);
  EXPECT_EQ(g.feature_dim, 1152);
  EXPECT_FALSE(g.embed_dim.has_value());
  EXPECT_THROW(grid_config_from_json(Json::parse(R"({"grid_h":"x"})")), ConfigError);
}

}  // namespace
}  // namespace dataforge::promptkit
