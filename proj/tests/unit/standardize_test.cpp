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

#include <random>

#include "dataforge/core/errors.hpp"
#include "dataforge/core/object_token.hpp"
#include "dataforge/core/serialize.hpp"
#include "dataforge/ingest/manifest.hpp"
#include "dataforge/standardize/standardize.hpp"
#include "oracles/oracles.hpp"
#include "support/synthetic.hpp"

namespace dataforge::standardize {
namespace {

constexpr const char* kRawToken = "<car>[c6, 139, 343, 1511, 900]";
constexpr const char* kUnifiedToken = "<car>[CAM_BACK_RIGHT, 8.688, 38.111, 94.438, 100.000]";

MediaRef frame(CameraId cam, int w = 1600, int h = 900) {
  MediaRef m;
  m.kind = MediaKind::kVideo;
  m.frame_count = 6;
  m.camera = cam;
  m.width = w;
  m.height = h;
  m.uri = "v.mp4";
  return m;
}

Sample nuinstruct_sample(const std::string& answer) {
  Sample s;
  s.id = "NUINSTRUCT/x";
  s.dataset = DatasetId::kNuInstruct;
  s.media = testing::surround_media(MediaKind::kVideo, 6, 1600, 900);
  s.qa.push_back({"Where is the closest car?", answer, QAStyle::kOpen, Provenance::kOriginal, {}});
  return s;
}

TEST(NormalizeTest, WorkedExample) {
  EXPECT_EQ(normalize_bbox({139, 343, 1511, 900}, 1600, 900).render(),
            "8.688, 38.111, 94.438, 100.000");
}

TEST(NormalizeTest, HandArithmetic) {
  EXPECT_EQ(normalize_bbox({0, 0, 1600, 900}, 1600, 900).render(),
            "0.000, 0.000, 100.000, 100.000");
  EXPECT_EQ(normalize_bbox({400, 225, 800, 450}, 1600, 900).render(),
            "25.000, 25.000, 50.000, 50.000");
  EXPECT_EQ(normalize_point({1088.3, 497.5}, 1600, 900).render(), "68.019, 55.278");
}

TEST(NormalizeTest, MatchesIntegerOracle) {
  std::mt19937_64 gen(4);
  for (int i = 0; i < 20000; ++i) {
    const int w = std::uniform_int_distribution<int>(1, 4000)(gen);
    const int px = std::uniform_int_distribution<int>(0, w)(gen);
    ASSERT_EQ(normalize_coord(px, w).milli(), oracle::normalize_int(px, w)) << px << "/" << w;
  }
}

TEST(NormalizeTest, BoundsErrors) {
  EXPECT_THROW(normalize_bbox({-1, 0, 10, 10}, 100, 100), BoundsError);
  EXPECT_THROW(normalize_bbox({0, 0, 101, 10}, 100, 100), BoundsError);
  EXPECT_THROW(normalize_bbox({20, 0, 10, 10}, 100, 100), BoundsError);
  EXPECT_THROW(normalize_coord(std::nan(""), 100), BoundsError);
  EXPECT_THROW(normalize_coord(1, 0), BoundsError);
}

TEST(NormalizeTest, HalfEvenOnlyDiffersOnTies) {
  // 1 / 8 * 100 = 12.5 -> 12.5 exactly in thousandths is 12500, no tie.
  // 1 px of 200000 is 0.5 thousandths: a tie.
  EXPECT_EQ(normalize_coord(1, 200000, Rounding::kHalfUp).milli(), 1);
  EXPECT_EQ(normalize_coord(1, 200000, Rounding::kHalfEven).milli(), 0);
  EXPECT_EQ(normalize_coord(3, 200000, Rounding::kHalfEven).milli(), 2);
  EXPECT_EQ(normalize_coord(139, 1600, Rounding::kHalfEven).milli(), 8688);
}

TEST(DenormalizeTest, Examples) {
  const BBoxNorm full{NormCoord(0), NormCoord(0), NormCoord(100000), NormCoord(100000)};
  EXPECT_EQ(denormalize_bbox(full, 640, 480), (BBoxPx{0, 0, 640, 480}));
  const auto back = denormalize_bbox(normalize_bbox({139, 343, 1511, 900}, 1600, 900), 1600, 900);
  EXPECT_NEAR(back.x_min, 139, 0.08);
  EXPECT_NEAR(back.y_min, 343, 0.08);
  EXPECT_NEAR(back.x_max, 1511, 0.08);
  EXPECT_NEAR(back.y_max, 900, 0.08);
  const BBoxNorm center{NormCoord(50000), NormCoord(50000), NormCoord(50000), NormCoord(50000)};
  EXPECT_EQ(denormalize_bbox(center, 200, 100), (BBoxPx{100, 50, 100, 50}));
}

TEST(CameraMapTest, Defaults) {
  EXPECT_EQ(map_camera_id("c6", CameraIdMap::nuinstruct_default()), CameraId::kCamBackRight);
  EXPECT_EQ(map_camera_id("c1", CameraIdMap::nuinstruct_default()), CameraId::kCamFront);
  EXPECT_EQ(map_camera_id("CAM_FRONT", CameraIdMap::identity(DatasetId::kDriveLm)),
            CameraId::kCamFront);
  EXPECT_THROW(map_camera_id("c9", CameraIdMap::nuinstruct_default()), UnknownCameraId);
}

TEST(CameraMapTest, RejectsBadMaps) {
  EXPECT_THROW(CameraIdMap(DatasetId::kNuInstruct, {{"c6", CameraId::kCamBack}}), ConfigError);
  EXPECT_THROW(CameraIdMap(DatasetId::kDriveLm,
                           {{"x", CameraId::kCamBack}, {"x", CameraId::kCamFront}}),
               ConfigError);
}

TEST(RewriteTokenTest, NuInstructGolden) {
  EXPECT_EQ(rewrite_object_token(kRawToken, DatasetId::kNuInstruct,
                                 frame(CameraId::kCamBackRight), CameraIdMap::nuinstruct_default()),
            kUnifiedToken);
}

TEST(RewriteTokenTest, DriveLmCenter) {
  MediaRef m = frame(CameraId::kCamBack);
  m.kind = MediaKind::kImage;
  m.frame_count = 1;
  EXPECT_EQ(rewrite_object_token("<c6, CAM_BACK, 1088.3, 497.5>", DatasetId::kDriveLm, m,
                                 CameraIdMap::identity(DatasetId::kDriveLm)),
            "<object>[CAM_BACK, 68.019, 55.278]");
}

TEST(RewriteTokenTest, UnifiedIsUnchangedAndMapMustMatchDataset) {
  EXPECT_EQ(rewrite_object_token(kUnifiedToken, DatasetId::kNuInstruct,
                                 frame(CameraId::kCamBackRight), CameraIdMap::nuinstruct_default()),
            kUnifiedToken);
  EXPECT_THROW(rewrite_object_token(kRawToken, DatasetId::kDriveLm, frame(CameraId::kCamBackRight),
                                    CameraIdMap::nuinstruct_default()),
               ConfigError);
}

TEST(FormatInstructionTest, AppendsOnce) {
  const auto box = default_box_instruction();
  EXPECT_EQ(append_format_instruction("Where is it?", box),
            "Where is it? Objects are referred to as <category>[CAMERA, x_min, y_min, x_max, "
            "y_max] with coordinates from 0 to 100.");
  const std::string once = append_format_instruction("Where is it?", box);
  EXPECT_EQ(append_format_instruction(once, box), once);
  EXPECT_NO_THROW(append_format_instruction("", box));
}

TEST(StandardizeSampleTest, WorkedExample) {
  const Sample out = standardize_sample(nuinstruct_sample(std::string("It is ") + kRawToken + "."));
  EXPECT_EQ(out.qa[0].answer, std::string("It is ") + kUnifiedToken + ".");
  EXPECT_EQ(out.qa[0].question,
            append_format_instruction("Where is the closest car?", default_box_instruction()));
}

TEST(StandardizeSampleTest, NoTokensMeansIdentity) {
  const Sample in = nuinstruct_sample("It is far away.");
  EXPECT_EQ(standardize_sample(in), in);
}

TEST(StandardizeSampleTest, NamesOnlyTheMalformedToken) {
  const Sample in =
      nuinstruct_sample(std::string(kRawToken) + " and <truck>[c9, 1, 2, 3, 4] are close.");
  try {
    standardize_sample(in);
    FAIL();
  } catch (const SampleError& e) {
    EXPECT_EQ(e.sample_id(), "NUINSTRUCT/x");
    ASSERT_EQ(e.failures().size(), 1u);
    EXPECT_EQ(e.failures()[0].token, "<truck>[c9, 1, 2, 3, 4]");
  }
}

TEST(StandardizeSampleTest, OutOfBoundsTokenFails) {
  EXPECT_THROW(standardize_sample(nuinstruct_sample("<car>[c6, 139, 343, 1700, 900]")),
               SampleError);
}

TEST(StandardizeSampleTest, CenterAndCombinedInstructions) {
  Sample s = nuinstruct_sample("<car>[CAM_FRONT, 10, 10]");
  const Sample out = standardize_sample(s);
  EXPECT_EQ(out.qa[0].answer, "<car>[CAM_FRONT, 0.625, 1.111]");
  EXPECT_NE(out.qa[0].question.find("x_center, y_center"), std::string::npos);
  s.qa[0].answer = "<car>[CAM_FRONT, 10, 10] and <bus>[c2, 1, 2, 3, 4]";
  const Sample both = standardize_sample(s);
  EXPECT_NE(both.qa[0].question.find("x_min"), std::string::npos);
  EXPECT_NE(both.qa[0].question.find("x_center"), std::string::npos);
  EXPECT_EQ(standardize_sample(both), both);
}

TEST(StandardizeSampleTest, ClassNamesFromConfig) {
  Sample s;
  s.id = "DRIVELM/x";
  s.dataset = DatasetId::kDriveLm;
  s.media = testing::surround_media(MediaKind::kImage, 1, 1600, 900);
  s.qa.push_back({"q", "<c1, CAM_BACK, 1088.3, 497.5>", QAStyle::kOpen, Provenance::kOriginal, {}});
  const auto cfg = StandardizeConfig::from_json(Json::parse(R"({"class_names":{"DRIVELM":{"c1":"car"}}})"));
  EXPECT_EQ(standardize_sample(s, cfg).qa[0].answer, "<car>[CAM_BACK, 68.019, 55.278]");
}

TEST(StandardizeSampleTest, IdempotentOnMixedManifest) {
  const auto samples = testing::synthetic_mixed(300, 21);
  for (const auto& s : samples) {
    const Sample once = standardize_sample(s);
    EXPECT_EQ(serialize_sample(standardize_sample(once)), serialize_sample(once)) << s.id;
    for (const auto& ref : extract_object_refs(once)) EXPECT_TRUE(is_normalized(ref.geometry));
  }
}

TEST(StandardizeConfigTest, ParsesAndRejects) {
  const auto cfg = StandardizeConfig::from_json(Json::parse(
      R"({"rounding":"half_even","camera_maps":{"NUINSTRUCT":{"c1":"CAM_FRONT","c6":"CAM_BACK_RIGHT"}}})"));
  EXPECT_EQ(cfg.rounding, Rounding::kHalfEven);
  EXPECT_EQ(map_camera_id("c6", cfg.camera_map(DatasetId::kNuInstruct)), CameraId::kCamBackRight);
  EXPECT_THROW(StandardizeConfig::from_json(Json::parse(R"({"rounding":"up"})")), ConfigError);
  EXPECT_THROW(StandardizeConfig::from_json(
                   Json::parse(R"({"camera_maps":{"NUINSTRUCT":{"c6":"CAM_BACK"}}})")),
               ConfigError);
}

}  // namespace
}  // namespace dataforge::standardize
