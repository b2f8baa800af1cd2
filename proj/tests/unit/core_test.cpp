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

#include <atomic>
#include <set>

#include "dataforge/core/errors.hpp"
#include "dataforge/core/keyed_rng.hpp"
#include "dataforge/core/object_token.hpp"
#include "dataforge/core/parallel.hpp"
#include "dataforge/core/serialize.hpp"
#include "dataforge/core/text.hpp"
#include "dataforge/core/validate.hpp"
#include "support/synthetic.hpp"

namespace dataforge {
namespace {

MediaRef image(CameraId cam, int w = 1600, int h = 900) {
  MediaRef m;
  m.camera = cam;
  m.width = w;
  m.height = h;
  m.uri = "x.jpg";
  return m;
}

Sample one_qa_sample(std::string q, std::string a, std::vector<MediaRef> media) {
  Sample s;
  s.id = "GENERIC/t";
  s.media = std::move(media);
  QAPair qa;
  qa.question = std::move(q);
  qa.answer = std::move(a);
  s.qa.push_back(qa);
  return s;
}

bool has_rule(const ValidationReport& r, const std::string& rule) {
  for (const auto& v : r) {
    if (v.rule == rule) return true;
  }
  return false;
}

TEST(NormCoordTest, RendersThreeDecimals) {
  EXPECT_EQ(NormCoord(8688).render(), "8.688");
  EXPECT_EQ(NormCoord(0).render(), "0.000");
  EXPECT_EQ(NormCoord(100000).render(), "100.000");
  EXPECT_EQ(NormCoord(5).render(), "0.005");
  const BBoxNorm b{NormCoord(8688), NormCoord(38111), NormCoord(94438), NormCoord(100000)};
  EXPECT_EQ(b.render(), "8.688, 38.111, 94.438, 100.000");
}

TEST(NormCoordTest, ParseAcceptsOnlyThreeDecimals) {
  EXPECT_EQ(NormCoord::parse("8.688")->milli(), 8688);
  EXPECT_EQ(NormCoord::parse("100.000")->milli(), 100000);
  EXPECT_FALSE(NormCoord::parse("8.68"));
  EXPECT_FALSE(NormCoord::parse("8.6880"));
  EXPECT_FALSE(NormCoord::parse("139"));
  EXPECT_FALSE(NormCoord::parse("-1.000"));
  EXPECT_FALSE(NormCoord::parse(""));
}

TEST(NormCoordTest, RenderParseRoundTrip) {
  for (std::int32_t m = 0; m <= NormCoord::kMaxMilli; m += 37) {
    EXPECT_EQ(NormCoord::parse(NormCoord(m).render())->milli(), m);
  }
}

TEST(TypesTest, NamesRoundTrip) {
  for (auto d : kAllDatasets) EXPECT_EQ(parse_dataset_id(to_string(d)), d);
  for (auto c : kAllCameras) EXPECT_EQ(parse_camera_id(to_string(c)), c);
  EXPECT_EQ(to_string(CameraId::kCamBackRight), "CAM_BACK_RIGHT");
  EXPECT_EQ(to_string(DatasetId::kNuInstruct), "NUINSTRUCT");
  EXPECT_FALSE(parse_camera_id("c6"));
  EXPECT_LT(camera_rank(CameraId::kCamFront), camera_rank(CameraId::kCamBackRight));
  EXPECT_LT(camera_rank(CameraId::kCamBackRight), camera_rank(CameraId::kFrontOnly));
}

TEST(TextTest, Basics) {
  EXPECT_EQ(text::trim("  a b \n"), "a b");
  EXPECT_EQ(text::split_whitespace(" a  b\tc ").size(), 3u);
  EXPECT_EQ(text::join({"a", "b"}, ", "), "a, b");
  EXPECT_EQ(text::normalize_for_match("  Hello   World "), "hello world");
}

TEST(ObjectTokenTest, ParsesRawNuInstructToken) {
  const auto t = parse_object_token("<car>[c6, 139, 343, 1511, 900]");
  EXPECT_EQ(t.form, TokenForm::kBracketed);
  EXPECT_FALSE(t.unified);
  EXPECT_EQ(t.ref.category, "car");
  EXPECT_EQ(t.ref.camera_tag, "c6");
  EXPECT_FALSE(t.ref.camera);
  EXPECT_EQ(std::get<BBoxPx>(t.ref.geometry), (BBoxPx{139, 343, 1511, 900}));
}

TEST(ObjectTokenTest, ParsesUnifiedToken) {
  const auto t = parse_object_token("<car>[CAM_BACK_RIGHT, 8.688, 38.111, 94.438, 100.000]");
  EXPECT_TRUE(t.unified);
  EXPECT_EQ(t.ref.camera, CameraId::kCamBackRight);
  EXPECT_EQ(render_unified(t.ref), "<car>[CAM_BACK_RIGHT, 8.688, 38.111, 94.438, 100.000]");
}

TEST(ObjectTokenTest, ParsesAngleTuple) {
  const auto t = parse_object_token("<c1, CAM_BACK, 1088.3, 497.5>");
  EXPECT_EQ(t.form, TokenForm::kAngleTuple);
  EXPECT_EQ(t.ref.class_id, "c1");
  EXPECT_EQ(t.ref.camera, CameraId::kCamBack);
  EXPECT_EQ(std::get<PointPx>(t.ref.geometry), (PointPx{1088.3, 497.5}));
}

TEST(ObjectTokenTest, ParsesCenterAndCameralessForms) {
  const auto c = parse_object_token("<car>[CAM_FRONT, 10.000, 20.000]");
  EXPECT_TRUE(c.unified);
  EXPECT_TRUE(std::holds_alternative<PointNorm>(c.ref.geometry));
  const auto n = parse_object_token("<car>[10, 20, 30, 40]");
  EXPECT_TRUE(n.ref.camera_tag.empty());
  EXPECT_FALSE(n.unified);
}

TEST(ObjectTokenTest, RejectsMalformedTokens) {
  for (const char* bad : {"<car>[c6, 139, 343]x", "<car>[c6, 139, 343, 1511]", "<car>[c6, a, b]",
                          "<car>[c6, 1, 2, 3, 4, 5]", "<c1, CAM_BACK, 1.0>", "<car>[c6, 1, 2"}) {
    EXPECT_THROW(parse_object_token(bad), TokenGrammarError) << bad;
  }
}

TEST(ObjectTokenTest, CandidatesSkipProseAndPlaceholders) {
  const std::string text =
      "<image> What is <car>[c6, 1, 2, 3, 4]? Objects are referred to as "
      "<category>[CAMERA, x_min, y_min, x_max, y_max] and <c1, CAM_FRONT, 1.5, 2.5>.";
  const auto spans = find_token_candidates(text);
  ASSERT_EQ(spans.size(), 2u);
  EXPECT_EQ(text.substr(spans[0].begin, spans[0].end - spans[0].begin), "<car>[c6, 1, 2, 3, 4]");
  EXPECT_EQ(spans[1].form, TokenForm::kAngleTuple);
}

TEST(ValidateTest, SyntheticSamplesAreValid) {
  for (const auto& s : testing::synthetic_mixed(120, 3)) {
    EXPECT_TRUE(validate_sample(s).empty()) << s.id << format_report(validate_sample(s));
  }
}

TEST(ValidateTest, FlagsStructuralProblems) {
  Sample s = one_qa_sample("", "a", {});
  s.id.clear();
  const auto r = validate_sample(s);
  EXPECT_TRUE(has_rule(r, "id_non_empty"));
  EXPECT_GE(r.size(), 3u);
}

TEST(ValidateTest, FlagsBoxOutsideOwningMedia) {
  const auto r = validate_sample(
      one_qa_sample("q", "<car>[CAM_FRONT, 10, 10, 2000, 20]", {image(CameraId::kCamFront)}));
  EXPECT_TRUE(has_rule(r, "bbox_px_bounds")) << format_report(r);
}

TEST(ValidateTest, FlagsMisorderedAndOutOfRangeTokens) {
  const std::vector<MediaRef> m = {image(CameraId::kCamFront)};
  EXPECT_TRUE(has_rule(validate_sample(one_qa_sample("q", "<car>[CAM_FRONT, 30, 10, 20, 20]", m)),
                       "bbox_px_ordering"));
  EXPECT_TRUE(has_rule(
      validate_sample(one_qa_sample("q", "<car>[CAM_FRONT, 30.000, 10.000, 20.000, 20.000]", m)),
      "bbox_norm_ordering"));
  EXPECT_TRUE(has_rule(
      validate_sample(one_qa_sample("q", "<car>[CAM_FRONT, 10.000, 10.000, 20.000, 120.000]", m)),
      "bbox_norm_range"));
  EXPECT_TRUE(has_rule(validate_sample(one_qa_sample("q", "<car>[CAM_BACK, 1, 1, 2, 2]", m)),
                       "camera_not_in_media"));
}

TEST(ValidateTest, MultipleChoiceRules) {
  Sample s = one_qa_sample("q", "E", {image(CameraId::kFrontOnly)});
  s.qa[0].style = QAStyle::kMultipleChoice;
  s.qa[0].options = {{"A", "x"}, {"A", "y"}};
  EXPECT_GE(validate_sample(s).size(), 2u);
  s.qa[0].options = {{"A", "x"}, {"B", "y"}};
  s.qa[0].answer = "B";
  EXPECT_TRUE(validate_sample(s).empty());
}

TEST(ValidateTest, ManifestFlagsDuplicateIds) {
  auto samples = testing::synthetic_samples(DatasetId::kLingoQa, 2, 1);
  samples[1].id = samples[0].id;
  EXPECT_TRUE(has_rule(validate_manifest(samples), "id_unique"));
}

TEST(SerializeTest, SampleRoundTrip) {
  for (const auto& s : testing::synthetic_mixed(60, 11)) {
    const std::string line = serialize_sample(s);
    EXPECT_EQ(line.find('\n'), std::string::npos);
    EXPECT_EQ(deserialize_sample(line), s);
  }
}

TEST(SerializeTest, FieldErrorNamesPath) {
  try {
    deserialize_sample(R"({"id":"x","dataset":"GENERIC","media":[{"kind":"image"}],"qa":[]})");
    FAIL();
  } catch (const FieldError& e) {
    EXPECT_NE(e.path().find("media[0]"), std::string::npos) << e.path();
  }
}

TEST(SerializeTest, ObjectRefUsesDecimalStrings) {
  const auto ref = parse_object_token("<car>[CAM_FRONT, 1.500, 2.000, 3.250, 4.000]").ref;
  const Json j = object_ref_to_json(ref);
  EXPECT_EQ(j["geometry"]["type"], "bbox_norm");
  EXPECT_EQ(j["geometry"]["values"][0], "1.500");
  EXPECT_EQ(object_ref_from_json(j, "$"), ref);
}

TEST(KeyedRngTest, SameKeySameStream) {
  KeyedRng a(7, DatasetId::kCodaLm, "CODA_LM/1", "mc/0");
  KeyedRng b(7, DatasetId::kCodaLm, "CODA_LM/1", "mc/0");
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(KeyedRngTest, KeyComponentsAllMatter) {
  const std::uint64_t base = KeyedRng(7, DatasetId::kCodaLm, "id", "s").key();
  EXPECT_NE(base, KeyedRng(8, DatasetId::kCodaLm, "id", "s").key());
  EXPECT_NE(base, KeyedRng(7, DatasetId::kMaplm, "id", "s").key());
  EXPECT_NE(base, KeyedRng(7, DatasetId::kCodaLm, "id2", "s").key());
  EXPECT_NE(base, KeyedRng(7, DatasetId::kCodaLm, "id", "t").key());
}

TEST(KeyedRngTest, UniformIndexInRange) {
  KeyedRng r(1, DatasetId::kGeneric, "x", "y");
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto v = r.uniform_index(5);
    ASSERT_LT(v, 5u);
    seen.insert(v);
    const double u = r.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
  EXPECT_EQ(seen.size(), 5u);
}

TEST(ParallelTest, FillsEverySlotAndRethrowsLowestIndex) {
  std::vector<int> out(1000, 0);
  parallel_for(out.size(), 8, [&](std::size_t i) { out[i] = static_cast<int>(i) * 2; });
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], static_cast<int>(i) * 2);
  try {
    parallel_for(100, 4, [](std::size_t i) {
      if (i == 17 || i == 60) throw std::runtime_error(std::to_string(i));
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "17");
  }
}

}  // namespace
}  // namespace dataforge
