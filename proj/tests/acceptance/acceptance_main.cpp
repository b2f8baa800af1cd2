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
// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dataforge/augment/expand.hpp"
#include "dataforge/augment/multiple_choice.hpp"
#include "dataforge/cli/commands.hpp"
#include "dataforge/cli/config.hpp"
#include "dataforge/core/object_token.hpp"
#include "dataforge/curriculum/stage_plan.hpp"
#include "dataforge/ingest/bev.hpp"
#include "dataforge/ingest/manifest.hpp"
#include "dataforge/ingest/source_adapters.hpp"
#include "dataforge/metrics/metrics.hpp"
#include "dataforge/promptkit/prompt.hpp"
#include "dataforge/standardize/standardize.hpp"
#include "oracles/oracles.hpp"
#include "support/synthetic.hpp"

namespace {

using namespace dataforge;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && pass) {
      pass = false;
      detail = what;
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1e", v);
  return buf;
}

std::string fmt(double v, int digits = 3) {
  std::ostringstream o;
  o.precision(digits);
  o << std::fixed << v;
  return o.str();
}

unsigned hw_jobs() { return std::max(2u, std::thread::hardware_concurrency()); }

// 1
Outcome standardization_golden() {
  Outcome out;
  const std::string raw = "<car>[c6, 139, 343, 1511, 900]";
  const std::string unified = "<car>[CAM_BACK_RIGHT, 8.688, 38.111, 94.438, 100.000]";
  MediaRef frame{MediaKind::kVideo, CameraId::kCamBackRight, 6, 1600, 900, "v.mp4"};
  const std::string direct = standardize::rewrite_object_token(
      raw, DatasetId::kNuInstruct, frame, standardize::CameraIdMap::nuinstruct_default());
  out.require(direct == unified, "token rewrite gave " + direct);

  const auto samples = ingest::parse_source(
      DatasetId::kNuInstruct,
      ingest::read_file(std::string(DATAFORGE_TEST_DIR) + "/fixtures/sources/nuinstruct.json"));
  bool found = false;
  for (const auto& s : samples) {
    if (s.id != "NUINSTRUCT/ni-0001") continue;
    const std::string line = serialize_sample(standardize::standardize_sample(s));
    found = line.find(unified) != std::string::npos && line.find("c6,") == std::string::npos;
  }
  out.require(found, "fixture sample ni-0001 did not standardize to the unified token");
  out.detail = out.pass ? direct : out.detail;
  return out;
}

// 2
Outcome normalization_round_trip() {
  Outcome out;
  std::mt19937_64 g(20240501);
  std::uniform_int_distribution<int> dim(16, 8192);
  std::uniform_real_distribution<double> u(0, 1);
  double worst_ratio = 0;
  const auto t0 = Clock::now();
  for (int i = 0; i < 10000; ++i) {
    const int w = dim(g), h = dim(g);
    double x0 = u(g) * w, x1 = u(g) * w, y0 = u(g) * h, y1 = u(g) * h;
    if (x0 > x1) std::swap(x0, x1);
    if (y0 > y1) std::swap(y0, y1);
    const BBoxPx b{x0, y0, x1, y1};
    const BBoxPx back = standardize::denormalize_bbox(standardize::normalize_bbox(b, w, h), w, h);
    const double tol = std::max(w, h) * 0.0005;
    const double err = std::max({std::abs(back.x_min - b.x_min), std::abs(back.y_min - b.y_min),
                                 std::abs(back.x_max - b.x_max), std::abs(back.y_max - b.y_max)});
    worst_ratio = std::max(worst_ratio, err / tol);
    if (err > tol) {
      out.require(false, "box " + std::to_string(i) + " error " + fmt(err, 6) + " > " + fmt(tol, 6));
    }
  }
  const double secs = seconds_since(t0);
  out.require(secs < 1.0, "took " + fmt(secs) + " s");
  if (out.pass) out.detail = "worst error/tolerance " + fmt(worst_ratio) + ", " + fmt(secs, 4) + " s";
  return out;
}

// 3
Outcome expansion_ratios() {
  Outcome out;
  const augment::LocalRewriter rw;
  const auto coda = testing::synthetic_samples(DatasetId::kCodaLm, 400, 11);
  const auto maplm = testing::synthetic_samples(DatasetId::kMaplm, 300, 12);
  const auto pc = augment::ExpansionPolicy::default_for(DatasetId::kCodaLm);
  const auto pm = augment::ExpansionPolicy::default_for(DatasetId::kMaplm);
  out.require(pc.factor == 5 && pm.factor == 2, "default factors are not 5 and 2");
  out.require(36896LL * pc.factor == 184480 && 47485LL * pm.factor == 94970,
              "factors do not map the source counts onto the expanded counts");

  const std::string c1 = ingest::render_manifest(augment::expand_dataset(coda, pc, rw, 77, 1).samples);
  const auto cN = augment::expand_dataset(coda, pc, rw, 77, hw_jobs());
  const auto c3 = augment::expand_dataset(coda, pc, rw, 77, 3);
  out.require(cN.samples.size() == 5 * coda.size(), "CODA_LM expanded to " + std::to_string(cN.samples.size()));
  out.require(c1 == ingest::render_manifest(cN.samples) && c1 == ingest::render_manifest(c3.samples),
              "CODA_LM manifests differ across job counts");

  const auto m1 = augment::expand_dataset(maplm, pm, rw, 77, 1);
  const auto mN = augment::expand_dataset(maplm, pm, rw, 77, hw_jobs());
  out.require(m1.samples.size() == 2 * maplm.size(), "MAPLM expanded to " + std::to_string(m1.samples.size()));
  out.require(ingest::render_manifest(m1.samples) == ingest::render_manifest(mN.samples),
              "MAPLM manifests differ across job counts");
  if (out.pass) {
    out.detail = std::to_string(coda.size()) + " -> " + std::to_string(cN.samples.size()) + ", " +
                 std::to_string(maplm.size()) + " -> " + std::to_string(m1.samples.size()) +
                 ", identical at jobs 1/3/" + std::to_string(hw_jobs());
  }
  return out;
}

// 4
Outcome curriculum_totals() {
  using namespace curriculum;
  Outcome out;
  const auto& reg = default_registry();
  const auto s1 = build_stage_plan(1, reg);
  out.require(s1.flags.vision_encoder == Trainability::kFrozen &&
                  s1.flags.projector == Trainability::kTrainable &&
                  s1.flags.llm == Trainability::kFrozen,
              "stage 1 is not projector-only");
  out.require(s1.lr_projector == 1e-3 && s1.batch_size == 512 && s1.total() == 558000,
              "stage 1 lr/batch/total");
  const auto s2 = build_stage_plan(2, reg);
  out.require(s2.mix.size() == 2 && s2.mix[0].count == 3000000 && s2.mix[1].count == 143000,
              "stage 2 mix");
  out.require(s2.lr_vision == 2e-6 && s2.lr_projector == 1e-5 && s2.lr_llm == 1e-5 &&
                  s2.batch_size == 256,
              "stage 2 lr/batch");
  const auto s3 = build_stage_plan(3, reg);
  const std::vector<std::int64_t> want3 = {1500000, 760000, 501000, 145000};
  std::vector<std::int64_t> got3;
  for (const auto& e : s3.mix) got3.push_back(e.count);
  out.require(got3 == want3 && s3.total() == 2906000, "stage 3 mix");
  const auto s4 = build_stage_plan(4, reg);
  out.require(s4.total() == 1515631, "stage 4 total " + std::to_string(s4.total()));
  for (int s = 1; s <= 4; ++s) {
    const auto r = validate_plan_totals(build_stage_plan(s, reg), default_expectation(s));
    out.require(r.ok(), "stage " + std::to_string(s) + " fails validation");
  }
  if (out.pass) {
    out.detail = "558000 / 3143000 / 2906000 / 1515631 (" +
                 fmt(100.0 * (s4.total() - 1500000) / 1500000.0, 2) + "% from 1.5M)";
  }
  return out;
}

// 5
Outcome token_accounting() {
  using namespace promptkit;
  Outcome out;
  const auto& tpl = PromptTemplate::defaults();
  const GridConfig grid;
  auto sample_of = [](std::vector<MediaRef> media) {
    Sample s;
    s.id = "GENERIC/a";
    s.media = std::move(media);
    s.qa.push_back({"What is the ego car doing?", "Turning left.", QAStyle::kOpen,
                    Provenance::kOriginal, {}});
    return s;
  };
  const auto six = sample_of(testing::surround_media(MediaKind::kImage, 1, 1600, 900));
  const auto prompt = assemble_prompt(six, tpl);
  std::size_t images = 0;
  for (auto p = prompt.text.find("<image>"); p != std::string::npos; p = prompt.text.find("<image>", p + 1)) {
    ++images;
  }
  out.require(images == 6, std::to_string(images) + " <image> placeholders");
  const auto r6 = check_budget(six, tpl, grid);
  out.require(r6.visual_tokens == 4374 && r6.fits, "6-view images: " + std::to_string(r6.visual_tokens));
  const auto rv = check_budget(sample_of(testing::surround_media(MediaKind::kVideo, 5, 1600, 900)), tpl, grid);
  out.require(rv.visual_tokens == 5070, "6-view video: " + std::to_string(rv.visual_tokens));
  auto twelve = testing::surround_media(MediaKind::kImage, 1, 1600, 900);
  const auto copy = twelve;
  twelve.insert(twelve.end(), copy.begin(), copy.end());
  const auto r12 = check_budget(sample_of(twelve), tpl, grid);
  out.require(r12.visual_tokens == 8748 && !r12.fits,
              "12-view images: " + std::to_string(r12.visual_tokens) + (r12.fits ? " fits" : ""));
  if (out.pass) out.detail = "6 placeholders, 4374, 5070, 8748 > 8192";
  return out;
}

// 6
Outcome mc_transformation() {
  Outcome out;
  std::vector<std::string> texts;
  for (int i = 0; i < 40; ++i) texts.push_back("Distractor answer " + std::to_string(i) + ".");
  const augment::DistractorPool pool(texts);
  std::array<int, 4> hist{};
  const int n = 10000;
  const auto t0 = Clock::now();
  for (int i = 0; i < n; ++i) {
    const std::string answer = i % 7 == 0 ? texts[i % 40] : "The correct answer " + std::to_string(i % 13) + ".";
    QAPair qa{"Question " + std::to_string(i) + "?", answer, QAStyle::kOpen, Provenance::kOriginal, {}};
    KeyedRng rng(2024, DatasetId::kCodaLm, "CODA_LM/mc-" + std::to_string(i), "mc/0");
    const auto mc = augment::to_multiple_choice(qa, pool, rng);
    int matches = 0;
    for (const auto& o : mc.options) {
      if (o.text == answer) {
        ++matches;
        if (o.label != mc.answer) out.require(false, "label mismatch at " + std::to_string(i));
      }
    }
    out.require(matches == 1 && mc.options.size() == 4,
                "conversion " + std::to_string(i) + " has " + std::to_string(matches) + " correct options");
    if (mc.answer.size() == 1 && mc.answer[0] >= 'A' && mc.answer[0] <= 'D') ++hist[mc.answer[0] - 'A'];
  }
  const double secs = seconds_since(t0);
  const double mean = n / 4.0, sigma = std::sqrt(n * 0.25 * 0.75);
  for (int k = 0; k < 4; ++k) {
    out.require(std::abs(hist[k] - mean) <= 3 * sigma,
                std::string(1, char('A' + k)) + " count " + std::to_string(hist[k]));
  }
  out.require(secs < 5.0, "took " + fmt(secs) + " s");
  if (out.pass) {
    out.detail = "A/B/C/D = " + std::to_string(hist[0]) + "/" + std::to_string(hist[1]) + "/" +
                 std::to_string(hist[2]) + "/" + std::to_string(hist[3]) + " (3 sigma = " +
                 fmt(3 * sigma, 1) + "), " + fmt(secs) + " s";
  }
  return out;
}

// 7
Outcome metrics_oracles() {
  Outcome out;
  static const std::vector<std::string> vocab = {"the", "a", "car", "truck", "is", "on", "left",
                                                 "right", "lane", "stop", "slow", "ahead", "red",
                                                 "green", "light", "turn", "pedestrian", "crossing"};
  std::mt19937_64 g(7);
  auto sentence = [&](int lo, int hi) {
    std::uniform_int_distribution<int> len(lo, hi);
    std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
    std::string s;
    for (int i = 0, n = len(g); i < n; ++i) s += (i ? " " : "") + vocab[pick(g)];
    return s;
  };
  for (int i = 0; i < 1000; ++i) {
    const std::string s = sentence(1, 30);
    const double v = metrics::bleu(s, std::vector<std::string>{s});
    if (v != 1.0) out.require(false, "bleu(x,[x]) = " + fmt(v, 9) + " for '" + s + "'");
  }
  double worst_bleu = 0;
  for (int i = 0; i < 50; ++i) {
    const std::string c = sentence(2, 16);
    std::vector<std::string> refs = {sentence(2, 16)};
    if (i % 2) refs.push_back(sentence(2, 16));
    worst_bleu = std::max(worst_bleu, std::abs(metrics::bleu(c, refs) - oracle::bleu(c, refs)));
  }
  out.require(worst_bleu <= 1e-6, "BLEU differs from reference by " + sci(worst_bleu));

  double worst_ap = 0;
  std::uniform_int_distribution<int> coord(0, 70000), size(5000, 30000);
  for (int f = 0; f < 20; ++f) {
    auto rand_box = [&] {
      const int x = coord(g), y = coord(g);
      return BBoxNorm{NormCoord(x), NormCoord(y), NormCoord(std::min(100000, x + size(g))),
                      NormCoord(std::min(100000, y + size(g)))};
    };
    std::vector<BBoxNorm> gts;
    for (int i = 0, n = 1 + f % 4; i < n; ++i) gts.push_back(rand_box());
    std::vector<metrics::ScoredBox> dets;
    std::vector<std::pair<oracle::Box, double>> od;
    std::vector<oracle::Box> og;
    for (const auto& b : gts) og.push_back({double(b.x_min.milli()), double(b.y_min.milli()),
                                            double(b.x_max.milli()), double(b.y_max.milli())});
    for (int i = 0, n = 2 + f % 5; i < n; ++i) {
      BBoxNorm b = (i % 2 == 0) ? gts[i % gts.size()] : rand_box();
      if (i % 3 == 0) b.x_max = NormCoord(std::min(100000, b.x_max.milli() + 3000));
      const double conf = 0.95 - 0.07 * ((i * 5 + f) % 11);
      dets.push_back({b, conf});
      od.push_back({{double(b.x_min.milli()), double(b.y_min.milli()), double(b.x_max.milli()),
                     double(b.y_max.milli())},
                    conf});
    }
    const double ap = *metrics::average_precision(dets, gts);
    worst_ap = std::max(worst_ap, std::abs(ap - oracle::brute_force_ap(od, og)));
  }
  out.require(worst_ap <= 1e-6, "AP differs from brute force by " + sci(worst_ap));

  const std::vector<metrics::NumericPair> same = {{3, 3}, {4, 4}};
  const std::vector<metrics::NumericPair> shifted = {{2, 1}, {6, 5}};
  const std::vector<metrics::NumericPair> mixed = {{1, 1}, {2, 4}, {8, 4}};
  out.require(metrics::mae(same) == 0.0 && metrics::mae(shifted) == 1.0 && metrics::mae(mixed) == 2.0,
              "MAE trivial cases");
  const std::vector<metrics::TextPair> all = {{"A", "A"}, {"B", "B"}};
  const std::vector<metrics::TextPair> none = {{"A", "B"}};
  const std::vector<metrics::TextPair> three = {{"A", "A"}, {"B", "B"}, {"C", "C"}, {"D", "A"}};
  out.require(metrics::accuracy(all) == 1.0 && metrics::accuracy(none) == 0.0 &&
                  metrics::accuracy(three) == 0.75,
              "accuracy trivial cases");
  if (out.pass) {
    out.detail = "max |BLEU - ref| = " + sci(worst_bleu) + ", max |AP - oracle| = " + sci(worst_ap);
  }
  return out;
}

// 8
Outcome bev_rasterization() {
  Outcome out;
  std::mt19937_64 g(8);
  std::uniform_int_distribution<int> count(0, 200), mode(0, 1);
  std::uniform_real_distribution<double> coord(-9, 9), inten(-0.1, 1.1);
  std::uniform_int_distribution<int> cells(0, 2);
  const double cell_sizes[] = {0.5, 0.75, 1.0};
  for (int trial = 0; trial < 1000; ++trial) {
    const double cell = cell_sizes[cells(g)];
    const bool max_i = mode(g) == 1;
    std::vector<ingest::LidarPoint> pts;
    std::vector<std::array<double, 4>> raw;
    for (int i = 0, n = count(g); i < n; ++i) {
      ingest::LidarPoint p{coord(g), coord(g), coord(g), inten(g)};
      pts.push_back(p);
      raw.push_back({p.x, p.y, p.z, p.intensity});
    }
    ingest::BevGridConfig cfg;
    cfg.x_range = cfg.y_range = 8;
    cfg.cell_size = cell;
    cfg.mode = max_i ? ingest::BevMode::kMaxIntensity : ingest::BevMode::kOccupancy;
    const auto r = ingest::project_lidar_bev(pts, cfg);
    int rows = 0, cols = 0;
    const auto expect = oracle::brute_force_bev(raw, 8, cell, max_i, rows, cols);
    if (r.rows != rows || r.cols != cols || r.cells != expect) {
      out.require(false, "cloud " + std::to_string(trial) + " differs from the brute-force raster");
      break;
    }
  }
  ingest::BevGridConfig cfg;
  const ingest::LidarPoint origin{0, 0, 0, 1};
  const auto r = ingest::project_lidar_bev(std::span<const ingest::LidarPoint>(&origin, 1), cfg);
  int lit = 0;
  for (float v : r.cells) lit += v > 0;
  out.require(lit == 1 && r.at(r.rows / 2, r.cols / 2) > 0, "origin lit " + std::to_string(lit) + " cells");
  if (out.pass) {
    out.detail = "1000 clouds cell-exact; origin -> (" + std::to_string(r.rows / 2) + ", " +
                 std::to_string(r.cols / 2) + ") of " + std::to_string(r.rows) + "x" + std::to_string(r.cols);
  }
  return out;
}

// 9
Outcome idempotence() {
  Outcome out;
  const auto raw = testing::synthetic_mixed(1000, 9);
  std::vector<Sample> once, twice;
  for (const auto& s : raw) once.push_back(standardize::standardize_sample(s));
  for (const auto& s : once) twice.push_back(standardize::standardize_sample(s));
  const std::string a = ingest::render_manifest(once), b = ingest::render_manifest(twice);
  out.require(a == b, "second pass changed the manifest");
  out.require(a != ingest::render_manifest(raw), "first pass changed nothing");
  if (out.pass) out.detail = std::to_string(raw.size()) + " samples, " + std::to_string(a.size()) + " bytes identical";
  return out;
}

// 10
Outcome end_to_end() {
  namespace fs = std::filesystem;
  Outcome out;
  const fs::path dir = fs::temp_directory_path() /
                       ("dataforge_acceptance_" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  cli::PipelineConfig cfg;
  cfg.seed = 10;
  cfg.offline = true;
  cfg.jobs = hw_jobs();
  cfg.output_dir = dir;
  const std::size_t total = 10000;
  const std::array<DatasetId, 6> sets = {DatasetId::kCodaLm,  DatasetId::kMaplm,
                                         DatasetId::kDriveLm, DatasetId::kLingoQa,
                                         DatasetId::kOmniDrive, DatasetId::kNuInstruct};
  for (std::size_t k = 0; k < sets.size(); ++k) {
    const std::size_t n = total / 6 + (k < total % 6 ? 1 : 0);
    const fs::path p = dir / (std::string(to_string(sets[k])) + ".json");
    ingest::write_file(p, testing::synthetic_source(sets[k], n, 100 + k));
    cfg.sources.push_back({sets[k], p});
  }

  const auto t0 = Clock::now();
  ingest::write_manifest(cli::run_ingest(cfg), dir / "ingested.jsonl");
  const auto ingested = ingest::read_manifest(dir / "ingested.jsonl");
  ingest::write_manifest(cli::run_standardize(ingested, cfg), dir / "standardized.jsonl");
  auto augmented = cli::run_augment(ingest::read_manifest(dir / "standardized.jsonl"), cfg);
  ingest::write_manifest(std::move(augmented.samples), dir / "augmented.jsonl");
  const auto final_samples = ingest::read_manifest(dir / "augmented.jsonl");
  const auto prompts = cli::run_build_prompts(final_samples, cfg);
  const Json stats = cli::run_stats(final_samples);
  const double secs = seconds_since(t0);
  fs::remove_all(dir);

  out.require(ingested.size() == total, "ingested " + std::to_string(ingested.size()));
  out.require(prompts.prompts.size() == final_samples.size(), "prompt count mismatch");
  out.require(stats["samples"].get<std::size_t>() == final_samples.size(), "stats sample count");
  out.require(secs < 30.0, "took " + fmt(secs) + " s");
  if (out.pass) {
    out.detail = std::to_string(total) + " -> " + std::to_string(final_samples.size()) +
                 " samples in " + fmt(secs, 2) + " s (jobs " + std::to_string(cfg.jobs) + ")";
  }
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"standardization golden", standardization_golden},
      {"normalization round trip", normalization_round_trip},
      {"expansion ratios", expansion_ratios},
      {"curriculum totals", curriculum_totals},
      {"prompt token accounting", token_accounting},
      {"multiple-choice transformation", mc_transformation},
      {"metric oracles", metrics_oracles},
      {"BEV rasterization", bev_rasterization},
      {"standardize idempotence", idempotence},
      {"end-to-end throughput", end_to_end},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s  %2zu  %-32s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
