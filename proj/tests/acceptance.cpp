// Copyright 2026 The docmark Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance gate: every criterion runs at its stated tolerance and prints one
// PASS/FAIL line. The exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "docmark/docpipe.hpp"
#include "docmark/evaluation.hpp"
#include "docmark/schemes.hpp"
#include "docmark/transforms.hpp"
#include "docmark/watermark_gen.hpp"
#include "test_support.hpp"

namespace dm = docmark;
namespace fs = std::filesystem;
using dm::SchemeId;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      else detail.str("");
      pass = false;
      detail << what;
    }
  }
};

std::string fmt(double v) { return dm::format_metric(v); }

dm::Watermark payload() { return dm::generate_context_watermark({"acceptance", "corpus", ""}); }

dm::WatermarkKey bench_key() {
  dm::WatermarkKey k;
  k.scramble.permutation_seed = 20261014;
  return k;
}

std::vector<dm::BenchImage> corpus() {
  std::vector<dm::BenchImage> out;
  for (const auto* names : {&dm::testing::detailed_names(), &dm::testing::illustration_names()}) {
    for (const auto& n : *names) out.push_back({n, dm::testing::corpus_image(n)});
  }
  return out;
}

std::vector<dm::AttackSpec> tier_attacks() {
  std::vector<dm::AttackSpec> out;
  for (auto t : dm::kAllTiers) out.push_back({dm::JpegAttack{t}});
  return out;
}

const std::vector<SchemeId> kSchemes(std::begin(dm::kAllSchemes), std::end(dm::kAllSchemes));

bool is_detailed(const std::string& name) {
  const auto& d = dm::testing::detailed_names();
  return std::find(d.begin(), d.end(), name) != d.end();
}

// The full corpus grid is shared by several criteria.
const dm::BenchResult& grid() {
  static const auto result =
      dm::run_bench(corpus(), kSchemes, tier_attacks(), payload(), bench_key());
  return result;
}

double cell_ber(const std::string& image, SchemeId s, std::size_t tier) {
  const auto* c = grid().find(image, s, tier);
  if (!c || !c->report) return std::nan("");
  return c->report->ber;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void no_attack_round_trip(Outcome& o) {
  const auto wm = payload();
  const auto key = bench_key();
  std::size_t checked = 0;
  for (const auto& name : dm::testing::detailed_names()) {
    const auto cover = dm::testing::corpus_image(name);
    for (auto s : {SchemeId::DctInterBlockDiff, SchemeId::HybridDctDwt}) {
      const auto marked = dm::embed(s, cover, wm, key);
      const auto r = dm::make_report(wm, dm::extract(s, marked.image, key,
                                                     dm::is_blind(s) ? nullptr : &cover));
      o.require(r.ber == 0.0 && r.ncc == 1.0, std::string(dm::scheme_name(s)) + "/" + name +
                                                  " BER=" + fmt(r.ber) + " NCC=" + fmt(r.ncc));
      ++checked;
    }
  }
  double worst = 0.0;
  for (const auto& name : dm::testing::illustration_names()) {
    const auto cover = dm::testing::corpus_image(name);
    const auto marked = dm::embed(SchemeId::SpatialDcQim, cover, wm, key);
    const double b = dm::ber(wm, dm::extract(SchemeId::SpatialDcQim, marked.image, key));
    worst = std::max(worst, b);
    o.require(b <= 0.01, "spatial/" + name + " BER=" + fmt(b));
  }
  if (o.pass) {
    o.detail << checked << " frequency-domain pairs exact; spatial on illustrations max BER="
             << fmt(worst);
  }
}

void high_quality_compression(Outcome& o) {
  double worst = 0.0;
  for (auto s : kSchemes) {
    for (const auto& name : dm::testing::detailed_names()) {
      const double b = cell_ber(name, s, 2);
      worst = std::max(worst, b);
      o.require(b <= 0.03, std::string(dm::scheme_name(s)) + "/" + name + " BER=" + fmt(b));
    }
  }
  if (o.pass) o.detail << "max BER at q=75 over 15 cells = " << fmt(worst);
}

void degradation_monotonicity(Outcome& o) {
  std::size_t inversions_total = 0;
  for (auto s : kSchemes) {
    for (const auto& img : corpus()) {
      if (s != SchemeId::SpatialDcQim && !is_detailed(img.name)) continue;
      int inversions = 0;
      bool small = true;
      for (std::size_t t = 1; t < std::size(dm::kAllTiers); ++t) {
        const double drop = cell_ber(img.name, s, t - 1) - cell_ber(img.name, s, t);
        if (drop > 0) {
          ++inversions;
          small = small && drop <= 0.01;
        }
      }
      inversions_total += inversions;
      o.require(inversions <= 1 && small, std::string(dm::scheme_name(s)) + "/" + img.name +
                                              " inversions=" + std::to_string(inversions));
    }
  }
  if (o.pass) o.detail << "20 applicable columns, " << inversions_total << " small inversions";
}

void scheme_ordering(Outcome& o) {
  std::vector<double> spatial, dct, hybrid;
  for (const auto& name : dm::testing::detailed_names()) {
    spatial.push_back(cell_ber(name, SchemeId::SpatialDcQim, 5));
    dct.push_back(cell_ber(name, SchemeId::DctInterBlockDiff, 5));
    hybrid.push_back(cell_ber(name, SchemeId::HybridDctDwt, 5));
  }
  const double mh = median(hybrid), ms = median(spatial), md = median(dct);
  o.require(mh < ms, "median hybrid " + fmt(mh) + " >= spatial " + fmt(ms));
  o.require(ms < md, "median spatial " + fmt(ms) + " >= dct " + fmt(md));
  const double dct_min = *std::min_element(dct.begin(), dct.end());
  o.require(dct_min >= 0.40, "dct-interblock-diff min BER " + fmt(dct_min) + " < 0.40");
  if (o.pass) {
    o.detail << "medians hybrid=" << fmt(mh) << " < spatial=" << fmt(ms) << " < dct=" << fmt(md)
             << "; dct min=" << fmt(dct_min);
  }
}

void imperceptibility(Outcome& o) {
  double lowest = 1e9;
  std::size_t pairs = 0;
  for (const auto& c : grid().cells) {
    if (c.attack_index != 0) continue;
    if (c.scheme != SchemeId::SpatialDcQim && !is_detailed(c.image)) continue;
    ++pairs;
    lowest = std::min(lowest, c.embed_psnr_db);
    o.require(c.report && c.embed_psnr_db >= 35.0,
              std::string(dm::scheme_name(c.scheme)) + "/" + c.image + " PSNR=" +
                  fmt(c.embed_psnr_db));
  }
  o.require(pairs == 20, "expected 20 applicable pairs, saw " + std::to_string(pairs));
  if (o.pass) o.detail << pairs << " pairs, min PSNR=" << fmt(lowest) << " dB";
}

void key_separation(Outcome& o) {
  const auto wm = payload();
  const auto cover = dm::testing::corpus_image("camera");
  const auto key = bench_key();
  for (auto s : kSchemes) {
    const auto marked = dm::embed(s, cover, wm, key);
    double total = 0.0;
    for (std::uint64_t i = 1; i <= 20; ++i) {
      auto wrong = key;
      wrong.scramble.permutation_seed = key.scramble.permutation_seed + i * 7919;
      total += dm::ber(wm, dm::extract(s, marked.image, wrong, dm::is_blind(s) ? nullptr : &cover));
    }
    const double mean = total / 20.0;
    o.require(mean >= 0.45 && mean <= 0.55,
              std::string(dm::scheme_name(s)) + " mean wrong-key BER=" + fmt(mean));
    if (o.pass) o.detail << dm::scheme_name(s) << "=" << fmt(mean) << " ";
  }
}

void metric_oracles(Outcome& o) {
  std::mt19937_64 rng(1000);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto a = dm::testing::random_watermark(rng(), 8, 8);
    const auto b = dm::testing::random_watermark(rng(), 8, 8);
    double diff = 0, ab = 0, aa = 0, bb = 0;
    for (std::size_t k = 0; k < 64; ++k) {
      const double x = a.bit(k), y = b.bit(k);
      diff += x != y;
      ab += x * y;
      aa += x * x;
      bb += y * y;
    }
    worst = std::max(worst, std::abs(dm::ber(a, b) - diff / 64.0));
    if (aa > 0 && bb > 0) worst = std::max(worst, std::abs(dm::ncc(a, b) - ab / std::sqrt(aa * bb)));
  }
  o.require(worst <= 1e-12, "max oracle deviation " + std::to_string(worst));
  dm::Watermark all(64, 64), half(64, 64);
  for (std::size_t i = 0; i < all.size(); ++i) all.set_bit(i, true);
  for (std::size_t i = 0; i < half.size(); i += 2) half.set_bit(i, true);
  const double hand = dm::ncc(all, half);
  o.require(std::abs(hand - 1.0 / std::sqrt(2.0)) <= 1e-6, "subset-overlap NCC=" + fmt(hand));
  if (o.pass) o.detail << "1000 pairs max deviation " << worst << ", subset case " << hand;
}

void transform_suite(Outcome& o) {
  namespace tf = dm::transforms;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-255.0, 255.0);
  double dct_err = 0, haar_err = 0, energy_err = 0;
  for (int i = 0; i < 1000; ++i) {
    tf::Block8 b{};
    dm::RealMatrix m(8, 8);
    for (std::size_t k = 0; k < 64; ++k) b[k] = m.data()[k] = u(rng);
    const auto d = tf::dct2_block(b);
    const auto back = tf::idct2_block(d);
    double e0 = 0, e1 = 0;
    for (std::size_t k = 0; k < 64; ++k) {
      dct_err = std::max(dct_err, std::abs(back[k] - b[k]));
      e0 += b[k] * b[k];
      e1 += d[k] * d[k];
    }
    energy_err = std::max(energy_err, std::abs(e1 - e0) / e0);
    const auto sb = tf::haar_dwt(m);
    const auto hb = tf::haar_idwt(sb);
    for (std::size_t k = 0; k < 64; ++k) haar_err = std::max(haar_err, std::abs(hb.data()[k] - m.data()[k]));
    const double eh = dm::sum_of_squares(sb.ll) + dm::sum_of_squares(sb.lh) +
                      dm::sum_of_squares(sb.hl) + dm::sum_of_squares(sb.hh);
    energy_err = std::max(energy_err, std::abs(eh - e0) / e0);
  }
  o.require(dct_err < 1e-9, "DCT round trip " + std::to_string(dct_err));
  o.require(haar_err < 1e-9, "Haar round trip " + std::to_string(haar_err));
  o.require(energy_err <= 1e-6, "energy " + std::to_string(energy_err));

  // Period by iterating the map on a labelled grid until every label is home.
  const std::size_t n = 64;
  std::vector<dm::Watermark> planes;
  for (std::size_t bit = 0; (std::size_t{1} << bit) < n * n; ++bit) {
    dm::Watermark p(n, n);
    for (std::size_t i = 0; i < n * n; ++i) p.set_bit(i, (i >> bit) & 1);
    planes.push_back(p);
  }
  std::vector<dm::Watermark> cur = planes;
  int period = 0;
  do {
    for (auto& p : cur) p = tf::arnold(p, 1);
    ++period;
  } while (cur != planes && period < 10000);
  o.require(period == tf::arnold_period(n), "iterated period " + std::to_string(period) +
                                                " vs arnold_period " +
                                                std::to_string(tf::arnold_period(n)));
  const auto wm = payload();
  o.require(tf::arnold_inverse(tf::arnold(wm, 7), 7) == wm, "arnold inverse at 7 iterations");

  for (std::size_t count : {std::size_t{1}, std::size_t{4096}}) {
    auto p = tf::keyed_permutation(count, 12345);
    const auto inv = tf::invert_permutation(p);
    bool ok = true;
    for (std::size_t i = 0; i < count; ++i) ok = ok && inv[p[i]] == i;
    std::sort(p.begin(), p.end());
    for (std::size_t i = 0; i < count; ++i) ok = ok && p[i] == i;
    o.require(ok, "keyed_permutation(" + std::to_string(count) + ") not a bijection");
  }
  if (o.pass) {
    o.detail << "DCT err " << dct_err << ", Haar err " << haar_err << ", energy " << energy_err
             << ", Arnold period(64)=" << period;
  }
}

void context_watermark(Outcome& o) {
  const dm::AuthorPayload p{"alice@example.org", "Quarterly report", "Figure 3. Revenue by region"};
  const auto first = dm::generate_context_watermark(p);
  bool same = true;
  for (int i = 0; i < 100; ++i) same = same && dm::generate_context_watermark(p) == first;
  o.require(same, "non-deterministic output");
  std::mt19937_64 rng(9);
  std::size_t lo = 4096, hi = 0;
  for (int i = 0; i < 100; ++i) {
    auto q = p;
    const std::size_t pos = rng() % q.context.size();
    q.context[pos] = static_cast<char>(q.context[pos] ^ (1 + rng() % 31));
    const auto d = dm::bit_errors(first, dm::generate_context_watermark(q));
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  o.require(lo >= 1843 && hi <= 2253,
            "Hamming range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  if (o.pass) o.detail << "100 repeats identical; Hamming distances in [" << lo << ", " << hi << "]";
}

void end_to_end(Outcome& o) {
  dm::testing::TempDir dir;
  fs::create_directories(dir / "doc");
  const std::vector<std::pair<std::string, std::string>> doc{
      {"camera", "Figure 1. A photographer with a tripod"},
      {"motorcycle", "Figure 2. A parked motorcycle"},
      {"ill_house", "Figure 3. Sketch of the office"},
      {"ill_balloons", "Figure 4. Celebration"}};
  std::vector<dm::ContextRecord> contexts;
  for (const auto& [name, ctx] : doc) {
    fs::copy_file(dm::testing::corpus_path(name), dir / "doc" / (name + ".pgm"));
    contexts.push_back({name + ".pgm", ctx});
  }
  dm::ProtectOptions opts;
  opts.base_key = bench_key();
  const auto manifest = dm::protect(dir / "doc", contexts, "alice", "Annual report", dir / "out", opts);
  dm::write_manifest(manifest, dir / "m.json");
  const auto m = dm::read_manifest(dir / "m.json");

  const auto complete = dm::verify(dir / "out", m, dm::Scenario::CompleteCopy);
  o.require(complete.decision == dm::Decision::Confirmed, "complete copy not Confirmed");

  double worst_medium = 0.0;
  for (const auto& [name, ctx] : doc) {
    const auto attacked = dir / ("medium_" + name + ".pgm");
    dm::write_image(dm::jpeg_cycle(dm::read_image(dir / "out" / (name + ".pgm")), 50), attacked);
    const auto v = dm::verify(attacked, m, dm::Scenario::ImagesOnly);
    worst_medium = std::max(worst_medium, v.items.at(0).report.ber);
    o.require(v.decision == dm::Decision::Confirmed, name + " after Medium not Confirmed");
  }

  for (const auto& [name, ctx] : doc) {
    const auto v = dm::verify_text({ctx}, m);
    o.require(v.decision == dm::Decision::Confirmed, "text for " + name + " not Confirmed");
    const auto altered = dm::verify_text({ctx + " (copy)"}, m);
    o.require(altered.decision == dm::Decision::NotFound, "altered text for " + name + " found");
  }

  std::size_t not_found = 0;
  double lo = 1.0, hi = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto path = dir / ("unrelated_" + std::to_string(seed) + ".pgm");
    dm::write_image(dm::testing::random_image(9000 + seed), path);
    const auto v = dm::verify(path, m, dm::Scenario::ImagesOnly);
    not_found += v.decision == dm::Decision::NotFound;
    lo = std::min(lo, v.items.at(0).report.ber);
    hi = std::max(hi, v.items.at(0).report.ber);
  }
  o.require(not_found == 20, std::to_string(not_found) + "/20 unrelated images NotFound");
  if (o.pass) {
    o.detail << "complete Confirmed; Medium worst BER=" << fmt(worst_medium)
             << "; text 4/4 Confirmed, altered 4/4 NotFound; unrelated 20/20 NotFound (best BER in ["
             << fmt(lo) << ", " << fmt(hi) << "])";
  }
}

void bench_determinism(Outcome& o) {
  const auto first = dm::bench_csv(grid());
  const auto second =
      dm::bench_csv(dm::run_bench(corpus(), kSchemes, tier_attacks(), payload(), bench_key()));
  o.require(first == second, "CSV differs between runs");
  o.require(!first.empty(), "empty CSV");
  if (o.pass) o.detail << "two runs byte-identical (" << first.size() << " bytes)";
}

struct Criterion {
  int id;
  const char* name;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "no-attack round trip", no_attack_round_trip},
      {2, "high-quality compression", high_quality_compression},
      {3, "degradation monotonicity", degradation_monotonicity},
      {4, "scheme ordering at minimum tier", scheme_ordering},
      {5, "imperceptibility", imperceptibility},
      {6, "key separation", key_separation},
      {7, "metric oracles", metric_oracles},
      {8, "transform suite", transform_suite},
      {9, "context watermark", context_watermark},
      {10, "end-to-end scenarios", end_to_end},
      {11, "bench determinism", bench_determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail.str("");
      o.detail << "exception: " << e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s [%2d] %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.str().c_str(), secs);
    std::fflush(stdout);
    failures += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
