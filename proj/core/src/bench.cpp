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

#include <algorithm>
#include <sstream>

#include "docmark/error.hpp"
#include "docmark/evaluation.hpp"

namespace docmark {

const BenchCell* BenchResult::find(std::string_view image, SchemeId scheme,
                                   std::size_t attack_index) const {
  for (const auto& c : cells) {
    if (c.image == image && c.scheme == scheme && c.attack_index == attack_index) return &c;
  }
  return nullptr;
}

BenchResult run_bench(const std::vector<BenchImage>& images,
                      const std::vector<SchemeId>& schemes,
                      const std::vector<AttackSpec>& attacks, const Watermark& wm,
                      const WatermarkKey& key, const BenchOptions& options) {
  if (images.empty() || schemes.empty() || attacks.empty()) {
    throw validation_error("bench needs at least one image, scheme and attack");
  }
  for (const auto& a : attacks) a.validate();

  BenchResult result;
  result.cells.reserve(images.size() * schemes.size() * attacks.size());
  for (const auto& img : images) {
    for (const auto scheme : schemes) {
      std::optional<MarkedImage> marked;
      std::string embed_error;
      try {
        marked = embed(scheme, img.cover, wm, key);
      } catch (const Error& e) {
        embed_error = e.what();
      }
      for (std::size_t ai = 0; ai < attacks.size(); ++ai) {
        BenchCell cell;
        cell.image = img.name;
        cell.scheme = scheme;
        cell.attack = attacks[ai];
        cell.attack_index = ai;
        cell.quality = attacks[ai].quality(options.tiers);
        if (!marked) {
          cell.error = embed_error;
          result.cells.push_back(std::move(cell));
          continue;
        }
        try {
          const auto attacked = apply_attack(marked->image, attacks[ai], options.tiers);
          const Image* cover = is_blind(scheme) ? nullptr : &img.cover;
          auto extracted = extract(scheme, attacked, key, cover, wm.rows(), wm.cols());
          cell.report = make_report(wm, std::move(extracted));
          cell.psnr_db = psnr(img.cover, attacked);
          cell.embed_psnr_db = psnr(img.cover, marked->image);
        } catch (const Error& e) {
          cell.report.reset();
          cell.error = e.what();
        }
        result.cells.push_back(std::move(cell));
      }
    }
  }

  std::stable_sort(result.cells.begin(), result.cells.end(),
                   [](const BenchCell& a, const BenchCell& b) {
                     if (a.scheme != b.scheme) return a.scheme < b.scheme;
                     if (a.image != b.image) return a.image < b.image;
                     return a.attack_index < b.attack_index;
                   });
  return result;
}

std::string bench_csv(const BenchResult& result) {
  std::ostringstream out;
  out << "image,scheme,attack,quality,ber,ncc,psnr_db\n";
  for (const auto& c : result.cells) {
    out << c.image << ',' << scheme_name(c.scheme) << ',' << c.attack.label() << ',';
    if (c.quality) out << *c.quality;
    out << ',';
    if (c.report) {
      out << format_metric(c.report->ber) << ',' << format_metric(c.report->ncc) << ','
          << format_metric(c.psnr_db);
    } else {
      out << "error,error,error";
    }
    out << '\n';
  }
  return out.str();
}

namespace {

std::string row_label(const AttackSpec& a) {
  if (const auto* j = std::get_if<JpegAttack>(&a.kind)) {
    if (j->tier == QualityTier::None) return "No";
    std::string name(tier_name(j->tier));
    name[0] = static_cast<char>(name[0] - 'a' + 'A');
    return name;
  }
  return a.label();
}

}  // namespace

std::string bench_markdown(const BenchResult& result) {
  std::ostringstream out;
  for (const auto scheme : kAllSchemes) {
    std::vector<std::string> images;
    std::vector<std::pair<std::size_t, const AttackSpec*>> rows;
    for (const auto& c : result.cells) {
      if (c.scheme != scheme) continue;
      if (std::find(images.begin(), images.end(), c.image) == images.end()) {
        images.push_back(c.image);
      }
      if (std::none_of(rows.begin(), rows.end(),
                       [&](const auto& r) { return r.first == c.attack_index; })) {
        rows.emplace_back(c.attack_index, &c.attack);
      }
    }
    if (images.empty()) continue;
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    out << "## " << scheme_name(scheme) << "\n\n| Compression quality |";
    for (const auto& name : images) out << ' ' << name << " |";
    out << "\n|---|";
    for (std::size_t i = 0; i < images.size(); ++i) out << "---|";
    out << '\n';
    for (const auto& [index, attack] : rows) {
      out << "| " << row_label(*attack) << " |";
      for (const auto& name : images) {
        const auto* cell = result.find(name, scheme, index);
        if (cell && cell->report) {
          out << " BER = " << format_metric(cell->report->ber)
              << " NCC = " << format_metric(cell->report->ncc) << " |";
        } else {
          out << " error |";
        }
      }
      out << '\n';
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace docmark
