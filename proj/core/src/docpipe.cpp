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

#include "docmark/docpipe.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iterator>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "docmark/error.hpp"
#include "docmark/transforms.hpp"

namespace docmark {

using nlohmann::json;

std::string_view image_kind_name(ImageKind kind) {
  return kind == ImageKind::HighlyDetailed ? "highly-detailed" : "illustration";
}

ImageKind parse_image_kind(std::string_view name) {
  if (name == "highly-detailed") return ImageKind::HighlyDetailed;
  if (name == "illustration") return ImageKind::Illustration;
  throw validation_error("unknown image class '" + std::string(name) + "'");
}

double detail_score(const Image& img) {
  double horizontal = 0.0, vertical = 0.0;
  std::size_t nh = 0, nv = 0;
  for (std::size_t r = 0; r < img.height(); ++r) {
    for (std::size_t c = 0; c < img.width(); ++c) {
      if (c + 1 < img.width()) {
        horizontal += std::abs(int(img(r, c + 1)) - int(img(r, c)));
        ++nh;
      }
      if (r + 1 < img.height()) {
        vertical += std::abs(int(img(r + 1, c)) - int(img(r, c)));
        ++nv;
      }
    }
  }
  return (nh ? horizontal / double(nh) : 0.0) + (nv ? vertical / double(nv) : 0.0);
}

ImageClass classify_image(const Image& img, double threshold) {
  ImageClass cls;
  cls.detail_score = detail_score(img);
  cls.kind = cls.detail_score >= threshold ? ImageKind::HighlyDetailed : ImageKind::Illustration;
  return cls;
}

SchemeId select_scheme(const ImageClass& cls, bool non_blind_allowed) {
  if (cls.kind == ImageKind::Illustration) return SchemeId::SpatialDcQim;
  return non_blind_allowed ? SchemeId::HybridDctDwt : SchemeId::DctInterBlockDiff;
}

// --- context file --------------------------------------------------------------

std::vector<ContextRecord> parse_context_file(std::string_view text) {
  std::vector<ContextRecord> out;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    const auto tab = line.find('\t');
    ContextRecord rec;
    rec.image_path = std::string(line.substr(0, tab));
    if (tab != std::string_view::npos) rec.context = std::string(line.substr(tab + 1));
    if (rec.image_path.empty()) {
      throw validation_error("context file line " + std::to_string(line_no) + ": empty image path");
    }
    if (!seen.insert(rec.image_path).second) {
      throw validation_error("context file line " + std::to_string(line_no) +
                             ": duplicate image path '" + rec.image_path + "'");
    }
    out.push_back(std::move(rec));
  }
  return out;
}

namespace {

std::string slurp_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

std::vector<ContextRecord> read_context_file(const std::filesystem::path& path) {
  return parse_context_file(slurp_text(path));
}

// --- manifest ------------------------------------------------------------------

AuthorPayload ProtectionManifest::payload_for(const ManifestEntry& entry) const {
  return AuthorPayload{author_id, doc_title, entry.context};
}

namespace {

json key_to_json(const WatermarkKey& k) {
  return json{{"alpha", k.alpha},
              {"arnold_iterations", k.scramble.arnold_iterations},
              {"delta", k.delta},
              {"permutation_seed", k.scramble.permutation_seed},
              {"t_interval", k.t_interval}};
}

WatermarkKey key_from_json(const json& j) {
  WatermarkKey k;
  k.alpha = j.at("alpha").get<double>();
  k.scramble.arnold_iterations = j.at("arnold_iterations").get<int>();
  k.delta = j.at("delta").get<double>();
  k.scramble.permutation_seed = j.at("permutation_seed").get<std::uint64_t>();
  k.t_interval = j.at("t_interval").get<double>();
  k.validate();
  return k;
}

json psnr_to_json(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

double psnr_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    throw validation_error("psnr_db must be a number or \"inf\"");
  }
  return j.get<double>();
}

}  // namespace

std::string manifest_to_json(const ProtectionManifest& m) {
  json entries = json::array();
  for (const auto& e : m.entries) {
    json je{{"context", e.context},
            {"context_bound", e.context_bound},
            {"image_class",
             {{"detail_score", e.image_class.detail_score},
              {"kind", image_kind_name(e.image_class.kind)}}},
            {"image_path", e.image_path},
            {"key_material", key_to_json(e.key)},
            {"marked_path", e.marked_path},
            {"psnr_db", psnr_to_json(e.psnr_db)},
            {"scheme", scheme_name(e.scheme)},
            {"wm_digest", e.wm_digest.hex()}};
    if (!e.cover_path.empty()) je["cover_path"] = e.cover_path;
    entries.push_back(std::move(je));
  }
  json j{{"author_id", m.author_id},  {"created_at", m.created_at}, {"doc_title", m.doc_title},
         {"entries", std::move(entries)}, {"hash_name", m.hash_name}, {"version", m.version}};
  return j.dump(2) + "\n";
}

ProtectionManifest manifest_from_json(std::string_view text) {
  try {
    const auto j = json::parse(text);
    ProtectionManifest m;
    m.version = j.at("version").get<int>();
    if (m.version != 1) {
      throw validation_error("unsupported manifest version " + std::to_string(m.version));
    }
    m.author_id = j.at("author_id").get<std::string>();
    m.doc_title = j.at("doc_title").get<std::string>();
    m.hash_name = j.at("hash_name").get<std::string>();
    m.created_at = j.at("created_at").get<std::string>();
    for (const auto& je : j.at("entries")) {
      ManifestEntry e;
      e.context = je.at("context").get<std::string>();
      e.context_bound = je.at("context_bound").get<bool>();
      e.image_class.detail_score = je.at("image_class").at("detail_score").get<double>();
      e.image_class.kind = parse_image_kind(je.at("image_class").at("kind").get<std::string>());
      e.image_path = je.at("image_path").get<std::string>();
      e.key = key_from_json(je.at("key_material"));
      e.marked_path = je.at("marked_path").get<std::string>();
      e.psnr_db = psnr_from_json(je.at("psnr_db"));
      e.scheme = parse_scheme(je.at("scheme").get<std::string>());
      e.wm_digest = WatermarkDigest::from_hex(je.at("wm_digest").get<std::string>());
      if (je.contains("cover_path")) e.cover_path = je.at("cover_path").get<std::string>();
      if (!is_blind(e.scheme) && e.cover_path.empty()) {
        throw validation_error("non-blind entry '" + e.image_path + "' lacks cover_path");
      }
      m.entries.push_back(std::move(e));
    }
    return m;
  } catch (const json::exception& e) {
    throw validation_error(std::string("manifest schema: ") + e.what());
  }
}

ProtectionManifest read_manifest(const std::filesystem::path& path) {
  return manifest_from_json(slurp_text(path));
}

void write_manifest(const ProtectionManifest& m, const std::filesystem::path& path) {
  const auto text = manifest_to_json(m);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot write '" + tmp.string() + "'");
    out << text;
    if (!out) throw io_error("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw io_error("cannot move manifest into place: " + ec.message());
}

void check_manifest(const ProtectionManifest& m) {
  if (m.version != 1) throw validation_error("unsupported manifest version");
  if (m.hash_name != kHashName) {
    throw validation_error("manifest hash '" + m.hash_name + "' is not supported");
  }
  for (const auto& e : m.entries) {
    const auto wm = generate_context_watermark(m.payload_for(e));
    if (watermark_digest(wm) != e.wm_digest) {
      throw validation_error("digest mismatch for entry '" + e.image_path +
                             "': manifest does not match its author/title/context");
    }
  }
}

// --- protect -------------------------------------------------------------------

std::string rfc3339_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::uint64_t entry_seed(std::uint64_t base_seed, std::size_t index) {
  transforms::SplitMix64 rng(base_seed ^ (0xD1B54A32D192ED03ULL * (index + 1)));
  return rng.next();
}

ProtectionManifest protect(const std::filesystem::path& image_dir,
                           const std::vector<ContextRecord>& contexts,
                           const std::string& author_id, const std::string& doc_title,
                           const std::filesystem::path& out_dir, const ProtectOptions& options) {
  if (author_id.empty()) throw validation_error("author_id must not be empty");
  options.base_key.validate();
  {
    std::set<std::string> seen;
    for (const auto& c : contexts) {
      if (!seen.insert(c.image_path).second) {
        throw validation_error("duplicate image path '" + c.image_path + "'");
      }
    }
  }

  ProtectionManifest m;
  m.author_id = author_id;
  m.doc_title = doc_title;
  m.created_at = options.created_at.empty() ? rfc3339_now() : options.created_at;

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw io_error("cannot create '" + out_dir.string() + "': " + ec.message());

  for (std::size_t i = 0; i < contexts.size(); ++i) {
    const auto& rec = contexts[i];
    const auto cover_path = image_dir / rec.image_path;
    if (!std::filesystem::exists(cover_path)) {
      throw io_error("missing image '" + cover_path.string() + "'");
    }
    const auto cover = read_image(cover_path);

    ManifestEntry e;
    e.image_path = rec.image_path;
    e.context = rec.context;
    e.context_bound = !rec.context.empty();
    e.image_class = classify_image(cover, options.detail_threshold);
    e.scheme = select_scheme(e.image_class, options.non_blind_allowed);
    e.key = options.base_key;
    e.key.scramble.permutation_seed = entry_seed(options.base_key.scramble.permutation_seed, i);

    const auto wm = generate_context_watermark(m.payload_for(e));
    const auto marked = embed(e.scheme, cover, wm, e.key);

    const auto marked_path = out_dir / rec.image_path;
    if (marked_path.has_parent_path()) {
      std::filesystem::create_directories(marked_path.parent_path(), ec);
    }
    write_image(marked.image, marked_path);

    e.wm_digest = marked.wm_digest;
    e.psnr_db = psnr(cover, marked.image);
    e.marked_path = std::filesystem::absolute(marked_path).lexically_normal().string();
    if (!is_blind(e.scheme)) {
      e.cover_path = std::filesystem::absolute(cover_path).lexically_normal().string();
    }
    m.entries.push_back(std::move(e));
  }
  return m;
}

// --- verify --------------------------------------------------------------------

std::string_view scenario_name(Scenario s) {
  switch (s) {
    case Scenario::CompleteCopy: return "complete";
    case Scenario::ImagesOnly: return "images";
    case Scenario::TextOnly: return "text";
  }
  return "complete";
}

Scenario parse_scenario(std::string_view name) {
  if (name == "complete") return Scenario::CompleteCopy;
  if (name == "images") return Scenario::ImagesOnly;
  if (name == "text") return Scenario::TextOnly;
  throw validation_error("unknown scenario '" + std::string(name) + "'");
}

std::string_view decision_name(Decision d) {
  switch (d) {
    case Decision::Confirmed: return "Confirmed";
    case Decision::Inconclusive: return "Inconclusive";
    case Decision::NotFound: return "NotFound";
  }
  return "NotFound";
}

Decision VerdictThresholds::decide(double ber_value, double ncc_value) const {
  if (ncc_value >= confirm_ncc || ber_value <= confirm_ber) return Decision::Confirmed;
  if (ber_value >= not_found_ber) return Decision::NotFound;
  return Decision::Inconclusive;
}

namespace {

std::filesystem::path resolve(const std::string& p, const VerifyOptions& options) {
  std::filesystem::path path(p);
  if (path.is_relative() && !options.manifest_dir.empty()) return options.manifest_dir / path;
  return path;
}

Decision aggregate(const std::vector<ItemVerdict>& items) {
  if (items.empty()) return Decision::NotFound;
  bool inconclusive = false;
  for (const auto& it : items) {
    if (it.decision == Decision::NotFound) return Decision::NotFound;
    inconclusive |= it.decision == Decision::Inconclusive;
  }
  return inconclusive ? Decision::Inconclusive : Decision::Confirmed;
}

// Covers of non-blind entries, loaded on first use.
class CoverCache {
 public:
  explicit CoverCache(const VerifyOptions& options) : options_(options) {}

  const Image& get(const ManifestEntry& e) {
    auto it = cache_.find(e.cover_path);
    if (it != cache_.end()) return it->second;
    const auto path = resolve(e.cover_path, options_);
    if (e.cover_path.empty() || !std::filesystem::exists(path)) {
      throw validation_error("missing cover for non-blind entry '" + e.image_path + "'");
    }
    return cache_.emplace(e.cover_path, read_image(path)).first->second;
  }

 private:
  const VerifyOptions& options_;
  std::map<std::string, Image> cache_;
};

std::optional<ExtractionReport> try_entry(const Image& suspect, const ManifestEntry& e,
                                          const Watermark& expected, CoverCache& covers) {
  const Image* cover = nullptr;
  if (!is_blind(e.scheme)) {
    cover = &covers.get(e);
    if (cover->width() != suspect.width() || cover->height() != suspect.height()) {
      return std::nullopt;
    }
  }
  try {
    check_capacity(suspect, expected);
  } catch (const Error&) {
    return std::nullopt;
  }
  return make_report(expected,
                     extract(e.scheme, suspect, e.key, cover, expected.rows(), expected.cols()));
}

}  // namespace

VerificationVerdict verify_images(const std::vector<std::filesystem::path>& suspects,
                                  const ProtectionManifest& manifest, Scenario scenario,
                                  const VerifyOptions& options) {
  if (scenario == Scenario::TextOnly) {
    throw validation_error("verify_images does not handle the text scenario");
  }
  check_manifest(manifest);
  std::vector<Watermark> expected;
  for (const auto& e : manifest.entries) {
    expected.push_back(generate_context_watermark(manifest.payload_for(e)));
  }
  CoverCache covers(options);

  VerificationVerdict v;
  v.scenario = scenario;
  for (const auto& path : suspects) {
    const auto suspect = read_image(path);
    ItemVerdict item;
    item.suspect = path.string();
    bool any = false;
    for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
      auto report = try_entry(suspect, manifest.entries[i], expected[i], covers);
      if (!report) continue;
      if (!any || report->ber < item.report.ber) {
        item.report = std::move(*report);
        item.matched_entry = manifest.entries[i].image_path;
        any = true;
      }
    }
    if (any) {
      item.decision = options.thresholds.decide(item.report.ber, item.report.ncc);
      if (item.decision == Decision::NotFound) item.matched_entry.clear();
    } else {
      item.decision = Decision::NotFound;
      item.note = "no manifest entry is applicable to this image";
    }
    v.items.push_back(std::move(item));
  }
  v.decision = aggregate(v.items);
  return v;
}

VerificationVerdict verify_text(const std::vector<std::string>& fragments,
                                const ProtectionManifest& manifest,
                                const VerifyOptions& options) {
  check_manifest(manifest);
  CoverCache covers(options);
  VerificationVerdict v;
  v.scenario = Scenario::TextOnly;
  for (const auto& fragment : fragments) {
    ItemVerdict item;
    item.suspect = fragment;
    const AuthorPayload payload{manifest.author_id, manifest.doc_title, fragment};
    const auto wm = generate_context_watermark(payload);
    const auto digest = watermark_digest(wm);
    const ManifestEntry* match = nullptr;
    for (const auto& e : manifest.entries) {
      if (e.wm_digest == digest) {
        match = &e;
        break;
      }
    }
    if (match == nullptr) {
      item.decision = Decision::NotFound;
      item.note = "no manifest entry is bound to this text";
      v.items.push_back(std::move(item));
      continue;
    }
    // The link is only demonstrated if the watermark really is in the
    // original marked image.
    const auto original_path = resolve(match->marked_path, options);
    if (!std::filesystem::exists(original_path)) {
      throw validation_error("text scenario needs the original marked image '" +
                             original_path.string() + "'");
    }
    const auto original = read_image(original_path);
    auto report = try_entry(original, *match, wm, covers);
    item.matched_entry = match->image_path;
    if (report) {
      item.report = std::move(*report);
      item.decision = options.thresholds.decide(item.report.ber, item.report.ncc);
    } else {
      item.decision = Decision::NotFound;
      item.note = "original marked image does not fit its manifest entry";
    }
    v.items.push_back(std::move(item));
  }
  v.decision = aggregate(v.items);
  return v;
}

std::vector<std::filesystem::path> list_pgm_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") out.push_back(entry.path());
  }
  if (ec) throw io_error("cannot list '" + dir.string() + "': " + ec.message());
  std::sort(out.begin(), out.end());
  return out;
}

VerificationVerdict verify(const std::filesystem::path& suspect,
                           const ProtectionManifest& manifest, Scenario scenario,
                           const VerifyOptions& options) {
  if (!std::filesystem::exists(suspect)) {
    throw io_error("suspect '" + suspect.string() + "' does not exist");
  }
  if (scenario == Scenario::TextOnly) {
    std::vector<std::string> fragments;
    std::istringstream in(slurp_text(suspect));
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) fragments.push_back(line);
    }
    return verify_text(fragments, manifest, options);
  }
  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_directory(suspect)) {
    files = list_pgm_files(suspect);
    if (files.empty()) throw validation_error("no .pgm images in '" + suspect.string() + "'");
  } else {
    files.push_back(suspect);
  }
  return verify_images(files, manifest, scenario, options);
}

}  // namespace docmark
