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
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "docmark/evaluation.hpp"
#include "docmark/imaging.hpp"
#include "docmark/schemes.hpp"
#include "docmark/watermark_gen.hpp"

namespace docmark {

enum class ImageKind { HighlyDetailed, Illustration };

std::string_view image_kind_name(ImageKind kind);
ImageKind parse_image_kind(std::string_view name);

struct ImageClass {
  ImageKind kind = ImageKind::Illustration;
  double detail_score = 0.0;
};

inline constexpr double kDefaultDetailThreshold = 8.0;

// Score: mean |horizontal difference| + mean |vertical difference| over all
// adjacent pixel pairs. HighlyDetailed iff score >= threshold.
double detail_score(const Image& img);
ImageClass classify_image(const Image& img, double threshold = kDefaultDetailThreshold);

// Illustrations always get the spatial scheme. Detailed images get the
// non-blind hybrid when allowed, the blind DCT scheme otherwise.
SchemeId select_scheme(const ImageClass& cls, bool non_blind_allowed);

// One line of a context file: image_path<TAB>context.
struct ContextRecord {
  std::string image_path;
  std::string context;
};

// '#' starts a comment line; blank lines are skipped; a line without a tab
// names an image with an empty context. Duplicate paths are rejected.
std::vector<ContextRecord> parse_context_file(std::string_view text);
std::vector<ContextRecord> read_context_file(const std::filesystem::path& path);

struct ManifestEntry {
  std::string image_path;    // as listed in the context file
  std::string cover_path;    // original cover, needed by non-blind entries
  std::string marked_path;   // protected output
  std::string context;
  bool context_bound = true;
  SchemeId scheme = SchemeId::SpatialDcQim;
  WatermarkKey key;
  WatermarkDigest wm_digest;
  double psnr_db = 0.0;
  ImageClass image_class;
};

struct ProtectionManifest {
  int version = 1;
  std::string author_id;
  std::string doc_title;
  std::string hash_name{kHashName};
  std::string created_at;  // RFC 3339, UTC
  std::vector<ManifestEntry> entries;

  AuthorPayload payload_for(const ManifestEntry& entry) const;
};

// Canonical JSON: keys sorted, two-space indent, trailing newline.
std::string manifest_to_json(const ProtectionManifest& m);
ProtectionManifest manifest_from_json(std::string_view text);
ProtectionManifest read_manifest(const std::filesystem::path& path);
// Writes to a sibling temporary file and renames over the target.
void write_manifest(const ProtectionManifest& m, const std::filesystem::path& path);

// Recomputes every entry's watermark digest; throws a validation error on a
// version, hash or digest mismatch.
void check_manifest(const ProtectionManifest& m);

struct ProtectOptions {
  WatermarkKey base_key;
  double detail_threshold = kDefaultDetailThreshold;
  bool non_blind_allowed = true;
  std::string created_at;  // empty: current UTC time
};

std::string rfc3339_now();

// Per-entry permutation seed derived from the base seed and the entry index.
std::uint64_t entry_seed(std::uint64_t base_seed, std::size_t index);

ProtectionManifest protect(const std::filesystem::path& image_dir,
                           const std::vector<ContextRecord>& contexts,
                           const std::string& author_id, const std::string& doc_title,
                           const std::filesystem::path& out_dir,
                           const ProtectOptions& options = {});

enum class Scenario { CompleteCopy, ImagesOnly, TextOnly };
std::string_view scenario_name(Scenario s);
// "complete", "images", "text".
Scenario parse_scenario(std::string_view name);

enum class Decision { Confirmed, Inconclusive, NotFound };
std::string_view decision_name(Decision d);

struct VerdictThresholds {
  double confirm_ncc = 0.85;
  double confirm_ber = 0.12;
  double not_found_ber = 0.40;

  Decision decide(double ber, double ncc) const;
};

struct ItemVerdict {
  std::string suspect;         // suspect image path or text fragment
  std::string matched_entry;   // image_path of the best entry, empty if none
  ExtractionReport report;
  Decision decision = Decision::NotFound;
  std::string note;
};

struct VerificationVerdict {
  Scenario scenario = Scenario::CompleteCopy;
  std::vector<ItemVerdict> items;
  Decision decision = Decision::NotFound;   // worst over items
};

// Manifest paths are resolved relative to manifest_dir when not absolute.
struct VerifyOptions {
  VerdictThresholds thresholds;
  std::filesystem::path manifest_dir;
};

// CompleteCopy / ImagesOnly: suspect is an image or a directory of images;
// each is extracted with every entry's key and the best match decides.
VerificationVerdict verify_images(const std::vector<std::filesystem::path>& suspects,
                                  const ProtectionManifest& manifest, Scenario scenario,
                                  const VerifyOptions& options = {});
// TextOnly: every non-empty line of the copied text is a context fragment. Its
// watermark digest must match an entry, and the watermark must extract from
// that entry's marked original.
VerificationVerdict verify_text(const std::vector<std::string>& fragments,
                                const ProtectionManifest& manifest,
                                const VerifyOptions& options = {});

// Dispatches on the scenario; a directory suspect expands to its *.pgm files.
VerificationVerdict verify(const std::filesystem::path& suspect,
                           const ProtectionManifest& manifest, Scenario scenario,
                           const VerifyOptions& options = {});

std::vector<std::filesystem::path> list_pgm_files(const std::filesystem::path& dir);

}  // namespace docmark
