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

#include "cli.hpp"

#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "docmark/config.hpp"
#include "docmark/docpipe.hpp"
#include "docmark/error.hpp"
#include "docmark/evaluation.hpp"
#include "docmark/imaging.hpp"
#include "docmark/schemes.hpp"
#include "docmark/watermark_gen.hpp"

namespace docmark::cli {
namespace {

namespace fs = std::filesystem;

// Key flags shared by embed, extract, bench and protect. Unset flags leave
// the configured value alone.
struct KeyFlags {
  std::optional<std::uint64_t> seed;
  std::optional<double> delta;
  std::optional<double> t_interval;
  std::optional<double> alpha;
  std::optional<int> arnold_iterations;

  void attach(CLI::App& cmd, bool seed_required) {
    auto* s = cmd.add_option("--key-seed", seed, "Permutation seed (64-bit integer)");
    if (seed_required) s->required();
    cmd.add_option("--delta", delta, "QIM step of the spatial scheme");
    cmd.add_option("--t", t_interval, "Interval half-width of the DCT difference scheme");
    cmd.add_option("--alpha", alpha, "Strength of the hybrid scheme, in (0,1]");
    cmd.add_option("--arnold-iters", arnold_iterations, "Arnold scrambling iterations");
  }

  WatermarkKey resolve(const WatermarkKey& base) const {
    WatermarkKey k = base;
    if (seed) k.scramble.permutation_seed = *seed;
    if (delta) k.delta = *delta;
    if (t_interval) k.t_interval = *t_interval;
    if (alpha) k.alpha = *alpha;
    if (arnold_iterations) k.scramble.arnold_iterations = *arnold_iterations;
    k.validate();
    return k;
  }
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void print_metrics(std::ostream& out, const ExtractionReport& r) {
  out << "BER=" << format_metric(r.ber) << " NCC=" << format_metric(r.ncc) << '\n';
}

void warn_all(std::ostream& err, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) err << "warning: " << w << '\n';
}

struct Globals {
  std::string config_path;
  bool verbose = false;

  CliConfig load(std::ostream& err) const {
    CliConfig cfg = config_path.empty() ? CliConfig{} : load_config(config_path);
    if (verbose) err << "# effective configuration\n" << cfg.describe();
    return cfg;
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"docmark: image watermarking for document authorship protection"};
  app.require_subcommand(1);
  Globals globals;
  app.add_option("--config", globals.config_path, "Key=value configuration file")
      ->check(CLI::ExistingFile);
  app.add_flag("--verbose", globals.verbose, "Print the effective configuration to stderr");

  // embed
  auto* embed_cmd = app.add_subcommand("embed", "Embed a watermark into a cover image");
  std::string scheme_arg, cover_arg, wm_arg, out_arg;
  KeyFlags embed_key;
  embed_cmd->add_option("--scheme", scheme_arg,
                        "spatial-dc-qim | dct-interblock-diff | hybrid-dct-dwt")
      ->required();
  embed_cmd->add_option("--cover", cover_arg, "Cover image (PGM P5)")->required();
  embed_cmd->add_option("--wm", wm_arg, "Watermark (PBM P1)")->required();
  embed_cmd->add_option("--out", out_arg, "Marked image output (PGM P5)")->required();
  embed_key.attach(*embed_cmd, true);

  // extract
  auto* extract_cmd = app.add_subcommand("extract", "Extract a watermark from a suspect image");
  std::string suspect_arg, ext_cover_arg, ext_out_arg, original_arg, ext_scheme_arg;
  KeyFlags extract_key;
  extract_cmd->add_option("--scheme", ext_scheme_arg, "Scheme used at embedding")->required();
  extract_cmd->add_option("--suspect", suspect_arg, "Suspect image (PGM P5)")->required();
  extract_cmd->add_option("--cover", ext_cover_arg, "Cover image, required by hybrid-dct-dwt");
  extract_cmd->add_option("--out", ext_out_arg, "Extracted watermark output (PBM P1)")
      ->required();
  extract_cmd->add_option("--original", original_arg,
                          "Original watermark; prints BER and NCC against it");
  extract_key.attach(*extract_cmd, true);

  // attack
  auto* attack_cmd = app.add_subcommand("attack", "Apply one distortion to an image");
  std::string attack_in, attack_out, tier_arg;
  std::optional<int> jpeg_quality, brightness;
  std::optional<double> crop, scale;
  attack_cmd->add_option("--in", attack_in, "Input image (PGM P5)")->required();
  attack_cmd->add_option("--out", attack_out, "Output image (PGM P5)")->required();
  auto* o_tier = attack_cmd->add_option("--jpeg-tier", tier_arg,
                                        "none | maximum | high | medium | low | minimum");
  auto* o_q = attack_cmd->add_option("--jpeg-quality", jpeg_quality, "JPEG quality 1..100");
  auto* o_b = attack_cmd->add_option("--brightness", brightness, "Brightness offset -64..64");
  auto* o_c = attack_cmd->add_option("--crop", crop, "Fraction of each side kept, 0.5..1.0");
  auto* o_s = attack_cmd->add_option("--scale", scale, "Down/up scale factor, 0.5..2.0");
  o_tier->excludes(o_q)->excludes(o_b)->excludes(o_c)->excludes(o_s);
  o_q->excludes(o_b)->excludes(o_c)->excludes(o_s);
  o_b->excludes(o_c)->excludes(o_s);
  o_c->excludes(o_s);

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Run the embed/attack/extract grid");
  std::string bench_images, bench_schemes = "spatial-dc-qim,dct-interblock-diff,hybrid-dct-dwt";
  std::string bench_tiers = "none,maximum,high,medium,low,minimum";
  std::string bench_out, bench_md, bench_wm;
  KeyFlags bench_key;
  bench_cmd->add_option("--images", bench_images, "Directory of PGM covers")->required();
  bench_cmd->add_option("--schemes", bench_schemes, "Comma-separated scheme list")
      ->capture_default_str();
  bench_cmd->add_option("--tiers", bench_tiers, "Comma-separated tier list")
      ->capture_default_str();
  bench_cmd->add_option("--out", bench_out, "CSV report")->required();
  bench_cmd->add_option("--markdown", bench_md, "Optional markdown tables");
  bench_cmd->add_option("--wm", bench_wm,
                        "Watermark (PBM P1); default is a context watermark for a fixed payload");
  bench_key.attach(*bench_cmd, false);

  // protect
  auto* protect_cmd = app.add_subcommand("protect", "Protect every image of a document");
  std::string prot_images, prot_contexts, prot_author, prot_title, prot_out, prot_manifest;
  std::string prot_created;
  bool blind_only = false;
  KeyFlags protect_key;
  protect_cmd->add_option("--images", prot_images, "Directory holding the document images")
      ->required();
  protect_cmd->add_option("--contexts", prot_contexts, "Context file: image_path<TAB>context")
      ->required();
  protect_cmd->add_option("--author", prot_author, "Author identity")->required();
  protect_cmd->add_option("--title", prot_title, "Document title")->required();
  protect_cmd->add_option("--out", prot_out, "Output directory for marked images")->required();
  protect_cmd->add_option("--manifest", prot_manifest, "Manifest output (JSON)")->required();
  protect_cmd->add_flag("--blind-only", blind_only, "Never pick the non-blind scheme");
  protect_cmd->add_option("--created-at", prot_created, "RFC 3339 timestamp to record");
  protect_key.attach(*protect_cmd, false);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Verify suspect material against a manifest");
  std::string ver_manifest, ver_suspect, ver_scenario;
  verify_cmd->add_option("--manifest", ver_manifest, "Manifest (JSON)")->required();
  verify_cmd->add_option("--suspect", ver_suspect,
                         "Image, image directory, or copied text file (text scenario)")
      ->required();
  verify_cmd->add_option("--scenario", ver_scenario, "complete | images | text")
      ->required()
      ->check(CLI::IsMember({"complete", "images", "text"}));

  // genwm
  auto* genwm_cmd = app.add_subcommand("genwm", "Generate a context-bound 64x64 watermark");
  std::string gen_author, gen_title, gen_context, gen_out;
  genwm_cmd->add_option("--author", gen_author, "Author identity")->required();
  genwm_cmd->add_option("--title", gen_title, "Document title");
  genwm_cmd->add_option("--context", gen_context, "Context text (empty: context-free)");
  genwm_cmd->add_option("--out", gen_out, "Watermark output (PBM P1)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << sub->help();
    } else {
      err << app.help();
    }
    return kValidation;
  }

  try {
    const CliConfig cfg = globals.load(err);

    if (*embed_cmd) {
      const auto scheme = parse_scheme(scheme_arg);
      const auto key = embed_key.resolve(cfg.key);
      const auto cover = read_image(cover_arg);
      const auto wm = read_watermark(wm_arg);
      const auto cls = classify_image(cover, cfg.detail_threshold);
      if (scheme != SchemeId::SpatialDcQim && cls.kind == ImageKind::Illustration) {
        err << "warning: " << scheme_name(scheme)
            << " on an illustration-class cover (detail score " << format_metric(cls.detail_score)
            << "); spatial-dc-qim is recommended\n";
      }
      const auto marked = embed(scheme, cover, wm, key);
      warn_all(err, marked.warnings);
      write_image(marked.image, out_arg);
      out << "PSNR=" << format_metric(psnr(cover, marked.image)) << '\n';
      return kOk;
    }

    if (*extract_cmd) {
      const auto scheme = parse_scheme(ext_scheme_arg);
      const auto key = extract_key.resolve(cfg.key);
      if (!is_blind(scheme) && ext_cover_arg.empty()) {
        throw validation_error(std::string(scheme_name(scheme)) +
                               " is non-blind: --cover is required");
      }
      if (is_blind(scheme) && !ext_cover_arg.empty()) {
        throw validation_error(std::string(scheme_name(scheme)) + " is blind: drop --cover");
      }
      const auto suspect = read_image(suspect_arg);
      std::optional<Image> cover;
      if (!ext_cover_arg.empty()) cover = read_image(ext_cover_arg);
      std::optional<Watermark> original;
      if (!original_arg.empty()) original = read_watermark(original_arg);
      const std::size_t rows = original ? original->rows() : kWatermarkSide;
      const std::size_t cols = original ? original->cols() : kWatermarkSide;
      auto extracted = extract(scheme, suspect, key, cover ? &*cover : nullptr, rows, cols);
      write_watermark(extracted, ext_out_arg);
      if (original) {
        const auto report = make_report(*original, std::move(extracted));
        warn_all(err, report.warnings);
        print_metrics(out, report);
      }
      return kOk;
    }

    if (*attack_cmd) {
      AttackSpec spec;
      if (!tier_arg.empty()) {
        spec.kind = JpegAttack{parse_tier(tier_arg)};
      } else if (jpeg_quality) {
        spec.kind = JpegQualityAttack{*jpeg_quality};
      } else if (brightness) {
        spec.kind = BrightnessAttack{*brightness};
      } else if (crop) {
        spec.kind = CropCenterAttack{*crop};
      } else if (scale) {
        spec.kind = ScaleAttack{*scale};
      } else {
        throw validation_error(
            "exactly one of --jpeg-tier, --jpeg-quality, --brightness, --crop, --scale is required");
      }
      const auto img = read_image(attack_in);
      write_image(apply_attack(img, spec, cfg.tiers), attack_out);
      if (const auto q = spec.quality(cfg.tiers)) out << "quality=" << *q << '\n';
      return kOk;
    }

    if (*bench_cmd) {
      if (!fs::is_directory(bench_images)) {
        throw validation_error("--images must be a directory");
      }
      std::vector<BenchImage> images;
      for (const auto& p : list_pgm_files(bench_images)) {
        images.push_back({p.stem().string(), read_image(p)});
      }
      if (images.empty()) throw validation_error("no .pgm images in '" + bench_images + "'");
      std::vector<SchemeId> schemes;
      for (const auto& s : split_list(bench_schemes)) schemes.push_back(parse_scheme(s));
      std::vector<AttackSpec> attacks;
      for (const auto& t : split_list(bench_tiers)) attacks.push_back(parse_attack(t));
      const auto key = bench_key.resolve(cfg.key);
      const auto wm = bench_wm.empty()
                          ? generate_context_watermark({"docmark-bench", "bench", ""})
                          : read_watermark(bench_wm);
      const auto result = run_bench(images, schemes, attacks, wm, key, {cfg.tiers});
      {
        std::ofstream csv(bench_out, std::ios::binary | std::ios::trunc);
        if (!csv) throw io_error("cannot write '" + bench_out + "'");
        csv << bench_csv(result);
      }
      if (!bench_md.empty()) {
        std::ofstream md(bench_md, std::ios::binary | std::ios::trunc);
        if (!md) throw io_error("cannot write '" + bench_md + "'");
        md << bench_markdown(result);
      }
      std::size_t failed = 0;
      for (const auto& c : result.cells) {
        if (!c.report) {
          ++failed;
          err << "warning: " << c.image << '/' << scheme_name(c.scheme) << '/'
              << c.attack.label() << ": " << c.error << '\n';
        }
      }
      out << "cells=" << result.cells.size() << " failed=" << failed << '\n';
      return kOk;
    }

    if (*protect_cmd) {
      ProtectOptions opts;
      opts.base_key = protect_key.resolve(cfg.key);
      opts.detail_threshold = cfg.detail_threshold;
      opts.non_blind_allowed = !blind_only;
      opts.created_at = prot_created;
      const auto contexts = read_context_file(prot_contexts);
      const auto manifest =
          protect(prot_images, contexts, prot_author, prot_title, prot_out, opts);
      write_manifest(manifest, prot_manifest);
      for (const auto& e : manifest.entries) {
        out << e.image_path << ' ' << scheme_name(e.scheme) << ' '
            << image_kind_name(e.image_class.kind) << " PSNR=" << format_metric(e.psnr_db)
            << (e.context_bound ? "" : " context_bound=false") << '\n';
      }
      return kOk;
    }

    if (*verify_cmd) {
      const auto manifest = read_manifest(ver_manifest);
      VerifyOptions opts;
      opts.thresholds = cfg.thresholds;
      opts.manifest_dir = fs::path(ver_manifest).parent_path();
      const auto verdict = verify(ver_suspect, manifest, parse_scenario(ver_scenario), opts);
      for (const auto& item : verdict.items) {
        out << decision_name(item.decision) << ' ' << item.suspect;
        if (!item.matched_entry.empty()) out << " entry=" << item.matched_entry;
        if (item.note.empty()) {
          out << " BER=" << format_metric(item.report.ber)
              << " NCC=" << format_metric(item.report.ncc);
        } else {
          out << " (" << item.note << ')';
        }
        out << '\n';
      }
      out << "verdict=" << decision_name(verdict.decision) << '\n';
      switch (verdict.decision) {
        case Decision::Confirmed: return kOk;
        case Decision::NotFound: return kNotFound;
        case Decision::Inconclusive: return kInconclusive;
      }
      return kOk;
    }

    if (*genwm_cmd) {
      const auto wm = generate_context_watermark({gen_author, gen_title, gen_context});
      write_watermark(wm, gen_out);
      out << "digest=" << watermark_digest(wm).hex() << '\n';
      return kOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::Io ? kIoFailure : kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  }
  return kValidation;
}

}  // namespace docmark::cli
