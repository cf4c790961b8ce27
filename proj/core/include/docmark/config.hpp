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
#include <map>
#include <string>
#include <string_view>

#include "docmark/docpipe.hpp"
#include "docmark/imaging.hpp"
#include "docmark/schemes.hpp"

namespace docmark {

// Effective tool configuration. Precedence: command-line flag, then config
// file, then the built-in defaults below.
struct CliConfig {
  WatermarkKey key;
  TierQualityMap tiers;
  double detail_threshold = kDefaultDetailThreshold;
  VerdictThresholds thresholds;

  // Applies "key = value" settings. Unknown keys are validation errors.
  void apply(const std::map<std::string, std::string>& settings);
  // One "key = value" line per setting, in the file syntax.
  std::string describe() const;
};

// TOML-style subset: "key = value" lines, '#' comments, optional "[section]"
// headers that prefix following keys as "section.key", optional double quotes
// around values.
std::map<std::string, std::string> parse_key_values(std::string_view text);
CliConfig load_config(const std::filesystem::path& path);

}  // namespace docmark
