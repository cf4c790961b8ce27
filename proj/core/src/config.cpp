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

#include "docmark/config.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>

#include "docmark/error.hpp"

namespace docmark {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw validation_error("config: '" + key + "' expects a number, got '" + value + "'");
  }
  return out;
}

}  // namespace

std::map<std::string, std::string> parse_key_values(std::string_view text) {
  std::map<std::string, std::string> out;
  std::string section;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw validation_error("config line " + std::to_string(line_no) + ": bad section header");
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw validation_error("config line " + std::to_string(line_no) + ": expected key = value");
    }
    auto key = std::string(trim(line.substr(0, eq)));
    auto value = trim(line.substr(eq + 1));
    if (const auto hash = value.find(" #"); hash != std::string_view::npos && value.front() != '"') {
      value = trim(value.substr(0, hash));
    }
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (key.empty()) {
      throw validation_error("config line " + std::to_string(line_no) + ": empty key");
    }
    out[section.empty() ? key : section + "." + key] = std::string(value);
  }
  return out;
}

void CliConfig::apply(const std::map<std::string, std::string>& settings) {
  for (const auto& [key, value] : settings) {
    if (key == "key.delta" || key == "delta") {
      this->key.delta = parse_number<double>(key, value);
    } else if (key == "key.t_interval" || key == "t_interval") {
      this->key.t_interval = parse_number<double>(key, value);
    } else if (key == "key.alpha" || key == "alpha") {
      this->key.alpha = parse_number<double>(key, value);
    } else if (key == "key.arnold_iterations" || key == "arnold_iterations") {
      this->key.scramble.arnold_iterations = parse_number<int>(key, value);
    } else if (key == "key.seed" || key == "key_seed") {
      this->key.scramble.permutation_seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "tiers.maximum") {
      tiers.maximum = parse_number<int>(key, value);
    } else if (key == "tiers.high") {
      tiers.high = parse_number<int>(key, value);
    } else if (key == "tiers.medium") {
      tiers.medium = parse_number<int>(key, value);
    } else if (key == "tiers.low") {
      tiers.low = parse_number<int>(key, value);
    } else if (key == "tiers.minimum") {
      tiers.minimum = parse_number<int>(key, value);
    } else if (key == "classifier.detail_threshold" || key == "detail_threshold") {
      detail_threshold = parse_number<double>(key, value);
    } else if (key == "verdict.confirm_ncc") {
      thresholds.confirm_ncc = parse_number<double>(key, value);
    } else if (key == "verdict.confirm_ber") {
      thresholds.confirm_ber = parse_number<double>(key, value);
    } else if (key == "verdict.not_found_ber") {
      thresholds.not_found_ber = parse_number<double>(key, value);
    } else {
      throw validation_error("config: unknown key '" + key + "'");
    }
  }
  this->key.validate();
  for (int q : {tiers.maximum, tiers.high, tiers.medium, tiers.low, tiers.minimum}) {
    if (q < 1 || q > 100) throw validation_error("config: tier quality outside [1,100]");
  }
}

std::string CliConfig::describe() const {
  std::ostringstream out;
  out.precision(17);
  out << "[key]\n"
      << "delta = " << key.delta << '\n'
      << "t_interval = " << key.t_interval << '\n'
      << "alpha = " << key.alpha << '\n'
      << "arnold_iterations = " << key.scramble.arnold_iterations << '\n'
      << "seed = " << key.scramble.permutation_seed << '\n'
      << "[tiers]\n"
      << "maximum = " << tiers.maximum << '\n'
      << "high = " << tiers.high << '\n'
      << "medium = " << tiers.medium << '\n'
      << "low = " << tiers.low << '\n'
      << "minimum = " << tiers.minimum << '\n'
      << "[classifier]\n"
      << "detail_threshold = " << detail_threshold << '\n'
      << "[verdict]\n"
      << "confirm_ncc = " << thresholds.confirm_ncc << '\n'
      << "confirm_ber = " << thresholds.confirm_ber << '\n'
      << "not_found_ber = " << thresholds.not_found_ber << '\n';
  return out.str();
}

CliConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open config '" + path.string() + "'");
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  CliConfig cfg;
  cfg.apply(parse_key_values(text));
  return cfg;
}

}  // namespace docmark
