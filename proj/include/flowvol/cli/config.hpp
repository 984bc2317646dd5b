/*
 * Copyright 2026 The flowvol Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


// Experiment configuration, algorithm labels and presets.

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flowvol/common.hpp"
#include "flowvol/stream.hpp"
#include "flowvol/wfast.hpp"

namespace flowvol::cli {

/// Raised for invalid flag values or parameter combinations (exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Mode { Frequency, TopK, Window, Hhh };

inline std::string to_string(Mode m) {
  switch (m) {
    case Mode::Frequency: return "frequency";
    case Mode::TopK: return "topk";
    case Mode::Window: return "window";
    case Mode::Hhh: return "hhh";
  }
  return "?";
}

inline Mode parse_mode(std::string_view s) {
  if (s == "frequency") return Mode::Frequency;
  if (s == "topk") return Mode::TopK;
  if (s == "window") return Mode::Window;
  if (s == "hhh") return Mode::Hhh;
  throw ConfigError("unknown mode '" + std::string(s) + "' (expected frequency, topk, window or hhh)");
}

enum class Kind { SS, FR, PSS, HalfPSS, DWPSS, CMS, CS, FAST, SSH, WFAST, HFAST };

struct AlgorithmSpec {
  std::string label;
  Kind kind = Kind::SS;
  std::size_t ways = 0;  // DWPSS only
};

/// Accepts SS, FR, PSS, 0.5-PSS, <d>W-PSS (or dW-PSS for the --ways value),
/// CMS, CS, FAST, SSH, WFAST, HFAST. Case sensitive.
inline AlgorithmSpec parse_algorithm(std::string_view s, std::size_t default_ways) {
  static const std::pair<std::string_view, Kind> simple[] = {
      {"SS", Kind::SS},       {"FR", Kind::FR},       {"PSS", Kind::PSS},
      {"0.5-PSS", Kind::HalfPSS}, {"CMS", Kind::CMS}, {"CS", Kind::CS},
      {"FAST", Kind::FAST},   {"SSH", Kind::SSH},     {"WFAST", Kind::WFAST},
      {"HFAST", Kind::HFAST}};
  for (auto [name, kind] : simple)
    if (s == name) return {std::string(name), kind, 0};
  constexpr std::string_view suffix = "W-PSS";
  if (s.size() > suffix.size() && s.substr(s.size() - suffix.size()) == suffix) {
    const auto head = s.substr(0, s.size() - suffix.size());
    std::size_t d = 0;
    if (head == "d") {
      d = default_ways;
    } else {
      auto [p, ec] = std::from_chars(head.data(), head.data() + head.size(), d);
      if (ec != std::errc{} || p != head.data() + head.size()) d = 0;
    }
    if (d == 0) throw ConfigError("bad way count in algorithm '" + std::string(s) + "'");
    return {std::to_string(d) + "W-PSS", Kind::DWPSS, d};
  }
  throw ConfigError("unknown algorithm '" + std::string(s) +
                    "' (expected SS, FR, PSS, 0.5-PSS, <d>W-PSS, CMS, CS, FAST, SSH, WFAST, HFAST)");
}

inline bool supports_mode(Kind k, Mode m) {
  switch (m) {
    case Mode::Frequency: return k != Kind::WFAST && k != Kind::HFAST;
    case Mode::TopK:
      return k == Kind::SS || k == Kind::FR || k == Kind::PSS || k == Kind::HalfPSS ||
             k == Kind::DWPSS || k == Kind::FAST || k == Kind::SSH;
    case Mode::Window: return k == Kind::WFAST;
    case Mode::Hhh: return k == Kind::HFAST;
  }
  return false;
}

struct ExperimentConfig {
  std::string preset;
  Mode mode = Mode::Frequency;

  // trace source: a file, or synthetic Zipf traces (one per skew and seed)
  std::string trace;
  std::vector<double> skews{1.0};
  std::uint64_t length = 1000000;
  std::uint64_t universe = kDefaultUniverse;
  std::uint32_t max_weight = 1;  // synthetic weights are uniform on [1, M]
  unsigned hhh_dims = 2;

  std::vector<std::string> algorithms{"SS", "FR", "PSS", "16W-PSS"};
  std::vector<std::uint64_t> counters{64, 128, 256, 512, 1024};
  std::size_t ways = 16;
  std::size_t rows = 4;
  double sketch_factor = 8.0;

  double epsilon = 0.01;
  double gamma = 1.0;
  std::vector<double> epsilons{0.25, 0.0625};
  std::vector<std::uint64_t> windows{1024, 4096};
  double theta = 0.05;
  bool include_root = true;

  std::size_t k = 32;
  std::size_t m = 32;
  bool pr_curve = true;

  std::vector<std::uint64_t> seeds{1};
  std::string out = "results";
  std::size_t threads = 1;
  std::size_t throughput_reps = 0;
};

inline std::vector<AlgorithmSpec> resolve_algorithms(const ExperimentConfig& c) {
  std::vector<AlgorithmSpec> out;
  for (const auto& a : c.algorithms) out.push_back(parse_algorithm(a, c.ways));
  return out;
}

inline void validate(const ExperimentConfig& c) {
  auto need = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  need(!c.algorithms.empty(), "at least one algorithm is required");
  need(!c.seeds.empty(), "at least one seed is required");
  need(c.trace.empty() ? !c.skews.empty() : true, "at least one zipf skew is required");
  for (double s : c.skews) need(std::isfinite(s) && s >= 0, "zipf skew must be a finite value >= 0");
  if (c.trace.empty()) {
    need(c.length >= 1, "--n must be >= 1");
    need(c.universe >= 1 && c.universe <= kMaxZipfUniverse, "--universe must be in [1, 2^28]");
  }
  need(c.max_weight >= 1, "--max-weight must be >= 1");
  need(c.hhh_dims == 1 || c.hhh_dims == 2, "--hhh-dims must be 1 or 2");
  need(c.gamma >= 0 && std::isfinite(c.gamma), "--gamma must be a finite value >= 0");
  need(c.epsilon > 0 && c.epsilon <= 1, "--epsilon must be in (0, 1]");
  need(c.rows >= 1, "--rows must be >= 1");
  need(c.sketch_factor > 0, "--sketch-factor must be > 0");
  need(c.threads >= 1, "--threads must be >= 1");
  need(c.throughput_reps == 0 || c.throughput_reps >= 3, "--throughput-reps must be 0 or >= 3");
  const auto algos = resolve_algorithms(c);
  if (c.mode == Mode::Frequency || c.mode == Mode::TopK) {
    need(!c.counters.empty(), "at least one counter budget is required");
    for (auto n : c.counters) need(n >= 1, "counter budgets must be >= 1");
    for (const auto& a : algos)
      if (a.kind == Kind::DWPSS)
        for (auto n : c.counters)
          need(n % a.ways == 0, a.label + ": ways (" + std::to_string(a.ways) +
                                    ") must divide the counter budget " + std::to_string(n));
  }
  if (c.mode == Mode::TopK) need(c.k >= 1 && c.m >= 1, "--k and --m must be >= 1");
  if (c.mode == Mode::Window) {
    need(!c.windows.empty() && !c.epsilons.empty(), "window mode needs --windows and --epsilons");
    for (double e : c.epsilons) need(e > 0 && e <= 1, "--epsilons values must be in (0, 1]");
    for (auto w : c.windows) need(w >= 1, "--windows values must be >= 1");
  }
  if (c.mode == Mode::Hhh) need(c.theta > c.epsilon && c.theta <= 1, "--theta must be in (epsilon, 1]");
}

/// Named experiment presets.
inline std::optional<ExperimentConfig> preset(std::string_view name) {
  ExperimentConfig c;
  c.preset = std::string(name);
  c.seeds = {1, 2, 3};
  if (name == "top32") {
    c.mode = Mode::TopK;
    c.length = 10000000;
    c.k = c.m = 32;
    c.counters = {64, 128, 256, 512, 1024, 2048};
    c.algorithms = {"SS", "FR", "PSS", "16W-PSS"};
    c.pr_curve = false;
  } else if (name == "top512") {
    c.mode = Mode::TopK;
    c.length = 10000000;
    c.k = c.m = 512;
    c.counters = {1024};
    c.algorithms = {"PSS", "0.5-PSS", "16W-PSS", "SS", "FR"};
    c.pr_curve = true;
  } else if (name == "mse") {
    c.mode = Mode::Frequency;
    c.skews = {0.6, 0.8, 1.0, 1.2, 1.5};
    c.counters = {64, 256, 1024};
    c.algorithms = {"SS", "FR", "PSS", "16W-PSS", "CMS", "CS"};
  } else if (name == "window") {
    c.mode = Mode::Window;
    c.max_weight = 64;
    c.windows = {1024, 4096, 16384};
    c.epsilons = {0.25, 0.0625, 0.015625};
    c.algorithms = {"WFAST"};
  } else if (name == "hhh2d") {
    c.mode = Mode::Hhh;
    c.hhh_dims = 2;
    c.max_weight = 64;
    c.epsilon = 0.01;
    c.theta = 0.05;
    c.algorithms = {"HFAST"};
  } else {
    return std::nullopt;
  }
  return c;
}

inline std::vector<std::string> preset_names() { return {"top32", "top512", "mse", "window", "hhh2d"}; }

}  // namespace flowvol::cli
