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


// The flowvol subcommands: generate, bench, report.

#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "flowvol/bench/report.hpp"
#include "flowvol/cli/config.hpp"
#include "flowvol/cli/runner.hpp"
#include "flowvol/hhh.hpp"
#include "flowvol/stream.hpp"
#include "flowvol/trace_io.hpp"

namespace flowvol::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Accepts "1000000" or "1e6"; the value must be a non-negative integer.
inline std::uint64_t parse_count(const std::string& s, const std::string& flag) {
  std::uint64_t u = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), u);
  if (ec == std::errc{} && p == s.data() + s.size()) return u;
  double d = 0;
  auto [q, ec2] = std::from_chars(s.data(), s.data() + s.size(), d);
  if (ec2 != std::errc{} || q != s.data() + s.size() || !std::isfinite(d) || d < 0 ||
      d != std::floor(d) || d > 9.2e18)
    throw ConfigError(flag + ": expected a non-negative integer count (got '" + s + "')");
  return static_cast<std::uint64_t>(d);
}

// --- generate ----------------------------------------------------------------

struct GenerateOptions {
  double skew = 1.0;
  std::uint64_t length = 1000000;
  std::uint64_t universe = kDefaultUniverse;
  std::uint64_t seed = 1;
  std::uint32_t max_weight = 1;
  std::string out;
  std::string format;  // "", "text" or "binary"
  bool addresses = false;
};

inline int cmd_generate(const GenerateOptions& g, std::ostream& out) {
  if (!std::isfinite(g.skew) || g.skew < 0)
    throw ConfigError("--zipf: skew must be a finite value >= 0 (got " + bench::format_number(g.skew) + ")");
  if (g.universe < 1 || g.universe > kMaxZipfUniverse)
    throw ConfigError("--universe: must be in [1, 2^28] (got " + std::to_string(g.universe) + ")");
  if (g.max_weight < 1) throw ConfigError("--max-weight: must be >= 1");
  if (g.out.empty()) throw ConfigError("--out: an output path is required");
  if (g.addresses) {
    const auto trace = generate_address_trace({g.skew, g.length, g.max_weight, g.seed});
    write_address_trace(trace, g.out);
    out << "wrote " << trace.size() << " address packets (max weight " << g.max_weight << ") to "
        << g.out << "\n";
    return 0;
  }
  TraceFormat fmt = format_from_path(g.out);
  if (g.format == "text") fmt = TraceFormat::Text;
  else if (g.format == "binary") fmt = TraceFormat::Binary;
  else if (!g.format.empty()) throw ConfigError("--format: expected text or binary (got '" + g.format + "')");
  WeightSampler w;
  if (g.max_weight > 1) w = uniform_weights(g.max_weight);
  const auto packets = zipf_generate({g.skew, g.universe, g.length, g.seed}, std::move(w));
  write_trace(packets, g.out, fmt);
  const auto d = describe(packets);
  out << "wrote " << d.length << " packets (max weight " << d.max_weight << ", "
      << (fmt == TraceFormat::Binary ? "binary" : "text") << ") to " << g.out << "\n";
  return 0;
}

// --- bench -------------------------------------------------------------------

namespace detail {

template <class T>
std::string join(const std::vector<T>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    if constexpr (std::is_same_v<T, std::string>) s += v[i];
    else if constexpr (std::is_floating_point_v<T>) s += bench::format_number(v[i]);
    else s += std::to_string(v[i]);
  }
  return s + "]";
}

}  // namespace detail

/// key=value text mirroring the bench flags; `bench --config FILE` replays it.
inline std::string to_config_text(const ExperimentConfig& c) {
  std::ostringstream o;
  o << "# flowvol bench configuration\n";
  if (!c.preset.empty()) o << "# expanded from preset " << c.preset << "\n";
  o << "mode=" << to_string(c.mode) << "\n";
  if (!c.trace.empty()) o << "trace=" << c.trace << "\n";
  o << "zipf=" << detail::join(c.skews) << "\n"
    << "n=" << c.length << "\n"
    << "universe=" << c.universe << "\n"
    << "max-weight=" << c.max_weight << "\n"
    << "hhh-dims=" << c.hhh_dims << "\n"
    << "algorithms=" << detail::join(c.algorithms) << "\n"
    << "counters=" << detail::join(c.counters) << "\n"
    << "ways=" << c.ways << "\n"
    << "rows=" << c.rows << "\n"
    << "sketch-factor=" << bench::format_number(c.sketch_factor) << "\n"
    << "epsilon=" << bench::format_number(c.epsilon) << "\n"
    << "gamma=" << bench::format_number(c.gamma) << "\n"
    << "epsilons=" << detail::join(c.epsilons) << "\n"
    << "windows=" << detail::join(c.windows) << "\n"
    << "theta=" << bench::format_number(c.theta) << "\n"
    << "include-root=" << (c.include_root ? "true" : "false") << "\n"
    << "k=" << c.k << "\n"
    << "m=" << c.m << "\n"
    << "pr-curve=" << (c.pr_curve ? "true" : "false") << "\n"
    << "seeds=" << detail::join(c.seeds) << "\n"
    << "out=" << c.out << "\n"
    << "threads=" << c.threads << "\n"
    << "throughput-reps=" << c.throughput_reps << "\n";
  return o.str();
}

inline nlohmann::json to_json(const ExperimentConfig& c) {
  return {{"preset", c.preset},       {"mode", to_string(c.mode)},   {"trace", c.trace},
          {"zipf", c.skews},          {"n", c.length},               {"universe", c.universe},
          {"max_weight", c.max_weight}, {"hhh_dims", c.hhh_dims},    {"algorithms", c.algorithms},
          {"counters", c.counters},   {"ways", c.ways},              {"rows", c.rows},
          {"sketch_factor", c.sketch_factor}, {"epsilon", c.epsilon}, {"gamma", c.gamma},
          {"epsilons", c.epsilons},   {"windows", c.windows},        {"theta", c.theta},
          {"include_root", c.include_root}, {"k", c.k},              {"m", c.m},
          {"pr_curve", c.pr_curve},   {"seeds", c.seeds},            {"out", c.out},
          {"threads", c.threads},     {"throughput_reps", c.throughput_reps}};
}

/// Writes results.csv, throughput.csv (if measured), config.ini and
/// meta.json to c.out. Returns 0, or 1 if any run failed.
inline int cmd_bench(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  validate(c);
  auto res = run_experiments(c, &err);
  for (const auto& w : res.warnings) err << w << "\n";

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(c.out, ec);
  if (ec) throw IoError(c.out, "cannot create output directory: " + ec.message());
  const fs::path dir(c.out);
  std::vector<std::string> files{"results.csv", "config.ini", "meta.json"};
  bench::write_csv(res.rows, (dir / "results.csv").string());
  if (c.throughput_reps > 0) {
    bench::write_csv(res.throughput, (dir / "throughput.csv").string());
    files.push_back("throughput.csv");
  }
  flowvol::detail::write_file((dir / "config.ini").string(), to_config_text(c));

  nlohmann::json runs = nlohmann::json::array();
  for (const auto& r : res.runs) {
    nlohmann::json j = {{"run_id", r.run_id}, {"algorithm", r.algorithm}, {"counters", r.counters},
                        {"seed", r.seed},     {"skew", r.skew},           {"status", r.ok ? "ok" : "skipped"}};
    if (c.mode == Mode::Window) {
      j["epsilon"] = r.epsilon;
      j["window"] = r.window;
    }
    if (!r.ok) j["error"] = r.error;
    runs.push_back(std::move(j));
  }
  nlohmann::json meta = {{"tool", "flowvol"},
                         {"version", kVersion},
                         {"command", "bench"},
                         {"rng", kRngName},
                         {"hash", kHashName},
                         {"csv_schema", std::string(bench::kCsvHeader)},
                         {"rerun", "flowvol bench --config " + (dir / "config.ini").string()},
                         {"config", to_json(c)},
                         {"runs", runs},
                         {"warnings", res.warnings},
                         {"files", files}};
  if (!res.pattern_names.empty()) meta["patterns"] = res.pattern_names;
  flowvol::detail::write_file((dir / "meta.json").string(), meta.dump(2) + "\n");

  out << res.runs.size() << " runs, " << res.failed << " failed; " << res.rows.size()
      << " rows written to " << (dir / "results.csv").string() << "\n";
  return res.failed ? 1 : 0;
}

// --- report ------------------------------------------------------------------

struct SummaryRow {
  std::string algorithm;
  std::uint64_t counters = 0;
  std::string metric;
  double x = 0;
  std::size_t n = 0;
  double mean = 0;
  double min = 0;
  double max = 0;
};

/// Mean, min and max across runs for each (algorithm, counters, metric, x).
/// Output is ordered by metric, algorithm, counters, then x.
inline std::vector<SummaryRow> aggregate(const std::vector<bench::ResultRow>& rows) {
  using Key = std::tuple<std::string, std::string, std::uint64_t, double>;
  std::map<Key, SummaryRow> acc;
  for (const auto& r : rows) {
    auto [it, fresh] = acc.try_emplace(Key{r.metric, r.algorithm, r.counters, r.x});
    auto& s = it->second;
    if (fresh) {
      s = {r.algorithm, r.counters, r.metric, r.x, 0, 0, r.value, r.value};
    }
    ++s.n;
    s.mean += r.value;  // sum until the end
    s.min = std::min(s.min, r.value);
    s.max = std::max(s.max, r.value);
  }
  std::vector<SummaryRow> out;
  out.reserve(acc.size());
  for (auto& [k, s] : acc) {
    s.mean /= static_cast<double>(s.n);
    out.push_back(std::move(s));
  }
  return out;
}

/// CSV files directly in `dir` and in its immediate subdirectories.
inline std::vector<std::string> find_result_csvs(const std::string& dir, const std::string& skip) {
  namespace fs = std::filesystem;
  std::vector<std::string> out;
  if (!fs::is_directory(dir)) throw ConfigError("report: '" + dir + "' is not a directory");
  auto scan = [&](const fs::path& d) {
    for (const auto& e : fs::directory_iterator(d))
      if (e.is_regular_file() && e.path().extension() == ".csv") out.push_back(e.path().string());
  };
  scan(dir);
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_directory() && fs::weakly_canonical(e.path()) != fs::weakly_canonical(skip)) scan(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

inline int cmd_report(const std::string& dir, std::string out_dir, std::ostream& out) {
  namespace fs = std::filesystem;
  if (out_dir.empty()) out_dir = (fs::path(dir) / "report").string();
  const auto files = find_result_csvs(dir, out_dir);
  if (files.empty()) throw ConfigError("report: no CSV files found in '" + dir + "'");
  std::vector<bench::ResultRow> rows;
  for (const auto& f : files) {
    auto part = bench::read_csv(f);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  const auto summary = aggregate(rows);

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError(out_dir, "cannot create report directory: " + ec.message());
  const fs::path od(out_dir);

  std::string csv = "algorithm,counters,metric,x,n,mean,min,max\n";
  for (const auto& s : summary)
    csv += s.algorithm + ',' + std::to_string(s.counters) + ',' + s.metric + ',' +
           bench::format_number(s.x) + ',' + std::to_string(s.n) + ',' + bench::format_number(s.mean) +
           ',' + bench::format_number(s.min) + ',' + bench::format_number(s.max) + '\n';
  flowvol::detail::write_file((od / "summary.csv").string(), csv);

  // One .dat per metric; one gnuplot data block per (algorithm, counters).
  std::map<std::string, std::string> dat;
  std::map<std::string, std::vector<std::string>> titles;
  std::string prev_series;
  for (const auto& s : summary) {
    const std::string series = s.metric + '\x1f' + s.algorithm + '\x1f' + std::to_string(s.counters);
    auto& d = dat[s.metric];
    if (series != prev_series) {
      if (!d.empty()) d += "\n\n";
      const auto title = s.algorithm + " c=" + std::to_string(s.counters);
      d += "# " + title + "\n# x mean min max\n";
      titles[s.metric].push_back(title);
      prev_series = series;
    }
    d += bench::format_number(s.x) + ' ' + bench::format_number(s.mean) + ' ' +
         bench::format_number(s.min) + ' ' + bench::format_number(s.max) + '\n';
  }
  std::string gp = "# gnuplot script: gnuplot plot.gp\nset terminal pngcairo size 900,600\nset key outside\nset grid\n";
  for (const auto& [metric, text] : dat) {
    flowvol::detail::write_file((od / (metric + ".dat")).string(), text);
    gp += "\nset output '" + metric + ".png'\nset title '" + metric + "'\nset xlabel 'x'\nset ylabel '" +
          metric + "'\nplot ";
    const auto& t = titles[metric];
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) gp += ", \\\n     ";
      gp += "'" + metric + ".dat' index " + std::to_string(i) +
            " using 1:2:3:4 with yerrorlines title '" + t[i] + "'";
    }
    gp += "\n";
  }
  flowvol::detail::write_file((od / "plot.gp").string(), gp);

  // Text summary: the last x of each series.
  out << files.size() << " file(s), " << rows.size() << " rows\n";
  out << "metric               algorithm            counters          x        mean         min         max  n\n";
  for (std::size_t i = 0; i < summary.size(); ++i) {
    const auto& s = summary[i];
    const bool last = i + 1 == summary.size() || summary[i + 1].metric != s.metric ||
                      summary[i + 1].algorithm != s.algorithm || summary[i + 1].counters != s.counters;
    if (!last) continue;
    char line[256];
    std::snprintf(line, sizeof line, "%-20s %-20s %8llu %10s %11.6g %11.6g %11.6g  %zu\n",
                  s.metric.c_str(), s.algorithm.c_str(), static_cast<unsigned long long>(s.counters),
                  bench::format_number(s.x).c_str(), s.mean, s.min, s.max, s.n);
    out << line;
  }
  out << "wrote " << (od / "summary.csv").string() << " and " << dat.size() << " data file(s)\n";
  return 0;
}

// --- argument parsing --------------------------------------------------------

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  for (const auto& a : args)
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  return false;
}

/// Replaces `bench --config FILE` with the flags the file spells out as
/// key=value lines. Lists may be written [a,b] or a,b. Flags that also
/// appear on the command line are left to the command line.
inline std::vector<std::string> expand_config(std::vector<std::string> args) {
  const auto sub = std::find(args.begin(), args.end(), "bench");
  if (sub == args.end()) return args;
  auto it = std::find_if(sub, args.end(), [](const std::string& a) {
    return a == "--config" || a.rfind("--config=", 0) == 0;
  });
  if (it == args.end()) return args;
  std::string path;
  auto last = it + 1;
  if (*it == "--config") {
    if (last == args.end()) throw ConfigError("--config: a file path is required");
    path = *last++;
  } else {
    path = it->substr(9);
  }
  const auto pos = it - args.begin();
  args.erase(it, last);
  std::vector<std::string> injected;
  const auto text = flowvol::detail::read_file(path);
  flowvol::detail::for_each_line(text, [&](std::size_t line, std::string_view rec) {
    rec = trim(rec);
    if (rec.empty() || rec.front() == '#' || rec.front() == ';' || rec.front() == '[') return;
    const auto eq = rec.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(path + ":" + std::to_string(line) + ": expected key=value");
    const std::string key(trim(rec.substr(0, eq)));
    std::string_view value = trim(rec.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '[' && value.back() == ']')
      value = value.substr(1, value.size() - 2);
    const std::string flag = "--" + key;
    if (has_flag(args, flag)) return;
    if (key == "single-thread") {
      if (value == "true" || value == "1") injected.push_back(flag);
      return;
    }
    injected.push_back(flag);
    injected.emplace_back(value);
  });
  args.insert(args.begin() + pos, injected.begin(), injected.end());
  return args;
}

}  // namespace detail

/// Entry point shared by the tool and the tests. Exit codes: 0 success,
/// 1 partial failure, 2 configuration error.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"flowvol: stream volume estimation experiments"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // generate
  GenerateOptions g;
  std::string gen_n = "1e6";
  auto* gen = app.add_subcommand("generate", "write a synthetic Zipf trace");
  gen->add_option("--zipf", g.skew, "Zipf skew (>= 0)")->required();
  gen->add_option("--n", gen_n, "number of packets (1e6 notation accepted)");
  gen->add_option("--universe", g.universe, "number of distinct ranks");
  gen->add_option("--seed", g.seed, "RNG seed");
  gen->add_option("--max-weight", g.max_weight, "weights uniform on [1, M]");
  gen->add_option("--format", g.format, "text or binary (default: from extension)");
  gen->add_flag("--addresses", g.addresses, "write src,dst,weight address packets instead");
  gen->add_option("--out", g.out, "output path")->required();

  // bench
  ExperimentConfig raw;
  std::string preset_name, mode = "frequency", bench_n;
  bool single = false;
  auto* bench_cmd = app.add_subcommand("bench", "run an experiment and write CSV results");
  std::string config_unused;
  bench_cmd->add_option("--config", config_unused, "key=value file mirroring these flags");
  bench_cmd->add_option("--preset", preset_name, "top32, top512, mse, window or hhh2d");
  bench_cmd->add_option("--mode", mode, "frequency, topk, window or hhh");
  bench_cmd->add_option("--trace", raw.trace, "trace file (default: synthetic Zipf)");
  bench_cmd->add_option("--zipf", raw.skews, "Zipf skew list")->delimiter(',');
  bench_cmd->add_option("--n", bench_n, "packets per synthetic trace");
  bench_cmd->add_option("--universe", raw.universe, "Zipf universe size");
  bench_cmd->add_option("--max-weight", raw.max_weight, "synthetic weights uniform on [1, M]");
  bench_cmd->add_option("--hhh-dims", raw.hhh_dims, "1 or 2 address dimensions");
  bench_cmd->add_option("--algorithms", raw.algorithms, "SS FR PSS 0.5-PSS <d>W-PSS CMS CS FAST SSH WFAST HFAST")
      ->delimiter(',');
  bench_cmd->add_option("--counters", raw.counters, "counter budgets")->delimiter(',');
  bench_cmd->add_option("--ways", raw.ways, "ways for dW-PSS");
  bench_cmd->add_option("--rows", raw.rows, "sketch rows");
  bench_cmd->add_option("--sketch-factor", raw.sketch_factor, "sketch cells per counter of budget");
  bench_cmd->add_option("--epsilon", raw.epsilon, "FAST accuracy for hhh mode");
  bench_cmd->add_option("--gamma", raw.gamma, "FAST space/speed trade-off");
  bench_cmd->add_option("--epsilons", raw.epsilons, "WFAST accuracy sweep")->delimiter(',');
  bench_cmd->add_option("--windows", raw.windows, "WFAST window sweep")->delimiter(',');
  bench_cmd->add_option("--theta", raw.theta, "heavy-hitter threshold fraction");
  bench_cmd->add_option("--include-root", raw.include_root, "report the fully general pattern");
  bench_cmd->add_option("--k", raw.k, "top-k size");
  bench_cmd->add_option("--m", raw.m, "candidates returned");
  bench_cmd->add_option("--pr-curve", raw.pr_curve, "emit the precision/recall sweep");
  bench_cmd->add_option("--seeds", raw.seeds, "seed list")->delimiter(',');
  bench_cmd->add_option("--out", raw.out, "output directory")->envname("FLOWVOL_OUT");
  bench_cmd->add_option("--threads", raw.threads, "worker threads")->envname("FLOWVOL_THREADS");
  bench_cmd->add_flag("--single-thread", single, "force one worker");
  bench_cmd->add_option("--throughput-reps", raw.throughput_reps, "timed passes per run (0: off)");

  // report
  std::string report_dir, report_out;
  auto* rep = app.add_subcommand("report", "aggregate bench CSVs across seeds");
  rep->add_option("dir", report_dir, "directory of bench CSVs")->required();
  rep->add_option("--out", report_out, "output directory (default: DIR/report)");

  std::vector<std::string> args;
  try {
    args = detail::expand_config(std::vector<std::string>(argv + 1, argv + argc));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      g.length = parse_count(gen_n, "--n");
      return cmd_generate(g, out);
    }
    if (*rep) return cmd_report(report_dir, report_out, out);

    ExperimentConfig c;
    if (!preset_name.empty()) {
      auto p = preset(preset_name);
      if (!p) throw ConfigError("unknown preset '" + preset_name + "'");
      c = std::move(*p);
    }
    auto given = [&](const char* flag) { return bench_cmd->count(flag) > 0; };
    if (given("--mode")) c.mode = parse_mode(mode);
    if (given("--trace")) c.trace = raw.trace;
    if (given("--zipf")) c.skews = raw.skews;
    if (given("--n")) c.length = parse_count(bench_n, "--n");
    if (given("--universe")) c.universe = raw.universe;
    if (given("--max-weight")) c.max_weight = raw.max_weight;
    if (given("--hhh-dims")) c.hhh_dims = raw.hhh_dims;
    if (given("--algorithms")) c.algorithms = raw.algorithms;
    if (given("--counters")) c.counters = raw.counters;
    if (given("--ways")) c.ways = raw.ways;
    if (given("--rows")) c.rows = raw.rows;
    if (given("--sketch-factor")) c.sketch_factor = raw.sketch_factor;
    if (given("--epsilon")) c.epsilon = raw.epsilon;
    if (given("--gamma")) c.gamma = raw.gamma;
    if (given("--epsilons")) c.epsilons = raw.epsilons;
    if (given("--windows")) c.windows = raw.windows;
    if (given("--theta")) c.theta = raw.theta;
    if (given("--include-root")) c.include_root = raw.include_root;
    if (given("--k")) c.k = raw.k;
    if (given("--m")) c.m = raw.m;
    if (given("--pr-curve")) c.pr_curve = raw.pr_curve;
    if (given("--seeds")) c.seeds = raw.seeds;
    if (given("--out")) c.out = raw.out;
    if (given("--throughput-reps")) c.throughput_reps = raw.throughput_reps;
    c.threads = given("--threads") ? raw.threads
                                   : std::max<std::size_t>(1, std::thread::hardware_concurrency());
    if (single) c.threads = 1;
    return cmd_bench(c, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace flowvol::cli
