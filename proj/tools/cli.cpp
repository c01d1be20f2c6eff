// Copyright 2026 The comdrift Authors.
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

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "comdrift/error.hpp"
#include "comdrift/io.hpp"
#include "comdrift/migration.hpp"

namespace comdrift::cli {
namespace {

struct AnalyzeConfig {
  std::string input = "-";
  std::string format = "csv";
  std::string output = "-";
  bool json = false;
};

struct SimulateConfig {
  std::string mode = "all";
  std::size_t m_max = 10;
  std::size_t eta_steps = 20;
  std::uint64_t seed = 1;
  std::string output = "-";
};

struct ValidateConfig {
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  double gradient_step = sim::kDefaultGradientStep;
};

struct IoFailure {
  std::string message;
};

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto logger = std::make_shared<spdlog::logger>("comdrift", sink);
  logger->set_pattern("comdrift [%l] %v");
  logger->set_level(spdlog::level::warn);
  if (const char* env = std::getenv("COMDRIFT_LOG")) {
    logger->set_level(spdlog::level::from_str(env));
  }
  return logger;
}

// Output target that is either the caller's stream or a file.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path == "-") {
      stream_ = &fallback;
      return;
    }
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw IoFailure{"cannot open output '" + path + "'"};
    stream_ = &file_;
  }

  std::ostream& get() { return *stream_; }

  void finish(const std::string& path) {
    stream_->flush();
    if (!*stream_) throw IoFailure{"write to '" + path + "' failed"};
  }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

int cmd_analyze(const AnalyzeConfig& cfg, std::istream& in, std::ostream& out,
                spdlog::logger& log) {
  const auto format = cfg.format == "jsonl" ? io::MembershipFormat::kJsonl
                                            : io::MembershipFormat::kCsv;
  std::vector<Snapshot> snapshots;
  if (cfg.input == "-") {
    snapshots = io::parse_membership(in, format);
  } else {
    std::ifstream file(cfg.input, std::ios::binary);
    if (!file) throw IoFailure{"cannot open input '" + cfg.input + "'"};
    snapshots = io::parse_membership(file, format);
  }
  log.info("parsed {} snapshots", snapshots.size());

  const auto reports = analyze_timeline(snapshots);
  log.info("computed {} transition reports", reports.size());

  Sink sink(cfg.output, out);
  io::write_report(sink.get(), reports,
                   cfg.json ? io::ReportFormat::kJson : io::ReportFormat::kCsv);
  sink.finish(cfg.output);
  return kExitOk;
}

int cmd_simulate(const SimulateConfig& cfg, std::ostream& out,
                 spdlog::logger& log) {
  std::vector<sim::Mode> modes;
  if (cfg.mode == "all") {
    modes = {sim::Mode::kEven, sim::Mode::kSingle, sim::Mode::kRandom};
  } else {
    modes = {sim::parse_mode(cfg.mode)};
  }
  const std::vector<double> grid = sim::eta_grid(cfg.eta_steps);
  std::vector<sim::SweepRow> rows;
  for (sim::Mode mode : modes) {
    auto part = sim::sweep({1, cfg.m_max}, grid, mode, cfg.seed);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  log.info("generated {} sweep rows", rows.size());

  Sink sink(cfg.output, out);
  io::write_sweep(sink.get(), rows);
  sink.finish(cfg.output);
  return kExitOk;
}

int cmd_validate(const ValidateConfig& cfg, std::ostream& out,
                 spdlog::logger& log, const RunOptions& options) {
  if (cfg.trials < 1) {
    throw Error(ErrorCode::kInvalidRange, "--trials must be >= 1");
  }
  auto violations = sim::property_suite(cfg.trials, cfg.seed);
  log.info("property suite: {} violations over {} trials", violations.size(),
           cfg.trials);
  const auto eta_grid = sim::default_gradient_eta_grid();
  const auto m_grid = sim::default_gradient_m_grid();
  auto gradient = sim::gradient_check(eta_grid, m_grid, cfg.gradient_step,
                                      options.derivatives);
  log.info("gradient check: {} violations", gradient.size());
  violations.insert(violations.end(), gradient.begin(), gradient.end());

  if (!violations.empty()) {
    io::write_violations(out, violations);
    return kExitViolation;
  }
  out << "ok: 0 violations (" << cfg.trials << " trials, seed " << cfg.seed
      << ", gradient step " << io::format_number(cfg.gradient_step) << ")\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err, const RunOptions& options) {
  auto log = make_logger(err);

  CLI::App app{"Entropy-based community evolution indices"};
  app.name("comdrift");
  app.require_subcommand(1);

  AnalyzeConfig analyze;
  auto* analyze_cmd =
      app.add_subcommand("analyze", "Compute indices for a membership timeline");
  analyze_cmd->add_option("--input", analyze.input, "Membership file, '-' = stdin");
  analyze_cmd->add_option("--format", analyze.format, "Input encoding")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  analyze_cmd->add_option("--output", analyze.output, "Report file, '-' = stdout");
  analyze_cmd->add_flag("--json", analyze.json, "Write JSON instead of CSV");

  SimulateConfig simulate;
  auto* simulate_cmd =
      app.add_subcommand("simulate", "Sweep indices over m, eta and distribution mode");
  simulate_cmd->add_option("--mode", simulate.mode, "Distribution mode")
      ->check(CLI::IsMember({"even", "single", "random", "all"}));
  simulate_cmd->add_option("--m-max", simulate.m_max, "Largest m (from 1)")
      ->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--eta-steps", simulate.eta_steps,
                           "Intervals on the eta grid over [0, 1]")
      ->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--seed", simulate.seed, "Seed for random mode");
  simulate_cmd->add_option("--output", simulate.output, "Sweep CSV, '-' = stdout");

  ValidateConfig validate;
  auto* validate_cmd = app.add_subcommand(
      "validate", "Run randomized property checks and derivative checks");
  validate_cmd->add_option("--trials", validate.trials, "Randomized trials");
  validate_cmd->add_option("--seed", validate.seed, "Seed");
  validate_cmd->add_option("--gradient-step", validate.gradient_step,
                           "Central-difference step in (0, 1e-3]");

  std::vector<const char*> argv{"comdrift"};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "comdrift: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (analyze_cmd->parsed()) return cmd_analyze(analyze, in, out, *log);
    if (simulate_cmd->parsed()) return cmd_simulate(simulate, out, *log);
    return cmd_validate(validate, out, *log, options);
  } catch (const IoFailure& e) {
    err << "comdrift: " << e.message << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "comdrift: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace comdrift::cli
