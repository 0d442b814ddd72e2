// Copyright 2026 The abqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: parameter tables, single protocol runs, Monte
// Carlo experiments, and the brute-force verification suites.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "abqc/experiment.hpp"
#include "abqc/tables.hpp"
#include "abqc/verify.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitBobCheating = 10;
constexpr int kExitAliceCheating = 11;
constexpr int kExitPrivateReject = 12;

std::pair<int, int> parse_n_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    int n = std::stoi(text);
    return {n, n};
  }
  int lo = std::stoi(text.substr(0, dots));
  int hi = std::stoi(text.substr(dots + 2));
  if (lo < 1 || hi < lo) {
    throw std::invalid_argument("bad n range: " + text);
  }
  return {lo, hi};
}

void write_text_or_file(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) {
    throw std::invalid_argument("cannot write: " + path);
  }
  out << text;
}

int exit_code_for(const abqc::Transcript& t) {
  switch (t.verdict) {
    case abqc::Verdict::Accepted:
      return 0;
    case abqc::Verdict::BobCheating:
      return t.params.mode == abqc::Mode::PrivateOnly ? kExitPrivateReject : kExitBobCheating;
    case abqc::Verdict::AliceCheating:
      return kExitAliceCheating;
  }
  return kExitConfigError;
}

int cmd_params(const std::string& n_range, const std::string& format) {
  auto [lo, hi] = parse_n_range(n_range);
  auto rows = abqc::bounds_table(lo, hi);
  if (format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      arr.push_back(abqc::to_json(row));
    }
    std::cout << arr.dump(2) << "\n";
  } else if (format == "csv") {
    std::cout << abqc::bounds_table_csv(rows);
  } else {
    std::printf("%4s %10s %16s %18s %12s %12s %12s %s\n", "n", "min_k", "min_m(derived)", "min_m(text-form)",
                "dev-term", "deF-term", "total", "ok");
    for (const auto& row : rows) {
      std::printf("%4d %10lld %16lld %18.6g %12.6g %12.6g %12.6g %s\n", row.n,
                  static_cast<long long>(row.min_k), static_cast<long long>(row.min_m_derived),
                  row.min_m_text_form, row.max_deviation_term, row.definetti_term, row.total,
                  row.satisfied ? "yes" : "no");
    }
  }
  return 0;
}

int cmd_bounds(const std::string& n_range, bool text_form_m, const std::string& format) {
  auto [lo, hi] = parse_n_range(n_range);
  auto rows = abqc::bounds_table(lo, hi, text_form_m);
  if (format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      arr.push_back(abqc::to_json(row));
    }
    std::cout << arr.dump(2) << "\n";
  } else {
    std::cout << abqc::bounds_table_csv(rows);
  }
  return 0;
}

int cmd_run(const std::string& config_path, bool seed_given, uint64_t seed, const std::string& output) {
  abqc::ExperimentConfig cfg = abqc::config_from_file(config_path);
  uint64_t trial_seed = seed_given ? seed : abqc::derive_seed(cfg.master_seed, 0);
  abqc::Transcript t = abqc::run(cfg.graph, cfg.params, cfg.bob, cfg.alice, trial_seed, cfg.run_options());
  abqc::validate_transcript(t);
  write_text_or_file(output, abqc::to_json(t).dump(2) + "\n");
  return exit_code_for(t);
}

int cmd_montecarlo(const std::string& config_path, int trials_override, int jobs, const std::string& output,
                   const std::string& summary_path) {
  abqc::ExperimentConfig cfg = abqc::config_from_file(config_path);
  if (trials_override > 0) {
    cfg.trials = trials_override;
  }
  std::string transcript_path = output.empty() ? cfg.output_path : output;
  std::ofstream transcript_file;
  std::ostream* sink = nullptr;
  if (!transcript_path.empty()) {
    transcript_file.open(transcript_path);
    if (!transcript_file) {
      throw std::invalid_argument("cannot write: " + transcript_path);
    }
    sink = &transcript_file;
  }
  abqc::ExperimentSummary summary = abqc::run_montecarlo(cfg, jobs, sink);
  write_text_or_file(summary_path, abqc::to_json(summary).dump(2) + "\n");
  return 0;
}

int cmd_verify(const std::string& suite, bool list_only) {
  if (list_only) {
    for (const char* name : {"product-identity", "eq1-bound", "deviation-max", "povm-identity",
                             "backend-equivalence", "minimality"}) {
      std::cout << name << "\n";
    }
    return 0;
  }
  auto results = abqc::run_verification_suites(suite);
  if (results.empty()) {
    std::cerr << "unknown suite: " << suite << "\n";
    return kExitConfigError;
  }
  bool all_passed = true;
  for (const auto& r : results) {
    std::printf("[%s] %-20s %s = %.3g (tolerance %.3g)\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                r.metric.c_str(), r.max_deviation, r.tolerance);
    all_passed = all_passed && r.passed;
  }
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator and analytic toolkit for arbitrated verifiable delegation of graph-state computations"};
  app.require_subcommand(1);

  std::string n_range = "1..5";
  std::string params_format = "text";
  auto* params_cmd = app.add_subcommand("params", "Print minimal protocol parameters for a range of n");
  params_cmd->add_option("--n-range", n_range, "n or A..B range (default 1..5)");
  params_cmd->add_option("--format", params_format, "text, json, or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));

  std::string bounds_range = "1..5";
  std::string bounds_format = "csv";
  bool text_form_m = false;
  auto* bounds_cmd = app.add_subcommand("bounds", "Emit the parameter/budget table as CSV or JSON");
  bounds_cmd->add_option("--n-range", bounds_range, "n or A..B range (default 1..5)");
  bounds_cmd->add_flag("--text-form-m", text_form_m, "evaluate the budget at the k^n-form copy count");
  bounds_cmd->add_option("--format", bounds_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  std::string run_config, run_output;
  uint64_t run_seed = 0;
  auto* run_cmd = app.add_subcommand("run", "Execute one protocol run and write its transcript");
  run_cmd->add_option("--config", run_config, "experiment config (JSON)")->required();
  auto* seed_opt = run_cmd->add_option("--seed", run_seed, "trial seed (default: derived from master_seed)");
  run_cmd->add_option("--output", run_output, "transcript path (default: stdout)");

  std::string mc_config, mc_output, mc_summary;
  int mc_trials = 0;
  int mc_jobs = 1;
  auto* mc_cmd = app.add_subcommand("montecarlo", "Run many trials and aggregate verdict statistics");
  mc_cmd->add_option("--config", mc_config, "experiment config (JSON)")->required();
  mc_cmd->add_option("--trials", mc_trials, "override the configured trial count");
  mc_cmd->add_option("--jobs", mc_jobs, "worker threads (results are order-deterministic)")
      ->check(CLI::PositiveNumber);
  mc_cmd->add_option("--output", mc_output, "JSONL transcript path (default: config's output, else none)");
  mc_cmd->add_option("--summary", mc_summary, "summary path (default: stdout)");

  std::string verify_suite;
  bool verify_list = false;
  auto* verify_cmd = app.add_subcommand("verify", "Run the brute-force identity verification suites");
  verify_cmd->add_option("--suite", verify_suite, "run a single suite by name");
  verify_cmd->add_flag("--list", verify_list, "list suite names and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }

  try {
    if (params_cmd->parsed()) {
      return cmd_params(n_range, params_format);
    }
    if (bounds_cmd->parsed()) {
      return cmd_bounds(bounds_range, text_form_m, bounds_format);
    }
    if (run_cmd->parsed()) {
      return cmd_run(run_config, seed_opt->count() > 0, run_seed, run_output);
    }
    if (mc_cmd->parsed()) {
      return cmd_montecarlo(mc_config, mc_trials, mc_jobs, mc_output, mc_summary);
    }
    if (verify_cmd->parsed()) {
      return cmd_verify(verify_suite, verify_list);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}
