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

// End-to-end checks of the command-line tool: exit codes, file outputs, and
// reproducibility. The binary path comes from the build system.

#include <catch2/catch_amalgamated.hpp>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "abqc/experiment.hpp"

#ifndef ABQC_CLI_PATH
#error "ABQC_CLI_PATH must be defined by the build"
#endif

namespace {

using nlohmann::json;

std::string temp_dir() {
  static std::string dir = [] {
    std::string d = "/tmp/abqc_cli_test_XXXXXX";
    if (mkdtemp(d.data()) == nullptr) {
      throw std::runtime_error("mkdtemp failed");
    }
    return d;
  }();
  return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
  std::string path = temp_dir() + "/" + name;
  std::ofstream out(path);
  out << content;
  return path;
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(ABQC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string run_cli_stdout(const std::string& args) {
  std::string out_path = temp_dir() + "/stdout.txt";
  std::string cmd = std::string(ABQC_CLI_PATH) + " " + args + " >" + out_path + " 2>/dev/null";
  if (std::system(cmd.c_str()) == -1) {
    throw std::runtime_error("failed to launch the CLI");
  }
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kHonestConfig = R"({
  "graph": {"n": 2, "edges": [[0, 1]]},
  "params": {"k": 4, "m": 2, "mode": "arbitrable"},
  "bob": {"kind": "honest"},
  "alice": {"kind": "honest"},
  "trials": 20,
  "master_seed": 9
})";

const char* kFalseRejectConfig = R"({
  "graph": {"n": 2, "edges": [[0, 1]]},
  "params": {"k": 4, "m": 2, "mode": "arbitrable"},
  "bob": {"kind": "honest"},
  "alice": {"kind": "false_reject"},
  "master_seed": 9
})";

const char* kOrthogonalConfig = R"({
  "graph": {"n": 2, "edges": [[0, 1]]},
  "params": {"k": 5, "m": 0, "mode": "arbitrable"},
  "bob": {"kind": "iid", "state": {"kind": "orthogonal"}},
  "master_seed": 9
})";

const char* kPrivateOrthogonalConfig = R"({
  "graph": {"n": 2, "edges": [[0, 1]]},
  "params": {"k": 5, "m": 0, "mode": "private_only"},
  "bob": {"kind": "iid", "state": {"kind": "orthogonal"}},
  "master_seed": 9
})";

/// Finds a seed whose library-run verdict matches `wanted`, so the CLI check
/// below is deterministic.
uint64_t seed_with_verdict(const std::string& config_text, abqc::Verdict wanted) {
  abqc::ExperimentConfig cfg = abqc::config_from_json(json::parse(config_text));
  for (uint64_t seed = 1; seed < 200; ++seed) {
    abqc::Transcript t = abqc::run(cfg.graph, cfg.params, cfg.bob, cfg.alice, seed, cfg.run_options());
    if (t.verdict == wanted) {
      return seed;
    }
  }
  throw std::runtime_error("no seed with the wanted verdict in range");
}

}  // namespace

TEST_CASE("run exit codes track the verdict") {
  std::string honest = write_file("honest.json", kHonestConfig);
  REQUIRE(run_cli("run --config " + honest + " --seed 1") == 0);

  std::string false_reject = write_file("false_reject.json", kFalseRejectConfig);
  REQUIRE(run_cli("run --config " + false_reject + " --seed 1") == 11);

  std::string orthogonal = write_file("orthogonal.json", kOrthogonalConfig);
  uint64_t bob_seed = seed_with_verdict(kOrthogonalConfig, abqc::Verdict::BobCheating);
  REQUIRE(run_cli("run --config " + orthogonal + " --seed " + std::to_string(bob_seed)) == 10);

  std::string priv = write_file("private.json", kPrivateOrthogonalConfig);
  uint64_t reject_seed = seed_with_verdict(kPrivateOrthogonalConfig, abqc::Verdict::BobCheating);
  REQUIRE(run_cli("run --config " + priv + " --seed " + std::to_string(reject_seed)) == 12);
}

TEST_CASE("config errors exit with code 2") {
  REQUIRE(run_cli("run --config /nonexistent.json") == 2);
  std::string bad = write_file("bad.json", R"({"graph": {"n": 2}, "params": {"k": 0, "m": 0}})");
  REQUIRE(run_cli("run --config " + bad) == 2);
  REQUIRE(run_cli("frobnicate") == 2);
}

TEST_CASE("run writes a parseable transcript") {
  std::string honest = write_file("honest2.json", kHonestConfig);
  std::string out = temp_dir() + "/transcript.json";
  REQUIRE(run_cli("run --config " + honest + " --seed 4 --output " + out) == 0);
  json t = json::parse(read_file(out));
  REQUIRE(t["verdict"] == "accepted");
  REQUIRE(t["seed"] == 4);
}

TEST_CASE("montecarlo writes summary plus JSONL transcripts, reproducibly") {
  std::string honest = write_file("honest3.json", kHonestConfig);
  std::string t1 = temp_dir() + "/t1.jsonl";
  std::string t2 = temp_dir() + "/t2.jsonl";
  std::string s1 = temp_dir() + "/s1.json";

  REQUIRE(run_cli("montecarlo --config " + honest + " --output " + t1 + " --summary " + s1) == 0);
  REQUIRE(run_cli("montecarlo --config " + honest + " --jobs 3 --output " + t2) == 0);
  REQUIRE(read_file(t1) == read_file(t2));  // byte-identical regardless of workers

  json summary = json::parse(read_file(s1));
  REQUIRE(summary["trials"] == 20);
  REQUIRE(summary["counts"]["accepted"] == 20);

  int lines = 0;
  std::istringstream in(read_file(t1));
  std::string line;
  while (std::getline(in, line)) {
    ++lines;
  }
  REQUIRE(lines == 20);
}

TEST_CASE("params and bounds emit tables") {
  std::string text = run_cli_stdout("params --n-range 1..3");
  REQUIRE(text.find("min_k") != std::string::npos);

  std::string csv = run_cli_stdout("bounds --n-range 1..2 --format csv");
  REQUIRE(csv.rfind("n,min_k,min_m_derived", 0) == 0);
  REQUIRE(csv.find("\n1,3,13,") != std::string::npos);
  REQUIRE(csv.find("\n2,15,9982,") != std::string::npos);

  std::string jtext = run_cli_stdout("bounds --n-range 1..2 --format json");
  json rows = json::parse(jtext);
  REQUIRE(rows.size() == 2);
  REQUIRE(rows[0]["min_k"] == 3);
  REQUIRE(rows[1]["satisfied"] == true);
}

TEST_CASE("verify subcommand runs a single fast suite") {
  REQUIRE(run_cli("verify --suite minimality") == 0);
  REQUIRE(run_cli("verify --suite no-such-suite") == 2);
  std::string names = run_cli_stdout("verify --list");
  REQUIRE(names.find("product-identity") != std::string::npos);
  REQUIRE(names.find("backend-equivalence") != std::string::npos);
}
