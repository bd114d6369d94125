// Copyright 2026 The sisim Authors
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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sisim/report.hpp"
#include "sisim/scenario.hpp"
#include "sisim/simulator.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitFttiFail = 2;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_errors(const std::vector<sisim::ValidationError>& errors) {
  for (const sisim::ValidationError& e : errors) {
    std::cerr << "error: " << e.path << ": " << e.message << "\n";
  }
}

std::optional<sisim::ScenarioConfig> load_scenario(const std::string& path) {
  auto text = read_file(path);
  if (!text) {
    std::cerr << "error: cannot read " << path << "\n";
    return std::nullopt;
  }
  sisim::ParseResult result = sisim::parse_scenario(*text);
  if (!result.ok()) {
    print_errors(result.errors);
    return std::nullopt;
  }
  return std::move(result.config);
}

void apply_seed_override(sisim::ScenarioConfig& config,
                         const std::optional<std::uint64_t>& cli_seed) {
  // Precedence: --seed, then SISIM_SEED, then the scenario file.
  if (cli_seed) {
    config.seed = *cli_seed;
    return;
  }
  if (const char* env = std::getenv("SISIM_SEED")) {
    config.seed = std::strtoull(env, nullptr, 10);
  }
}

int write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return kExitValidation;
  }
  out << text;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"safety-island / HPC-island interaction simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string report_path;
  std::string faults_path;
  std::optional<std::uint64_t> cli_seed;
  std::string mode_override;

  CLI::App* run = app.add_subcommand("run", "run a scenario and emit its report");
  run->add_option("scenario", scenario_path, "scenario JSON file")->required();
  run->add_option("--report", report_path, "write the report here instead of stdout");
  run->add_option("--seed", cli_seed, "override the scenario seed");
  run->add_option("--mode", mode_override, "override integration mode")
      ->check(CLI::IsMember({"coupled", "loose"}));

  CLI::App* validate = app.add_subcommand("validate", "validate a scenario file");
  validate->add_option("scenario", scenario_path, "scenario JSON file")->required();

  CLI::App* campaign =
      app.add_subcommand("campaign", "run one isolated simulation per fault");
  campaign->add_option("scenario", scenario_path, "scenario JSON file")->required();
  campaign->add_option("--faults", faults_path, "fault list JSON file")->required();
  campaign->add_option("--report", report_path, "write the report here instead of stdout");
  campaign->add_option("--seed", cli_seed, "override the scenario seed");

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) {
    auto config = load_scenario(scenario_path);
    if (!config) return kExitValidation;
    std::cout << "ok\n";
    return kExitOk;
  }

  if (run->parsed()) {
    auto config = load_scenario(scenario_path);
    if (!config) return kExitValidation;
    apply_seed_override(*config, cli_seed);
    if (mode_override == "coupled") config->integration.coupled = true;
    if (mode_override == "loose") config->integration.coupled = false;

    const sisim::RunReport report = sisim::run_scenario(*config);
    const int rc = write_output(sisim::emit_report(report), report_path);
    if (rc != kExitOk) return rc;
    return report.ftti_all_pass ? kExitOk : kExitFttiFail;
  }

  // campaign
  auto config = load_scenario(scenario_path);
  if (!config) return kExitValidation;
  apply_seed_override(*config, cli_seed);

  auto faults_text = read_file(faults_path);
  if (!faults_text) {
    std::cerr << "error: cannot read " << faults_path << "\n";
    return kExitValidation;
  }
  sisim::ParseResult with_faults = sisim::parse_faults_into(*faults_text, *config);
  if (!with_faults.ok()) {
    print_errors(with_faults.errors);
    return kExitValidation;
  }

  sisim::ScenarioConfig base = *with_faults.config;
  const std::vector<sisim::FaultSpec> specs = base.faults;
  base.faults.clear();

  sisim::RunReport report;
  report.seed = base.seed;
  report.campaign = sisim::run_campaign(base, specs);
  bool all_pass = true;
  for (const sisim::CampaignEntry& e : report.campaign) {
    if (!e.control_run && !e.ftti.pass) all_pass = false;
  }
  report.ftti_all_pass = all_pass;

  const int rc = write_output(sisim::emit_report(report), report_path);
  if (rc != kExitOk) return rc;
  return all_pass ? kExitOk : kExitFttiFail;
}
