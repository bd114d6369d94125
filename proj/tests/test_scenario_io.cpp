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

#include <algorithm>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "sisim/scenario.hpp"
#include "sisim/simulator.hpp"

using namespace sisim;

namespace {

bool has_error_at(const ParseResult& res, const std::string& path) {
  return std::any_of(res.errors.begin(), res.errors.end(),
                     [&](const ValidationError& e) { return e.path == path; });
}

const char* kContentionScenario = R"({
  "horizon": 100,
  "masters": [
    {"name": "A", "workload": {"transactions": [{"issue": 0, "size_bytes": 4}]}},
    {"name": "B", "workload": {"transactions": [{"issue": 1, "size_bytes": 4}]}}
  ]
})";

}  // namespace

TEST_CASE("minimal scenario fills documented defaults") {
  const ParseResult res = parse_scenario(R"({"horizon": 100})");
  REQUIRE(res.ok());
  const ScenarioConfig& cfg = *res.config;
  CHECK(cfg.horizon == 100);
  CHECK(cfg.seed == 0);
  CHECK(cfg.ftti_budget == 1000);
  REQUIRE(cfg.masters.size() == 6);  // default six-core island
  CHECK(cfg.masters[0].name == "core0");
  CHECK(cfg.masters[5].name == "core5");
  CHECK(cfg.interconnect.arbitration == Arbitration::RoundRobin);
  CHECK(cfg.interconnect.beat_width == 4);
  CHECK(cfg.interconnect.single_beat_latency == 4);
  CHECK(cfg.integration.coupled);
  CHECK(cfg.integration.coupled_observe == 1);
  CHECK(cfg.integration.loose_observe == 20);
  CHECK(cfg.policy.on_quota == QuotaReaction::StallOffender);
  CHECK(cfg.policy.stall_duration == 100);
}

TEST_CASE("unknown quota subject is reported at its JSON path") {
  const ParseResult res = parse_scenario(R"({
    "masters": [{"name": "A"}],
    "quotas": [{"subject": "Z", "limit": 5}]
  })");
  CHECK(!res.ok());
  CHECK(has_error_at(res, "/quotas/0/subject"));
}

TEST_CASE("loose latencies below coupled are rejected") {
  const ParseResult res = parse_scenario(R"({
    "masters": [{"name": "A"}],
    "integration": {"coupled": [10, 10], "loose": [2, 2]}
  })");
  CHECK(!res.ok());
  CHECK(has_error_at(res, "/integration"));
}

TEST_CASE("parse totality: bad documents give errors, never crashes") {
  CHECK(!parse_scenario("not json at all").ok());
  CHECK(has_error_at(parse_scenario("{"), "/"));
  CHECK(!parse_scenario("[1,2,3]").ok());
  CHECK(!parse_scenario(R"({"horizon": -5})").ok());
  CHECK(!parse_scenario(R"({"masters": []})").ok());
  // Multiple independent errors are all collected.
  const ParseResult res = parse_scenario(R"({
    "masters": [{"name": "A"}, {"name": "A"}],
    "quotas": [{"subject": "Z"}],
    "watchdogs": [{"id": "w", "deadline": 10, "period": 5,
                   "target": {"heartbeat": "A"}}]
  })");
  CHECK(!res.ok());
  CHECK(res.errors.size() >= 3);
}

TEST_CASE("validation catches cross-reference problems") {
  const ParseResult dev = parse_scenario(R"({
    "masters": [{"name": "A", "workload": {"transactions": [{"target": "nodev"}]}}]
  })");
  CHECK(!dev.ok());
  CHECK(has_error_at(dev, "/masters/0/workload/transactions/0/target"));

  const ParseResult burst = parse_scenario(R"({
    "masters": [{"name": "A", "workload": {"transactions": [{"burst": true, "size_bytes": 64}]}}]
  })");
  CHECK(!burst.ok());

  const ParseResult inj = parse_scenario(R"({
    "masters": [{"name": "A"}],
    "injectors": [{"name": "i", "program": [
      {"repeat": "inf"}, {"repeat": 1}
    ]}]
  })");
  CHECK(!inj.ok());
  CHECK(has_error_at(inj, "/injectors/0/program/0"));

  const ParseResult dup_quota = parse_scenario(R"({
    "masters": [{"name": "A"}, {"name": "B"}],
    "quotas": [{"subject": "A", "limit": 1}, {"subject": "A", "limit": 2}]
  })");
  CHECK(!dup_quota.ok());
  CHECK(has_error_at(dup_quota, "/quotas/1"));
}

TEST_CASE("two-master contention run reproduces the hand-simulated cell") {
  const ParseResult res = parse_scenario(kContentionScenario);
  REQUIRE(res.ok());
  const RunReport report = run_scenario(*res.config);
  // A occupies 0..3; B issued at 1 waits cycles 1,2,3.
  CHECK(report.interference_matrix[1][0] == 3);
  CHECK(report.interference_matrix[0][1] == 0);
  CHECK(report.interference_total == 3);
  CHECK(report.txn_total == 2);
  CHECK(report.txn_completed == 2);
  CHECK(report.txn_per_master.at("A") == 1);
}

TEST_CASE("same seed, same bytes") {
  const ParseResult res = parse_scenario(kContentionScenario);
  REQUIRE(res.ok());
  const std::string a = emit_report(run_scenario(*res.config));
  const std::string b = emit_report(run_scenario(*res.config));
  CHECK(a == b);
}

TEST_CASE("report canonicality: emitting one report twice is byte-identical") {
  const ParseResult res = parse_scenario(kContentionScenario);
  REQUIRE(res.ok());
  const RunReport report = run_scenario(*res.config);
  CHECK(emit_report(report) == emit_report(report));
}

TEST_CASE("horizon zero yields an empty skeleton") {
  const ParseResult res = parse_scenario(R"({"horizon": 0, "masters": [{"name": "A"}]})");
  REQUIRE(res.ok());
  const RunReport report = run_scenario(*res.config);
  CHECK(report.final_cycle == 0);
  CHECK(report.txn_total == 0);
  CHECK(report.interference_total == 0);
  const auto j = nlohmann::json::parse(emit_report(report));
  CHECK(j.contains("interference_matrix"));
  CHECK(j.contains("verdicts"));
}

TEST_CASE("interrupt records carry the full schema") {
  ScenarioConfig cfg;
  cfg.horizon = 1000;
  MasterConfig a;
  a.name = "A";
  a.generator = GeneratorSpec{0, 4, 60, TxnOp::Read, 4, false, 0, Target::memory()};
  MasterConfig b;
  b.name = "B";
  b.generator = GeneratorSpec{1, 16, 20, TxnOp::Read, 4, false, 0, Target::memory()};
  cfg.masters = {a, b};
  cfg.quotas = {QuotaConfig{"A", 5, QuotaMode::Caused}};
  const RunReport report = run_scenario(cfg);
  REQUIRE(!report.interrupts.empty());
  const auto j = report_to_json(report);
  const auto& irq = j["interrupts"][0];
  for (const char* key : {"kind", "subject", "value", "raised_at", "handled_at", "effect_at"}) {
    CHECK(irq.contains(key));
  }
  CHECK(irq["kind"] == "quota");
  CHECK(irq["subject"] == "A");
}

TEST_CASE("observer configs round into the report") {
  const ParseResult res = parse_scenario(R"({
    "horizon": 50,
    "masters": [
      {"name": "A", "workload": {"transactions": [{"issue": 0}, {"issue": 10}]}}
    ],
    "observers": [
      {"name": "issues", "capacity": 8, "kinds": ["txn_issue"], "masters": ["A"]}
    ]
  })");
  REQUIRE(res.ok());
  const RunReport report = run_scenario(*res.config);
  REQUIRE(report.observers.size() == 1);
  CHECK(report.observers[0].name == "issues");
  CHECK(report.observers[0].snapshot.size() == 2);
}

TEST_CASE("unknown observer kinds and bad address ranges are rejected") {
  const ParseResult res = parse_scenario(R"({
    "masters": [{"name": "A"}],
    "observers": [{"name": "o", "kinds": ["bogus"], "address_range": [10, 2]}]
  })");
  CHECK(!res.ok());
  CHECK(has_error_at(res, "/observers/0/kinds/0"));
  CHECK(has_error_at(res, "/observers/0/address_range"));
}

TEST_CASE("campaign fault documents parse against the base scenario") {
  const ParseResult base = parse_scenario(R"({
    "horizon": 2000,
    "masters": [{"name": "A"}],
    "redundant_pairs": [{"id": "p0", "threshold": 4}]
  })");
  REQUIRE(base.ok());
  const ParseResult faults = parse_faults_into(
      R"({"faults": [{"at": 0, "store_value": {"pair": "p0", "index": 1}}]})",
      *base.config);
  REQUIRE(faults.ok());
  REQUIRE(faults.config->faults.size() == 1);
  CHECK(faults.config->faults[0].pair_id == "p0");

  const ParseResult bad = parse_faults_into(
      R"({"faults": [{"at": 0, "store_value": {"pair": "nope", "index": 1}}]})",
      *base.config);
  CHECK(!bad.ok());
  CHECK(has_error_at(bad, "/faults/0/store_value/pair"));
}
