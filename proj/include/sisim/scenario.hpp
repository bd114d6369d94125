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

#ifndef SISIM_SCENARIO_HPP_
#define SISIM_SCENARIO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sisim/fault.hpp"
#include "sisim/interference.hpp"
#include "sisim/observability.hpp"
#include "sisim/redundancy.hpp"
#include "sisim/safety.hpp"
#include "sisim/traffic.hpp"
#include "sisim/types.hpp"

namespace sisim {

struct TxnSpec {
  TxnOp op = TxnOp::Read;
  std::uint64_t size_bytes = 4;
  bool burst = false;
  Cycle issue = 0;
  Target target = Target::memory();
  std::optional<std::uint64_t> address;
};

/// Synthetic per-master workload: `count` transactions of one shape, one
/// every `period` cycles from `start`, each shifted by a seeded jitter in
/// [0, jitter].
struct GeneratorSpec {
  Cycle start = 0;
  Cycle period = 10;
  std::uint64_t count = 0;
  TxnOp op = TxnOp::Read;
  std::uint64_t size_bytes = 4;
  bool burst = false;
  Cycle jitter = 0;
  Target target = Target::memory();
};

struct MasterConfig {
  std::string name;
  MasterKind kind = MasterKind::Core;
  std::vector<TxnSpec> transactions;
  std::optional<GeneratorSpec> generator;
};

struct DeviceConfig {
  std::string name;
  Cycle latency = 10;
};

struct InterconnectConfig {
  Arbitration arbitration = Arbitration::RoundRobin;
  std::uint64_t beat_width = 4;
  Cycle single_beat_latency = 4;
  std::map<std::uint64_t, Cycle> burst_latency;
  std::vector<DeviceConfig> devices;
};

struct InjectorConfig {
  std::string name;
  Cycle start = 0;
  std::vector<TrafficDescriptor> sequence;
};

struct QuotaConfig {
  std::string subject;
  std::uint64_t limit = 0;
  QuotaMode mode = QuotaMode::Caused;
};

/// Seeded instruction stream for a redundant pair: length instructions,
/// each a store with probability store_rate.
struct StreamGenerator {
  std::uint64_t length = 100;
  double store_rate = 0.25;
  std::uint64_t seed_offset = 0;
};

struct PairConfig {
  std::string id;
  std::uint64_t threshold = 10;
  Cycle poll_period = 1;  // > 1 models the software-enforced variant
  bool comparator = true;
  std::size_t window = kDefaultSignatureWindow;
  std::vector<Instruction> instructions;  // explicit stream, if given
  std::optional<StreamGenerator> generator;
};

struct WatchdogConfig {
  std::string id;
  Cycle deadline = 50;
  bool heartbeat = true;
  std::string heartbeat_master;  // master name
  std::string challenge_device;  // device label
  Cycle arm_at = 0;
  std::optional<Cycle> period;
};

struct ObserverConfig {
  std::string name;
  std::size_t capacity = kDefaultTraceCapacity;
  std::vector<std::string> kinds;    // trace kind names; empty = all
  std::vector<std::string> masters;  // master names; empty = all
  std::optional<std::pair<std::uint64_t, std::uint64_t>> address_range;
};

struct IntegrationConfig {
  bool coupled = true;
  Cycle coupled_observe = 1;
  Cycle coupled_control = 1;
  Cycle loose_observe = 20;
  Cycle loose_control = 20;

  IntegrationMode active() const {
    if (coupled) return IntegrationMode{true, coupled_observe, coupled_control};
    return IntegrationMode{false, loose_observe, loose_control};
  }
};

struct ScenarioConfig {
  Cycle horizon = 10000;
  std::uint64_t seed = 0;
  InterconnectConfig interconnect;
  std::vector<MasterConfig> masters;
  std::vector<InjectorConfig> injectors;
  std::vector<QuotaConfig> quotas;
  std::vector<PairConfig> redundant_pairs;
  std::vector<WatchdogConfig> watchdogs;
  std::vector<ObserverConfig> observers;
  std::vector<FaultSpec> faults;
  IntegrationConfig integration;
  ReactionPolicy policy;
  Cycle ftti_budget = 1000;
};

struct ValidationError {
  std::string path;  // JSON-pointer-style
  std::string message;
};

struct ParseResult {
  std::optional<ScenarioConfig> config;
  std::vector<ValidationError> errors;

  bool ok() const { return config.has_value(); }
};

/// Parse and validate a scenario document. Collects every validation error
/// it can find instead of stopping at the first; syntactically invalid JSON
/// yields a single error at "/".
ParseResult parse_scenario(const std::string& text);

/// Validation only (used for already-built configs, e.g. campaign variants).
std::vector<ValidationError> validate_scenario(const ScenarioConfig& config);

/// Parse a fault list document ({"faults": [...]}) against a base scenario.
ParseResult parse_faults_into(const std::string& text, ScenarioConfig base);

/// Dense master list the simulator runs with: configured masters in order,
/// then injectors, then one implicit injector per challenge watchdog
/// (named "wd:<id>").
std::vector<MasterId> build_master_list(const ScenarioConfig& config);

}  // namespace sisim

#endif  // SISIM_SCENARIO_HPP_
