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

#ifndef SISIM_SIMULATOR_HPP_
#define SISIM_SIMULATOR_HPP_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sisim/bus.hpp"
#include "sisim/fault.hpp"
#include "sisim/interference.hpp"
#include "sisim/kernel.hpp"
#include "sisim/observability.hpp"
#include "sisim/redundancy.hpp"
#include "sisim/report.hpp"
#include "sisim/safety.hpp"
#include "sisim/scenario.hpp"
#include "sisim/traffic.hpp"
#include "sisim/watchdog.hpp"

namespace sisim {

/// One full run of a scenario. Owns every module instance; internals stay
/// accessible after run() so tests can check invariants against raw logs.
class Simulation {
 public:
  explicit Simulation(ScenarioConfig config);
  ~Simulation();

  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  void run();
  RunReport report() const;

  const ScenarioConfig& config() const { return config_; }
  const Kernel& kernel() const { return *kernel_; }
  const Bus& bus() const { return *bus_; }
  const InterferenceMonitor& monitor() const { return *monitor_; }
  const WatchdogManager& watchdogs() const { return *watchdogs_; }
  const SafetyManager& safety() const { return *safety_; }
  const TraceHub& traces() const { return *traces_; }
  const std::vector<std::unique_ptr<RedundantPair>>& pairs() const { return pairs_; }
  std::uint32_t master_index(const std::string& name) const;
  bool safe_state_entered() const { return safe_state_entered_; }
  Cycle safe_state_at() const { return safe_state_at_; }

  /// Deterministic synthetic instruction stream, also used by campaign setup.
  static std::vector<Instruction> generate_stream(const StreamGenerator& gen,
                                                  std::uint64_t scenario_seed);

 private:
  void setup();
  void schedule_workload(std::uint32_t master, const MasterConfig& mc, Cycle base);
  void schedule_faults();
  void ensure_pair_tick(Cycle at);
  void pair_tick(Cycle cycle);
  void apply_action(const InterruptRecord& rec);
  void enter_safe_state(Cycle cycle);
  bool device_muted(const std::string& device, Cycle at) const;

  ScenarioConfig config_;
  std::vector<MasterId> masters_;
  std::map<std::string, std::uint32_t> master_index_;

  std::unique_ptr<Kernel> kernel_;
  std::unique_ptr<Bus> bus_;
  std::unique_ptr<InterferenceMonitor> monitor_;
  std::unique_ptr<WatchdogManager> watchdogs_;
  std::unique_ptr<SafetyManager> safety_;
  std::unique_ptr<TraceHub> traces_;
  std::vector<std::unique_ptr<TrafficInjector>> injectors_;
  std::vector<std::unique_ptr<RedundantPair>> pairs_;

  std::uint64_t next_txn_id_ = 0;
  std::map<std::uint64_t, std::string> challenge_txns_;  // txn id -> watchdog id
  std::map<std::string, Cycle> device_muted_from_;
  std::set<Cycle> pair_ticks_scheduled_;
  std::vector<std::string> notes_;
  bool safe_state_entered_ = false;
  Cycle safe_state_at_ = 0;
  bool ran_ = false;
};

RunReport run_scenario(const ScenarioConfig& config);

/// Isolated full simulations, one per fault, plus a fault-free control run.
std::vector<CampaignEntry> run_campaign(const ScenarioConfig& base,
                                        const std::vector<FaultSpec>& specs);

}  // namespace sisim

#endif  // SISIM_SIMULATOR_HPP_
