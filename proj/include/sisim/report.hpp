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

#ifndef SISIM_REPORT_HPP_
#define SISIM_REPORT_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sisim/fault.hpp"
#include "sisim/observability.hpp"
#include "sisim/redundancy.hpp"
#include "sisim/safety.hpp"
#include "sisim/watchdog.hpp"

namespace sisim {

struct ObserverReport {
  std::string name;
  std::vector<TraceEvent> snapshot;
  std::map<Observer::CounterKey, std::uint64_t> counters;
};

struct PairReport {
  std::string id;
  std::uint64_t head_retired = 0;
  std::uint64_t trail_retired = 0;
  std::vector<StoreMismatch> mismatches;
  bool diverse = false;
};

struct WatchdogReport {
  std::string id;
  std::vector<WatchdogArming> armings;
};

struct FttiReportEntry {
  FttiRecord record;
  FttiResult result;
};

struct RunReport {
  Cycle final_cycle = 0;
  std::uint64_t seed = 0;
  bool safe_state = false;
  Cycle safe_state_at = 0;

  std::vector<std::string> master_names;
  std::vector<std::vector<std::uint64_t>> interference_matrix;  // victim-major
  std::uint64_t interference_total = 0;
  std::uint64_t bus_total_wait = 0;

  std::vector<InterruptRecord> interrupts;

  std::uint64_t txn_total = 0;
  std::uint64_t txn_completed = 0;
  std::uint64_t txn_cancelled = 0;
  std::map<std::string, std::uint64_t> txn_per_master;

  std::vector<ObserverReport> observers;
  std::vector<WatchdogReport> watchdogs;
  std::vector<PairReport> pairs;
  std::vector<FttiReportEntry> ftti;
  std::vector<CampaignEntry> campaign;
  std::vector<std::string> notes;
  bool ftti_all_pass = true;
};

nlohmann::json report_to_json(const RunReport& report);

/// Canonical textual form: sorted keys, two-space indent, trailing newline.
/// Emitting the same report twice yields identical bytes.
std::string emit_report(const RunReport& report);

}  // namespace sisim

#endif  // SISIM_REPORT_HPP_
