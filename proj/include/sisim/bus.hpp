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

#ifndef SISIM_BUS_HPP_
#define SISIM_BUS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "sisim/kernel.hpp"
#include "sisim/types.hpp"

namespace sisim {

enum class Arbitration { RoundRobin, FixedPriority };

/// Completed-or-pending bookkeeping for one transaction on the bus.
struct TxnRecord {
  Transaction txn;
  std::uint64_t arrival_seq = 0;
  std::optional<Cycle> grant;
  std::optional<Cycle> complete;
  std::uint64_t wait_cycles = 0;
  bool cancelled = false;
};

/// Single shared interconnect between the island's masters and a memory
/// endpoint plus fixed-latency devices. Arbitration grants in zero cycles;
/// waiting happens only while the bus is busy, so interference attribution
/// is exactly occupancy overlap.
class Bus {
 public:
  using WaitSink = std::function<void(std::uint32_t victim, std::uint32_t aggressor, Cycle)>;
  using TxnSink = std::function<void(const TxnRecord&, Cycle)>;

  Bus(Kernel& kernel, std::vector<MasterId> masters, LatencyTable table,
      Arbitration arbitration);

  /// Queue a transaction for arbitration. Suppressed silently while the
  /// master is stalled, crashed, or dropped; rejects duplicate ids and
  /// issue cycles in the past.
  void submit(const Transaction& txn);

  /// Recorded occupant for a simulated cycle, or nullopt when idle.
  /// Querying beyond simulated time is an error.
  std::optional<std::uint32_t> occupant(Cycle cycle) const;

  void on_wait(WaitSink sink) { wait_sink_ = std::move(sink); }
  void on_issue(TxnSink sink) { issue_sink_ = std::move(sink); }
  void on_complete(TxnSink sink) { complete_sink_ = std::move(sink); }

  // Reaction hooks (safety_manager actions).
  void stall_master(std::uint32_t master, Cycle from, Cycle duration);
  void drop_master(std::uint32_t master, Cycle at);
  void set_fixed_priority(std::vector<std::uint32_t> order);
  void crash_master(std::uint32_t master, Cycle at);
  void reset_master(std::uint32_t master);

  bool master_blocked(std::uint32_t master, Cycle at) const;

  const std::vector<TxnRecord>& records() const { return records_; }
  const std::vector<MasterId>& masters() const { return masters_; }
  const LatencyTable& latency_table() const { return latency_; }
  Arbitration arbitration() const { return arbitration_; }

  std::uint64_t total_wait_cycles() const;

 private:
  void request_tick(Cycle at);
  void tick(Cycle cycle);
  std::optional<std::size_t> pick_next(Cycle cycle);

  Kernel& kernel_;
  std::vector<MasterId> masters_;
  LatencyTable latency_;
  Arbitration arbitration_;
  std::vector<std::uint32_t> priority_order_;  // fixed-priority, highest first

  std::vector<TxnRecord> records_;
  std::vector<std::size_t> pending_;  // indices into records_, arrival order

  struct Occupancy {
    std::uint32_t master;
    std::size_t record;
    Cycle begin;
    Cycle end;  // exclusive
  };
  std::optional<Occupancy> current_;
  std::vector<Occupancy> segments_;

  std::set<std::uint64_t> seen_ids_;
  std::set<Cycle> ticks_scheduled_;
  std::vector<Cycle> last_wait_cycle_;  // per record, dedupes double ticks
  std::uint32_t rr_last_ = 0;
  std::uint64_t next_arrival_seq_ = 0;

  struct MasterState {
    Cycle stalled_until = 0;
    bool crashed = false;
    bool dropped = false;
  };
  std::vector<MasterState> master_state_;

  WaitSink wait_sink_;
  TxnSink issue_sink_;
  TxnSink complete_sink_;
};

}  // namespace sisim

#endif  // SISIM_BUS_HPP_
