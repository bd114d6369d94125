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

#include "sisim/bus.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace sisim {

namespace {
constexpr Cycle kNoCycle = std::numeric_limits<Cycle>::max();
}

Bus::Bus(Kernel& kernel, std::vector<MasterId> masters, LatencyTable table,
         Arbitration arbitration)
    : kernel_(kernel),
      masters_(std::move(masters)),
      latency_(std::move(table)),
      arbitration_(arbitration) {
  if (masters_.empty()) {
    throw std::invalid_argument("at least one master per scenario");
  }
  master_state_.resize(masters_.size());
  priority_order_.resize(masters_.size());
  for (std::uint32_t i = 0; i < masters_.size(); ++i) priority_order_[i] = i;
  // Round-robin pointer starts past the last index so the first tie goes to
  // the lowest master index.
  rr_last_ = static_cast<std::uint32_t>(masters_.size()) - 1;
}

bool Bus::master_blocked(std::uint32_t master, Cycle at) const {
  const MasterState& st = master_state_.at(master);
  return st.crashed || st.dropped || at < st.stalled_until;
}

void Bus::submit(const Transaction& txn) {
  if (txn.issue < kernel_.now()) {
    throw std::logic_error("transaction issued in the past");
  }
  if (txn.master >= masters_.size()) {
    throw std::out_of_range("unknown master index");
  }
  if (!seen_ids_.insert(txn.id).second) {
    throw std::invalid_argument("duplicate transaction id " + std::to_string(txn.id));
  }
  if (master_blocked(txn.master, txn.issue)) {
    return;  // stalled/crashed/dropped masters emit nothing
  }
  TxnRecord rec;
  rec.txn = txn;
  rec.arrival_seq = next_arrival_seq_++;
  records_.push_back(rec);
  last_wait_cycle_.push_back(kNoCycle);
  pending_.push_back(records_.size() - 1);
  if (issue_sink_) issue_sink_(records_.back(), txn.issue);
  request_tick(txn.issue);
}

void Bus::request_tick(Cycle at) {
  if (!ticks_scheduled_.insert(at).second) return;
  kernel_.schedule(at, EventKind::Tick, [this](Cycle c) { tick(c); });
}

std::optional<std::size_t> Bus::pick_next(Cycle cycle) {
  // Gather masters with at least one pending txn whose issue cycle is due.
  auto earliest_for = [&](std::uint32_t m) -> std::optional<std::size_t> {
    std::optional<std::size_t> best;
    for (std::size_t idx : pending_) {
      const TxnRecord& r = records_[idx];
      if (r.txn.master == m && r.txn.issue <= cycle) {
        if (!best || records_[*best].arrival_seq > r.arrival_seq) best = idx;
      }
    }
    return best;
  };

  if (arbitration_ == Arbitration::RoundRobin) {
    const auto n = static_cast<std::uint32_t>(masters_.size());
    for (std::uint32_t step = 1; step <= n; ++step) {
      const std::uint32_t m = (rr_last_ + step) % n;
      if (auto idx = earliest_for(m)) {
        rr_last_ = m;
        return idx;
      }
    }
    return std::nullopt;
  }
  for (std::uint32_t m : priority_order_) {
    if (auto idx = earliest_for(m)) return idx;
  }
  return std::nullopt;
}

void Bus::tick(Cycle cycle) {
  ticks_scheduled_.erase(cycle);

  if (current_ && current_->end <= cycle) {
    current_.reset();
  }

  if (!current_) {
    if (auto idx = pick_next(cycle)) {
      TxnRecord& rec = records_[*idx];
      const Cycle dur = latency_.duration(rec.txn);
      rec.grant = cycle;
      current_ = Occupancy{rec.txn.master, *idx, cycle, cycle + dur};
      segments_.push_back(*current_);
      pending_.erase(std::find(pending_.begin(), pending_.end(), *idx));
      const std::size_t rec_idx = *idx;
      kernel_.schedule(cycle + dur, EventKind::TxnComplete, [this, rec_idx](Cycle c) {
        records_[rec_idx].complete = c;
        if (complete_sink_) complete_sink_(records_[rec_idx], c);
      });
    }
  }

  if (current_) {
    for (std::size_t idx : pending_) {
      TxnRecord& rec = records_[idx];
      if (rec.txn.issue > cycle) continue;
      if (last_wait_cycle_[idx] == cycle) continue;
      last_wait_cycle_[idx] = cycle;
      ++rec.wait_cycles;
      if (wait_sink_) wait_sink_(rec.txn.master, current_->master, cycle);
    }
  }

  if (current_ || !pending_.empty()) {
    request_tick(cycle + 1);
  }
}

std::optional<std::uint32_t> Bus::occupant(Cycle cycle) const {
  if (cycle > kernel_.now()) {
    throw std::logic_error("occupant query beyond simulated time");
  }
  for (const Occupancy& seg : segments_) {
    if (cycle >= seg.begin && cycle < seg.end) return seg.master;
  }
  return std::nullopt;
}

void Bus::stall_master(std::uint32_t master, Cycle from, Cycle duration) {
  master_state_.at(master).stalled_until =
      std::max(master_state_.at(master).stalled_until, from + duration);
  // A submission can race the stall on its first cycle (issue events run
  // before the action effect); suppress it like any in-window submission.
  for (auto it = pending_.begin(); it != pending_.end();) {
    if (records_[*it].txn.master == master && records_[*it].txn.issue >= from) {
      records_[*it].cancelled = true;
      it = pending_.erase(it);
    } else {
      ++it;
    }
  }
}

void Bus::drop_master(std::uint32_t master, Cycle at) {
  master_state_.at(master).dropped = true;
  for (auto it = pending_.begin(); it != pending_.end();) {
    if (records_[*it].txn.master == master) {
      records_[*it].cancelled = true;
      it = pending_.erase(it);
    } else {
      ++it;
    }
  }
  (void)at;
}

void Bus::set_fixed_priority(std::vector<std::uint32_t> order) {
  arbitration_ = Arbitration::FixedPriority;
  priority_order_ = std::move(order);
}

void Bus::crash_master(std::uint32_t master, Cycle at) {
  master_state_.at(master).crashed = true;
  (void)at;
}

void Bus::reset_master(std::uint32_t master) {
  master_state_.at(master) = MasterState{};
}

std::uint64_t Bus::total_wait_cycles() const {
  std::uint64_t sum = 0;
  for (const TxnRecord& r : records_) sum += r.wait_cycles;
  return sum;
}

}  // namespace sisim
