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

#ifndef SISIM_KERNEL_HPP_
#define SISIM_KERNEL_HPP_

#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "sisim/types.hpp"

namespace sisim {

enum class EventKind {
  TxnIssue,
  TxnComplete,
  QuotaInterrupt,
  WatchdogExpiry,
  FaultInject,
  InjectorEmit,
  ActionEffect,
  Tick,  // internal per-cycle driver for bus arbitration and core retirement
};

inline const char* event_kind_name(EventKind kind) {
  switch (kind) {
    case EventKind::TxnIssue: return "txn_issue";
    case EventKind::TxnComplete: return "txn_complete";
    case EventKind::QuotaInterrupt: return "quota_interrupt";
    case EventKind::WatchdogExpiry: return "watchdog_expiry";
    case EventKind::FaultInject: return "fault_inject";
    case EventKind::InjectorEmit: return "injector_emit";
    case EventKind::ActionEffect: return "action_effect";
    case EventKind::Tick: return "tick";
  }
  return "unknown";
}

/// Deterministic cycle-ordered event queue. Same-cycle ties break by
/// insertion sequence number, so processing order is a total order on
/// (at, seq) and identical schedules replay identically.
class Kernel {
 public:
  struct Event {
    Cycle at = 0;
    std::uint64_t seq = 0;
    EventKind kind = EventKind::Tick;
    std::function<void(Cycle)> action;
  };

  Cycle now() const { return now_; }

  /// Enqueue an event. Scheduling in the past signals a module logic bug.
  std::uint64_t schedule(Cycle at, EventKind kind, std::function<void(Cycle)> action) {
    if (at < now_) {
      throw std::logic_error("event scheduled in the past: at=" + std::to_string(at) +
                             " now=" + std::to_string(now_));
    }
    const std::uint64_t seq = next_seq_++;
    queue_.push(Event{at, seq, kind, std::move(action)});
    return seq;
  }

  /// Process all events with at <= horizon, then advance time to the
  /// horizon. Returns the horizon, or the halting cycle if a handler
  /// halted the run.
  Cycle run_until(Cycle horizon) {
    if (horizon < now_) {
      throw std::logic_error("run_until horizon is in the past");
    }
    while (!halted_ && !queue_.empty() && queue_.top().at <= horizon) {
      Event ev = queue_.top();
      queue_.pop();
      now_ = ev.at;
      log_.push_back({ev.at, ev.seq, ev.kind});
      ev.action(ev.at);
    }
    if (halted_) {
      return now_;
    }
    now_ = horizon;
    return horizon;
  }

  /// Stop processing permanently (safe-state entry). Remaining events are
  /// dropped; now() freezes at the halting cycle.
  void halt() { halted_ = true; }
  bool halted() const { return halted_; }

  struct LogEntry {
    Cycle at;
    std::uint64_t seq;
    EventKind kind;
  };
  const std::vector<LogEntry>& log() const { return log_; }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.at != b.at) return a.at > b.at;
      return a.seq > b.seq;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  std::vector<LogEntry> log_;
  Cycle now_ = 0;
  std::uint64_t next_seq_ = 0;
  bool halted_ = false;
};

}  // namespace sisim

#endif  // SISIM_KERNEL_HPP_
