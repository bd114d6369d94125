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

#ifndef SISIM_OBSERVABILITY_HPP_
#define SISIM_OBSERVABILITY_HPP_

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sisim/types.hpp"

namespace sisim {

enum class TraceKind {
  TxnIssue,
  TxnComplete,
  InjectorEmit,
  QuotaInterrupt,
  WatchdogExpiry,
  Mismatch,
  FaultInject,
  ActionEffect,
  StoreRetire,
};

const char* trace_kind_name(TraceKind kind);
std::optional<TraceKind> trace_kind_from_name(const std::string& name);

struct TraceEvent {
  Cycle at = 0;
  TraceKind kind = TraceKind::TxnIssue;
  std::optional<std::uint32_t> master;
  std::optional<std::uint64_t> address;
  std::string detail;
};

/// Filter dimensions are conjunctive; an empty set means match-all for that
/// dimension. The address dimension only matches events that carry one.
struct TraceFilter {
  std::set<TraceKind> kinds;
  std::set<std::uint32_t> masters;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> address_range;  // [lo, hi]
};

bool matches(const TraceFilter& filter, const TraceEvent& ev);

inline constexpr std::size_t kDefaultTraceCapacity = 1024;

/// One trace buffer plus one counter log behind a shared filter: the buffer
/// keeps only the most recent N matching events (FIFO eviction) while the
/// counters keep exact totals per (kind, master).
class Observer {
 public:
  Observer(std::string name, TraceFilter filter,
           std::size_t capacity = kDefaultTraceCapacity);

  void offer(const TraceEvent& ev);

  /// Immutable copy, oldest first; the buffer itself is unchanged.
  std::vector<TraceEvent> snapshot() const;

  const std::string& name() const { return name_; }
  const TraceFilter& filter() const { return filter_; }
  std::size_t capacity() const { return capacity_; }
  using CounterKey = std::pair<TraceKind, std::optional<std::uint32_t>>;
  const std::map<CounterKey, std::uint64_t>& counters() const { return counters_; }

 private:
  std::string name_;
  TraceFilter filter_;
  std::size_t capacity_;
  std::deque<TraceEvent> buffer_;
  std::map<CounterKey, std::uint64_t> counters_;
};

/// Fan-out point: every module publishes here, every observer filters.
class TraceHub {
 public:
  void add_observer(Observer observer) { observers_.push_back(std::move(observer)); }
  void publish(const TraceEvent& ev) {
    full_log_.push_back(ev);
    for (Observer& o : observers_) o.offer(ev);
  }

  std::vector<Observer>& observers() { return observers_; }
  const std::vector<Observer>& observers() const { return observers_; }
  /// Every event ever published, for oracle recounts.
  const std::vector<TraceEvent>& full_log() const { return full_log_; }

 private:
  std::vector<Observer> observers_;
  std::vector<TraceEvent> full_log_;
};

}  // namespace sisim

#endif  // SISIM_OBSERVABILITY_HPP_
