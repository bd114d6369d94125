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

#include "sisim/observability.hpp"

namespace sisim {

const char* trace_kind_name(TraceKind kind) {
  switch (kind) {
    case TraceKind::TxnIssue: return "txn_issue";
    case TraceKind::TxnComplete: return "txn_complete";
    case TraceKind::InjectorEmit: return "injector_emit";
    case TraceKind::QuotaInterrupt: return "quota_interrupt";
    case TraceKind::WatchdogExpiry: return "watchdog_expiry";
    case TraceKind::Mismatch: return "mismatch";
    case TraceKind::FaultInject: return "fault_inject";
    case TraceKind::ActionEffect: return "action_effect";
    case TraceKind::StoreRetire: return "store_retire";
  }
  return "unknown";
}

std::optional<TraceKind> trace_kind_from_name(const std::string& name) {
  static const std::map<std::string, TraceKind> table = {
      {"txn_issue", TraceKind::TxnIssue},
      {"txn_complete", TraceKind::TxnComplete},
      {"injector_emit", TraceKind::InjectorEmit},
      {"quota_interrupt", TraceKind::QuotaInterrupt},
      {"watchdog_expiry", TraceKind::WatchdogExpiry},
      {"mismatch", TraceKind::Mismatch},
      {"fault_inject", TraceKind::FaultInject},
      {"action_effect", TraceKind::ActionEffect},
      {"store_retire", TraceKind::StoreRetire},
  };
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

bool matches(const TraceFilter& filter, const TraceEvent& ev) {
  if (!filter.kinds.empty() && !filter.kinds.count(ev.kind)) return false;
  if (!filter.masters.empty()) {
    if (!ev.master || !filter.masters.count(*ev.master)) return false;
  }
  if (filter.address_range) {
    if (!ev.address) return false;
    if (*ev.address < filter.address_range->first ||
        *ev.address > filter.address_range->second) {
      return false;
    }
  }
  return true;
}

Observer::Observer(std::string name, TraceFilter filter, std::size_t capacity)
    : name_(std::move(name)), filter_(std::move(filter)), capacity_(capacity) {}

void Observer::offer(const TraceEvent& ev) {
  if (!matches(filter_, ev)) return;
  ++counters_[{ev.kind, ev.master}];
  buffer_.push_back(ev);
  if (buffer_.size() > capacity_) buffer_.pop_front();
}

std::vector<TraceEvent> Observer::snapshot() const {
  return std::vector<TraceEvent>(buffer_.begin(), buffer_.end());
}

}  // namespace sisim
