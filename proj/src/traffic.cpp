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

#include "sisim/traffic.hpp"

#include <stdexcept>

namespace sisim {

namespace {

Cycle descriptor_duration(const TrafficDescriptor& d, const LatencyTable& table) {
  Transaction probe;
  probe.op = d.op;
  probe.size_bytes = d.size_bytes;
  probe.burst = d.burst;
  probe.target = d.target;
  return table.duration(probe);
}

void validate(const InjectionProgram& program) {
  for (std::size_t i = 0; i < program.sequence.size(); ++i) {
    const TrafficDescriptor& d = program.sequence[i];
    if (d.size_bytes == 0) {
      throw std::invalid_argument("descriptor size_bytes must be > 0");
    }
    if (!d.repeat && i + 1 != program.sequence.size()) {
      throw std::invalid_argument("infinite descriptor must be last in the program");
    }
    if (d.repeat && *d.repeat < 1) {
      throw std::invalid_argument("descriptor repeat must be >= 1");
    }
  }
}

}  // namespace

std::vector<Emission> expand(const InjectionProgram& program, Cycle horizon,
                             const LatencyTable& table) {
  validate(program);
  std::vector<Emission> out;
  Cycle at = program.start;
  for (const TrafficDescriptor& d : program.sequence) {
    const Cycle dur = descriptor_duration(d, table);
    std::uint64_t remaining = d.repeat.value_or(0);
    const bool infinite = !d.repeat;
    while (infinite || remaining > 0) {
      if (at >= horizon) return out;
      out.push_back(Emission{at, d});
      at += dur + d.delay_after;
      if (!infinite) --remaining;
    }
  }
  return out;
}

TrafficInjector::TrafficInjector(Kernel& kernel, Bus& bus, std::uint32_t master,
                                 InjectionProgram program)
    : kernel_(kernel), bus_(bus), master_(master), program_(std::move(program)) {
  validate(program_);
}

void TrafficInjector::emit(Cycle horizon, std::uint64_t& next_txn_id) {
  if (program_.sequence.empty() || program_.start >= horizon) return;
  schedule_next(program_.start, 0, program_.sequence[0].repeat.value_or(0), horizon,
                &next_txn_id);
}

void TrafficInjector::schedule_next(Cycle at, std::size_t desc_index,
                                    std::uint64_t remaining, Cycle horizon,
                                    std::uint64_t* next_txn_id) {
  if (desc_index >= program_.sequence.size() || at >= horizon) return;
  const TrafficDescriptor& d = program_.sequence[desc_index];
  const bool infinite = !d.repeat;
  const Cycle dur = descriptor_duration(d, bus_.latency_table());
  const std::uint64_t txn_id = (*next_txn_id)++;

  kernel_.schedule(at, EventKind::InjectorEmit,
                   [this, at, desc_index, remaining, infinite, dur, horizon, txn_id,
                    next_txn_id, &d](Cycle) {
    Transaction txn;
    txn.id = txn_id;
    txn.master = master_;
    txn.op = d.op;
    txn.size_bytes = d.size_bytes;
    txn.burst = d.burst;
    txn.issue = at;
    txn.target = d.target;
    bus_.submit(txn);

    // Next nominal emission: completion-to-emission delay measured from the
    // contention-free completion cycle.
    const Cycle next_at = at + dur + d.delay_after;
    if (infinite || remaining > 1) {
      schedule_next(next_at, desc_index,
                    infinite ? 0 : remaining - 1, horizon, next_txn_id);
    } else if (desc_index + 1 < program_.sequence.size()) {
      const TrafficDescriptor& next = program_.sequence[desc_index + 1];
      schedule_next(next_at, desc_index + 1, next.repeat.value_or(0), horizon,
                    next_txn_id);
    }
  });
}

}  // namespace sisim
