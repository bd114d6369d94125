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

#ifndef SISIM_TRAFFIC_HPP_
#define SISIM_TRAFFIC_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "sisim/bus.hpp"
#include "sisim/kernel.hpp"
#include "sisim/types.hpp"

namespace sisim {

/// One programmable injection pattern element. repeat == nullopt means
/// infinite repetition (only legal as the last element of a program).
struct TrafficDescriptor {
  TxnOp op = TxnOp::Write;
  std::uint64_t size_bytes = 4;
  bool burst = false;
  Cycle delay_after = 0;                  // idle cycles after nominal completion
  std::optional<std::uint64_t> repeat = 1;  // nullopt = infinite
  Target target = Target::memory();
};

struct InjectionProgram {
  std::vector<TrafficDescriptor> sequence;
  Cycle start = 0;
};

struct Emission {
  Cycle at = 0;
  TrafficDescriptor descriptor;
};

/// Pure expansion of a program into its nominal emission schedule. Emission
/// cycles are fixed by the program alone: after each emission the next one
/// happens at emission + duration + delay_after, regardless of how much the
/// actual completion slips under bus contention. Truncated at the horizon
/// (emissions with at >= horizon are excluded).
std::vector<Emission> expand(const InjectionProgram& program, Cycle horizon,
                             const LatencyTable& table);

/// Drives one injector master: schedules InjectorEmit events for each nominal
/// emission and submits the transaction through ordinary bus arbitration.
class TrafficInjector {
 public:
  TrafficInjector(Kernel& kernel, Bus& bus, std::uint32_t master,
                  InjectionProgram program);

  /// Lazily walks the program against the live clock. txn ids are drawn from
  /// the shared counter so they stay unique across all masters.
  void emit(Cycle horizon, std::uint64_t& next_txn_id);

 private:
  void schedule_next(Cycle at, std::size_t desc_index, std::uint64_t remaining,
                     Cycle horizon, std::uint64_t* next_txn_id);

  Kernel& kernel_;
  Bus& bus_;
  std::uint32_t master_;
  InjectionProgram program_;
};

}  // namespace sisim

#endif  // SISIM_TRAFFIC_HPP_
