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

#ifndef SISIM_TYPES_HPP_
#define SISIM_TYPES_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace sisim {

/// Virtual time base. All timing in the simulator is expressed in abstract
/// cycles; there is no wall-clock or frequency notion.
using Cycle = std::uint64_t;

enum class MasterKind { Core, Accelerator, Dma, Injector };

struct MasterId {
  std::uint32_t index = 0;
  std::string name;
  MasterKind kind = MasterKind::Core;
};

enum class TxnOp { Read, Write };

/// Transaction target: main memory or a named fixed-latency device.
struct Target {
  bool is_memory = true;
  std::string device;  // valid when !is_memory

  static Target memory() { return Target{true, {}}; }
  static Target dev(std::string label) { return Target{false, std::move(label)}; }

  bool operator==(const Target&) const = default;
};

struct Transaction {
  std::uint64_t id = 0;
  std::uint32_t master = 0;  // dense master index
  TxnOp op = TxnOp::Read;
  std::uint64_t size_bytes = 0;
  bool burst = false;
  Cycle issue = 0;
  Target target = Target::memory();
  std::optional<std::uint64_t> address;
};

/// Per-size transfer latency model shared by the bus and the injector.
/// Burst transactions use one table entry for their full size; non-burst
/// transactions of size s move ceil(s / beat_width) beats, each taking
/// single_beat_latency cycles.
struct LatencyTable {
  std::uint64_t beat_width = 4;
  Cycle single_beat_latency = 4;
  std::map<std::uint64_t, Cycle> burst_latency;          // size -> cycles
  std::map<std::string, Cycle> device_latency;           // device label -> cycles

  Cycle duration(const Transaction& txn) const {
    if (!txn.target.is_memory) {
      auto it = device_latency.find(txn.target.device);
      if (it == device_latency.end()) {
        throw std::out_of_range("no latency entry for device '" + txn.target.device + "'");
      }
      return it->second;
    }
    if (txn.burst) {
      // Exact key, else the smallest entry covering the size.
      auto it = burst_latency.lower_bound(txn.size_bytes);
      if (it == burst_latency.end()) {
        throw std::out_of_range("no burst latency entry covers size " +
                                std::to_string(txn.size_bytes));
      }
      return it->second;
    }
    const std::uint64_t beats = (txn.size_bytes + beat_width - 1) / beat_width;
    return beats * single_beat_latency;
  }
};

}  // namespace sisim

#endif  // SISIM_TYPES_HPP_
