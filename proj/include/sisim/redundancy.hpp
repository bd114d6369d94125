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

#ifndef SISIM_REDUNDANCY_HPP_
#define SISIM_REDUNDANCY_HPP_

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sisim/types.hpp"

namespace sisim {

/// Default retirement-window length feeding the diversity signature.
inline constexpr std::size_t kDefaultSignatureWindow = 32;

struct Instruction {
  std::uint64_t pc = 0;
  std::uint32_t opcode = 0;
  bool is_store = false;
  std::uint64_t store_address = 0;
  std::uint64_t store_value = 0;
};

struct StoreOutput {
  std::uint64_t index = 0;  // store index within the stream
  std::uint64_t address = 0;
  std::uint64_t value = 0;
  Cycle retired_at = 0;
};

/// One core executing a fixed instruction stream; an unstalled core retires
/// exactly one instruction per cycle.
class CoreStream {
 public:
  CoreStream() = default;
  CoreStream(std::vector<Instruction> program, std::size_t window_size);

  /// Retire the next instruction at `cycle`. No-op when crashed or done.
  /// Returns the store output when the retired instruction was a store.
  std::optional<StoreOutput> retire(Cycle cycle);

  std::uint64_t retired() const { return retired_; }
  bool done() const { return retired_ >= program_.size(); }
  bool crashed() const { return crashed_; }
  void crash() { crashed_ = true; }

  void reset();

  /// Flip one bit of the value of the indexed store in the underlying
  /// program. Returns false when the index is beyond the stream's stores.
  bool corrupt_store_value(std::uint64_t store_index, unsigned bit);

  const std::deque<std::pair<std::uint64_t, std::uint32_t>>& window() const {
    return window_;
  }
  const std::vector<StoreOutput>& stores() const { return stores_; }
  const std::vector<Instruction>& program() const { return program_; }
  std::uint64_t store_count_in_program() const;

 private:
  std::vector<Instruction> program_;
  std::size_t window_size_ = kDefaultSignatureWindow;
  std::uint64_t retired_ = 0;
  bool crashed_ = false;
  std::deque<std::pair<std::uint64_t, std::uint32_t>> window_;  // (pc, opcode)
  std::vector<StoreOutput> stores_;
  std::uint64_t next_store_index_ = 0;
};

struct DiversitySignature {
  std::uint64_t digest = 0;
  bool operator==(const DiversitySignature&) const = default;
};

/// Deterministic digest of a retirement window; equal windows always hash
/// equal, so signature inequality witnesses diversity.
DiversitySignature signature(
    const std::deque<std::pair<std::uint64_t, std::uint32_t>>& window);

enum class GateDecision { Advance, Stall };

struct StoreMismatch {
  std::uint64_t index = 0;
  Cycle detected_at = 0;
};

/// First index where two index-aligned store streams differ in address or
/// value, or nullopt. Pure; used both online and on final streams.
std::optional<std::uint64_t> compare_stores(const std::vector<StoreOutput>& head,
                                            const std::vector<StoreOutput>& trail);

struct RetirementLogEntry {
  Cycle cycle = 0;
  bool trail = false;            // which replica retired
  std::uint64_t head_retired = 0;   // counters after this cycle's head step
  std::uint64_t trail_retired = 0;  // trail counter before this retirement
};

/// Head/trail staggered pair with output comparison. The stagger gate stalls
/// only the trail; the head always runs free. With poll_period > 1 the gate
/// is only evaluated every poll_period-th cycle (software-enforced variant)
/// and the trail stalls in between.
class RedundantPair {
 public:
  using MismatchHandler = std::function<void(const StoreMismatch&)>;

  RedundantPair(std::string id, std::vector<Instruction> program,
                std::uint64_t threshold, std::size_t window_size,
                bool comparator_enabled, Cycle poll_period);

  /// Stagger decision for the trail this cycle, with the head's same-cycle
  /// retirement already accounted.
  GateDecision stagger_gate() const;

  struct StepResult {
    std::optional<StoreOutput> head_store;
    std::optional<StoreOutput> trail_store;
  };

  /// Advance both replicas by one cycle.
  StepResult step(Cycle cycle);

  void on_mismatch(MismatchHandler h) { mismatch_ = std::move(h); }

  bool diverse() const { return signature(head_.window()) != signature(trail_.window()); }
  bool active() const;
  void reset_pair();

  const std::string& id() const { return id_; }
  CoreStream& head() { return head_; }
  CoreStream& trail() { return trail_; }
  const CoreStream& head() const { return head_; }
  const CoreStream& trail() const { return trail_; }
  std::uint64_t threshold() const { return threshold_; }
  const std::vector<RetirementLogEntry>& retirement_log() const { return log_; }
  const std::vector<StoreMismatch>& mismatches() const { return mismatches_seen_; }

 private:
  void compare_online(Cycle cycle);

  std::string id_;
  CoreStream head_;
  CoreStream trail_;
  std::uint64_t threshold_ = 1;
  bool comparator_enabled_ = true;
  Cycle poll_period_ = 1;
  std::uint64_t compared_upto_ = 0;  // store indices already compared
  std::vector<RetirementLogEntry> log_;
  std::vector<StoreMismatch> mismatches_seen_;
  MismatchHandler mismatch_;
};

}  // namespace sisim

#endif  // SISIM_REDUNDANCY_HPP_
