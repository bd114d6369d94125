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

#include "sisim/redundancy.hpp"

#include <stdexcept>

namespace sisim {

CoreStream::CoreStream(std::vector<Instruction> program, std::size_t window_size)
    : program_(std::move(program)), window_size_(window_size) {}

std::optional<StoreOutput> CoreStream::retire(Cycle cycle) {
  if (crashed_ || done()) return std::nullopt;
  const Instruction& insn = program_[retired_];
  ++retired_;
  window_.emplace_back(insn.pc, insn.opcode);
  if (window_.size() > window_size_) window_.pop_front();
  if (insn.is_store) {
    StoreOutput out{next_store_index_++, insn.store_address, insn.store_value, cycle};
    stores_.push_back(out);
    return out;
  }
  return std::nullopt;
}

void CoreStream::reset() {
  retired_ = 0;
  crashed_ = false;
  window_.clear();
  stores_.clear();
  next_store_index_ = 0;
}

bool CoreStream::corrupt_store_value(std::uint64_t store_index, unsigned bit) {
  std::uint64_t seen = 0;
  for (Instruction& insn : program_) {
    if (!insn.is_store) continue;
    if (seen == store_index) {
      insn.store_value ^= (std::uint64_t{1} << (bit % 64));
      return true;
    }
    ++seen;
  }
  return false;
}

std::uint64_t CoreStream::store_count_in_program() const {
  std::uint64_t n = 0;
  for (const Instruction& insn : program_) n += insn.is_store ? 1 : 0;
  return n;
}

DiversitySignature signature(
    const std::deque<std::pair<std::uint64_t, std::uint32_t>>& window) {
  // FNV-1a over the window contents.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (i * 8)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& [pc, opcode] : window) {
    mix(pc);
    mix(opcode);
  }
  return DiversitySignature{h};
}

std::optional<std::uint64_t> compare_stores(const std::vector<StoreOutput>& head,
                                            const std::vector<StoreOutput>& trail) {
  const std::size_t n = std::min(head.size(), trail.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (head[i].address != trail[i].address || head[i].value != trail[i].value) {
      return i;
    }
  }
  return std::nullopt;
}

RedundantPair::RedundantPair(std::string id, std::vector<Instruction> program,
                             std::uint64_t threshold, std::size_t window_size,
                             bool comparator_enabled, Cycle poll_period)
    : id_(std::move(id)),
      head_(program, window_size),
      trail_(std::move(program), window_size),
      threshold_(threshold),
      comparator_enabled_(comparator_enabled),
      poll_period_(poll_period == 0 ? 1 : poll_period) {
  if (threshold_ < 1) throw std::invalid_argument("stagger threshold must be >= 1");
}

GateDecision RedundantPair::stagger_gate() const {
  if (trail_.done() || trail_.crashed()) return GateDecision::Stall;
  return head_.retired() >= trail_.retired() + threshold_ ? GateDecision::Advance
                                                          : GateDecision::Stall;
}

bool RedundantPair::active() const {
  const bool head_live = !head_.done() && !head_.crashed();
  // The trail counts as inactive once it can no longer legally advance.
  const bool trail_live = !trail_.done() && !trail_.crashed() &&
                          (head_live || stagger_gate() == GateDecision::Advance);
  return head_live || trail_live;
}

RedundantPair::StepResult RedundantPair::step(Cycle cycle) {
  StepResult result;
  const std::uint64_t head_before = head_.retired();
  result.head_store = head_.retire(cycle);
  if (head_.retired() != head_before) {
    log_.push_back({cycle, false, head_.retired(), trail_.retired()});
  }

  const bool poll = (cycle % poll_period_) == 0;
  if (poll && stagger_gate() == GateDecision::Advance) {
    const std::uint64_t trail_before = trail_.retired();
    result.trail_store = trail_.retire(cycle);
    log_.push_back({cycle, true, head_.retired(), trail_before});
  }

  if (comparator_enabled_) compare_online(cycle);
  return result;
}

void RedundantPair::compare_online(Cycle cycle) {
  const std::size_t n = std::min(head_.stores().size(), trail_.stores().size());
  for (std::size_t i = compared_upto_; i < n; ++i) {
    const StoreOutput& h = head_.stores()[i];
    const StoreOutput& t = trail_.stores()[i];
    if (h.address != t.address || h.value != t.value) {
      StoreMismatch m{i, cycle};
      const bool first = mismatches_seen_.empty();
      mismatches_seen_.push_back(m);
      if (first && mismatch_) mismatch_(m);
    }
  }
  compared_upto_ = n;
}

void RedundantPair::reset_pair() {
  head_.reset();
  trail_.reset();
  compared_upto_ = 0;
  mismatches_seen_.clear();
}

}  // namespace sisim
