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

#ifndef SISIM_SAFETY_HPP_
#define SISIM_SAFETY_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sisim/kernel.hpp"
#include "sisim/types.hpp"

namespace sisim {

/// Safety-island attachment style. Coupled integration observes and controls
/// with lower latency than loose (chiplet-style) integration; the config
/// parser rejects orderings that violate this.
struct IntegrationMode {
  bool coupled = true;
  Cycle observe_latency = 1;  // added to interrupt delivery
  Cycle control_latency = 1;  // added before a control action takes effect
};

enum class InterruptKind { Quota, Watchdog, Mismatch };

const char* interrupt_kind_name(InterruptKind kind);

struct Interrupt {
  InterruptKind kind = InterruptKind::Quota;
  std::string subject;  // master name, watchdog id, or pair id
  std::uint64_t value = 0;
  Cycle raised_at = 0;
  bool quota_suffered = false;  // quota interrupts: mode of the firing quota
};

enum class QuotaReaction { StallOffender, DropOffender, BoostVictimPriority };
enum class WatchdogReaction { ResetTarget, SafeState };
enum class MismatchReaction { SafeState, ResetPair };

struct ReactionPolicy {
  QuotaReaction on_quota = QuotaReaction::StallOffender;
  Cycle stall_duration = 100;
  WatchdogReaction on_watchdog = WatchdogReaction::ResetTarget;
  MismatchReaction on_mismatch = MismatchReaction::SafeState;
};

struct InterruptRecord {
  Interrupt interrupt;
  Cycle handled_at = 0;
  Cycle effect_at = 0;
};

struct FttiRecord {
  Cycle t_fault = 0;
  std::optional<Cycle> t_detect;
  std::optional<Cycle> t_mitigated;
};

struct FttiResult {
  bool pass = false;
  Cycle overshoot = 0;  // meaningful when !pass
};

/// Pass iff mitigation completed within the budget, measured fault-to-effect
/// and inclusive at the boundary. A fault never mitigated by end of run fails
/// with overshoot horizon - t_fault.
FttiResult ftti_check(const FttiRecord& record, Cycle budget, Cycle horizon);

/// Receives interrupts through the integration-latency channel and schedules
/// the configured reaction. The actual state changes are applied by the
/// simulator through the action callback at the effect cycle.
class SafetyManager {
 public:
  using ActionApplier = std::function<void(const InterruptRecord&)>;

  SafetyManager(Kernel& kernel, IntegrationMode mode, ReactionPolicy policy)
      : kernel_(kernel), mode_(mode), policy_(policy) {}

  void on_action(ActionApplier a) { apply_ = std::move(a); }

  /// handling cycle = raised_at + observe_latency; the reaction's effect is
  /// scheduled at handling + control_latency. Returns the handling cycle.
  Cycle deliver(const Interrupt& interrupt) {
    const Cycle handled = interrupt.raised_at + mode_.observe_latency;
    const Cycle effect = handled + mode_.control_latency;
    records_.push_back(InterruptRecord{interrupt, handled, effect});
    const std::size_t idx = records_.size() - 1;
    kernel_.schedule(effect, EventKind::ActionEffect, [this, idx](Cycle) {
      if (apply_) apply_(records_[idx]);
    });
    return handled;
  }

  const IntegrationMode& mode() const { return mode_; }
  const ReactionPolicy& policy() const { return policy_; }
  const std::vector<InterruptRecord>& records() const { return records_; }

 private:
  Kernel& kernel_;
  IntegrationMode mode_;
  ReactionPolicy policy_;
  ActionApplier apply_;
  std::vector<InterruptRecord> records_;
};

}  // namespace sisim

#endif  // SISIM_SAFETY_HPP_
