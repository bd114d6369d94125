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

#ifndef SISIM_WATCHDOG_HPP_
#define SISIM_WATCHDOG_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sisim/kernel.hpp"
#include "sisim/types.hpp"

namespace sisim {

enum class WatchdogState { Idle, Armed, Satisfied, Expired };

struct WatchdogTarget {
  bool heartbeat = true;
  std::uint32_t master = 0;   // heartbeat targets
  std::string device;         // challenge-response targets
};

struct WatchdogInterrupt {
  std::string id;
  Cycle armed_at = 0;
  Cycle cycle = 0;
};

/// One resolved or in-flight arming, kept for the report and the oracle.
struct WatchdogArming {
  Cycle armed_at = 0;
  Cycle deadline = 0;
  std::optional<Cycle> satisfied_at;
  std::optional<Cycle> expired_at;
};

/// Aliveness and challenge-response timers. A timer satisfies inclusively:
/// a response at exactly armed_at + deadline still counts. Watchdog events
/// keep firing even when the monitored master is fault-frozen.
class WatchdogManager {
 public:
  using InterruptHandler = std::function<void(const WatchdogInterrupt&)>;
  /// Issues the challenge read transaction for a challenge-response arming.
  using ChallengeSender = std::function<void(const std::string& wd_id,
                                             const std::string& device, Cycle)>;

  explicit WatchdogManager(Kernel& kernel) : kernel_(kernel) {}

  void on_interrupt(InterruptHandler h) { interrupt_ = std::move(h); }
  void on_challenge(ChallengeSender s) { challenge_ = std::move(s); }

  void configure(const std::string& id, Cycle deadline, WatchdogTarget target,
                 std::optional<Cycle> rearm_period);

  /// Arm a configured timer at `cycle`; re-arming a currently Armed timer is
  /// an error. Challenge-response timers send their challenge immediately.
  void arm(const std::string& id, Cycle cycle);

  /// A response (heartbeat transaction or challenge completion) observed for
  /// the timer. Late responses are ignored; expiry already handled them.
  void observe_response(const std::string& id, Cycle cycle);

  const WatchdogTarget& target(const std::string& id) const;
  WatchdogState state(const std::string& id) const;
  const std::vector<WatchdogArming>& history(const std::string& id) const;
  std::vector<std::string> ids() const;

  /// Schedule the configured arm_at (plus periodic re-arms) for every timer.
  void start(const std::map<std::string, Cycle>& arm_cycles, Cycle horizon);

 private:
  struct Timer {
    Cycle deadline = 1;
    WatchdogTarget target;
    std::optional<Cycle> period;
    WatchdogState state = WatchdogState::Idle;
    Cycle armed_at = 0;
    std::vector<WatchdogArming> history;
  };

  void expire(const std::string& id, Cycle armed_at, Cycle cycle);
  void schedule_rearm(const std::string& id, Cycle next, Cycle horizon);

  Kernel& kernel_;
  std::map<std::string, Timer> timers_;
  InterruptHandler interrupt_;
  ChallengeSender challenge_;
};

}  // namespace sisim

#endif  // SISIM_WATCHDOG_HPP_
