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

#include "sisim/watchdog.hpp"

#include <stdexcept>

namespace sisim {

void WatchdogManager::configure(const std::string& id, Cycle deadline,
                                WatchdogTarget target,
                                std::optional<Cycle> rearm_period) {
  if (deadline < 1) throw std::invalid_argument("watchdog deadline must be >= 1");
  if (timers_.count(id)) throw std::invalid_argument("duplicate watchdog id " + id);
  Timer t;
  t.deadline = deadline;
  t.target = std::move(target);
  t.period = rearm_period;
  timers_.emplace(id, std::move(t));
}

void WatchdogManager::arm(const std::string& id, Cycle cycle) {
  auto it = timers_.find(id);
  if (it == timers_.end()) throw std::out_of_range("unknown watchdog id " + id);
  Timer& t = it->second;
  if (t.state == WatchdogState::Armed) {
    throw std::logic_error("watchdog " + id + " re-armed while armed");
  }
  t.state = WatchdogState::Armed;
  t.armed_at = cycle;
  t.history.push_back(WatchdogArming{cycle, t.deadline, std::nullopt, std::nullopt});

  const Cycle armed_at = cycle;
  kernel_.schedule(cycle + t.deadline, EventKind::WatchdogExpiry,
                   [this, id, armed_at](Cycle c) { expire(id, armed_at, c); });

  if (!t.target.heartbeat && challenge_) {
    challenge_(id, t.target.device, cycle);
  }
}

void WatchdogManager::observe_response(const std::string& id, Cycle cycle) {
  auto it = timers_.find(id);
  if (it == timers_.end()) throw std::out_of_range("unknown watchdog id " + id);
  Timer& t = it->second;
  if (t.state != WatchdogState::Armed) return;
  if (cycle <= t.armed_at + t.deadline) {  // inclusive bound
    t.state = WatchdogState::Satisfied;
    t.history.back().satisfied_at = cycle;
  }
}

void WatchdogManager::expire(const std::string& id, Cycle armed_at, Cycle cycle) {
  Timer& t = timers_.at(id);
  if (t.state != WatchdogState::Armed || t.armed_at != armed_at) return;
  t.state = WatchdogState::Expired;
  t.history.back().expired_at = cycle;
  if (interrupt_) interrupt_(WatchdogInterrupt{id, armed_at, cycle});
}

void WatchdogManager::start(const std::map<std::string, Cycle>& arm_cycles,
                            Cycle horizon) {
  for (const auto& [id, at] : arm_cycles) {
    if (at >= horizon) continue;
    kernel_.schedule(at, EventKind::Tick, [this, id](Cycle c) { arm(id, c); });
    const Timer& t = timers_.at(id);
    if (t.period) schedule_rearm(id, at + *t.period, horizon);
  }
}

void WatchdogManager::schedule_rearm(const std::string& id, Cycle next,
                                     Cycle horizon) {
  if (next >= horizon) return;
  kernel_.schedule(next, EventKind::Tick, [this, id, next, horizon](Cycle c) {
    arm(id, c);
    const Timer& t = timers_.at(id);
    if (t.period) schedule_rearm(id, next + *t.period, horizon);
  });
}

const WatchdogTarget& WatchdogManager::target(const std::string& id) const {
  return timers_.at(id).target;
}

WatchdogState WatchdogManager::state(const std::string& id) const {
  return timers_.at(id).state;
}

const std::vector<WatchdogArming>& WatchdogManager::history(
    const std::string& id) const {
  return timers_.at(id).history;
}

std::vector<std::string> WatchdogManager::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, _] : timers_) out.push_back(id);
  return out;
}

}  // namespace sisim
