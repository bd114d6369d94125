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

#ifndef SISIM_INTERFERENCE_HPP_
#define SISIM_INTERFERENCE_HPP_

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "sisim/types.hpp"

namespace sisim {

/// Victim x aggressor wait-cycle ledger. The diagonal is excluded by
/// construction: a master cannot interfere with itself.
class InterferenceMatrix {
 public:
  explicit InterferenceMatrix(std::size_t masters = 0) { resize(masters); }

  void resize(std::size_t masters) {
    n_ = masters;
    cells_.assign(n_ * n_, 0);
  }

  std::size_t size() const { return n_; }

  std::uint64_t cell(std::uint32_t victim, std::uint32_t aggressor) const {
    check(victim);
    check(aggressor);
    return cells_[victim * n_ + aggressor];
  }

  void increment(std::uint32_t victim, std::uint32_t aggressor) {
    if (victim == aggressor) {
      throw std::invalid_argument("self-interference record rejected");
    }
    check(victim);
    check(aggressor);
    ++cells_[victim * n_ + aggressor];
  }

  /// Total wait cycles this aggressor imposed on all victims.
  std::uint64_t caused(std::uint32_t aggressor) const {
    check(aggressor);
    std::uint64_t sum = 0;
    for (std::uint32_t v = 0; v < n_; ++v) sum += cells_[v * n_ + aggressor];
    return sum;
  }

  /// Total wait cycles this victim spent blocked by all aggressors.
  std::uint64_t suffered(std::uint32_t victim) const {
    check(victim);
    std::uint64_t sum = 0;
    for (std::uint32_t a = 0; a < n_; ++a) sum += cells_[victim * n_ + a];
    return sum;
  }

  std::uint64_t total() const {
    std::uint64_t sum = 0;
    for (auto c : cells_) sum += c;
    return sum;
  }

 private:
  void check(std::uint32_t m) const {
    if (m >= n_) throw std::out_of_range("unknown master index");
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> cells_;
};

enum class QuotaMode { Caused, Suffered };

struct Quota {
  std::uint32_t subject = 0;
  std::uint64_t limit = 0;
  QuotaMode mode = QuotaMode::Caused;
  bool armed = true;
};

struct QuotaInterrupt {
  std::uint32_t subject = 0;
  QuotaMode mode = QuotaMode::Caused;
  std::uint64_t value = 0;
  Cycle cycle = 0;
};

/// Accumulates the interference matrix and evaluates programmable quotas on
/// every wait record, firing exactly once at the first strict exceedance.
class InterferenceMonitor {
 public:
  using InterruptHandler = std::function<void(const QuotaInterrupt&)>;

  explicit InterferenceMonitor(std::size_t masters = 0) : matrix_(masters) {}

  void resize(std::size_t masters) { matrix_.resize(masters); }

  void add_quota(const Quota& q) { quotas_.push_back(q); }
  void on_interrupt(InterruptHandler h) { handler_ = std::move(h); }

  void record_wait(std::uint32_t victim, std::uint32_t aggressor, Cycle cycle) {
    matrix_.increment(victim, aggressor);
    for (auto& q : quotas_) check_quota(q, cycle);
  }

  /// Fires the quota's interrupt if the monitored aggregate strictly exceeds
  /// its limit; the quota disarms afterwards until re-armed.
  void check_quota(Quota& q, Cycle cycle) {
    if (!q.armed) return;
    const std::uint64_t value = q.mode == QuotaMode::Caused ? matrix_.caused(q.subject)
                                                            : matrix_.suffered(q.subject);
    if (value > q.limit) {
      q.armed = false;
      if (handler_) handler_(QuotaInterrupt{q.subject, q.mode, value, cycle});
    }
  }

  void rearm(std::size_t quota_index) { quotas_.at(quota_index).armed = true; }

  const InterferenceMatrix& matrix() const { return matrix_; }
  const std::vector<Quota>& quotas() const { return quotas_; }

 private:
  InterferenceMatrix matrix_;
  std::vector<Quota> quotas_;
  InterruptHandler handler_;
};

}  // namespace sisim

#endif  // SISIM_INTERFERENCE_HPP_
