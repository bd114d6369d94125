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
//
// Brute-force per-cycle re-simulation of the shared bus. Written against the
// arbitration rules directly, independent of the event-driven implementation,
// so it can serve as the oracle for interference and wait accounting.

#ifndef SISIM_TESTS_ORACLE_HPP_
#define SISIM_TESTS_ORACLE_HPP_

#include <cstdint>
#include <optional>
#include <vector>

namespace sisim_oracle {

struct Txn {
  std::uint32_t master = 0;
  std::uint64_t issue = 0;
  std::uint64_t duration = 1;
};

struct TxnOutcome {
  std::optional<std::uint64_t> grant;
  std::optional<std::uint64_t> complete;
  std::uint64_t wait = 0;  // all waiting cycles, including behind own master
};

struct WaitEvent {
  std::uint64_t cycle = 0;
  std::uint32_t victim = 0;
  std::uint32_t aggressor = 0;
};

struct Result {
  std::vector<std::vector<std::uint64_t>> matrix;  // victim x aggressor, cross only
  std::vector<TxnOutcome> txns;                    // parallel to the input order
  std::uint64_t cross_wait_total = 0;
  std::vector<WaitEvent> wait_events;              // cross-master, in record order
};

// txns must be given in per-master FIFO order (ties between masters do not
// matter to the arbitration rules). round_robin=false means fixed priority by
// ascending master index.
inline Result simulate(std::size_t n_masters, bool round_robin,
                       const std::vector<Txn>& txns, std::uint64_t horizon) {
  Result res;
  res.matrix.assign(n_masters, std::vector<std::uint64_t>(n_masters, 0));
  res.txns.assign(txns.size(), TxnOutcome{});

  std::optional<std::size_t> busy_txn;
  std::uint64_t busy_until = 0;
  std::uint32_t rr_last = static_cast<std::uint32_t>(n_masters) - 1;

  auto queued = [&](std::size_t i, std::uint64_t c) {
    return txns[i].issue <= c && !res.txns[i].grant.has_value();
  };
  auto earliest_for = [&](std::uint32_t m, std::uint64_t c) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < txns.size(); ++i) {
      if (txns[i].master == m && queued(i, c)) return i;  // per-master FIFO order
    }
    return std::nullopt;
  };

  for (std::uint64_t c = 0; c <= horizon; ++c) {
    if (busy_txn && busy_until <= c) {
      res.txns[*busy_txn].complete = busy_until;
      busy_txn.reset();
    }
    if (!busy_txn) {
      std::optional<std::size_t> pick;
      if (round_robin) {
        for (std::uint32_t step = 1; step <= n_masters && !pick; ++step) {
          const std::uint32_t m = (rr_last + step) % n_masters;
          if (auto i = earliest_for(m, c)) {
            pick = i;
            rr_last = m;
          }
        }
      } else {
        for (std::uint32_t m = 0; m < n_masters && !pick; ++m) {
          pick = earliest_for(m, c);
        }
      }
      if (pick) {
        res.txns[*pick].grant = c;
        busy_txn = pick;
        busy_until = c + txns[*pick].duration;
      }
    }
    if (busy_txn) {
      const std::uint32_t occupant = txns[*busy_txn].master;
      for (std::size_t i = 0; i < txns.size(); ++i) {
        if (!queued(i, c)) continue;
        ++res.txns[i].wait;
        if (txns[i].master != occupant) {
          ++res.matrix[txns[i].master][occupant];
          ++res.cross_wait_total;
          res.wait_events.push_back(WaitEvent{c, txns[i].master, occupant});
        }
      }
    }
  }
  // Completions that land exactly at the horizon boundary.
  if (busy_txn && busy_until <= horizon) res.txns[*busy_txn].complete = busy_until;
  return res;
}

}  // namespace sisim_oracle

#endif  // SISIM_TESTS_ORACLE_HPP_
