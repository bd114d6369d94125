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

#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "sisim/redundancy.hpp"

using namespace sisim;

namespace {

std::vector<Instruction> make_program(std::size_t length, std::size_t store_every) {
  std::vector<Instruction> out;
  for (std::size_t i = 0; i < length; ++i) {
    Instruction insn;
    insn.pc = 0x1000 + 4 * i;
    insn.opcode = static_cast<std::uint32_t>(i * 37 % 4096);
    if (store_every > 0 && i % store_every == 0) {
      insn.is_store = true;
      insn.store_address = 0x8000 + 8 * i;
      insn.store_value = 0xA0000 + i;
    }
    out.push_back(insn);
  }
  return out;
}

}  // namespace

TEST_CASE("stagger gate boundary: gap == threshold advances, gap < threshold stalls") {
  RedundantPair pair("p", make_program(15, 0), 10, kDefaultSignatureWindow, true, 1);
  CHECK(pair.stagger_gate() == GateDecision::Stall);  // head 0, trail 0
  for (Cycle c = 0; c < 15; ++c) pair.step(c);
  // The log witnesses the gap-10 advance: head 15, trail 5 -> Advance.
  bool saw_boundary = false;
  for (const RetirementLogEntry& e : pair.retirement_log()) {
    if (e.trail && e.head_retired == 15) {
      CHECK(e.trail_retired == 5);
      saw_boundary = true;
    }
  }
  CHECK(saw_boundary);
  // head 15 (done), trail 6: gap 9 -> Stall.
  CHECK(pair.head().retired() == 15);
  CHECK(pair.trail().retired() == 6);
  CHECK(pair.stagger_gate() == GateDecision::Stall);
}

TEST_CASE("trail starts only once the head is a full threshold ahead") {
  RedundantPair pair("p", make_program(30, 0), 10, kDefaultSignatureWindow, true, 1);
  for (Cycle c = 0; c < 30; ++c) pair.step(c);
  const auto& log = pair.retirement_log();
  auto first_trail =
      std::find_if(log.begin(), log.end(), [](const auto& e) { return e.trail; });
  REQUIRE(first_trail != log.end());
  CHECK(first_trail->cycle == 9);
  CHECK(first_trail->head_retired == 10);
  CHECK(first_trail->trail_retired == 0);
}

TEST_CASE("stagger invariant holds on randomized thresholds") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const std::uint64_t threshold = 1 + rng() % 64;
    const std::size_t length = 64 + rng() % 200;
    RedundantPair pair("p", make_program(length, 3), threshold,
                       kDefaultSignatureWindow, true, 1);
    for (Cycle c = 0; c < length + threshold + 10; ++c) pair.step(c);
    for (const RetirementLogEntry& e : pair.retirement_log()) {
      if (!e.trail) continue;
      REQUIRE(e.head_retired >= e.trail_retired + threshold);
    }
  }
}

TEST_CASE("software-polled gate only advances the trail on poll cycles") {
  RedundantPair pair("p", make_program(60, 0), 5, kDefaultSignatureWindow, true, 4);
  for (Cycle c = 0; c < 60; ++c) pair.step(c);
  for (const RetirementLogEntry& e : pair.retirement_log()) {
    if (!e.trail) continue;
    CHECK(e.cycle % 4 == 0);
    CHECK(e.head_retired >= e.trail_retired + 5);
  }
  CHECK(pair.trail().retired() > 0);
  CHECK(pair.trail().retired() < pair.head().retired());
}

TEST_CASE("signatures: identity, sensitivity, empty") {
  std::deque<std::pair<std::uint64_t, std::uint32_t>> a = {{0x1000, 1}, {0x1004, 2}};
  std::deque<std::pair<std::uint64_t, std::uint32_t>> b = a;
  CHECK(signature(a) == signature(b));
  b[1].first = 0x1008;  // one pc differs
  CHECK(!(signature(a) == signature(b)));
  std::deque<std::pair<std::uint64_t, std::uint32_t>> empty1, empty2;
  CHECK(signature(empty1) == signature(empty2));
}

TEST_CASE("signature soundness: equal windows always hash equal") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::deque<std::pair<std::uint64_t, std::uint32_t>> w;
    const std::size_t n = rng() % 32;
    for (std::size_t i = 0; i < n; ++i) {
      w.emplace_back(rng(), static_cast<std::uint32_t>(rng() % 4096));
    }
    auto copy = w;
    CHECK(signature(w) == signature(copy));
    if (!w.empty()) {
      copy[rng() % copy.size()].second ^= 1;
      CHECK(!(signature(w) == signature(copy)));  // no collision on this corpus
    }
  }
}

TEST_CASE("a staggered pair reports diversity while windows differ") {
  RedundantPair pair("p", make_program(40, 0), 8, 16, true, 1);
  for (Cycle c = 0; c < 20; ++c) pair.step(c);
  CHECK(pair.diverse());  // trail lags, windows differ
}

TEST_CASE("compare_stores: identical, flipped, and prefix streams") {
  std::vector<StoreOutput> head = {{0, 8, 100, 1}, {1, 16, 200, 2}, {2, 24, 300, 3}};
  std::vector<StoreOutput> trail = head;
  CHECK(!compare_stores(head, trail).has_value());
  trail[2].value ^= 0x10;
  CHECK(compare_stores(head, trail) == 2);
  trail.pop_back();  // shorter prefix without mismatch
  CHECK(!compare_stores(head, trail).has_value());
}

TEST_CASE("online comparator flags a corrupted trail store at its retirement") {
  RedundantPair pair("p", make_program(60, 4), 6, kDefaultSignatureWindow, true, 1);
  REQUIRE(pair.trail().corrupt_store_value(2, 13));
  std::vector<StoreMismatch> seen;
  pair.on_mismatch([&](const StoreMismatch& m) { seen.push_back(m); });
  for (Cycle c = 0; c < 120; ++c) pair.step(c);
  REQUIRE(seen.size() == 1);  // handler fires only on the first mismatch
  CHECK(seen[0].index == 2);
  // Detection happens when the later (trail) copy of store 2 retires.
  CHECK(seen[0].detected_at == pair.trail().stores()[2].retired_at);
  REQUIRE(!pair.mismatches().empty());
  CHECK(pair.mismatches()[0].index == 2);
}

TEST_CASE("corrupting an index beyond the stream's stores fails") {
  CoreStream core(make_program(20, 10), 8);  // stores at 0 and 10 only
  CHECK(core.store_count_in_program() == 2);
  CHECK(core.corrupt_store_value(1, 0));
  CHECK(!core.corrupt_store_value(2, 0));
}

TEST_CASE("a crashed trail stalls while the head runs free") {
  RedundantPair pair("p", make_program(30, 0), 4, kDefaultSignatureWindow, true, 1);
  pair.trail().crash();
  for (Cycle c = 0; c < 30; ++c) pair.step(c);
  CHECK(pair.head().retired() == 30);
  CHECK(pair.trail().retired() == 0);
  CHECK(pair.stagger_gate() == GateDecision::Stall);
}

TEST_CASE("reset_pair restarts both replicas from index zero") {
  RedundantPair pair("p", make_program(30, 3), 4, kDefaultSignatureWindow, true, 1);
  for (Cycle c = 0; c < 20; ++c) pair.step(c);
  pair.reset_pair();
  CHECK(pair.head().retired() == 0);
  CHECK(pair.trail().retired() == 0);
  CHECK(pair.head().stores().empty());
  CHECK(pair.active());
}
