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

#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "sisim/kernel.hpp"

using namespace sisim;

TEST_CASE("future event is processed at its cycle") {
  Kernel k;
  std::vector<Cycle> fired;
  k.schedule(5, EventKind::Tick, [&](Cycle c) { fired.push_back(c); });
  k.run_until(10);
  CHECK(fired == std::vector<Cycle>{5});
}

TEST_CASE("same-cycle schedule runs after already-queued events this cycle") {
  Kernel k;
  std::vector<int> order;
  k.schedule(3, EventKind::Tick, [&](Cycle c) {
    order.push_back(1);
    // Scheduling at now() is legal and runs after everything already queued
    // for this cycle.
    k.schedule(c, EventKind::Tick, [&](Cycle) { order.push_back(3); });
  });
  k.schedule(3, EventKind::Tick, [&](Cycle) { order.push_back(2); });
  k.run_until(3);
  CHECK(order == std::vector<int>{1, 2, 3});
}

TEST_CASE("scheduling in the past is rejected") {
  Kernel k;
  k.run_until(3);
  CHECK(k.now() == 3);
  CHECK_THROWS_AS(k.schedule(2, EventKind::Tick, [](Cycle) {}), std::logic_error);
}

TEST_CASE("run_until on an empty queue returns the horizon") {
  Kernel k;
  CHECK(k.run_until(100) == 100);
  CHECK(k.now() == 100);
}

TEST_CASE("events beyond the horizon stay queued") {
  Kernel k;
  std::vector<Cycle> fired;
  k.schedule(4, EventKind::Tick, [&](Cycle c) { fired.push_back(c); });
  k.schedule(9, EventKind::Tick, [&](Cycle c) { fired.push_back(c); });
  CHECK(k.run_until(7) == 7);
  CHECK(fired == std::vector<Cycle>{4});
  k.run_until(20);
  CHECK(fired == std::vector<Cycle>{4, 9});
}

TEST_CASE("same-cycle ties break by insertion sequence") {
  Kernel k;
  std::vector<int> order;
  k.schedule(4, EventKind::Tick, [&](Cycle) { order.push_back(0); });
  k.schedule(4, EventKind::Tick, [&](Cycle) { order.push_back(1); });
  k.run_until(4);
  CHECK(order == std::vector<int>{0, 1});
}

TEST_CASE("now tracks virtual time") {
  Kernel k;
  CHECK(k.now() == 0);
  Cycle seen = 999;
  k.schedule(6, EventKind::Tick, [&](Cycle) { seen = k.now(); });
  k.run_until(10);
  CHECK(seen == 6);
  CHECK(k.now() == 10);
}

TEST_CASE("halt freezes time and drops remaining events") {
  Kernel k;
  std::vector<Cycle> fired;
  k.schedule(2, EventKind::Tick, [&](Cycle c) {
    fired.push_back(c);
    k.halt();
  });
  k.schedule(5, EventKind::Tick, [&](Cycle c) { fired.push_back(c); });
  CHECK(k.run_until(10) == 2);
  CHECK(k.now() == 2);
  CHECK(fired == std::vector<Cycle>{2});
}

TEST_CASE("replay determinism: identical schedules give identical logs") {
  auto build_and_run = [] {
    Kernel k;
    for (int i = 0; i < 20; ++i) {
      k.schedule((i * 7) % 13, EventKind::Tick, [](Cycle) {});
    }
    k.run_until(50);
    return k.log();
  };
  const auto a = build_and_run();
  const auto b = build_and_run();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].at == b[i].at);
    CHECK(a[i].seq == b[i].seq);
    CHECK(a[i].kind == b[i].kind);
  }
}

TEST_CASE("no handler observes time going backwards") {
  Kernel k;
  Cycle last = 0;
  bool monotone = true;
  for (int i = 0; i < 30; ++i) {
    k.schedule((i * 11) % 17, EventKind::Tick, [&](Cycle c) {
      if (c < last) monotone = false;
      last = c;
    });
  }
  k.run_until(20);
  CHECK(monotone);
}
