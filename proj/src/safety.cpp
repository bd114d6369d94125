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

#include "sisim/safety.hpp"

namespace sisim {

const char* interrupt_kind_name(InterruptKind kind) {
  switch (kind) {
    case InterruptKind::Quota: return "quota";
    case InterruptKind::Watchdog: return "watchdog";
    case InterruptKind::Mismatch: return "mismatch";
  }
  return "unknown";
}

FttiResult ftti_check(const FttiRecord& record, Cycle budget, Cycle horizon) {
  if (!record.t_mitigated) {
    return FttiResult{false, horizon - record.t_fault};
  }
  const Cycle elapsed = *record.t_mitigated - record.t_fault;
  if (elapsed <= budget) return FttiResult{true, 0};
  return FttiResult{false, elapsed - budget};
}

}  // namespace sisim
