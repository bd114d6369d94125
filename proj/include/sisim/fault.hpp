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

#ifndef SISIM_FAULT_HPP_
#define SISIM_FAULT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sisim/safety.hpp"
#include "sisim/types.hpp"

namespace sisim {

enum class FaultKind { StoreValue, Crash, DeviceMute };

/// A fault is an effect, not physics: a single bit flip in a replicated
/// store, a permanent freeze of one master, or a device that stops
/// responding. Randomized placement (the flipped bit) derives from `seed`.
struct FaultSpec {
  Cycle at = 0;
  FaultKind kind = FaultKind::StoreValue;
  std::string pair_id;        // StoreValue
  bool trail_replica = true;  // StoreValue: which replica is corrupted
  std::uint64_t store_index = 0;
  std::string master;  // Crash
  std::string device;  // DeviceMute
  std::uint64_t seed = 0;
};

/// One row of a campaign outcome table.
struct CampaignEntry {
  FaultSpec fault;
  bool control_run = false;  // fault-free baseline
  bool detected = false;
  std::optional<Cycle> t_detect;
  std::optional<Cycle> t_mitigated;
  FttiResult ftti;
  std::string note;  // e.g. fault target beyond stream length
};

}  // namespace sisim

#endif  // SISIM_FAULT_HPP_
