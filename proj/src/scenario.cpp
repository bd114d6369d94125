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

#include "sisim/scenario.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "json.hpp"

namespace sisim {

namespace {

using nlohmann::json;

using Errors = std::vector<ValidationError>;

void add_error(Errors& errs, std::string path, std::string message) {
  errs.push_back(ValidationError{std::move(path), std::move(message)});
}

std::uint64_t get_u64(const json& obj, const std::string& key, std::uint64_t dflt,
                      const std::string& path, Errors& errs) {
  if (!obj.contains(key)) return dflt;
  if (!obj[key].is_number_unsigned()) {
    add_error(errs, path + "/" + key, "expected a non-negative integer");
    return dflt;
  }
  return obj[key].get<std::uint64_t>();
}

bool get_bool(const json& obj, const std::string& key, bool dflt,
              const std::string& path, Errors& errs) {
  if (!obj.contains(key)) return dflt;
  if (!obj[key].is_boolean()) {
    add_error(errs, path + "/" + key, "expected a boolean");
    return dflt;
  }
  return obj[key].get<bool>();
}

std::string get_string(const json& obj, const std::string& key, std::string dflt,
                       const std::string& path, Errors& errs) {
  if (!obj.contains(key)) return dflt;
  if (!obj[key].is_string()) {
    add_error(errs, path + "/" + key, "expected a string");
    return dflt;
  }
  return obj[key].get<std::string>();
}

TxnOp parse_op(const json& obj, const std::string& path, Errors& errs) {
  const std::string s = get_string(obj, "op", "read", path, errs);
  if (s == "read") return TxnOp::Read;
  if (s == "write") return TxnOp::Write;
  add_error(errs, path + "/op", "expected \"read\" or \"write\"");
  return TxnOp::Read;
}

Target parse_target(const json& obj, const std::string& path, Errors& errs) {
  const std::string s = get_string(obj, "target", "memory", path, errs);
  if (s == "memory") return Target::memory();
  return Target::dev(s);
}

TrafficDescriptor parse_descriptor(const json& obj, const std::string& path,
                                   Errors& errs) {
  TrafficDescriptor d;
  d.op = parse_op(obj, path, errs);
  d.size_bytes = get_u64(obj, "size_bytes", 4, path, errs);
  d.burst = get_bool(obj, "burst", false, path, errs);
  d.delay_after = get_u64(obj, "delay_after", 0, path, errs);
  d.target = parse_target(obj, path, errs);
  if (obj.contains("repeat")) {
    if (obj["repeat"].is_string() && obj["repeat"].get<std::string>() == "inf") {
      d.repeat = std::nullopt;
    } else if (obj["repeat"].is_number_unsigned()) {
      d.repeat = obj["repeat"].get<std::uint64_t>();
    } else {
      add_error(errs, path + "/repeat", "expected an unsigned integer or \"inf\"");
    }
  }
  if (d.size_bytes == 0) add_error(errs, path + "/size_bytes", "must be > 0");
  if (d.repeat && *d.repeat < 1) add_error(errs, path + "/repeat", "must be >= 1");
  return d;
}

TxnSpec parse_txn_spec(const json& obj, const std::string& path, Errors& errs) {
  TxnSpec t;
  t.op = parse_op(obj, path, errs);
  t.size_bytes = get_u64(obj, "size_bytes", 4, path, errs);
  t.burst = get_bool(obj, "burst", false, path, errs);
  t.issue = get_u64(obj, "issue", 0, path, errs);
  t.target = parse_target(obj, path, errs);
  if (obj.contains("address")) t.address = get_u64(obj, "address", 0, path, errs);
  if (t.size_bytes == 0) add_error(errs, path + "/size_bytes", "must be > 0");
  return t;
}

MasterKind parse_master_kind(const json& obj, const std::string& path, Errors& errs) {
  const std::string s = get_string(obj, "kind", "core", path, errs);
  if (s == "core") return MasterKind::Core;
  if (s == "accelerator") return MasterKind::Accelerator;
  if (s == "dma") return MasterKind::Dma;
  if (s == "injector") return MasterKind::Injector;
  add_error(errs, path + "/kind", "expected core|accelerator|dma|injector");
  return MasterKind::Core;
}

void parse_interconnect(const json& obj, ScenarioConfig& cfg, Errors& errs) {
  const std::string path = "/interconnect";
  const std::string arb = get_string(obj, "arbitration", "round_robin", path, errs);
  if (arb == "round_robin") {
    cfg.interconnect.arbitration = Arbitration::RoundRobin;
  } else if (arb == "fixed_priority") {
    cfg.interconnect.arbitration = Arbitration::FixedPriority;
  } else {
    add_error(errs, path + "/arbitration", "expected round_robin|fixed_priority");
  }
  cfg.interconnect.beat_width = get_u64(obj, "beat_width", 4, path, errs);
  cfg.interconnect.single_beat_latency =
      get_u64(obj, "single_beat_latency", 4, path, errs);
  if (cfg.interconnect.beat_width == 0) {
    add_error(errs, path + "/beat_width", "must be > 0");
  }
  if (obj.contains("burst_latency")) {
    if (!obj["burst_latency"].is_object()) {
      add_error(errs, path + "/burst_latency", "expected an object of size -> cycles");
    } else {
      for (const auto& [key, val] : obj["burst_latency"].items()) {
        try {
          const std::uint64_t size = std::stoull(key);
          if (!val.is_number_unsigned()) throw std::invalid_argument("cycles");
          cfg.interconnect.burst_latency[size] = val.get<Cycle>();
        } catch (const std::exception&) {
          add_error(errs, path + "/burst_latency/" + key,
                    "expected unsigned size key and cycle value");
        }
      }
    }
  }
  if (obj.contains("devices")) {
    const json& devs = obj["devices"];
    for (std::size_t i = 0; i < devs.size(); ++i) {
      const std::string dpath = path + "/devices/" + std::to_string(i);
      DeviceConfig d;
      d.name = get_string(devs[i], "name", "", dpath, errs);
      d.latency = get_u64(devs[i], "latency", 10, dpath, errs);
      if (d.name.empty()) add_error(errs, dpath + "/name", "device name required");
      if (d.name == "memory") {
        add_error(errs, dpath + "/name", "\"memory\" is a reserved target");
      }
      cfg.interconnect.devices.push_back(std::move(d));
    }
  }
}

void parse_masters(const json& arr, ScenarioConfig& cfg, Errors& errs) {
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = "/masters/" + std::to_string(i);
    const json& m = arr[i];
    MasterConfig mc;
    mc.name = get_string(m, "name", "", path, errs);
    if (mc.name.empty()) add_error(errs, path + "/name", "master name required");
    mc.kind = parse_master_kind(m, path, errs);
    if (m.contains("workload")) {
      const json& w = m["workload"];
      if (w.contains("transactions")) {
        for (std::size_t j = 0; j < w["transactions"].size(); ++j) {
          mc.transactions.push_back(parse_txn_spec(
              w["transactions"][j], path + "/workload/transactions/" + std::to_string(j),
              errs));
        }
      }
      if (w.contains("generator")) {
        const std::string gpath = path + "/workload/generator";
        const json& g = w["generator"];
        GeneratorSpec gs;
        gs.start = get_u64(g, "start", 0, gpath, errs);
        gs.period = get_u64(g, "period", 10, gpath, errs);
        gs.count = get_u64(g, "count", 0, gpath, errs);
        gs.op = parse_op(g, gpath, errs);
        gs.size_bytes = get_u64(g, "size_bytes", 4, gpath, errs);
        gs.burst = get_bool(g, "burst", false, gpath, errs);
        gs.jitter = get_u64(g, "jitter", 0, gpath, errs);
        gs.target = parse_target(g, gpath, errs);
        if (gs.period == 0) add_error(errs, gpath + "/period", "must be > 0");
        if (gs.size_bytes == 0) add_error(errs, gpath + "/size_bytes", "must be > 0");
        mc.generator = gs;
      }
    }
    cfg.masters.push_back(std::move(mc));
  }
}

void parse_injectors(const json& arr, ScenarioConfig& cfg, Errors& errs) {
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = "/injectors/" + std::to_string(i);
    const json& inj = arr[i];
    InjectorConfig ic;
    ic.name = get_string(inj, "name", "inj" + std::to_string(i), path, errs);
    ic.start = get_u64(inj, "start", 0, path, errs);
    if (inj.contains("program")) {
      const json& prog = inj["program"];
      for (std::size_t j = 0; j < prog.size(); ++j) {
        ic.sequence.push_back(
            parse_descriptor(prog[j], path + "/program/" + std::to_string(j), errs));
      }
    }
    for (std::size_t j = 0; j + 1 < ic.sequence.size(); ++j) {
      if (!ic.sequence[j].repeat) {
        add_error(errs, path + "/program/" + std::to_string(j),
                  "infinite descriptor must be last");
      }
    }
    cfg.injectors.push_back(std::move(ic));
  }
}

void parse_quotas(const json& arr, ScenarioConfig& cfg, Errors& errs) {
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = "/quotas/" + std::to_string(i);
    QuotaConfig q;
    q.subject = get_string(arr[i], "subject", "", path, errs);
    q.limit = get_u64(arr[i], "limit", 0, path, errs);
    const std::string mode = get_string(arr[i], "mode", "caused", path, errs);
    if (mode == "caused") {
      q.mode = QuotaMode::Caused;
    } else if (mode == "suffered") {
      q.mode = QuotaMode::Suffered;
    } else {
      add_error(errs, path + "/mode", "expected caused|suffered");
    }
    cfg.quotas.push_back(std::move(q));
  }
}

void parse_pairs(const json& arr, ScenarioConfig& cfg, Errors& errs) {
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = "/redundant_pairs/" + std::to_string(i);
    const json& p = arr[i];
    PairConfig pc;
    pc.id = get_string(p, "id", "pair" + std::to_string(i), path, errs);
    pc.threshold = get_u64(p, "threshold", 10, path, errs);
    pc.poll_period = get_u64(p, "poll_period", 1, path, errs);
    pc.comparator = get_bool(p, "comparator", true, path, errs);
    pc.window = get_u64(p, "window", kDefaultSignatureWindow, path, errs);
    if (pc.threshold < 1) add_error(errs, path + "/threshold", "must be >= 1");
    if (pc.poll_period < 1) add_error(errs, path + "/poll_period", "must be >= 1");
    if (p.contains("stream")) {
      const json& s = p["stream"];
      if (s.contains("instructions")) {
        for (std::size_t j = 0; j < s["instructions"].size(); ++j) {
          const std::string ipath =
              path + "/stream/instructions/" + std::to_string(j);
          const json& insn = s["instructions"][j];
          Instruction in;
          in.pc = get_u64(insn, "pc", 0, ipath, errs);
          in.opcode = static_cast<std::uint32_t>(get_u64(insn, "opcode", 0, ipath, errs));
          if (insn.contains("store")) {
            in.is_store = true;
            in.store_address = get_u64(insn["store"], "address", 0, ipath + "/store", errs);
            in.store_value = get_u64(insn["store"], "value", 0, ipath + "/store", errs);
          }
          pc.instructions.push_back(in);
        }
      } else if (s.contains("generator")) {
        const std::string gpath = path + "/stream/generator";
        const json& g = s["generator"];
        StreamGenerator sg;
        sg.length = get_u64(g, "length", 100, gpath, errs);
        sg.seed_offset = get_u64(g, "seed_offset", 0, gpath, errs);
        if (g.contains("store_rate")) {
          if (!g["store_rate"].is_number()) {
            add_error(errs, gpath + "/store_rate", "expected a number in [0, 1]");
          } else {
            sg.store_rate = g["store_rate"].get<double>();
          }
        }
        if (sg.store_rate < 0.0 || sg.store_rate > 1.0) {
          add_error(errs, gpath + "/store_rate", "must be in [0, 1]");
        }
        pc.generator = sg;
      } else {
        add_error(errs, path + "/stream", "expected instructions or generator");
      }
    } else {
      pc.generator = StreamGenerator{};  // default synthetic stream
    }
    cfg.redundant_pairs.push_back(std::move(pc));
  }
}

void parse_watchdogs(const json& arr, ScenarioConfig& cfg, Errors& errs) {
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = "/watchdogs/" + std::to_string(i);
    const json& w = arr[i];
    WatchdogConfig wc;
    wc.id = get_string(w, "id", "wd" + std::to_string(i), path, errs);
    wc.deadline = get_u64(w, "deadline", 50, path, errs);
    wc.arm_at = get_u64(w, "arm_at", 0, path, errs);
    if (w.contains("period")) wc.period = get_u64(w, "period", 0, path, errs);
    if (wc.deadline < 1) add_error(errs, path + "/deadline", "must be >= 1");
    if (wc.period && *wc.period <= wc.deadline) {
      add_error(errs, path + "/period", "re-arm period must exceed the deadline");
    }
    if (w.contains("target") && w["target"].is_object()) {
      const json& t = w["target"];
      if (t.contains("heartbeat")) {
        wc.heartbeat = true;
        wc.heartbeat_master = t["heartbeat"].is_string() ? t["heartbeat"].get<std::string>() : "";
      } else if (t.contains("challenge")) {
        wc.heartbeat = false;
        wc.challenge_device = t["challenge"].is_string() ? t["challenge"].get<std::string>() : "";
      } else {
        add_error(errs, path + "/target", "expected heartbeat or challenge target");
      }
    } else {
      add_error(errs, path + "/target", "watchdog target required");
    }
    cfg.watchdogs.push_back(std::move(wc));
  }
}

void parse_observers(const json& arr, ScenarioConfig& cfg, Errors& errs) {
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = "/observers/" + std::to_string(i);
    const json& o = arr[i];
    ObserverConfig oc;
    oc.name = get_string(o, "name", "obs" + std::to_string(i), path, errs);
    oc.capacity = get_u64(o, "capacity", kDefaultTraceCapacity, path, errs);
    if (oc.capacity == 0) add_error(errs, path + "/capacity", "must be > 0");
    if (o.contains("kinds")) {
      for (std::size_t j = 0; j < o["kinds"].size(); ++j) {
        const json& k = o["kinds"][j];
        const std::string name = k.is_string() ? k.get<std::string>() : "";
        if (!trace_kind_from_name(name)) {
          add_error(errs, path + "/kinds/" + std::to_string(j),
                    "unknown trace kind \"" + name + "\"");
        } else {
          oc.kinds.push_back(name);
        }
      }
    }
    if (o.contains("masters")) {
      for (const auto& m : o["masters"]) {
        oc.masters.push_back(m.is_string() ? m.get<std::string>() : "");
      }
    }
    if (o.contains("address_range")) {
      const json& r = o["address_range"];
      if (!r.is_array() || r.size() != 2 || !r[0].is_number_unsigned() ||
          !r[1].is_number_unsigned()) {
        add_error(errs, path + "/address_range", "expected [lo, hi]");
      } else {
        oc.address_range = {r[0].get<std::uint64_t>(), r[1].get<std::uint64_t>()};
        if (oc.address_range->first > oc.address_range->second) {
          add_error(errs, path + "/address_range", "lo must be <= hi");
        }
      }
    }
    cfg.observers.push_back(std::move(oc));
  }
}

void parse_faults(const json& arr, ScenarioConfig& cfg, Errors& errs) {
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = "/faults/" + std::to_string(i);
    const json& f = arr[i];
    FaultSpec fs;
    fs.at = get_u64(f, "at", 0, path, errs);
    fs.seed = get_u64(f, "seed", 0, path, errs);
    if (f.contains("store_value")) {
      fs.kind = FaultKind::StoreValue;
      const json& sv = f["store_value"];
      fs.pair_id = get_string(sv, "pair", "", path + "/store_value", errs);
      fs.store_index = get_u64(sv, "index", 0, path + "/store_value", errs);
      const std::string replica =
          get_string(sv, "replica", "trail", path + "/store_value", errs);
      if (replica == "head") {
        fs.trail_replica = false;
      } else if (replica == "trail") {
        fs.trail_replica = true;
      } else {
        add_error(errs, path + "/store_value/replica", "expected head|trail");
      }
    } else if (f.contains("crash")) {
      fs.kind = FaultKind::Crash;
      fs.master = f["crash"].is_string() ? f["crash"].get<std::string>() : "";
    } else if (f.contains("device_mute")) {
      fs.kind = FaultKind::DeviceMute;
      fs.device = f["device_mute"].is_string() ? f["device_mute"].get<std::string>() : "";
    } else {
      add_error(errs, path, "expected store_value, crash, or device_mute target");
    }
    cfg.faults.push_back(std::move(fs));
  }
}

void parse_integration(const json& obj, ScenarioConfig& cfg, Errors& errs) {
  const std::string path = "/integration";
  const std::string mode = get_string(obj, "mode", "coupled", path, errs);
  if (mode == "coupled") {
    cfg.integration.coupled = true;
  } else if (mode == "loose") {
    cfg.integration.coupled = false;
  } else {
    add_error(errs, path + "/mode", "expected coupled|loose");
  }
  auto read_pair = [&](const char* key, Cycle& obs, Cycle& ctl) {
    if (!obj.contains(key)) return;
    const json& p = obj[key];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_unsigned() ||
        !p[1].is_number_unsigned()) {
      add_error(errs, path + "/" + key, "expected [observe_latency, control_latency]");
      return;
    }
    obs = p[0].get<Cycle>();
    ctl = p[1].get<Cycle>();
  };
  read_pair("coupled", cfg.integration.coupled_observe, cfg.integration.coupled_control);
  read_pair("loose", cfg.integration.loose_observe, cfg.integration.loose_control);
}

void parse_policy(const json& obj, ScenarioConfig& cfg, Errors& errs) {
  const std::string path = "/policy";
  const std::string q = get_string(obj, "on_quota", "stall_offender", path, errs);
  if (q == "stall_offender") {
    cfg.policy.on_quota = QuotaReaction::StallOffender;
  } else if (q == "drop_offender") {
    cfg.policy.on_quota = QuotaReaction::DropOffender;
  } else if (q == "boost_victim_priority") {
    cfg.policy.on_quota = QuotaReaction::BoostVictimPriority;
  } else {
    add_error(errs, path + "/on_quota",
              "expected stall_offender|drop_offender|boost_victim_priority");
  }
  cfg.policy.stall_duration = get_u64(obj, "stall_duration", 100, path, errs);
  const std::string w = get_string(obj, "on_watchdog", "reset_target", path, errs);
  if (w == "reset_target") {
    cfg.policy.on_watchdog = WatchdogReaction::ResetTarget;
  } else if (w == "safe_state") {
    cfg.policy.on_watchdog = WatchdogReaction::SafeState;
  } else {
    add_error(errs, path + "/on_watchdog", "expected reset_target|safe_state");
  }
  const std::string m = get_string(obj, "on_mismatch", "safe_state", path, errs);
  if (m == "safe_state") {
    cfg.policy.on_mismatch = MismatchReaction::SafeState;
  } else if (m == "reset_pair") {
    cfg.policy.on_mismatch = MismatchReaction::ResetPair;
  } else {
    add_error(errs, path + "/on_mismatch", "expected safe_state|reset_pair");
  }
}

}  // namespace

std::vector<MasterId> build_master_list(const ScenarioConfig& config) {
  std::vector<MasterId> out;
  std::uint32_t idx = 0;
  for (const MasterConfig& m : config.masters) {
    out.push_back(MasterId{idx++, m.name, m.kind});
  }
  for (const InjectorConfig& inj : config.injectors) {
    out.push_back(MasterId{idx++, inj.name, MasterKind::Injector});
  }
  for (const WatchdogConfig& w : config.watchdogs) {
    if (!w.heartbeat) {
      out.push_back(MasterId{idx++, "wd:" + w.id, MasterKind::Injector});
    }
  }
  return out;
}

std::vector<ValidationError> validate_scenario(const ScenarioConfig& config) {
  Errors errs;

  std::set<std::string> master_names;
  for (std::size_t i = 0; i < config.masters.size(); ++i) {
    if (!master_names.insert(config.masters[i].name).second) {
      add_error(errs, "/masters/" + std::to_string(i) + "/name",
                "duplicate master name \"" + config.masters[i].name + "\"");
    }
  }
  std::set<std::string> all_names = master_names;
  for (std::size_t i = 0; i < config.injectors.size(); ++i) {
    if (!all_names.insert(config.injectors[i].name).second) {
      add_error(errs, "/injectors/" + std::to_string(i) + "/name",
                "duplicate master name \"" + config.injectors[i].name + "\"");
    }
  }

  std::set<std::string> devices;
  for (std::size_t i = 0; i < config.interconnect.devices.size(); ++i) {
    if (!devices.insert(config.interconnect.devices[i].name).second) {
      add_error(errs, "/interconnect/devices/" + std::to_string(i) + "/name",
                "duplicate device name");
    }
  }

  auto check_target = [&](const Target& t, const std::string& path) {
    if (!t.is_memory && !devices.count(t.device)) {
      add_error(errs, path, "unknown device \"" + t.device + "\"");
    }
  };
  auto check_burst_covered = [&](std::uint64_t size, bool burst, const std::string& path) {
    if (!burst) return;
    auto it = config.interconnect.burst_latency.lower_bound(size);
    if (it == config.interconnect.burst_latency.end()) {
      add_error(errs, path, "no burst latency entry covers size " + std::to_string(size));
    }
  };

  for (std::size_t i = 0; i < config.masters.size(); ++i) {
    const MasterConfig& m = config.masters[i];
    const std::string path = "/masters/" + std::to_string(i);
    for (std::size_t j = 0; j < m.transactions.size(); ++j) {
      const std::string tpath = path + "/workload/transactions/" + std::to_string(j);
      check_target(m.transactions[j].target, tpath + "/target");
      check_burst_covered(m.transactions[j].size_bytes, m.transactions[j].burst,
                          tpath + "/size_bytes");
    }
    if (m.generator) {
      check_target(m.generator->target, path + "/workload/generator/target");
      check_burst_covered(m.generator->size_bytes, m.generator->burst,
                          path + "/workload/generator/size_bytes");
    }
  }
  for (std::size_t i = 0; i < config.injectors.size(); ++i) {
    const InjectorConfig& inj = config.injectors[i];
    for (std::size_t j = 0; j < inj.sequence.size(); ++j) {
      const std::string dpath =
          "/injectors/" + std::to_string(i) + "/program/" + std::to_string(j);
      check_target(inj.sequence[j].target, dpath + "/target");
      check_burst_covered(inj.sequence[j].size_bytes, inj.sequence[j].burst,
                          dpath + "/size_bytes");
      if (!inj.sequence[j].repeat && j + 1 != inj.sequence.size()) {
        add_error(errs, dpath, "infinite descriptor must be last");
      }
    }
  }

  std::set<std::pair<std::string, int>> quota_keys;
  for (std::size_t i = 0; i < config.quotas.size(); ++i) {
    const QuotaConfig& q = config.quotas[i];
    const std::string path = "/quotas/" + std::to_string(i);
    if (!all_names.count(q.subject)) {
      add_error(errs, path + "/subject", "unknown master \"" + q.subject + "\"");
    }
    if (!quota_keys.insert(std::make_pair(q.subject, static_cast<int>(q.mode))).second) {
      add_error(errs, path, "at most one quota per (subject, mode)");
    }
  }

  std::set<std::string> pair_ids;
  for (std::size_t i = 0; i < config.redundant_pairs.size(); ++i) {
    const PairConfig& p = config.redundant_pairs[i];
    const std::string path = "/redundant_pairs/" + std::to_string(i);
    if (!pair_ids.insert(p.id).second) {
      add_error(errs, path + "/id", "duplicate pair id");
    }
    if (p.threshold < 1) add_error(errs, path + "/threshold", "must be >= 1");
  }

  std::set<std::string> wd_ids;
  for (std::size_t i = 0; i < config.watchdogs.size(); ++i) {
    const WatchdogConfig& w = config.watchdogs[i];
    const std::string path = "/watchdogs/" + std::to_string(i);
    if (!wd_ids.insert(w.id).second) add_error(errs, path + "/id", "duplicate watchdog id");
    if (w.heartbeat) {
      if (!master_names.count(w.heartbeat_master)) {
        add_error(errs, path + "/target/heartbeat",
                  "unknown master \"" + w.heartbeat_master + "\"");
      }
    } else if (!devices.count(w.challenge_device)) {
      add_error(errs, path + "/target/challenge",
                "unknown device \"" + w.challenge_device + "\"");
    }
    if (w.period && *w.period <= w.deadline) {
      add_error(errs, path + "/period", "re-arm period must exceed the deadline");
    }
  }

  for (std::size_t i = 0; i < config.observers.size(); ++i) {
    const ObserverConfig& o = config.observers[i];
    const std::string path = "/observers/" + std::to_string(i);
    for (std::size_t j = 0; j < o.masters.size(); ++j) {
      if (!all_names.count(o.masters[j])) {
        add_error(errs, path + "/masters/" + std::to_string(j),
                  "unknown master \"" + o.masters[j] + "\"");
      }
    }
  }

  for (std::size_t i = 0; i < config.faults.size(); ++i) {
    const FaultSpec& f = config.faults[i];
    const std::string path = "/faults/" + std::to_string(i);
    if (f.at > config.horizon) {
      add_error(errs, path + "/at", "fault cycle beyond horizon");
    }
    switch (f.kind) {
      case FaultKind::StoreValue:
        if (!pair_ids.count(f.pair_id)) {
          add_error(errs, path + "/store_value/pair",
                    "unknown pair \"" + f.pair_id + "\"");
        }
        break;
      case FaultKind::Crash:
        if (!master_names.count(f.master)) {
          add_error(errs, path + "/crash", "unknown master \"" + f.master + "\"");
        }
        break;
      case FaultKind::DeviceMute:
        if (!devices.count(f.device)) {
          add_error(errs, path + "/device_mute", "unknown device \"" + f.device + "\"");
        }
        break;
    }
  }

  if (config.integration.coupled_observe > config.integration.loose_observe ||
      config.integration.coupled_control > config.integration.loose_control) {
    add_error(errs, "/integration", "coupled latencies must be <= loose latencies");
  }

  return errs;
}

ParseResult parse_scenario(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    return ParseResult{std::nullopt, {{"/", "invalid JSON document"}}};
  }
  if (!doc.is_object()) {
    return ParseResult{std::nullopt, {{"/", "expected a JSON object"}}};
  }

  Errors errs;
  ScenarioConfig cfg;
  cfg.horizon = get_u64(doc, "horizon", 10000, "", errs);
  cfg.seed = get_u64(doc, "seed", 0, "", errs);
  cfg.ftti_budget = get_u64(doc, "ftti_budget", 1000, "", errs);

  if (doc.contains("interconnect")) parse_interconnect(doc["interconnect"], cfg, errs);
  if (doc.contains("masters")) {
    parse_masters(doc["masters"], cfg, errs);
  } else {
    // Default scenario size: a 6-core island with idle cores.
    for (int i = 0; i < 6; ++i) {
      cfg.masters.push_back(MasterConfig{"core" + std::to_string(i), MasterKind::Core, {}, {}});
    }
  }
  if (doc.contains("injectors")) parse_injectors(doc["injectors"], cfg, errs);
  if (doc.contains("quotas")) parse_quotas(doc["quotas"], cfg, errs);
  if (doc.contains("redundant_pairs")) parse_pairs(doc["redundant_pairs"], cfg, errs);
  if (doc.contains("watchdogs")) parse_watchdogs(doc["watchdogs"], cfg, errs);
  if (doc.contains("observers")) parse_observers(doc["observers"], cfg, errs);
  if (doc.contains("faults")) parse_faults(doc["faults"], cfg, errs);
  if (doc.contains("integration")) parse_integration(doc["integration"], cfg, errs);
  if (doc.contains("policy")) parse_policy(doc["policy"], cfg, errs);

  if (cfg.masters.empty()) {
    add_error(errs, "/masters", "at least one master per scenario");
  }

  Errors more = validate_scenario(cfg);
  errs.insert(errs.end(), more.begin(), more.end());

  if (!errs.empty()) return ParseResult{std::nullopt, std::move(errs)};
  return ParseResult{std::move(cfg), {}};
}

ParseResult parse_faults_into(const std::string& text, ScenarioConfig base) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    return ParseResult{std::nullopt, {{"/", "invalid JSON document"}}};
  }
  Errors errs;
  base.faults.clear();
  if (doc.contains("faults")) {
    parse_faults(doc["faults"], base, errs);
  } else if (doc.is_array()) {
    parse_faults(doc, base, errs);
  } else {
    add_error(errs, "/", "expected a faults array or {\"faults\": [...]}");
  }
  Errors more = validate_scenario(base);
  errs.insert(errs.end(), more.begin(), more.end());
  if (!errs.empty()) return ParseResult{std::nullopt, std::move(errs)};
  return ParseResult{std::move(base), {}};
}

}  // namespace sisim
