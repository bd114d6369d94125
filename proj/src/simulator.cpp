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

#include "sisim/simulator.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace sisim {

namespace {

// Splitmix-style stream separation so each seeded generator in a scenario
// draws from an independent deterministic sequence.
std::uint64_t substream(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

LatencyTable make_latency_table(const InterconnectConfig& ic) {
  LatencyTable t;
  t.beat_width = ic.beat_width;
  t.single_beat_latency = ic.single_beat_latency;
  t.burst_latency = ic.burst_latency;
  for (const DeviceConfig& d : ic.devices) t.device_latency[d.name] = d.latency;
  return t;
}

}  // namespace

std::vector<Instruction> Simulation::generate_stream(const StreamGenerator& gen,
                                                     std::uint64_t scenario_seed) {
  std::mt19937_64 rng(substream(scenario_seed, 0x5157ULL + gen.seed_offset));
  const std::uint64_t permille =
      static_cast<std::uint64_t>(gen.store_rate * 1000.0 + 0.5);
  std::vector<Instruction> out;
  out.reserve(gen.length);
  for (std::uint64_t i = 0; i < gen.length; ++i) {
    Instruction insn;
    insn.pc = 0x1000 + 4 * i;
    insn.opcode = static_cast<std::uint32_t>(rng() % 4096);
    if (rng() % 1000 < permille) {
      insn.is_store = true;
      insn.store_address = (rng() % 0x10000) * 8;
      insn.store_value = rng();
    }
    out.push_back(insn);
  }
  return out;
}

Simulation::Simulation(ScenarioConfig config) : config_(std::move(config)) {
  setup();
}

Simulation::~Simulation() = default;

std::uint32_t Simulation::master_index(const std::string& name) const {
  auto it = master_index_.find(name);
  if (it == master_index_.end()) {
    throw std::out_of_range("unknown master \"" + name + "\"");
  }
  return it->second;
}

bool Simulation::device_muted(const std::string& device, Cycle at) const {
  auto it = device_muted_from_.find(device);
  return it != device_muted_from_.end() && at >= it->second;
}

void Simulation::setup() {
  masters_ = build_master_list(config_);
  for (const MasterId& m : masters_) master_index_[m.name] = m.index;

  kernel_ = std::make_unique<Kernel>();
  traces_ = std::make_unique<TraceHub>();
  bus_ = std::make_unique<Bus>(*kernel_, masters_, make_latency_table(config_.interconnect),
                               config_.interconnect.arbitration);
  monitor_ = std::make_unique<InterferenceMonitor>(masters_.size());
  watchdogs_ = std::make_unique<WatchdogManager>(*kernel_);
  safety_ = std::make_unique<SafetyManager>(*kernel_, config_.integration.active(),
                                            config_.policy);

  for (const ObserverConfig& oc : config_.observers) {
    TraceFilter filter;
    for (const std::string& k : oc.kinds) filter.kinds.insert(*trace_kind_from_name(k));
    for (const std::string& m : oc.masters) filter.masters.insert(master_index(m));
    filter.address_range = oc.address_range;
    traces_->add_observer(Observer(oc.name, filter, oc.capacity));
  }

  for (const QuotaConfig& q : config_.quotas) {
    monitor_->add_quota(Quota{master_index(q.subject), q.limit, q.mode, true});
  }

  // Heartbeat watchdogs listen on their master's transaction issues.
  std::map<std::uint32_t, std::vector<std::string>> heartbeat_by_master;
  for (const WatchdogConfig& w : config_.watchdogs) {
    WatchdogTarget target;
    target.heartbeat = w.heartbeat;
    if (w.heartbeat) {
      target.master = master_index(w.heartbeat_master);
      heartbeat_by_master[target.master].push_back(w.id);
    } else {
      target.device = w.challenge_device;
    }
    watchdogs_->configure(w.id, w.deadline, target, w.period);
  }

  bus_->on_wait([this](std::uint32_t victim, std::uint32_t aggressor, Cycle cycle) {
    if (victim == aggressor) return;  // waiting behind your own earlier txn
    monitor_->record_wait(victim, aggressor, cycle);
  });

  bus_->on_issue([this, heartbeat_by_master](const TxnRecord& rec, Cycle cycle) {
    TraceEvent ev{cycle, TraceKind::TxnIssue, rec.txn.master, rec.txn.address, ""};
    traces_->publish(ev);
    if (masters_[rec.txn.master].kind == MasterKind::Injector) {
      traces_->publish(TraceEvent{cycle, TraceKind::InjectorEmit, rec.txn.master,
                                  rec.txn.address, ""});
    }
    auto it = heartbeat_by_master.find(rec.txn.master);
    if (it != heartbeat_by_master.end()) {
      for (const std::string& id : it->second) watchdogs_->observe_response(id, cycle);
    }
  });

  bus_->on_complete([this](const TxnRecord& rec, Cycle cycle) {
    traces_->publish(
        TraceEvent{cycle, TraceKind::TxnComplete, rec.txn.master, rec.txn.address, ""});
    auto it = challenge_txns_.find(rec.txn.id);
    if (it != challenge_txns_.end()) {
      if (!rec.txn.target.is_memory && device_muted(rec.txn.target.device, cycle)) {
        return;  // muted device: the response never arrives
      }
      watchdogs_->observe_response(it->second, cycle);
    }
  });

  monitor_->on_interrupt([this](const QuotaInterrupt& qi) {
    traces_->publish(TraceEvent{qi.cycle, TraceKind::QuotaInterrupt, qi.subject,
                                std::nullopt, "value=" + std::to_string(qi.value)});
    Interrupt irq{InterruptKind::Quota, masters_[qi.subject].name, qi.value, qi.cycle,
                  qi.mode == QuotaMode::Suffered};
    safety_->deliver(irq);
  });

  watchdogs_->on_interrupt([this](const WatchdogInterrupt& wi) {
    traces_->publish(
        TraceEvent{wi.cycle, TraceKind::WatchdogExpiry, std::nullopt, std::nullopt,
                   wi.id + " armed_at=" + std::to_string(wi.armed_at)});
    safety_->deliver(Interrupt{InterruptKind::Watchdog, wi.id, wi.armed_at, wi.cycle});
  });

  watchdogs_->on_challenge(
      [this](const std::string& wd_id, const std::string& device, Cycle cycle) {
        Transaction txn;
        txn.id = next_txn_id_++;
        txn.master = master_index("wd:" + wd_id);
        txn.op = TxnOp::Read;
        txn.size_bytes = 4;
        txn.issue = cycle;
        txn.target = Target::dev(device);
        challenge_txns_[txn.id] = wd_id;
        bus_->submit(txn);
      });

  safety_->on_action([this](const InterruptRecord& rec) { apply_action(rec); });

  // Schedule the scenario. Faults go first so a fault landing on the same
  // cycle as a pair tick is applied before the retirement happens.
  schedule_faults();

  for (std::uint32_t i = 0; i < config_.masters.size(); ++i) {
    schedule_workload(i, config_.masters[i], 0);
  }

  for (std::size_t i = 0; i < config_.injectors.size(); ++i) {
    const InjectorConfig& ic = config_.injectors[i];
    InjectionProgram program{ic.sequence, ic.start};
    auto injector = std::make_unique<TrafficInjector>(*kernel_, *bus_,
                                                      master_index(ic.name), program);
    injector->emit(config_.horizon, next_txn_id_);
    injectors_.push_back(std::move(injector));
  }

  for (std::size_t i = 0; i < config_.redundant_pairs.size(); ++i) {
    const PairConfig& pc = config_.redundant_pairs[i];
    std::vector<Instruction> stream = pc.instructions;
    if (stream.empty() && pc.generator) {
      StreamGenerator gen = *pc.generator;
      gen.seed_offset += i;  // distinct default streams per pair
      stream = generate_stream(gen, config_.seed);
    }
    auto pair = std::make_unique<RedundantPair>(pc.id, std::move(stream), pc.threshold,
                                                pc.window, pc.comparator, pc.poll_period);
    const std::string pair_id = pc.id;
    pair->on_mismatch([this, pair_id](const StoreMismatch& m) {
      traces_->publish(TraceEvent{m.detected_at, TraceKind::Mismatch, std::nullopt,
                                  std::nullopt,
                                  pair_id + " index=" + std::to_string(m.index)});
      safety_->deliver(
          Interrupt{InterruptKind::Mismatch, pair_id, m.index, m.detected_at});
    });
    pairs_.push_back(std::move(pair));
  }
  if (!pairs_.empty()) ensure_pair_tick(0);

  std::map<std::string, Cycle> arm_cycles;
  for (const WatchdogConfig& w : config_.watchdogs) arm_cycles[w.id] = w.arm_at;
  watchdogs_->start(arm_cycles, config_.horizon);
}

void Simulation::schedule_workload(std::uint32_t master, const MasterConfig& mc,
                                   Cycle base) {
  for (const TxnSpec& t : mc.transactions) {
    const Cycle issue = base + t.issue;
    if (issue >= config_.horizon) continue;
    const TxnSpec spec = t;
    kernel_->schedule(issue, EventKind::TxnIssue, [this, master, spec, issue](Cycle) {
      Transaction txn;
      txn.id = next_txn_id_++;
      txn.master = master;
      txn.op = spec.op;
      txn.size_bytes = spec.size_bytes;
      txn.burst = spec.burst;
      txn.issue = issue;
      txn.target = spec.target;
      txn.address = spec.address;
      bus_->submit(txn);
    });
  }
  if (mc.generator) {
    const GeneratorSpec g = *mc.generator;
    std::mt19937_64 rng(substream(config_.seed, 0x4721ULL + master));
    for (std::uint64_t i = 0; i < g.count; ++i) {
      Cycle issue = base + g.start + i * g.period;
      if (g.jitter > 0) issue += rng() % (g.jitter + 1);
      if (issue >= config_.horizon) continue;
      kernel_->schedule(issue, EventKind::TxnIssue, [this, master, g, issue](Cycle) {
        Transaction txn;
        txn.id = next_txn_id_++;
        txn.master = master;
        txn.op = g.op;
        txn.size_bytes = g.size_bytes;
        txn.burst = g.burst;
        txn.issue = issue;
        txn.target = g.target;
        bus_->submit(txn);
      });
    }
  }
}

void Simulation::schedule_faults() {
  for (std::size_t i = 0; i < config_.faults.size(); ++i) {
    const FaultSpec f = config_.faults[i];
    kernel_->schedule(f.at, EventKind::FaultInject, [this, f](Cycle cycle) {
      switch (f.kind) {
        case FaultKind::StoreValue: {
          auto it = std::find_if(pairs_.begin(), pairs_.end(),
                                 [&](const auto& p) { return p->id() == f.pair_id; });
          if (it == pairs_.end()) return;
          CoreStream& replica = f.trail_replica ? (*it)->trail() : (*it)->head();
          if (replica.stores().size() > f.store_index) {
            notes_.push_back("fault at " + std::to_string(cycle) + ": store " +
                             std::to_string(f.store_index) + " already retired");
          }
          std::mt19937_64 rng(substream(config_.seed, 0xFA17ULL + f.seed));
          const unsigned bit = static_cast<unsigned>(rng() % 64);
          if (!replica.corrupt_store_value(f.store_index, bit)) {
            notes_.push_back("fault at " + std::to_string(cycle) + ": store index " +
                             std::to_string(f.store_index) + " beyond stream length");
          }
          break;
        }
        case FaultKind::Crash:
          bus_->crash_master(master_index(f.master), cycle);
          break;
        case FaultKind::DeviceMute:
          if (!device_muted_from_.count(f.device)) device_muted_from_[f.device] = cycle;
          break;
      }
      traces_->publish(
          TraceEvent{cycle, TraceKind::FaultInject, std::nullopt, std::nullopt,
                     f.kind == FaultKind::Crash      ? "crash " + f.master
                     : f.kind == FaultKind::DeviceMute ? "mute " + f.device
                                                       : "store_value " + f.pair_id});
    });
  }
}

void Simulation::ensure_pair_tick(Cycle at) {
  if (at >= config_.horizon) return;
  if (!pair_ticks_scheduled_.insert(at).second) return;
  kernel_->schedule(at, EventKind::Tick, [this](Cycle c) { pair_tick(c); });
}

void Simulation::pair_tick(Cycle cycle) {
  pair_ticks_scheduled_.erase(cycle);
  bool any_active = false;
  for (auto& pair : pairs_) {
    const RedundantPair::StepResult result = pair->step(cycle);
    if (result.head_store) {
      traces_->publish(TraceEvent{cycle, TraceKind::StoreRetire, std::nullopt,
                                  result.head_store->address, pair->id() + ":head"});
    }
    if (result.trail_store) {
      traces_->publish(TraceEvent{cycle, TraceKind::StoreRetire, std::nullopt,
                                  result.trail_store->address, pair->id() + ":trail"});
    }
    if (pair->active()) any_active = true;
  }
  if (any_active) ensure_pair_tick(cycle + 1);
}

void Simulation::apply_action(const InterruptRecord& rec) {
  const Interrupt& irq = rec.interrupt;
  traces_->publish(TraceEvent{rec.effect_at, TraceKind::ActionEffect, std::nullopt,
                              std::nullopt,
                              std::string(interrupt_kind_name(irq.kind)) + " " +
                                  irq.subject});
  switch (irq.kind) {
    case InterruptKind::Quota: {
      const std::uint32_t subject = master_index(irq.subject);
      switch (config_.policy.on_quota) {
        case QuotaReaction::StallOffender:
          bus_->stall_master(subject, rec.effect_at, config_.policy.stall_duration);
          break;
        case QuotaReaction::DropOffender:
          bus_->drop_master(subject, rec.effect_at);
          break;
        case QuotaReaction::BoostVictimPriority: {
          std::uint32_t victim = subject;
          if (!irq.quota_suffered) {
            // The most-suffering victim of this aggressor gets top priority.
            std::uint64_t best = 0;
            for (std::uint32_t v = 0; v < masters_.size(); ++v) {
              if (v == subject) continue;
              const std::uint64_t w = monitor_->matrix().cell(v, subject);
              if (w > best) {
                best = w;
                victim = v;
              }
            }
          }
          std::vector<std::uint32_t> order{victim};
          for (std::uint32_t m = 0; m < masters_.size(); ++m) {
            if (m != victim) order.push_back(m);
          }
          bus_->set_fixed_priority(std::move(order));
          break;
        }
      }
      break;
    }
    case InterruptKind::Watchdog: {
      if (config_.policy.on_watchdog == WatchdogReaction::SafeState) {
        enter_safe_state(rec.effect_at);
        break;
      }
      const WatchdogTarget& target = watchdogs_->target(irq.subject);
      if (target.heartbeat) {
        bus_->reset_master(target.master);
        if (target.master < config_.masters.size()) {
          schedule_workload(target.master, config_.masters[target.master], rec.effect_at);
        }
      } else {
        device_muted_from_.erase(target.device);
      }
      break;
    }
    case InterruptKind::Mismatch: {
      if (config_.policy.on_mismatch == MismatchReaction::SafeState) {
        enter_safe_state(rec.effect_at);
        break;
      }
      auto it = std::find_if(pairs_.begin(), pairs_.end(),
                             [&](const auto& p) { return p->id() == irq.subject; });
      if (it != pairs_.end()) {
        (*it)->reset_pair();
        ensure_pair_tick(rec.effect_at + 1);
      }
      break;
    }
  }
}

void Simulation::enter_safe_state(Cycle cycle) {
  if (safe_state_entered_) return;
  safe_state_entered_ = true;
  safe_state_at_ = cycle;
  kernel_->halt();
}

void Simulation::run() {
  if (ran_) throw std::logic_error("simulation already ran");
  ran_ = true;
  kernel_->run_until(config_.horizon);
}

RunReport Simulation::report() const {
  RunReport r;
  r.seed = config_.seed;
  r.safe_state = safe_state_entered_;
  r.safe_state_at = safe_state_at_;
  r.final_cycle = safe_state_entered_ ? safe_state_at_ : config_.horizon;
  r.notes = notes_;

  for (const MasterId& m : masters_) r.master_names.push_back(m.name);
  const InterferenceMatrix& matrix = monitor_->matrix();
  r.interference_matrix.resize(masters_.size());
  for (std::uint32_t v = 0; v < masters_.size(); ++v) {
    r.interference_matrix[v].resize(masters_.size());
    for (std::uint32_t a = 0; a < masters_.size(); ++a) {
      r.interference_matrix[v][a] = matrix.cell(v, a);
    }
  }
  r.interference_total = matrix.total();
  r.bus_total_wait = bus_->total_wait_cycles();

  r.interrupts = safety_->records();

  for (const TxnRecord& rec : bus_->records()) {
    ++r.txn_total;
    if (rec.complete) ++r.txn_completed;
    if (rec.cancelled) ++r.txn_cancelled;
    ++r.txn_per_master[masters_[rec.txn.master].name];
  }

  for (const Observer& o : traces_->observers()) {
    r.observers.push_back(ObserverReport{o.name(), o.snapshot(), o.counters()});
  }

  for (const std::string& id : watchdogs_->ids()) {
    r.watchdogs.push_back(WatchdogReport{id, watchdogs_->history(id)});
  }

  for (const auto& pair : pairs_) {
    r.pairs.push_back(PairReport{pair->id(), pair->head().retired(),
                                 pair->trail().retired(), pair->mismatches(),
                                 pair->diverse()});
  }

  // FTTI chain per configured fault: detection is the first mismatch or
  // watchdog interrupt raised at or after the fault; mitigation is that
  // interrupt's action-effect cycle, when it happened within the run.
  const Cycle end = r.final_cycle;
  std::vector<bool> used(r.interrupts.size(), false);
  for (const FaultSpec& f : config_.faults) {
    FttiRecord record;
    record.t_fault = f.at;
    for (std::size_t i = 0; i < r.interrupts.size(); ++i) {
      if (used[i]) continue;
      const InterruptRecord& irec = r.interrupts[i];
      if (irec.interrupt.kind == InterruptKind::Quota) continue;
      if (irec.interrupt.raised_at < f.at) continue;
      used[i] = true;
      record.t_detect = irec.handled_at;
      if (irec.effect_at <= end) record.t_mitigated = irec.effect_at;
      break;
    }
    const FttiResult result = ftti_check(record, config_.ftti_budget, config_.horizon);
    r.ftti.push_back(FttiReportEntry{record, result});
    if (!result.pass) r.ftti_all_pass = false;
  }

  return r;
}

RunReport run_scenario(const ScenarioConfig& config) {
  Simulation sim(config);
  sim.run();
  return sim.report();
}

std::vector<CampaignEntry> run_campaign(const ScenarioConfig& base,
                                        const std::vector<FaultSpec>& specs) {
  std::vector<CampaignEntry> table;

  auto detection_of = [](const RunReport& report, Cycle t_fault)
      -> std::optional<std::pair<Cycle, std::optional<Cycle>>> {
    for (const InterruptRecord& rec : report.interrupts) {
      if (rec.interrupt.kind == InterruptKind::Quota) continue;
      if (rec.interrupt.raised_at < t_fault) continue;
      std::optional<Cycle> mitigated;
      if (rec.effect_at <= report.final_cycle) mitigated = rec.effect_at;
      return std::make_pair(rec.handled_at, mitigated);
    }
    return std::nullopt;
  };

  {
    ScenarioConfig control = base;
    control.faults.clear();
    const RunReport report = run_scenario(control);
    CampaignEntry entry;
    entry.control_run = true;
    entry.detected = detection_of(report, 0).has_value();
    entry.ftti = FttiResult{true, 0};
    table.push_back(entry);
  }

  for (const FaultSpec& spec : specs) {
    ScenarioConfig variant = base;
    variant.faults = {spec};
    const RunReport report = run_scenario(variant);
    CampaignEntry entry;
    entry.fault = spec;
    FttiRecord record;
    record.t_fault = spec.at;
    if (auto det = detection_of(report, spec.at)) {
      entry.detected = true;
      entry.t_detect = det->first;
      entry.t_mitigated = det->second;
      record.t_detect = det->first;
      record.t_mitigated = det->second;
    }
    entry.ftti = ftti_check(record, base.ftti_budget, base.horizon);
    for (const std::string& note : report.notes) {
      entry.note += (entry.note.empty() ? "" : "; ") + note;
    }
    table.push_back(entry);
  }
  return table;
}

}  // namespace sisim
