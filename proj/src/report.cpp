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

#include "sisim/report.hpp"

namespace sisim {

namespace {

using nlohmann::json;

json trace_event_to_json(const TraceEvent& ev, const std::vector<std::string>& names) {
  json j;
  j["at"] = ev.at;
  j["kind"] = trace_kind_name(ev.kind);
  j["master"] = ev.master ? json(names.at(*ev.master)) : json(nullptr);
  j["address"] = ev.address ? json(*ev.address) : json(nullptr);
  j["detail"] = ev.detail;
  return j;
}

json fault_to_json(const FaultSpec& f) {
  json j;
  j["at"] = f.at;
  j["seed"] = f.seed;
  switch (f.kind) {
    case FaultKind::StoreValue:
      j["store_value"] = {{"pair", f.pair_id},
                          {"replica", f.trail_replica ? "trail" : "head"},
                          {"index", f.store_index}};
      break;
    case FaultKind::Crash:
      j["crash"] = f.master;
      break;
    case FaultKind::DeviceMute:
      j["device_mute"] = f.device;
      break;
  }
  return j;
}

}  // namespace

json report_to_json(const RunReport& r) {
  json j;
  j["final_cycle"] = r.final_cycle;
  j["seed"] = r.seed;
  j["safe_state"] = r.safe_state;
  if (r.safe_state) j["safe_state_at"] = r.safe_state_at;

  json matrix;
  matrix["masters"] = r.master_names;
  matrix["cells"] = r.interference_matrix;
  matrix["total"] = r.interference_total;
  j["interference_matrix"] = matrix;
  j["bus_total_wait"] = r.bus_total_wait;

  json interrupts = json::array();
  for (const InterruptRecord& rec : r.interrupts) {
    interrupts.push_back({{"kind", interrupt_kind_name(rec.interrupt.kind)},
                          {"subject", rec.interrupt.subject},
                          {"value", rec.interrupt.value},
                          {"raised_at", rec.interrupt.raised_at},
                          {"handled_at", rec.handled_at},
                          {"effect_at", rec.effect_at}});
  }
  j["interrupts"] = interrupts;

  j["transactions"] = {{"total", r.txn_total},
                       {"completed", r.txn_completed},
                       {"cancelled", r.txn_cancelled},
                       {"per_master", r.txn_per_master}};

  json observers = json::array();
  for (const ObserverReport& o : r.observers) {
    json counters = json::array();
    for (const auto& [key, count] : o.counters) {
      counters.push_back(
          {{"kind", trace_kind_name(key.first)},
           {"master", key.second ? json(r.master_names.at(*key.second)) : json(nullptr)},
           {"count", count}});
    }
    json snapshot = json::array();
    for (const TraceEvent& ev : o.snapshot) {
      snapshot.push_back(trace_event_to_json(ev, r.master_names));
    }
    observers.push_back(
        {{"name", o.name}, {"counters", counters}, {"snapshot", snapshot}});
  }
  j["observers"] = observers;

  json watchdogs = json::array();
  for (const WatchdogReport& w : r.watchdogs) {
    json armings = json::array();
    for (const WatchdogArming& a : w.armings) {
      armings.push_back(
          {{"armed_at", a.armed_at},
           {"deadline", a.deadline},
           {"satisfied_at", a.satisfied_at ? json(*a.satisfied_at) : json(nullptr)},
           {"expired_at", a.expired_at ? json(*a.expired_at) : json(nullptr)}});
    }
    watchdogs.push_back({{"id", w.id}, {"armings", armings}});
  }
  j["watchdogs"] = watchdogs;

  json pairs = json::array();
  for (const PairReport& p : r.pairs) {
    json mismatches = json::array();
    for (const StoreMismatch& m : p.mismatches) {
      mismatches.push_back({{"index", m.index}, {"detected_at", m.detected_at}});
    }
    pairs.push_back({{"id", p.id},
                     {"head_retired", p.head_retired},
                     {"trail_retired", p.trail_retired},
                     {"mismatches", mismatches},
                     {"diverse", p.diverse}});
  }
  j["pairs"] = pairs;

  json ftti = json::array();
  for (const FttiReportEntry& e : r.ftti) {
    ftti.push_back(
        {{"t_fault", e.record.t_fault},
         {"t_detect", e.record.t_detect ? json(*e.record.t_detect) : json(nullptr)},
         {"t_mitigated",
          e.record.t_mitigated ? json(*e.record.t_mitigated) : json(nullptr)},
         {"verdict", e.result.pass ? "pass" : "fail"},
         {"overshoot", e.result.overshoot}});
  }
  j["ftti"] = ftti;

  json campaign = json::array();
  for (const CampaignEntry& e : r.campaign) {
    json row;
    row["fault"] = e.control_run ? json(nullptr) : fault_to_json(e.fault);
    row["control_run"] = e.control_run;
    row["detected"] = e.detected;
    row["t_detect"] = e.t_detect ? json(*e.t_detect) : json(nullptr);
    row["t_mitigated"] = e.t_mitigated ? json(*e.t_mitigated) : json(nullptr);
    row["ftti_verdict"] = e.ftti.pass ? "pass" : "fail";
    row["ftti_overshoot"] = e.ftti.overshoot;
    row["note"] = e.note;
    campaign.push_back(row);
  }
  j["campaign"] = campaign;

  j["notes"] = r.notes;
  j["verdicts"] = {{"ftti_all_pass", r.ftti_all_pass}};
  return j;
}

std::string emit_report(const RunReport& report) {
  return report_to_json(report).dump(2) + "\n";
}

}  // namespace sisim
