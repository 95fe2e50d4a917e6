// Copyright 2026 The iccg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Text serializations of a SolveReport: the per-iteration CSV log and a
// JSON summary.

#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "iccg/engine.hpp"
#include "json.hpp"

namespace iccg {

/// Shortest stable text for a double: ten significant digits, "inf"/"-inf"
/// for infinities.
inline std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline constexpr std::string_view kIterationCsvHeader =
    "run_id,iter,decision,L,U,Lbar,Ubar,gap_actual,gap_inexact,scenario_id,master_status,"
    "master_ms,sub_ms";

/// One line per master solve in wall-clock order. `scenario_id` is the id
/// the oracle returned, blank when the master was not followed by a query.
inline std::string iteration_log_csv(const SolveReport& report, std::string_view run_id) {
  std::string out(kIterationCsvHeader);
  out += '\n';
  for (const IterationRecord& r : report.iterations) {
    out += run_id;
    out += ',' + std::to_string(r.seq);
    out += ',' + std::string(to_string(r.decision));
    for (double v : {r.L, r.U, r.L_bar, r.U_bar, r.gap_actual, r.gap_inexact}) {
      out += ',' + format_number(v);
    }
    out += ',';
    if (r.scenario_found >= 0) out += std::to_string(r.scenario_found);
    out += ',' + std::string(milp::to_string(r.master_status));
    out += ',' + format_number(r.master_ms);
    out += ',' + format_number(r.sub_ms);
    out += '\n';
  }
  return out;
}

namespace report_detail {

// JSON has no infinity; encode it as null.
inline nlohmann::json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace report_detail

/// Summary plus the full iteration and exploitation logs. Timing fields are
/// `elapsed_s`, `master_ms` and `sub_ms`.
inline nlohmann::json report_to_json(const SolveReport& report) {
  using report_detail::number;
  nlohmann::json iters = nlohmann::json::array();
  for (const IterationRecord& r : report.iterations) {
    nlohmann::json it = {
        {"seq", r.seq},
        {"index", r.index},
        {"decision", std::string(to_string(r.decision))},
        {"L", number(r.L)},
        {"U", number(r.U)},
        {"Lbar", number(r.L_bar)},
        {"Ubar", number(r.U_bar)},
        {"ell", r.ell},
        {"L_ell", number(r.L_ell)},
        {"gap_actual", number(r.gap_actual)},
        {"gap_inexact", number(r.gap_inexact)},
        {"eps_mp", r.eps_mp},
        {"scenario_found", r.scenario_found},
        {"scenario_added", r.scenario_added},
        {"master_status", std::string(milp::to_string(r.master_status))},
        {"master_ms", r.master_ms},
        {"sub_ms", r.sub_ms},
    };
    it["master_time_limit"] = r.master_time_limit ? nlohmann::json(*r.master_time_limit) : nullptr;
    iters.push_back(std::move(it));
  }
  nlohmann::json exploits = nlohmann::json::array();
  for (const ExploitEvent& e : report.exploits) {
    exploits.push_back({{"seq", e.seq},
                        {"index", e.index},
                        {"ell", e.ell},
                        {"trigger", std::string(to_string(e.trigger))},
                        {"gap_actual", number(e.gap_actual)},
                        {"eps_mp_seq", e.eps_mp_seq},
                        {"masters_within_tolerance", e.masters_within_tolerance}});
  }
  nlohmann::json scenarios = nlohmann::json::array();
  for (const Scenario& s : report.scenarios) scenarios.push_back({{"id", s.id}, {"xi", s.xi}});
  return {
      {"method", report.method},
      {"termination", std::string(to_string(report.termination))},
      {"detail", report.detail},
      {"final_value", number(report.final_value)},
      {"valid_lower_bound", number(report.valid_lower_bound)},
      {"actual_gap", number(report.actual_gap)},
      {"final_x", report.final_x},
      {"explore_count", report.explore_count},
      {"exploit_count", report.exploit_count},
      {"scenario_sequence", report.scenario_sequence},
      {"scenarios", scenarios},
      {"exploits", exploits},
      {"iterations", iters},
      {"elapsed_s", report.elapsed_s},
  };
}

}  // namespace iccg
