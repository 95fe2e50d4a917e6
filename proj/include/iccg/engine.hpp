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

// Master/subproblem decomposition for two-stage robust problems
//
//   min_{x in X} c'x + max_{xi in Xi} Q(x, xi).
//
// solve_ccg is classic column-and-constraint generation: masters are solved
// exactly, LB/UB close until the relative gap drops below eps.
//
// solve_iccg lets every master stop at a relative gap eps_mp (and optionally a
// time limit). Each master also carries the cut  c'x + delta >= Lbar.  The
// solver bound L^j only certifies the original problem when it strictly
// exceeds the Lbar it was solved with; `ell` remembers the most recent such
// index. After the oracle updates Ubar the run either terminates on the
// certified gap (Ubar - L^ell) / Ubar, exploits (returns to index ell with a
// smaller master tolerance) when the inexact gap (Ubar - U^j) / Ubar is below
// eps_tilde, or explores by adding the oracle's scenario.
//
// Both algorithms are written against two customization points:
//
//   MasterBuilder:   build(scenarios, lower_cutoff) -> LinearModel
//                    extract(solution) -> MasterPoint
//   WorstCaseOracle: query(MasterPoint) -> OracleAnswer

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <concepts>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "iccg/error.hpp"
#include "iccg/milp.hpp"
#include "iccg/scenario.hpp"

namespace iccg {

/// First-stage part of a master solution as seen by the oracle.
struct MasterPoint {
  std::vector<double> first_stage;
  double delta = 0.0;
  double first_stage_cost = 0.0;
};

struct OracleAnswer {
  std::vector<double> xi;
  double value = 0.0;  // D^j, added to first_stage_cost for the upper bound
};

template <class B>
concept MasterBuilder = requires(const B& b, std::span<const Scenario> scenarios, double cutoff,
                                 const std::vector<double>& solution) {
  { b.build(scenarios, cutoff) } -> std::convertible_to<milp::LinearModel>;
  { b.extract(solution) } -> std::convertible_to<MasterPoint>;
};

template <class O>
concept WorstCaseOracle = requires(O& o, const MasterPoint& p) {
  { o.query(p) } -> std::convertible_to<OracleAnswer>;
};

/// Hook for swapping the master MILP solver (tests use it to inject
/// deliberately loose bounds).
using MasterSolver =
    std::function<milp::SolveOutcome(const milp::LinearModel&, const milp::SolveControls&)>;

inline milp::SolveOutcome default_master_solver(const milp::LinearModel& m,
                                                const milp::SolveControls& c) {
  return milp::solve_milp(m, c);
}

struct CcgParams {
  double epsilon = 0.02;
  int max_iterations = 500;
  /// Pass the previous master value as the lower cutoff instead of 0. The cut
  /// is valid and leaves every master optimum unchanged; it makes exact C&CG
  /// and i-C&CG with eps_mp = 0 build identical masters.
  bool carry_lower_bound = true;
  std::optional<double> wall_time_limit;  // seconds, whole run
  MasterSolver master_solver = default_master_solver;

  void validate() const {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(ErrorCode::kParam, "eps must lie in (0,1)");
    if (max_iterations < 1) throw Error(ErrorCode::kParam, "max_iterations must be positive");
  }
};

struct IccgParams {
  double epsilon = 0.02;
  double epsilon_tilde = 0.015;
  double eps_mp_initial = 0.02;
  double alpha = 0.8;
  /// Conservative mode: Lbar <- L^j after each master (instead of U^j).
  bool conservative_bound_update = false;
  std::optional<int> exploit_frequency;
  std::optional<double> master_time_limit;  // tau, seconds
  double time_limit_increment = 0.0;        // beta, seconds
  int max_iterations = 500;
  int max_exploitations = 50;
  std::optional<double> wall_time_limit;
  MasterSolver master_solver = default_master_solver;

  /// Throws ParamError; in particular eps_tilde must satisfy
  /// eps_tilde < eps / (1 + eps) for finite termination.
  void validate() const {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(ErrorCode::kParam, "eps must lie in (0,1)");
    const double cap = epsilon / (1.0 + epsilon);
    if (!(epsilon_tilde >= 0.0 && epsilon_tilde < cap)) {
      throw Error(ErrorCode::kParam, "eps_tilde must satisfy 0 <= eps_tilde < eps/(1+eps) = " +
                                         std::to_string(cap) + " (finite termination condition)");
    }
    if (!(eps_mp_initial >= 0.0 && eps_mp_initial < 1.0)) {
      throw Error(ErrorCode::kParam, "eps_mp must lie in [0,1)");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::kParam, "alpha must lie in (0,1)");
    if (master_time_limit && !(*master_time_limit > 0.0)) {
      throw Error(ErrorCode::kParam, "tau must be positive");
    }
    if (time_limit_increment < 0.0) throw Error(ErrorCode::kParam, "beta must be nonnegative");
    if (exploit_frequency && *exploit_frequency < 0) {
      throw Error(ErrorCode::kParam, "exploit frequency must be nonnegative");
    }
    if (max_iterations < 1) throw Error(ErrorCode::kParam, "max_iterations must be positive");
  }
};

enum class Decision { kContinue, kExploit, kExplore, kTerminate };
enum class Termination { kConverged, kIterationCap, kTimeLimit, kError };
enum class ExploitTrigger { kInexactGap, kFrequency, kRepeatedScenario };

constexpr std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::kContinue: return "Continue";
    case Decision::kExploit: return "Exploit";
    case Decision::kExplore: return "Explore";
    case Decision::kTerminate: return "Terminate";
  }
  return "?";
}

constexpr std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::kConverged: return "Converged";
    case Termination::kIterationCap: return "IterationCap";
    case Termination::kTimeLimit: return "TimeLimit";
    case Termination::kError: return "Error";
  }
  return "?";
}

constexpr std::string_view to_string(ExploitTrigger t) {
  switch (t) {
    case ExploitTrigger::kInexactGap: return "InexactGap";
    case ExploitTrigger::kFrequency: return "Frequency";
    case ExploitTrigger::kRepeatedScenario: return "RepeatedScenario";
  }
  return "?";
}

/// Relative margin by which L^j must exceed Lbar to count as a new valid bound.
inline constexpr double kBoundImprovementTol = 1e-9;

/// Relative gap against an upper bound, guarded for Ubar <= 0.
inline double gap_against(double upper, double value) {
  return (upper - value) / std::max(upper, 1e-12);
}

/// Termination test, then the inexact-gap test. The exploitation-frequency
/// override is applied by the caller.
inline Decision backtrack_decision(double U_bar, double L_ell, double U_j, double eps,
                                   double eps_tilde) {
  if (gap_against(U_bar, L_ell) < eps) return Decision::kTerminate;
  if (gap_against(U_bar, U_j) < eps_tilde) return Decision::kExploit;
  return Decision::kExplore;
}

/// Upper bound on the certified gap at an exploitation step:
/// (1 - eps_tilde)^-1 * prod_k (1 - eps_mp^k)^-1 - 1.
inline double prop2_gap_bound(double eps_tilde, std::span<const double> eps_mp_seq) {
  if (!(eps_tilde >= 0.0 && eps_tilde < 1.0)) {
    throw Error(ErrorCode::kDomain, "eps_tilde must lie in [0,1)");
  }
  double denom = 1.0 - eps_tilde;
  for (double e : eps_mp_seq) {
    if (!(e >= 0.0 && e < 1.0)) throw Error(ErrorCode::kDomain, "eps_mp entries must lie in [0,1)");
    denom *= 1.0 - e;
  }
  return 1.0 / denom - 1.0;
}

struct IterationRecord {
  int seq = 0;    // wall-clock order, 1-based
  int index = 0;  // algorithmic index j
  Decision decision = Decision::kContinue;
  double L = 0.0;
  double U = 0.0;
  double L_bar = 0.0;  // cutoff the master was built with
  double U_bar = 0.0;  // after the oracle update
  int ell = 0;
  double L_ell = 0.0;
  double gap_actual = 0.0;
  double gap_inexact = 0.0;
  double eps_mp = 0.0;
  std::optional<double> master_time_limit;
  int scenario_found = -1;
  int scenario_added = -1;
  milp::SolveStatus master_status = milp::SolveStatus::kOptimal;
  double master_ms = 0.0;
  double sub_ms = 0.0;
};

struct ExploitEvent {
  int seq = 0;
  int index = 0;
  int ell = 0;
  ExploitTrigger trigger = ExploitTrigger::kInexactGap;
  double gap_actual = 0.0;
  /// Master tolerances used at indices ell..j (empty when ell has no solved
  /// master yet).
  std::vector<double> eps_mp_seq;
  /// True when every master in ell..j stopped on its gap tolerance rather
  /// than a time or node limit.
  bool masters_within_tolerance = true;
};

struct SolveReport {
  std::string method;
  std::vector<double> final_x;
  double final_value = milp::kInf;  // Ubar
  double valid_lower_bound = 0.0;   // L^ell (i-C&CG) or LB (C&CG)
  double actual_gap = milp::kInf;
  std::vector<IterationRecord> iterations;
  std::vector<ExploitEvent> exploits;
  std::vector<Scenario> scenarios;     // every scenario the oracle returned, by id
  std::vector<int> scenario_sequence;  // ids in the order they entered the master
  int explore_count = 0;
  int exploit_count = 0;
  Termination termination = Termination::kIterationCap;
  std::string detail;
  double elapsed_s = 0.0;
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

inline std::optional<double> remaining(const std::optional<double>& wall, Clock::time_point t0) {
  if (!wall) return std::nullopt;
  return *wall - std::chrono::duration<double>(Clock::now() - t0).count();
}

inline std::optional<double> min_opt(std::optional<double> a, std::optional<double> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

inline std::vector<Scenario> active_set(const ScenarioRegistry& reg, const std::vector<int>& ids) {
  std::vector<Scenario> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(reg.at(id));
  return out;
}

}  // namespace detail

template <MasterBuilder Builder, WorstCaseOracle Oracle>
SolveReport solve_ccg(const Builder& builder, Oracle& oracle, const CcgParams& params) {
  params.validate();
  const auto t0 = detail::Clock::now();
  SolveReport rep;
  rep.method = "ccg";
  ScenarioRegistry registry;
  std::vector<int> active;
  std::set<int> in_set;
  double LB = 0.0;
  double UB = milp::kInf;

  for (int seq = 1; seq <= params.max_iterations; ++seq) {
    const std::optional<double> left = detail::remaining(params.wall_time_limit, t0);
    if (left && *left <= 0.0) {
      rep.termination = Termination::kTimeLimit;
      break;
    }
    IterationRecord rec;
    rec.seq = seq;
    rec.index = seq;
    rec.L_bar = params.carry_lower_bound ? LB : 0.0;
    const milp::LinearModel model = builder.build(detail::active_set(registry, active), rec.L_bar);
    milp::SolveControls controls;
    controls.rel_gap = 0.0;
    controls.time_limit = left;
    controls.require_incumbent = true;
    auto tm = detail::Clock::now();
    const milp::SolveOutcome out = params.master_solver(model, controls);
    rec.master_ms = detail::ms_since(tm);
    rec.master_status = out.status;
    if (out.status == milp::SolveStatus::kInfeasible || out.status == milp::SolveStatus::kUnbounded) {
      throw Error(ErrorCode::kMasterInfeasible,
                  "master returned " + std::string(milp::to_string(out.status)));
    }
    if (!out.has_incumbent()) {
      rep.termination = Termination::kTimeLimit;
      break;
    }
    const bool exact = out.status == milp::SolveStatus::kOptimal;
    // An interrupted master still yields a valid (weaker) bound.
    LB = exact ? out.incumbent_value : std::max(LB, out.best_bound);
    rec.L = LB;
    rec.U = out.incumbent_value;

    const MasterPoint point = builder.extract(*out.incumbent);
    tm = detail::Clock::now();
    const OracleAnswer ans = oracle.query(point);
    rec.sub_ms = detail::ms_since(tm);
    if (!std::isfinite(ans.value)) throw Error(ErrorCode::kOracleFailure, "non-finite oracle value");
    const Scenario& sc = registry.intern(ans.xi);
    rec.scenario_found = sc.id;
    const double candidate = point.first_stage_cost + ans.value;
    if (candidate < UB) {
      UB = candidate;
      rep.final_x = point.first_stage;
    }
    rec.U_bar = UB;
    rec.L_ell = LB;
    rec.gap_actual = gap_against(UB, LB);
    rec.gap_inexact = gap_against(UB, rec.U);
    rec.eps_mp = 0.0;

    if (rec.gap_actual < params.epsilon) {
      rec.decision = Decision::kTerminate;
      rep.termination = Termination::kConverged;
      rep.iterations.push_back(rec);
      break;
    }
    if (!exact) {
      rec.decision = Decision::kTerminate;
      rep.termination = Termination::kTimeLimit;
      rep.iterations.push_back(rec);
      break;
    }
    if (in_set.contains(sc.id)) {
      // With an exact master this implies UB <= LB; reaching here means the
      // master and oracle disagree numerically.
      rec.decision = Decision::kTerminate;
      rep.termination = Termination::kError;
      rep.detail = "oracle returned scenario " + std::to_string(sc.id) + " already in the master";
      rep.iterations.push_back(rec);
      break;
    }
    rec.decision = Decision::kContinue;
    rec.scenario_added = sc.id;
    active.push_back(sc.id);
    in_set.insert(sc.id);
    ++rep.explore_count;
    rep.iterations.push_back(rec);
  }

  rep.final_value = UB;
  rep.valid_lower_bound = LB;
  rep.actual_gap = gap_against(UB, LB);
  rep.scenarios = registry.all();
  rep.scenario_sequence = active;
  rep.elapsed_s = detail::ms_since(t0) / 1000.0;
  return rep;
}

template <MasterBuilder Builder, WorstCaseOracle Oracle>
SolveReport solve_iccg(const Builder& builder, Oracle& oracle, const IccgParams& params) {
  params.validate();
  const auto t0 = detail::Clock::now();
  SolveReport rep;
  rep.method = "iccg";
  ScenarioRegistry registry;
  std::vector<int> active;
  std::set<int> in_set;

  struct IndexRecord {
    double L = 0.0;
    double U = 0.0;
    double eps_mp = 0.0;
    bool solved = false;
    bool within_tolerance = true;
  };
  // Index 0 carries the initial valid bound Lbar = 0 without a master solve.
  std::vector<IndexRecord> at(2);
  double L_bar = 0.0;
  double U_bar = milp::kInf;
  int j = 1;
  int ell = 0;
  double eps_mp = params.eps_mp_initial;
  std::optional<double> tau = params.master_time_limit;

  for (int seq = 1;; ++seq) {
    if (seq > params.max_iterations) {
      rep.termination = Termination::kIterationCap;
      rep.detail = "iteration cap";
      break;
    }
    const std::optional<double> left = detail::remaining(params.wall_time_limit, t0);
    if (left && *left <= 0.0) {
      rep.termination = Termination::kTimeLimit;
      break;
    }
    if (static_cast<int>(at.size()) <= j) at.resize(j + 1);

    IterationRecord rec;
    rec.seq = seq;
    rec.index = j;
    rec.L_bar = L_bar;
    rec.eps_mp = eps_mp;
    rec.master_time_limit = tau;
    const milp::LinearModel model = builder.build(detail::active_set(registry, active), L_bar);
    milp::SolveControls controls;
    controls.rel_gap = eps_mp;
    controls.time_limit = detail::min_opt(tau, left);
    controls.require_incumbent = true;
    auto tm = detail::Clock::now();
    const milp::SolveOutcome out = params.master_solver(model, controls);
    rec.master_ms = detail::ms_since(tm);
    rec.master_status = out.status;
    if (out.status == milp::SolveStatus::kInfeasible || out.status == milp::SolveStatus::kUnbounded) {
      throw Error(ErrorCode::kMasterInfeasible,
                  "master returned " + std::string(milp::to_string(out.status)));
    }
    if (!out.has_incumbent()) {
      rep.termination = Termination::kTimeLimit;
      break;
    }

    // Step 1.2: L^j >= Lbar by construction of the master; clamp in case the
    // solver stopped before proving it.
    const double U_j = out.incumbent_value;
    const double L_j = std::min(std::max(out.best_bound, L_bar), U_j);
    at[j] = IndexRecord{L_j, U_j, eps_mp, true,
                        out.status == milp::SolveStatus::kOptimal ||
                            out.status == milp::SolveStatus::kGapReached};
    // A master whose optimum sits on the cutoff reports Lbar up to roundoff;
    // only a clear improvement certifies a new bound.
    if (params.conservative_bound_update || L_j > L_bar + kBoundImprovementTol * std::max(1.0, std::abs(L_bar))) {
      ell = j;
    }
    // Step 1.3.
    L_bar = params.conservative_bound_update ? L_j : U_j;
    rec.L = L_j;
    rec.U = U_j;

    // Step 2.
    const MasterPoint point = builder.extract(*out.incumbent);
    tm = detail::Clock::now();
    const OracleAnswer ans = oracle.query(point);
    rec.sub_ms = detail::ms_since(tm);
    if (!std::isfinite(ans.value)) throw Error(ErrorCode::kOracleFailure, "non-finite oracle value");
    const Scenario& sc = registry.intern(ans.xi);
    rec.scenario_found = sc.id;
    const double candidate = point.first_stage_cost + ans.value;
    if (candidate < U_bar) {
      U_bar = candidate;
      rep.final_x = point.first_stage;
    }

    // Step 3.
    const double L_ell = at[ell].L;
    rec.U_bar = U_bar;
    rec.ell = ell;
    rec.L_ell = L_ell;
    rec.gap_actual = gap_against(U_bar, L_ell);
    rec.gap_inexact = gap_against(U_bar, U_j);
    Decision decision =
        backtrack_decision(U_bar, L_ell, U_j, params.epsilon, params.epsilon_tilde);
    ExploitTrigger trigger = ExploitTrigger::kInexactGap;
    if (decision == Decision::kExplore && params.exploit_frequency &&
        j - ell > *params.exploit_frequency) {
      decision = Decision::kExploit;
      trigger = ExploitTrigger::kFrequency;
    }
    if (decision == Decision::kExplore && in_set.contains(sc.id)) {
      // Cannot happen with an exact oracle: a scenario already in the master
      // gives Ubar <= U^j. Treat as exploitation rather than re-adding it.
      decision = Decision::kExploit;
      trigger = ExploitTrigger::kRepeatedScenario;
    }
    rec.decision = decision;

    if (decision == Decision::kTerminate) {
      rep.termination = Termination::kConverged;
      rep.iterations.push_back(rec);
      break;
    }
    if (decision == Decision::kExploit) {
      ExploitEvent ev;
      ev.seq = seq;
      ev.index = j;
      ev.ell = ell;
      ev.trigger = trigger;
      ev.gap_actual = rec.gap_actual;
      if (at[ell].solved) {
        for (int k = ell; k <= j; ++k) {
          ev.eps_mp_seq.push_back(at[k].eps_mp);
          ev.masters_within_tolerance = ev.masters_within_tolerance && at[k].within_tolerance;
        }
      }
      rep.exploits.push_back(std::move(ev));
      rep.iterations.push_back(rec);
      if (++rep.exploit_count > params.max_exploitations) {
        rep.termination = Termination::kIterationCap;
        rep.detail = "exploitation cap";
        break;
      }
      j = ell;
      L_bar = at[ell].L;
      eps_mp *= params.alpha;
      if (tau) *tau += params.time_limit_increment;
      continue;
    }
    rec.scenario_added = sc.id;
    active.push_back(sc.id);
    in_set.insert(sc.id);
    ++rep.explore_count;
    rep.iterations.push_back(rec);
    ++j;
  }

  rep.final_value = U_bar;
  rep.valid_lower_bound = at[ell].L;
  rep.actual_gap = gap_against(U_bar, rep.valid_lower_bound);
  rep.scenarios = registry.all();
  rep.scenario_sequence = active;
  rep.elapsed_s = detail::ms_since(t0) / 1000.0;
  return rep;
}

}  // namespace iccg
