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

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// nonzero when any blocking criterion fails. Criterion 12 is informational.
//
//   acceptance [--skip-informational]

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "iccg/bench.hpp"
#include "iccg/cli.hpp"
#include "iccg/drorsp.hpp"
#include "iccg/engine.hpp"
#include "iccg/milp.hpp"
#include "iccg/model.hpp"
#include "test_oracles.hpp"

namespace {

using namespace iccg;
namespace fs = std::filesystem;

// Pinned tolerances and sizes.
constexpr double kOracleTol = 1e-6;
constexpr double kOracleBudgetS = 60.0;
constexpr int kOracleMinis = 240;
constexpr double kEps = 0.02;
constexpr double kExactBudgetS = 120.0;
constexpr int kToys = 60;
constexpr int kMinis = 24;
constexpr double kLowerBoundRelTol = 1e-9;
constexpr double kGapBoundSlack = 1e-9;
constexpr double kGapBoundExample = 0.035947;  // closed form at (0.015, [0.02])
constexpr double kGapBoundPublished = 0.036043;
constexpr double kGapBoundExampleTol = 1e-6;
constexpr int kIterationCap = 500;
constexpr int kExactMasterMinis = 20;
constexpr int kMilpModels = 300;
constexpr int kMaxBinaries = 12;
constexpr double kMilpTol = 1e-7;
constexpr int kSymmetryMinis = 20;
constexpr double kSymmetryTol = 1e-7;
constexpr int kCutoffMinis = 10;
constexpr double kCutoffTol = 1e-7;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

auto clock_start = std::chrono::steady_clock::now();

void emit(int id, const char* name, const Outcome& o, bool blocking = true) {
  const char* tag = o.pass ? "PASS" : (blocking ? "FAIL" : "INFO");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
  std::printf("%s [%2d] %s: %s [%.1f s]\n", tag, id, name, o.detail.c_str(), secs);
  clock_start = std::chrono::steady_clock::now();
  std::fflush(stdout);
  if (!o.pass && blocking) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

drorsp::FirstStage random_stage(std::mt19937_64& rng, const drorsp::Instance& inst) {
  std::uniform_int_distribution<int> room(0, inst.nR() - 1);
  std::uniform_real_distribution<double> eta(-1.0, 1.0);
  std::uniform_real_distribution<double> phi(0.0, 1.0);
  drorsp::FirstStage fs;
  fs.x.assign(inst.nR(), 0.0);
  fs.y.assign(inst.nI(), std::vector<double>(inst.nR(), 0.0));
  for (int i = 0; i < inst.nI(); ++i) {
    const int r = room(rng);
    fs.y[i][r] = 1.0;
    fs.x[r] = 1.0;
    fs.eta.push_back(eta(rng));
    fs.phi.push_back(phi(rng));
  }
  return fs;
}

std::vector<std::vector<double>> grid_points(const drorsp::Instance& inst, int count, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> tag(0, 2);
  std::vector<std::vector<double>> out;
  std::set<std::vector<double>> seen;
  while (static_cast<int>(out.size()) < count) {
    std::vector<drorsp::Tag> t(inst.nI());
    for (auto& x : t) x = static_cast<drorsp::Tag>(tag(rng));
    auto d = drorsp::durations(inst, t);
    if (seen.insert(d).second) out.push_back(d);
  }
  return out;
}

// Exact solve, then report a bound just inside the requested gap: the
// loosest answer a compliant solver may give.
milp::SolveOutcome loose_solver(const milp::LinearModel& m, const milp::SolveControls& c) {
  milp::SolveControls exact = c;
  exact.rel_gap = 0.0;
  milp::SolveOutcome out = milp::solve_milp(m, exact);
  if (out.has_incumbent() && c.rel_gap > 0.0) {
    out.best_bound = out.incumbent_value - 0.999 * c.rel_gap * std::abs(out.incumbent_value);
    out.status = milp::SolveStatus::kGapReached;
  }
  return out;
}

// Shared corpus ---------------------------------------------------------------

struct Toy {
  TwoStageProblem p;
  double v_star = 0.0;
};

struct Mini {
  drorsp::Instance inst;
  double v_star = 0.0;
};

std::vector<Toy> make_toys() {
  std::mt19937_64 rng(101);
  std::vector<Toy> out;
  for (int k = 0; k < kToys; ++k) {
    Toy t{testing::random_toy_problem(rng, 1 + k % 3, 2 + k % 2, 1 + k % 8), 0.0};
    t.v_star = testing::toy_optimum_by_enumeration(t.p);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Mini> make_minis() {
  std::mt19937_64 rng(202);
  std::vector<Mini> out;
  for (int k = 0; k < kMinis; ++k) {
    Mini m{testing::random_mini(rng, 3 + k % 3, 2), 0.0};
    m.v_star = testing::drorsp_brute_force(m.inst);
    out.push_back(std::move(m));
  }
  return out;
}

/// One i-C&CG run with the optimum it should reach.
struct IccgRun {
  std::string label;
  IccgParams params;
  SolveReport report;
  double v_star = 0.0;
};

std::vector<IccgParams> iccg_variants() {
  std::vector<IccgParams> v(5);
  v[1].master_solver = loose_solver;
  v[2].master_solver = loose_solver;
  v[2].exploit_frequency = 2;
  v[3].master_solver = loose_solver;
  v[3].conservative_bound_update = true;
  v[4].eps_mp_initial = 0.1;
  v[4].epsilon_tilde = 0.019;
  v[4].master_time_limit = 0.05;
  v[4].time_limit_increment = 0.05;
  return v;
}

std::vector<IccgRun> iccg_runs(const std::vector<Toy>& toys, const std::vector<Mini>& minis) {
  std::vector<IccgRun> out;
  const auto variants = iccg_variants();
  for (std::size_t k = 0; k < toys.size(); ++k) {
    FiniteMasterBuilder b(toys[k].p);
    FiniteOracle o(toys[k].p);
    for (std::size_t v = 0; v < variants.size(); ++v) {
      out.push_back({fmt("toy %zu variant %zu", k, v), variants[v], solve_iccg(b, o, variants[v]), toys[k].v_star});
    }
  }
  for (std::size_t k = 0; k < minis.size(); ++k) {
    drorsp::MasterBuilderAdapter b(minis[k].inst);
    drorsp::OracleAdapter o(minis[k].inst, drorsp::OracleMode::kMilp);
    for (std::size_t v = 0; v < variants.size(); ++v) {
      out.push_back({fmt("mini %zu variant %zu", k, v), variants[v], solve_iccg(b, o, variants[v]), minis[k].v_star});
    }
  }
  return out;
}

// Criteria ---------------------------------------------------------------------

Outcome oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(303);
  int worst_case = 0;
  double max_err = 0.0;
  double max_raw = 0.0;
  for (int k = 0; k < kOracleMinis; ++k) {
    const drorsp::Instance inst = testing::random_mini(rng, 1 + k % 6, 1 + k % 2);
    const drorsp::FirstStage fs = random_stage(rng, inst);
    const double expected = testing::drorsp_sup_by_enumeration(inst, fs.y, fs.eta, fs.phi);
    const double got = drorsp::worst_case_scenario(inst, fs, drorsp::OracleMode::kMilp).value;
    // The linearized model's own optimum, before re-evaluation.
    const milp::SolveOutcome raw = milp::solve_milp(drorsp::build_subproblem(inst, fs).model);
    max_raw = std::max(max_raw, raw.has_incumbent() ? std::abs(raw.incumbent_value - expected) : milp::kInf);
    const double err = std::abs(got - expected);
    if (err > max_err) {
      max_err = err;
      worst_case = k;
    }
  }
  const double secs = seconds_since(t0);
  return {max_err <= kOracleTol && max_raw <= kOracleTol && secs <= kOracleBudgetS,
          fmt("%d minis, max |oracle - enum| = %.2e (worst #%d), max |MILP objective - enum| = %.2e (tol %.0e), "
              "%.1f s (budget %.0f s)",
              kOracleMinis, max_err, worst_case, max_raw, kOracleTol, secs, kOracleBudgetS)};
}

Outcome exact_correctness(const std::vector<Toy>& toys, const std::vector<Mini>& minis) {
  const auto t0 = std::chrono::steady_clock::now();
  int bad = 0;
  double worst = 0.0;
  auto check = [&](const SolveReport& rep, double v) {
    const double rel = std::abs(rep.final_value - v) / std::max(std::abs(v), 1e-12);
    worst = std::max(worst, rel);
    if (rep.termination != Termination::kConverged || rel > kEps) ++bad;
  };
  for (const Toy& t : toys) {
    FiniteMasterBuilder b(t.p);
    FiniteOracle o(t.p);
    check(solve_ccg(b, o, CcgParams{}), t.v_star);
  }
  for (const Mini& m : minis) {
    drorsp::MasterBuilderAdapter b(m.inst);
    drorsp::OracleAdapter o(m.inst, drorsp::OracleMode::kMilp);
    check(solve_ccg(b, o, CcgParams{}), m.v_star);
  }
  const double secs = seconds_since(t0);
  return {bad == 0 && secs <= kExactBudgetS,
          fmt("%zu toys + %zu minis, %d off, max relative error %.2e (tol %.2f), %.1f s (budget %.0f s)", toys.size(),
              minis.size(), bad, worst, kEps, secs, kExactBudgetS)};
}

Outcome lower_bound_validity(const std::vector<IccgRun>& runs) {
  long records = 0;
  int violations = 0;
  double worst = -milp::kInf;
  for (const IccgRun& r : runs) {
    for (const IterationRecord& it : r.report.iterations) {
      ++records;
      const double excess = it.L_ell - r.v_star;
      worst = std::max(worst, excess / std::max(std::abs(r.v_star), 1e-12));
      if (it.L_ell > r.v_star + kLowerBoundRelTol * std::abs(r.v_star)) ++violations;
    }
  }
  return {violations == 0, fmt("%zu runs, %ld records, %d violations, max (L_ell - v*)/|v*| = %.2e", runs.size(),
                               records, violations, worst)};
}

Outcome exploit_gap_bound(const std::vector<IccgRun>& runs) {
  int events = 0;
  int violations = 0;
  double tightest = milp::kInf;
  for (const IccgRun& r : runs) {
    for (const ExploitEvent& e : r.report.exploits) {
      if (e.trigger != ExploitTrigger::kInexactGap || e.eps_mp_seq.empty() || !e.masters_within_tolerance) continue;
      ++events;
      const double bound = prop2_gap_bound(r.params.epsilon_tilde, e.eps_mp_seq);
      tightest = std::min(tightest, bound - e.gap_actual);
      if (e.gap_actual > bound + kGapBoundSlack) ++violations;
    }
  }
  const double example = prop2_gap_bound(0.015, std::vector<double>{0.02});
  const double example2 = prop2_gap_bound(0.015, std::vector<double>{0.02, 0.016});
  const bool example_ok = std::abs(example - kGapBoundExample) <= kGapBoundExampleTol;
  return {violations == 0 && events > 0 && example_ok,
          fmt("%d gap-triggered exploits, %d violations, min slack %.2e; bound(0.015,[0.02]) = %.6f (closed form "
              "%.6f; a published figure of %.6f disagrees with the closed form), bound(0.015,[0.02,0.016]) = "
              "%.6f",
              events, violations, tightest, example, kGapBoundExample, kGapBoundPublished, example2)};
}

Outcome finite_termination(const std::vector<IccgRun>& runs) {
  int unconverged = 0;
  int repeats = 0;
  int explores = 0;
  for (const IccgRun& r : runs) {
    const IccgParams& p = r.params;
    if (!(p.epsilon_tilde < p.epsilon / (1 + p.epsilon))) return {false, "a run violates the eps_tilde condition"};
    if (r.report.termination != Termination::kConverged ||
        static_cast<int>(r.report.iterations.size()) >= kIterationCap) {
      ++unconverged;
    }
    std::set<int> seen;
    for (const IterationRecord& it : r.report.iterations) {
      if (it.decision != Decision::kExplore) continue;
      ++explores;
      if (!seen.insert(it.scenario_added).second) ++repeats;
    }
  }
  return {unconverged == 0 && repeats == 0,
          fmt("%zu runs, %d not converged before %d iterations, %d explores, %d repeated scenario ids", runs.size(),
              unconverged, kIterationCap, explores, repeats)};
}

Outcome exact_master_equivalence() {
  std::mt19937_64 rng(404);
  int mismatches = 0;
  int total_scenarios = 0;
  for (int k = 0; k < kExactMasterMinis; ++k) {
    const drorsp::Instance inst = testing::random_mini(rng, 3 + k % 3, 2);
    drorsp::MasterBuilderAdapter b(inst);
    drorsp::OracleAdapter o(inst, drorsp::OracleMode::kMilp);
    const SolveReport a = solve_ccg(b, o, CcgParams{});
    IccgParams ip;
    ip.eps_mp_initial = 0.0;
    const SolveReport c = solve_iccg(b, o, ip);
    auto sequence = [](const SolveReport& r) {
      std::vector<std::vector<double>> s;
      for (int id : r.scenario_sequence) s.push_back(r.scenarios[id].xi);
      return s;
    };
    const auto sa = sequence(a);
    total_scenarios += static_cast<int>(sa.size());
    if (sa != sequence(c) || a.final_value != c.final_value || c.exploit_count != 0) ++mismatches;
  }
  return {mismatches == 0, fmt("%d minis, %d scenarios in total, %d mismatches in sequence or final value",
                               kExactMasterMinis, total_scenarios, mismatches)};
}

Outcome conservative_update(const std::vector<IccgRun>& runs) {
  int checked = 0;
  int ell_lag = 0;
  int above = 0;
  for (const IccgRun& r : runs) {
    if (!r.params.conservative_bound_update) continue;
    ++checked;
    for (const IterationRecord& it : r.report.iterations) {
      if (it.ell != it.index) ++ell_lag;
      const double tol = kLowerBoundRelTol * std::abs(r.v_star);
      if (it.L_bar > r.v_star + tol || it.L_ell > r.v_star + tol) ++above;
    }
  }
  return {checked > 0 && ell_lag == 0 && above == 0,
          fmt("%d conservative runs, %d records with l != j, %d with Lbar or L_ell above v*", checked, ell_lag, above)};
}

// Random mixed model: a few binaries plus continuous columns boxed in [0, 4].
milp::LinearModel random_mixed_model(std::mt19937_64& rng, int nb, int nc) {
  std::uniform_int_distribution<int> coef(-5, 8);
  milp::LinearModel m;
  for (int j = 0; j < nb; ++j) m.add_column(0, 1, milp::ColumnType::kBinary, coef(rng));
  for (int j = 0; j < nc; ++j) m.add_column(0, 4, milp::ColumnType::kContinuous, coef(rng));
  for (int i = 0; i < 2 + nc; ++i) {
    std::vector<milp::Term> terms;
    double total = 0;
    for (int j = 0; j < nb + nc; ++j) {
      const int a = coef(rng);
      if (a != 0) terms.push_back({j, static_cast<double>(a)});
      total += std::max(a, 0) * (j < nb ? 1.0 : 4.0);
    }
    m.add_row(terms, i % 3 == 2 ? milp::RowSense::kGreaterEqual : milp::RowSense::kLessEqual,
              std::floor(total * (i % 3 == 2 ? 0.2 : 0.5)));
  }
  return m;
}

// Enumerates the binaries; each fixing leaves an LP over the continuous
// columns alone, solved by vertex enumeration.
std::optional<double> mixed_by_enumeration(const milp::LinearModel& m, int nb) {
  const int nc = m.num_columns() - nb;
  std::optional<double> best;
  for (long mask = 0; mask < (1L << nb); ++mask) {
    auto fixed = [&](int j) { return static_cast<double>((mask >> j) & 1L); };
    milp::LinearModel lp(m.sense());
    double constant = 0.0;
    for (int j = 0; j < nb; ++j) constant += m.objective()[j] * fixed(j);
    for (int j = nb; j < nb + nc; ++j) {
      lp.add_column(m.column(j).lower, m.column(j).upper, milp::ColumnType::kContinuous, m.objective()[j]);
    }
    for (int i = 0; i < m.num_rows(); ++i) {
      std::vector<milp::Term> terms;
      double rhs = m.row(i).rhs;
      for (const milp::Term& t : m.row(i).terms) {
        if (t.column < nb) rhs -= t.coefficient * fixed(t.column);
        else terms.push_back({t.column - nb, t.coefficient});
      }
      lp.add_row(terms, m.row(i).sense, rhs);
    }
    const auto v = testing::lp_by_vertices(lp);
    if (!v) continue;
    const double total = *v + constant;
    const bool maximize = m.sense() == milp::ObjectiveSense::kMaximize;
    if (!best || (maximize ? total > *best : total < *best)) best = total;
  }
  return best;
}

Outcome milp_engine() {
  std::mt19937_64 rng(505);
  std::uniform_int_distribution<int> size(2, kMaxBinaries);
  int models = 0, feasible = 0, bracket_fail = 0, gap_runs = 0, gap_fail = 0, status_fail = 0;
  for (int k = 0; k < kMilpModels; ++k) {
    const bool mixed = k % 3 == 2;
    const int nb = mixed ? 1 + k % 5 : size(rng);
    const milp::LinearModel m = mixed ? random_mixed_model(rng, nb, 1 + k % 3)
                                      : testing::random_binary_model(rng, nb, 1 + k % 4);
    const auto truth = mixed ? mixed_by_enumeration(m, nb) : testing::binary_by_enumeration(m);
    ++models;
    for (double gap : {0.0, 0.05, 0.25}) {
      milp::SolveControls c;
      c.rel_gap = gap;
      const milp::SolveOutcome out = milp::solve_milp(m, c);
      if (!truth) {
        if (out.status != milp::SolveStatus::kInfeasible) ++status_fail;
        continue;
      }
      if (gap == 0.0) ++feasible;
      if (!out.has_incumbent()) {
        ++status_fail;
        continue;
      }
      const bool maximize = m.sense() == milp::ObjectiveSense::kMaximize;
      const double lo = maximize ? out.incumbent_value : out.best_bound;
      const double hi = maximize ? out.best_bound : out.incumbent_value;
      const double tol = kMilpTol * std::max(1.0, std::abs(*truth));
      if (!(lo <= *truth + tol && *truth <= hi + tol)) ++bracket_fail;
      if (out.status == milp::SolveStatus::kGapReached) {
        ++gap_runs;
        const double U = out.incumbent_value, L = out.best_bound;
        if (std::abs(U - L) / std::max(std::abs(U), 1e-12) > gap + 1e-12) ++gap_fail;
      }
      if (gap == 0.0 && std::abs(out.incumbent_value - *truth) > tol) ++bracket_fail;
    }
  }
  return {bracket_fail == 0 && gap_fail == 0 && status_fail == 0,
          fmt("%d models (<= %d binaries, %d feasible), %d bracket failures, %d status failures, %d GapReached "
              "stops with %d over their gap",
              models, kMaxBinaries, feasible, bracket_fail, status_fail, gap_runs, gap_fail)};
}

double master_value(const milp::LinearModel& m) {
  const milp::SolveOutcome out = milp::solve_milp(m);
  return out.status == milp::SolveStatus::kOptimal ? out.incumbent_value : milp::kInf;
}

Outcome symmetry_neutrality() {
  std::mt19937_64 rng(606);
  double worst = 0.0;
  for (int k = 0; k < kSymmetryMinis; ++k) {
    const int nR = 2 + k % 2;
    const drorsp::Instance inst = testing::random_mini(rng, nR + k % 3 + 1, nR);
    const auto pts = grid_points(inst, 2 + k % 5, rng);
    const double with = master_value(drorsp::build_master(inst, pts, 0.0, {.symmetry_breaking = true}));
    const double without = master_value(drorsp::build_master(inst, pts, 0.0, {.symmetry_breaking = false}));
    worst = std::max(worst, std::isfinite(with) && std::isfinite(without) ? std::abs(with - without) : milp::kInf);
  }
  return {worst <= kSymmetryTol,
          fmt("%d minis, max |with - without| = %.2e (tol %.0e)", kSymmetryMinis, worst, kSymmetryTol)};
}

Outcome cutoff_above_optimum(const std::vector<Mini>& minis) {
  double worst = 0.0;
  for (int k = 0; k < kCutoffMinis; ++k) {
    const Mini& m = minis[k];
    const double cut = 1.5 * m.v_star;
    const double v = master_value(drorsp::build_master(m.inst, {}, cut));
    worst = std::max(worst, std::abs(v - cut));
  }
  return {worst <= kCutoffTol,
          fmt("%d minis, empty scenario set, cutoff 1.5 v*: max |value - cutoff| = %.2e (tol %.0e)", kCutoffMinis,
              worst, kCutoffTol)};
}

// Pipeline determinism -----------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cli(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "iccg");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  return code;
}

std::string drop_csv_columns(const std::string& text, std::set<std::string> names) {
  std::istringstream in(text);
  std::string line, out;
  std::vector<bool> keep;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') {
      out += line + '\n';
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (keep.empty()) {
      for (const std::string& c : cells) keep.push_back(!names.count(c));
    }
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k < keep.size() && keep[k]) out += cells[k] + ',';
    }
    out += '\n';
  }
  return out;
}

std::string strip_report_timing(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  j.erase("elapsed_s");
  for (auto& it : j.at("iterations")) {
    it.erase("master_ms");
    it.erase("sub_ms");
  }
  return j.dump();
}

/// gen -> solve -> bench -> profile into `dir`; returns the timing-free
/// artifacts concatenated with section markers.
std::string pipeline(const fs::path& dir) {
  fs::create_directories(dir);
  auto p = [&](const char* name) { return (dir / name).string(); };
  std::ofstream(p("matrix.json")) << R"({"wall_cap_s": 60, "runs": [
    {"run_id": "det", "methods": ["ccg", "iccg"], "seeds": [11, 12],
     "spec": {"num_surgeries": 5, "num_ors": 2}}]})";
  if (cli({"gen", "--seed", "21", "--surgeries", "5", "--ors", "2", "-o", p("inst.json")}) != 0) return "gen failed";
  if (cli({"solve", p("inst.json"), "--method", "iccg", "--report", p("report.json"), "--log", p("iter.csv"),
           "--run-id", "det"}) != 0) {
    return "solve failed";
  }
  if (cli({"bench", p("matrix.json"), "-o", p("results.csv")}) != 0) return "bench failed";
  if (cli({"profile", p("results.csv"), "--metric", "gap", "--csv", p("gap.csv"), "--svg", p("gap.svg")}) != 0) {
    return "profile failed";
  }
  std::string all;
  all += "== instance\n" + slurp(p("inst.json"));
  all += "== report\n" + strip_report_timing(slurp(p("report.json")));
  all += "\n== iterations\n" + drop_csv_columns(slurp(p("iter.csv")), {"master_ms", "sub_ms"});
  all += "== results\n" + drop_csv_columns(slurp(p("results.csv")), {"time_s"});
  all += "== gap profile\n" + slurp(p("gap.csv"));
  all += "== gap svg\n" + slurp(p("gap.svg"));
  return all;
}

Outcome pipeline_determinism() {
  const fs::path root = fs::temp_directory_path() / ("iccg_acceptance_" + std::to_string(::getpid()));
  const std::string a = pipeline(root / "a");
  const std::string b = pipeline(root / "b");
  fs::remove_all(root);
  const bool ok = a == b && a.size() > 1000;
  return {ok, fmt("gen -> solve -> bench -> profile twice: %zu vs %zu bytes of timing-free output, %s", a.size(),
                  b.size(), a == b ? "identical" : "DIFFERENT")};
}

// Informational: hardened masters -----------------------------------------------

Outcome gap_profile_direction() {
  // Desk-scale stand-in for the hard-master regime: instances large enough
  // that exact masters stall inside a short per-run cap, while i-C&CG runs
  // its masters under a time limit tau that grows by beta on exploitation.
  std::vector<bench::ExperimentEntry> matrix;
  for (std::uint64_t seed : {1, 2, 3}) {
    for (bench::Method method : {bench::Method::kCcg, bench::Method::kIccg}) {
      bench::ExperimentEntry e;
      e.run_id = fmt("hard-%llu-%s", static_cast<unsigned long long>(seed), std::string(to_string(method)).c_str());
      e.spec.seed = seed;
      e.spec.num_surgeries = 12;
      e.spec.num_ors = 3;
      e.solver.method = method;
      e.solver.iccg.master_time_limit = 2.0;
      e.solver.iccg.time_limit_increment = 4.0;
      matrix.push_back(e);
    }
  }
  const auto rows = bench::run_experiment(matrix, {.wall_cap_s = 15.0});
  std::vector<bench::ResultRow> ccg_rows, iccg_rows;
  for (const bench::ResultRow& r : rows) (r.method == "ccg" ? ccg_rows : iccg_rows).push_back(r);
  const auto th = bench::default_thresholds(bench::Metric::kGap, 0.0);
  const bench::ProfileCurve c = bench::performance_profile(ccg_rows, bench::Metric::kGap, th);
  const bench::ProfileCurve i = bench::performance_profile(iccg_rows, bench::Metric::kGap, th);
  int worse = 0;
  for (std::size_t k = 0; k < th.size(); ++k) worse += i.points[k].fraction < c.points[k].fraction;
  std::string gaps;
  for (const bench::ResultRow& r : rows) gaps += fmt(" %s=%s/%.3f", r.run_id.c_str(), r.status.c_str(), r.final_gap);
  return {worse == 0, fmt("%d of %zu thresholds where i-C&CG is below C&CG (capped rows: ccg %d, iccg %d);%s", worse,
                          th.size(), c.population, i.population, gaps.c_str())};
}

}  // namespace

int main(int argc, char** argv) {
  bool informational = true;
  for (int k = 1; k < argc; ++k) {
    if (std::strcmp(argv[k], "--skip-informational") == 0) informational = false;
  }
  emit(1, "oracle equivalence (subproblem MILP vs grid enumeration)", oracle_equivalence());
  const std::vector<Toy> toys = make_toys();
  const std::vector<Mini> minis = make_minis();
  emit(2, "exact method correctness (C&CG vs brute force)", exact_correctness(toys, minis));
  const std::vector<IccgRun> runs = iccg_runs(toys, minis);
  emit(3, "certified lower bound never exceeds v*", lower_bound_validity(runs));
  emit(4, "actual gap at gap-triggered exploitation within the closed-form bound", exploit_gap_bound(runs));
  emit(5, "finite termination and fresh scenarios on exploration", finite_termination(runs));
  emit(6, "exact masters reproduce C&CG", exact_master_equivalence());
  emit(7, "conservative bound update", conservative_update(runs));
  emit(8, "MILP engine brackets enumerated optima and honours its gap", milp_engine());
  emit(9, "symmetry-breaking rows leave the master optimum unchanged", symmetry_neutrality());
  emit(10, "master with empty scenario set returns a cutoff above v*", cutoff_above_optimum(minis));
  emit(11, "pipeline determinism", pipeline_determinism());
  if (informational) {
    emit(12, "gap profile direction on hardened masters (informational)", gap_profile_direction(), false);
  } else {
    std::printf("SKIP [12] gap profile direction on hardened masters (informational)\n");
  }
  std::printf("%s: %d blocking failure(s)\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
