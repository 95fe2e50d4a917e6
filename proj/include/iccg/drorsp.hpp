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

// Distributionally robust operating-room scheduling.
//
// Open ORs (x_r) and assign surgeries (y_ir) to minimize
//
//   c_f sum_r x_r + c_v sup_{P} E_P[ sum_r (sum_i y_ir d_i - T)^+ ]
//
// over distributions on the box [dlo, dhi] with means mu and mean absolute
// deviations at most nu. Dualizing the moment problem gives a two-stage
// robust problem whose first stage is (x, y, eta, phi) and whose worst case
// is attained on the grid {dlo, mu, dhi}^|I|.

#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "iccg/engine.hpp"
#include "iccg/error.hpp"
#include "iccg/milp.hpp"
#include "iccg/scenario.hpp"
#include "json.hpp"

namespace iccg::drorsp {

struct Surgery {
  double mu = 0.0;
  double nu = 0.0;
  double dlo = 0.0;
  double dhi = 0.0;

  double delta_lo() const { return mu - dlo; }
  double delta_hi() const { return dhi - mu; }
};

struct Instance {
  std::vector<Surgery> surgeries;
  int num_ors = 1;
  double c_f = 1.0;
  double c_v = 1.0 / 30.0;
  double T = 480.0;

  int nI() const { return static_cast<int>(surgeries.size()); }
  int nR() const { return num_ors; }

  /// Throws DimensionError on hard violations and returns soft warnings.
  std::vector<std::string> check() const {
    std::vector<std::string> warnings;
    if (surgeries.empty()) throw Error(ErrorCode::kDimension, "instance has no surgeries");
    if (num_ors < 1) throw Error(ErrorCode::kDimension, "num_ors must be positive");
    if (nI() < nR()) throw Error(ErrorCode::kDimension, "need at least as many surgeries as ORs");
    if (!(c_f >= 0.0 && c_v >= 0.0 && T >= 0.0)) {
      throw Error(ErrorCode::kDimension, "costs and T must be nonnegative");
    }
    for (int i = 0; i < nI(); ++i) {
      const Surgery& s = surgeries[i];
      const std::string tag = "surgery " + std::to_string(i);
      if (!(s.dlo <= s.mu && s.mu <= s.dhi)) throw Error(ErrorCode::kDimension, tag + ": need dlo <= mu <= dhi");
      if (!(s.nu >= 0.0)) throw Error(ErrorCode::kDimension, tag + ": nu must be nonnegative");
      if (s.nu > std::max(s.delta_lo(), s.delta_hi())) {
        warnings.push_back(tag + ": nu exceeds the largest deviation the support allows");
      }
    }
    return warnings;
  }
};

/// Per-surgery position on the grid.
enum class Tag : int { kMu = 0, kHi = 1, kLo = 2 };

/// Decision vector of the master restricted to the first stage.
struct FirstStage {
  std::vector<double> x;               // |R|
  std::vector<std::vector<double>> y;  // |I| x |R|
  std::vector<double> eta;
  std::vector<double> phi;
};

struct ScenarioResult {
  std::vector<Tag> tags;
  std::vector<double> d;
  double value = 0.0;  // sup_d { Q(y,d) - sum_i (d_i eta_i + |d_i - mu_i| phi_i) }
};

inline double duration(const Surgery& s, Tag t) {
  switch (t) {
    case Tag::kLo: return s.dlo;
    case Tag::kHi: return s.dhi;
    case Tag::kMu: return s.mu;
  }
  return s.mu;
}

inline std::vector<double> durations(const Instance& inst, std::span<const Tag> tags) {
  std::vector<double> d(tags.size());
  for (std::size_t i = 0; i < tags.size(); ++i) d[i] = duration(inst.surgeries[i], tags[i]);
  return d;
}

/// Q(y, d) = sum_r (sum_i y_ir d_i - T)^+.
inline double recourse_overtime(const std::vector<std::vector<double>>& y, std::span<const double> d,
                                double T) {
  if (y.size() != d.size()) throw Error(ErrorCode::kDimension, "y and d disagree on |I|");
  const std::size_t R = y.empty() ? 0 : y.front().size();
  double total = 0.0;
  for (std::size_t r = 0; r < R; ++r) {
    double load = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) load += y[i][r] * d[i];
    total += std::max(load - T, 0.0);
  }
  return total;
}

/// Same quantity through the LP min sum w s.t. w_r >= load_r - T, w >= 0.
inline double recourse_overtime_lp(const std::vector<std::vector<double>>& y, std::span<const double> d,
                                   double T) {
  const std::size_t R = y.empty() ? 0 : y.front().size();
  milp::LinearModel m;
  for (std::size_t r = 0; r < R; ++r) {
    double load = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) load += y[i][r] * d[i];
    const int w = m.add_column(0.0, milp::kInf, milp::ColumnType::kContinuous, 1.0);
    m.add_row({{w, 1.0}}, milp::RowSense::kGreaterEqual, load - T);
  }
  return milp::solve_lp(m).incumbent_value;
}

inline double scenario_value(const Instance& inst, const FirstStage& fs, std::span<const double> d) {
  double v = recourse_overtime(fs.y, d, inst.T);
  for (int i = 0; i < inst.nI(); ++i) {
    v -= d[i] * fs.eta[i] + std::abs(d[i] - inst.surgeries[i].mu) * fs.phi[i];
  }
  return v;
}

// Master --------------------------------------------------------------------

/// Column layout of the master model.
struct MasterLayout {
  int nI = 0;
  int nR = 0;
  int x(int r) const { return r; }
  int y(int i, int r) const { return nR + i * nR + r; }
  int eta(int i) const { return nR + nI * nR + i; }
  int phi(int i) const { return nR + nI * nR + nI + i; }
  int delta() const { return nR + nI * nR + 2 * nI; }
  int first_stage_size() const { return delta(); }
};

/// Ordering constraints that keep one representative per OR relabelling:
/// open ORs form a prefix, surgery i uses ORs 1..i, and OR j hosts surgery i
/// only if OR j-1 already hosts an earlier surgery.
inline void add_symmetry_breaking(const MasterLayout& L, milp::LinearModel& m) {
  for (int r = 0; r + 1 < L.nR; ++r) {
    m.add_row({{L.x(r), 1.0}, {L.x(r + 1), -1.0}}, milp::RowSense::kGreaterEqual, 0.0,
              "sb_open" + std::to_string(r));
  }
  for (int i = 0; i + 1 < L.nR; ++i) {
    std::vector<milp::Term> t;
    for (int r = 0; r <= i; ++r) t.push_back({L.y(i, r), 1.0});
    m.add_row(std::move(t), milp::RowSense::kEqual, 1.0, "sb_prefix" + std::to_string(i));
  }
  // 0-based: j in 1..R-1, i in j..I-1.
  for (int j = 1; j < L.nR; ++j) {
    for (int i = j; i < L.nI; ++i) {
      std::vector<milp::Term> t;
      for (int r = j; r <= std::min(i, L.nR - 1); ++r) t.push_back({L.y(i, r), 1.0});
      for (int u = j - 1; u <= i - 1; ++u) t.push_back({L.y(u, j - 1), -1.0});
      m.add_row(std::move(t), milp::RowSense::kLessEqual, 0.0,
                "sb_stair" + std::to_string(j) + "_" + std::to_string(i));
    }
  }
}

struct MasterOptions {
  bool symmetry_breaking = true;
  /// Keep a cut for the nominal durations d = mu in every master. Without it
  /// the master is unbounded below the cutoff until the scenario set supports
  /// a distribution with mean exactly mu; mu lies in the support, so the
  /// master remains a relaxation.
  bool nominal_cut = true;
};

/// Master over scenario durations `scenarios` (each a full d vector). The
/// cutoff row (whole objective >= lower_cutoff) is omitted for -inf.
inline milp::LinearModel build_master(const Instance& inst, std::span<const std::vector<double>> given,
                                      double lower_cutoff, MasterOptions options = {}) {
  const MasterLayout L{inst.nI(), inst.nR()};
  std::vector<std::vector<double>> scenarios;
  if (options.nominal_cut) {
    std::vector<double> mu(L.nI);
    for (int i = 0; i < L.nI; ++i) mu[i] = inst.surgeries[i].mu;
    scenarios.push_back(std::move(mu));
  }
  scenarios.insert(scenarios.end(), given.begin(), given.end());
  milp::LinearModel m;
  for (int r = 0; r < L.nR; ++r) {
    m.add_column(0, 1, milp::ColumnType::kBinary, inst.c_f, "x" + std::to_string(r));
  }
  for (int i = 0; i < L.nI; ++i) {
    for (int r = 0; r < L.nR; ++r) {
      m.add_column(0, 1, milp::ColumnType::kBinary, 0.0, "y" + std::to_string(i) + "_" + std::to_string(r));
    }
  }
  for (int i = 0; i < L.nI; ++i) {
    m.add_column(-milp::kInf, milp::kInf, milp::ColumnType::kContinuous, inst.c_v * inst.surgeries[i].mu,
                 "eta" + std::to_string(i));
  }
  for (int i = 0; i < L.nI; ++i) {
    m.add_column(0.0, milp::kInf, milp::ColumnType::kContinuous, inst.c_v * inst.surgeries[i].nu,
                 "phi" + std::to_string(i));
  }
  m.add_column(-milp::kInf, milp::kInf, milp::ColumnType::kContinuous, inst.c_v, "delta");

  for (int i = 0; i < L.nI; ++i) {
    std::vector<milp::Term> assign;
    for (int r = 0; r < L.nR; ++r) {
      m.add_row({{L.y(i, r), 1.0}, {L.x(r), -1.0}}, milp::RowSense::kLessEqual, 0.0);
      assign.push_back({L.y(i, r), 1.0});
    }
    m.add_row(std::move(assign), milp::RowSense::kEqual, 1.0, "assign" + std::to_string(i));
  }
  if (options.symmetry_breaking) add_symmetry_breaking(L, m);

  for (std::size_t k = 0; k < scenarios.size(); ++k) {
    const auto& d = scenarios[k];
    if (static_cast<int>(d.size()) != L.nI) throw Error(ErrorCode::kDimension, "scenario length != |I|");
    const std::string tag = options.nominal_cut ? (k == 0 ? std::string("nom") : std::to_string(k - 1))
                                                : std::to_string(k);
    // delta - sum_r w_r + sum_i (d_i eta_i + |d_i - mu_i| phi_i) >= 0
    std::vector<milp::Term> cut{{L.delta(), 1.0}};
    for (int r = 0; r < L.nR; ++r) {
      const int w = m.add_column(0.0, milp::kInf, milp::ColumnType::kContinuous, 0.0,
                                 "w" + tag + "_" + std::to_string(r));
      cut.push_back({w, -1.0});
      // w_r - sum_i d_i y_ir >= -T
      std::vector<milp::Term> over{{w, 1.0}};
      for (int i = 0; i < L.nI; ++i) {
        if (d[i] != 0.0) over.push_back({L.y(i, r), -d[i]});
      }
      m.add_row(std::move(over), milp::RowSense::kGreaterEqual, -inst.T, "ot" + tag + "_" + std::to_string(r));
    }
    for (int i = 0; i < L.nI; ++i) {
      if (d[i] != 0.0) cut.push_back({L.eta(i), d[i]});
      const double dev = std::abs(d[i] - inst.surgeries[i].mu);
      if (dev != 0.0) cut.push_back({L.phi(i), dev});
    }
    m.add_row(std::move(cut), milp::RowSense::kGreaterEqual, 0.0, "cut" + tag);
  }

  if (std::isfinite(lower_cutoff)) {
    std::vector<milp::Term> t;
    for (int j = 0; j < m.num_columns(); ++j) {
      if (m.objective()[j] != 0.0) t.push_back({j, m.objective()[j]});
    }
    m.add_row(std::move(t), milp::RowSense::kGreaterEqual, lower_cutoff, "cutoff");
  }
  return m;
}

inline FirstStage decode_first_stage(const Instance& inst, std::span<const double> v) {
  const MasterLayout L{inst.nI(), inst.nR()};
  FirstStage fs;
  fs.x.resize(L.nR);
  fs.y.assign(L.nI, std::vector<double>(L.nR));
  fs.eta.resize(L.nI);
  fs.phi.resize(L.nI);
  for (int r = 0; r < L.nR; ++r) fs.x[r] = std::round(v[L.x(r)]);
  for (int i = 0; i < L.nI; ++i) {
    for (int r = 0; r < L.nR; ++r) fs.y[i][r] = std::round(v[L.y(i, r)]);
    fs.eta[i] = v[L.eta(i)];
    fs.phi[i] = std::max(v[L.phi(i)], 0.0);
  }
  return fs;
}

/// c_f sum_r x_r + c_v sum_i (mu_i eta_i + nu_i phi_i).
inline double first_stage_cost(const Instance& inst, const FirstStage& fs) {
  double v = 0.0;
  for (double x : fs.x) v += inst.c_f * x;
  for (int i = 0; i < inst.nI(); ++i) {
    v += inst.c_v * (inst.surgeries[i].mu * fs.eta[i] + inst.surgeries[i].nu * fs.phi[i]);
  }
  return v;
}

// Subproblem ----------------------------------------------------------------

/// Single-level MILP for sup_d {Q(y,d) - sum_i (d_i eta_i + |d_i-mu_i| phi_i)}
/// with d_i = mu_i - b1_i dlo_gap + b2_i dhi_gap and McCormick products
/// zeta = b * pi. Products are created only for pairs with y_ir = 1; the
/// others carry no objective weight.
struct SubproblemModel {
  milp::LinearModel model{milp::ObjectiveSense::kMaximize};
  std::vector<int> pi;
  std::vector<int> b1;
  std::vector<int> b2;
};

inline SubproblemModel build_subproblem(const Instance& inst, const FirstStage& fs) {
  const int nI = inst.nI();
  const int nR = inst.nR();
  if (static_cast<int>(fs.y.size()) != nI || static_cast<int>(fs.eta.size()) != nI ||
      static_cast<int>(fs.phi.size()) != nI) {
    throw Error(ErrorCode::kDimension, "first stage does not match the instance");
  }
  SubproblemModel sp;
  milp::LinearModel& m = sp.model;
  double offset = 0.0;
  for (int r = 0; r < nR; ++r) {
    double load = 0.0;
    for (int i = 0; i < nI; ++i) load += inst.surgeries[i].mu * fs.y[i][r];
    sp.pi.push_back(m.add_column(0.0, 1.0, milp::ColumnType::kContinuous, load - inst.T,
                                 "pi" + std::to_string(r)));
  }
  for (int i = 0; i < nI; ++i) {
    const Surgery& s = inst.surgeries[i];
    offset -= s.mu * fs.eta[i];
    sp.b1.push_back(m.add_column(0, 1, milp::ColumnType::kBinary,
                                 s.delta_lo() * fs.eta[i] - fs.phi[i] * s.delta_lo(), "b1_" + std::to_string(i)));
    sp.b2.push_back(m.add_column(0, 1, milp::ColumnType::kBinary,
                                 -s.delta_hi() * fs.eta[i] - fs.phi[i] * s.delta_hi(), "b2_" + std::to_string(i)));
    m.add_row({{sp.b1[i], 1.0}, {sp.b2[i], 1.0}}, milp::RowSense::kLessEqual, 1.0);
  }
  m.set_offset(offset);
  auto mccormick = [&m](int zeta, int pi, int b) {
    m.add_row({{zeta, 1.0}, {pi, -1.0}, {b, -1.0}}, milp::RowSense::kGreaterEqual, -1.0);
    m.add_row({{zeta, 1.0}, {pi, -1.0}}, milp::RowSense::kLessEqual, 0.0);
    m.add_row({{zeta, 1.0}, {b, -1.0}}, milp::RowSense::kLessEqual, 0.0);
  };
  for (int i = 0; i < nI; ++i) {
    const Surgery& s = inst.surgeries[i];
    for (int r = 0; r < nR; ++r) {
      if (fs.y[i][r] < 0.5) continue;
      // zeta >= 0 is the column's lower bound.
      const int z1 = m.add_column(0.0, 1.0, milp::ColumnType::kContinuous, -s.delta_lo());
      const int z2 = m.add_column(0.0, 1.0, milp::ColumnType::kContinuous, s.delta_hi());
      mccormick(z1, sp.pi[r], sp.b1[i]);
      mccormick(z2, sp.pi[r], sp.b2[i]);
    }
  }
  return sp;
}

enum class OracleMode { kMilp, kEnumerate };

inline constexpr int kEnumerateMaxSurgeries = 9;

namespace detail {

inline bool tie(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

// (b1, b2) concatenated; lower is preferred.
inline bool lex_less(std::span<const Tag> a, std::span<const Tag> b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool x = a[i] == Tag::kLo, y = b[i] == Tag::kLo;
    if (x != y) return y;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool x = a[i] == Tag::kHi, y = b[i] == Tag::kHi;
    if (x != y) return y;
  }
  return false;
}

}  // namespace detail

/// Worst-case duration vector for a fixed first stage. Enumeration returns
/// the lexicographically smallest (b1, b2) maximizer. The MILP path solves
/// the McCormick model and then clears bits of (b1, b2) in lexicographic
/// order while the value stays optimal.
inline ScenarioResult worst_case_scenario(const Instance& inst, const FirstStage& fs, OracleMode mode) {
  const int nI = inst.nI();
  ScenarioResult best;
  if (mode == OracleMode::kEnumerate) {
    if (nI > kEnumerateMaxSurgeries) {
      throw Error(ErrorCode::kCapExceeded, "enumeration over 3^" + std::to_string(nI) + " scenarios");
    }
    std::vector<Tag> tags(nI, Tag::kMu);
    bool have = false;
    for (;;) {
      const std::vector<double> d = durations(inst, tags);
      const double v = scenario_value(inst, fs, d);
      const bool better = !have || (v > best.value && !detail::tie(v, best.value));
      const bool same = have && detail::tie(v, best.value) && detail::lex_less(tags, best.tags);
      if (better || same) {
        best.value = better ? v : std::max(v, best.value);
        best.tags = tags;
        best.d = d;
        have = true;
      }
      int i = 0;
      while (i < nI && tags[i] == Tag::kLo) tags[i++] = Tag::kMu;
      if (i == nI) break;
      tags[i] = tags[i] == Tag::kMu ? Tag::kHi : Tag::kLo;
    }
    best.value = scenario_value(inst, fs, best.d);
    return best;
  }

  const SubproblemModel sp = build_subproblem(inst, fs);
  const milp::SolveOutcome out = milp::solve_milp(sp.model);
  if (out.status != milp::SolveStatus::kOptimal) {
    throw Error(ErrorCode::kOracleFailure,
                "subproblem MILP returned " + std::string(milp::to_string(out.status)));
  }
  std::vector<Tag> tags(nI, Tag::kMu);
  for (int i = 0; i < nI; ++i) {
    if ((*out.incumbent)[sp.b1[i]] > 0.5) tags[i] = Tag::kLo;
    else if ((*out.incumbent)[sp.b2[i]] > 0.5) tags[i] = Tag::kHi;
  }
  double value = scenario_value(inst, fs, durations(inst, tags));
  const double target = std::max(value, out.incumbent_value);
  for (Tag bit : {Tag::kLo, Tag::kHi}) {
    for (int i = 0; i < nI; ++i) {
      if (tags[i] != bit) continue;
      tags[i] = Tag::kMu;
      const double v = scenario_value(inst, fs, durations(inst, tags));
      if (v >= target - 1e-9 * std::max(1.0, std::abs(target))) {
        value = v;
      } else {
        tags[i] = bit;
      }
    }
  }
  best.tags = tags;
  best.d = durations(inst, tags);
  best.value = value;
  return best;
}

// Engine adapters -----------------------------------------------------------

class MasterBuilderAdapter {
 public:
  explicit MasterBuilderAdapter(const Instance& inst, MasterOptions options = {})
      : inst_(&inst), options_(options) {}

  milp::LinearModel build(std::span<const Scenario> scenarios, double lower_cutoff) const {
    std::vector<std::vector<double>> ds;
    ds.reserve(scenarios.size());
    for (const Scenario& s : scenarios) ds.push_back(s.xi);
    return build_master(*inst_, ds, lower_cutoff, options_);
  }

  MasterPoint extract(const std::vector<double>& solution) const {
    const MasterLayout L{inst_->nI(), inst_->nR()};
    const FirstStage fs = decode_first_stage(*inst_, solution);
    MasterPoint p;
    p.first_stage.assign(solution.begin(), solution.begin() + L.first_stage_size());
    for (int j = 0; j < L.nR + L.nI * L.nR; ++j) p.first_stage[j] = std::round(p.first_stage[j]);
    p.delta = solution[L.delta()];
    p.first_stage_cost = first_stage_cost(*inst_, fs);
    return p;
  }

 private:
  const Instance* inst_;
  MasterOptions options_;
};

/// Oracle value D = c_v * subproblem optimum.
class OracleAdapter {
 public:
  OracleAdapter(const Instance& inst, OracleMode mode) : inst_(&inst), mode_(mode) {}

  OracleAnswer query(const MasterPoint& point) const {
    const FirstStage fs = decode_first_stage(*inst_, point.first_stage);
    const ScenarioResult wc = worst_case_scenario(*inst_, fs, mode_);
    return OracleAnswer{wc.d, inst_->c_v * wc.value};
  }

 private:
  const Instance* inst_;
  OracleMode mode_;
};

static_assert(MasterBuilder<MasterBuilderAdapter>);
static_assert(WorstCaseOracle<OracleAdapter>);

/// Schedule view of a first-stage vector.
inline FirstStage first_stage_of(const Instance& inst, std::span<const double> v) {
  return decode_first_stage(inst, v);
}

/// Upper bound on objective (7a) certified by (eta, phi): first-stage cost
/// plus c_v times the exact inner supremum.
inline double dual_objective(const Instance& inst, const FirstStage& fs, OracleMode mode) {
  return first_stage_cost(inst, fs) + inst.c_v * worst_case_scenario(inst, fs, mode).value;
}

/// sup_P E_P[Q(y, d)] by the primal moment LP over distributions on the
/// grid {dlo, mu, dhi}^|I|. Exponential; for verification only.
inline double worst_case_expected_overtime(const Instance& inst, const std::vector<std::vector<double>>& y) {
  const int nI = inst.nI();
  if (nI > kEnumerateMaxSurgeries) throw Error(ErrorCode::kCapExceeded, "grid too large");
  milp::LinearModel m(milp::ObjectiveSense::kMaximize);
  std::vector<std::vector<milp::Term>> mean(nI), mad(nI);
  std::vector<milp::Term> total;
  std::vector<Tag> tags(nI, Tag::kMu);
  for (;;) {
    const std::vector<double> d = durations(inst, tags);
    const int p = m.add_column(0.0, milp::kInf, milp::ColumnType::kContinuous, recourse_overtime(y, d, inst.T));
    total.push_back({p, 1.0});
    for (int i = 0; i < nI; ++i) {
      if (d[i] != 0.0) mean[i].push_back({p, d[i]});
      const double dev = std::abs(d[i] - inst.surgeries[i].mu);
      if (dev != 0.0) mad[i].push_back({p, dev});
    }
    int i = 0;
    while (i < nI && tags[i] == Tag::kLo) tags[i++] = Tag::kMu;
    if (i == nI) break;
    tags[i] = tags[i] == Tag::kMu ? Tag::kHi : Tag::kLo;
  }
  m.add_row(std::move(total), milp::RowSense::kEqual, 1.0);
  for (int i = 0; i < nI; ++i) {
    m.add_row(std::move(mean[i]), milp::RowSense::kEqual, inst.surgeries[i].mu);
    m.add_row(std::move(mad[i]), milp::RowSense::kLessEqual, inst.surgeries[i].nu);
  }
  const milp::SolveOutcome out = milp::solve_lp(m);
  if (out.status != milp::SolveStatus::kOptimal) {
    throw Error(ErrorCode::kInfeasible, "ambiguity set is empty");
  }
  return out.incumbent_value;
}

/// Objective (7a) of an assignment: c_f per used OR plus the worst-case
/// expected overtime cost.
inline double schedule_objective(const Instance& inst, const std::vector<std::vector<double>>& y) {
  int open = 0;
  for (int r = 0; r < inst.nR(); ++r) {
    bool used = false;
    for (int i = 0; i < inst.nI(); ++i) used = used || y[i][r] > 0.5;
    open += used;
  }
  return inst.c_f * open + inst.c_v * worst_case_expected_overtime(inst, y);
}

// Validation ----------------------------------------------------------------

struct ValidationReport {
  std::vector<std::string> warnings;
  std::vector<std::string> violations;
  int samples = 0;
  bool ok() const { return violations.empty(); }
};

/// Instance invariants plus sampled spot checks: closed-form overtime versus
/// the recourse LP, and a positive cost floor c_f sum x + c_v Q >= K.
inline ValidationReport validate_instance(const Instance& inst, int samples = 32, double K = 1e-6,
                                          std::uint64_t seed = 1) {
  ValidationReport rep;
  try {
    rep.warnings = inst.check();
  } catch (const Error& e) {
    rep.violations.push_back(e.what());
    return rep;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> room(0, inst.nR() - 1);
  std::uniform_int_distribution<int> tag(0, 2);
  for (int s = 0; s < samples; ++s) {
    std::vector<std::vector<double>> y(inst.nI(), std::vector<double>(inst.nR(), 0.0));
    std::vector<double> x(inst.nR(), 0.0);
    for (int i = 0; i < inst.nI(); ++i) {
      const int r = room(rng);
      y[i][r] = 1.0;
      x[r] = 1.0;
    }
    std::vector<Tag> tags(inst.nI());
    for (auto& t : tags) t = static_cast<Tag>(tag(rng));
    const std::vector<double> d = durations(inst, tags);
    const double closed = recourse_overtime(y, d, inst.T);
    const double lp = recourse_overtime_lp(y, d, inst.T);
    if (std::abs(closed - lp) > 1e-7 * (1.0 + std::abs(closed))) {
      rep.violations.push_back("sample " + std::to_string(s) + ": recourse LP disagrees with closed form");
    }
    double floor = inst.c_v * closed;
    for (double v : x) floor += inst.c_f * v;
    if (floor < K) rep.violations.push_back("sample " + std::to_string(s) + ": cost below K");
    ++rep.samples;
  }
  return rep;
}

// JSON ----------------------------------------------------------------------

/// With `check` false the instance is returned as read, for validation.
inline Instance instance_from_json(const nlohmann::json& j, bool check = true) {
  try {
    Instance inst;
    for (const auto& s : j.at("surgeries")) {
      inst.surgeries.push_back(
          Surgery{s.at("mu").get<double>(), s.at("nu").get<double>(), s.at("dlo").get<double>(), s.at("dhi").get<double>()});
    }
    inst.num_ors = j.at("num_ors").get<int>();
    inst.c_f = j.at("c_f").get<double>();
    inst.c_v = j.at("c_v").get<double>();
    inst.T = j.value("T", 480.0);
    if (check) (void)inst.check();
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

inline nlohmann::json instance_to_json(const Instance& inst) {
  nlohmann::json s = nlohmann::json::array();
  for (const Surgery& x : inst.surgeries) {
    s.push_back({{"mu", x.mu}, {"nu", x.nu}, {"dlo", x.dlo}, {"dhi", x.dhi}});
  }
  return {{"surgeries", s}, {"num_ors", inst.num_ors}, {"c_f", inst.c_f}, {"c_v", inst.c_v}, {"T", inst.T}};
}

}  // namespace iccg::drorsp
