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

// Two-stage robust linear problem
//
//   min_{x in X}  c'x + max_{xi in Xi} Q(x, xi),
//   Q(x, xi) = min { q'y : W y >= h - T x - C xi, y >= 0 },
//
// with a finite uncertainty set, plus the brute-force utilities used to check
// the decomposition engine: recourse evaluation, worst-case scenario by
// enumeration, and the extensive form.

#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "iccg/engine.hpp"
#include "iccg/error.hpp"
#include "iccg/milp.hpp"
#include "iccg/scenario.hpp"
#include "json.hpp"

namespace iccg {

using Matrix = std::vector<std::vector<double>>;

/// Linear description of the first-stage feasible set X.
struct FirstStage {
  Matrix A;
  std::vector<double> b;
  std::vector<milp::RowSense> sense;
  std::vector<int> integer;  // column indices
  std::vector<std::pair<double, double>> bounds;
};

struct UncertaintySet {
  enum class Kind { kFinite, kDrorspBox };
  Kind kind = Kind::kFinite;
  Matrix finite;

  /// Finite sets must be nonempty and free of duplicates.
  void check(int dim) const {
    if (kind != Kind::kFinite) return;
    if (finite.empty()) throw Error(ErrorCode::kDimension, "finite uncertainty set is empty");
    std::set<std::vector<double>> seen;
    for (const auto& xi : finite) {
      if (static_cast<int>(xi.size()) != dim) {
        throw Error(ErrorCode::kDimension, "scenario length does not match C");
      }
      if (!seen.insert(xi).second) throw Error(ErrorCode::kDimension, "duplicate scenario");
    }
  }
};

struct TwoStageProblem {
  std::vector<double> c;
  std::vector<double> q;
  Matrix T_mat;
  Matrix W;
  Matrix C;
  std::vector<double> h;
  FirstStage first_stage;
  UncertaintySet uncertainty;

  int n() const { return static_cast<int>(c.size()); }
  int m() const { return static_cast<int>(q.size()); }
  int r() const { return static_cast<int>(h.size()); }
  int l() const { return C.empty() ? 0 : static_cast<int>(C.front().size()); }

  void check() const {
    auto shape = [](const Matrix& a, int rows, int cols, const char* name) {
      if (static_cast<int>(a.size()) != rows) {
        throw Error(ErrorCode::kDimension, std::string(name) + " has the wrong number of rows");
      }
      for (const auto& row : a) {
        if (static_cast<int>(row.size()) != cols) {
          throw Error(ErrorCode::kDimension, std::string(name) + " has the wrong number of columns");
        }
      }
    };
    shape(T_mat, r(), n(), "Tmat");
    shape(W, r(), m(), "W");
    if (static_cast<int>(C.size()) != r()) throw Error(ErrorCode::kDimension, "C has the wrong number of rows");
    shape(C, r(), l(), "C");
    const auto& fs = first_stage;
    shape(fs.A, static_cast<int>(fs.b.size()), n(), "first_stage.A");
    if (fs.sense.size() != fs.b.size()) throw Error(ErrorCode::kDimension, "first_stage.sense length");
    if (!fs.bounds.empty() && static_cast<int>(fs.bounds.size()) != n()) {
      throw Error(ErrorCode::kDimension, "first_stage.bounds length");
    }
    for (int j : fs.integer) {
      if (j < 0 || j >= n()) throw Error(ErrorCode::kDimension, "integer index out of range");
    }
    uncertainty.check(l());
  }
};

namespace model_detail {

inline std::pair<double, double> bounds_of(const TwoStageProblem& p, int j) {
  return p.first_stage.bounds.empty() ? std::pair{0.0, milp::kInf} : p.first_stage.bounds[j];
}

inline bool is_integer(const TwoStageProblem& p, int j) {
  const auto& v = p.first_stage.integer;
  return std::find(v.begin(), v.end(), j) != v.end();
}

/// Adds the x columns (indices 0..n-1) and the rows of X to `m`.
inline void add_first_stage(const TwoStageProblem& p, milp::LinearModel& m) {
  for (int j = 0; j < p.n(); ++j) {
    const auto [lo, hi] = bounds_of(p, j);
    m.add_column(lo, hi, is_integer(p, j) ? milp::ColumnType::kInteger : milp::ColumnType::kContinuous,
                 p.c[j], "x" + std::to_string(j));
  }
  const auto& fs = p.first_stage;
  for (std::size_t i = 0; i < fs.b.size(); ++i) {
    std::vector<milp::Term> terms;
    for (int j = 0; j < p.n(); ++j) {
      if (fs.A[i][j] != 0.0) terms.push_back({j, fs.A[i][j]});
    }
    m.add_row(std::move(terms), fs.sense[i], fs.b[i], "X" + std::to_string(i));
  }
}

/// Adds a recourse copy y^k >= 0 with rows T x + W y^k >= h - C xi and, when
/// `delta` >= 0, the epigraph row delta - q'y^k >= 0.
inline void add_recourse_copy(const TwoStageProblem& p, milp::LinearModel& m,
                              const std::vector<double>& xi, int delta, const std::string& tag) {
  const int y0 = m.num_columns();
  for (int k = 0; k < p.m(); ++k) {
    m.add_column(0.0, milp::kInf, milp::ColumnType::kContinuous, 0.0,
                 "y" + tag + "_" + std::to_string(k));
  }
  for (int i = 0; i < p.r(); ++i) {
    std::vector<milp::Term> terms;
    for (int j = 0; j < p.n(); ++j) {
      if (p.T_mat[i][j] != 0.0) terms.push_back({j, p.T_mat[i][j]});
    }
    for (int k = 0; k < p.m(); ++k) {
      if (p.W[i][k] != 0.0) terms.push_back({y0 + k, p.W[i][k]});
    }
    double rhs = p.h[i];
    for (int u = 0; u < p.l(); ++u) rhs -= p.C[i][u] * xi[u];
    m.add_row(std::move(terms), milp::RowSense::kGreaterEqual, rhs,
              "rec" + tag + "_" + std::to_string(i));
  }
  if (delta >= 0) {
    std::vector<milp::Term> terms{{delta, 1.0}};
    for (int k = 0; k < p.m(); ++k) {
      if (p.q[k] != 0.0) terms.push_back({y0 + k, -p.q[k]});
    }
    m.add_row(std::move(terms), milp::RowSense::kGreaterEqual, 0.0, "epi" + tag);
  }
}

}  // namespace model_detail

/// Q(x, xi) by solving the recourse LP.
inline double recourse_value(const TwoStageProblem& p, std::span<const double> x,
                             std::span<const double> xi) {
  if (static_cast<int>(x.size()) != p.n() || static_cast<int>(xi.size()) != p.l()) {
    throw Error(ErrorCode::kDimension, "x or xi has the wrong length");
  }
  milp::LinearModel m;
  for (int k = 0; k < p.m(); ++k) m.add_column(0.0, milp::kInf, milp::ColumnType::kContinuous, p.q[k]);
  for (int i = 0; i < p.r(); ++i) {
    std::vector<milp::Term> terms;
    for (int k = 0; k < p.m(); ++k) {
      if (p.W[i][k] != 0.0) terms.push_back({k, p.W[i][k]});
    }
    double rhs = p.h[i];
    for (int j = 0; j < p.n(); ++j) rhs -= p.T_mat[i][j] * x[j];
    for (int u = 0; u < p.l(); ++u) rhs -= p.C[i][u] * xi[u];
    m.add_row(std::move(terms), milp::RowSense::kGreaterEqual, rhs);
  }
  const milp::SolveOutcome out = milp::solve_lp(m);
  if (out.status == milp::SolveStatus::kInfeasible) {
    throw Error(ErrorCode::kInfeasibleRecourse, "recourse problem has no feasible y");
  }
  if (out.status == milp::SolveStatus::kUnbounded) {
    throw Error(ErrorCode::kUnboundedRecourse, "recourse problem is unbounded");
  }
  return out.incumbent_value;
}

struct WorstCase {
  Scenario scenario;
  double value = 0.0;
};

/// Argmax of Q(x, .) over the finite set; ties go to the lowest index.
inline WorstCase worst_case_cost(const TwoStageProblem& p, std::span<const double> x) {
  if (p.uncertainty.kind != UncertaintySet::Kind::kFinite) {
    throw Error(ErrorCode::kParam, "worst_case_cost needs a finite uncertainty set");
  }
  WorstCase best;
  best.value = -milp::kInf;
  const auto& set = p.uncertainty.finite;
  for (std::size_t k = 0; k < set.size(); ++k) {
    const double v = recourse_value(p, x, set[k]);
    if (v > best.value) {
      best.value = v;
      best.scenario = Scenario{set[k], static_cast<int>(k)};
    }
  }
  return best;
}

/// Master problem over a finite scenario subset: one recourse copy per
/// scenario. The cutoff row c'x + delta >= Lbar is omitted when Lbar = -inf.
class FiniteMasterBuilder {
 public:
  explicit FiniteMasterBuilder(const TwoStageProblem& p) : p_(&p) {}

  milp::LinearModel build(std::span<const Scenario> scenarios, double lower_cutoff) const {
    const TwoStageProblem& p = *p_;
    milp::LinearModel m;
    model_detail::add_first_stage(p, m);
    const int delta = m.add_column(-milp::kInf, milp::kInf, milp::ColumnType::kContinuous, 1.0, "delta");
    for (const Scenario& s : scenarios) {
      model_detail::add_recourse_copy(p, m, s.xi, delta, std::to_string(s.id));
    }
    if (std::isfinite(lower_cutoff)) {
      std::vector<milp::Term> terms{{delta, 1.0}};
      for (int j = 0; j < p.n(); ++j) {
        if (p.c[j] != 0.0) terms.push_back({j, p.c[j]});
      }
      m.add_row(std::move(terms), milp::RowSense::kGreaterEqual, lower_cutoff, "cutoff");
    }
    return m;
  }

  MasterPoint extract(const std::vector<double>& solution) const {
    MasterPoint pt;
    pt.first_stage.assign(solution.begin(), solution.begin() + p_->n());
    pt.delta = solution[p_->n()];
    for (int j = 0; j < p_->n(); ++j) pt.first_stage_cost += p_->c[j] * pt.first_stage[j];
    return pt;
  }

 private:
  const TwoStageProblem* p_;
};

/// Worst-case oracle by enumerating the finite set.
class FiniteOracle {
 public:
  explicit FiniteOracle(const TwoStageProblem& p) : p_(&p) {}

  OracleAnswer query(const MasterPoint& point) const {
    const WorstCase wc = worst_case_cost(*p_, point.first_stage);
    return OracleAnswer{wc.scenario.xi, wc.value};
  }

 private:
  const TwoStageProblem* p_;
};

static_assert(MasterBuilder<FiniteMasterBuilder>);
static_assert(WorstCaseOracle<FiniteOracle>);

struct ExtensiveSolution {
  std::vector<double> x_star;
  double v_star = 0.0;
};

/// Exact optimum via the master with every scenario of the finite set.
inline ExtensiveSolution solve_extensive_form(const TwoStageProblem& p, int cap = 64) {
  p.check();
  if (p.uncertainty.kind != UncertaintySet::Kind::kFinite) {
    throw Error(ErrorCode::kParam, "extensive form needs a finite uncertainty set");
  }
  const auto& set = p.uncertainty.finite;
  if (static_cast<int>(set.size()) > cap) {
    throw Error(ErrorCode::kCapExceeded,
                std::to_string(set.size()) + " scenarios exceed the cap of " + std::to_string(cap));
  }
  std::vector<Scenario> all;
  for (std::size_t k = 0; k < set.size(); ++k) all.push_back(Scenario{set[k], static_cast<int>(k)});
  const milp::LinearModel m = FiniteMasterBuilder(p).build(all, -milp::kInf);
  const milp::SolveOutcome out = milp::solve_milp(m);
  if (out.status == milp::SolveStatus::kInfeasible) {
    throw Error(ErrorCode::kInfeasible, "extensive form is infeasible");
  }
  if (out.status == milp::SolveStatus::kUnbounded) {
    throw Error(ErrorCode::kUnboundedRecourse, "extensive form is unbounded");
  }
  ExtensiveSolution sol;
  sol.x_star.assign(out.incumbent->begin(), out.incumbent->begin() + p.n());
  sol.v_star = out.incumbent_value;
  return sol;
}

struct Violation {
  enum class Kind { kInfeasibleRecourse, kUnboundedRecourse, kBelowK };
  Kind kind;
  std::vector<double> x;
  std::vector<double> xi;
  double value = 0.0;
};

inline std::string_view to_string(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::kInfeasibleRecourse: return "InfeasibleRecourse";
    case Violation::Kind::kUnboundedRecourse: return "UnboundedRecourse";
    case Violation::Kind::kBelowK: return "BelowK";
  }
  return "?";
}

struct ValidationReport {
  int pairs_checked = 0;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Samples first-stage points (the optimum of X under random objectives) and
/// pairs each with every scenario, recording recourse infeasibility or
/// Q < K. Only falsifies the standing assumptions, never proves them.
inline ValidationReport validate_problem(const TwoStageProblem& p, int samples, double K = 1e-6,
                                         std::uint64_t seed = 1) {
  if (samples < 1) throw Error(ErrorCode::kParam, "samples must be at least 1");
  p.check();
  ValidationReport rep;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::set<std::vector<double>> tried;
  for (int s = 0; s < samples; ++s) {
    milp::LinearModel m;
    model_detail::add_first_stage(p, m);
    // Sample 0 takes a zero objective; later samples random directions. Box
    // rows keep unbounded directions finite.
    for (int j = 0; j < p.n(); ++j) {
      m.set_cost(j, s == 0 ? 0.0 : coef(rng));
      const auto [lo, hi] = model_detail::bounds_of(p, j);
      if (!std::isfinite(hi)) m.add_row({{j, 1.0}}, milp::RowSense::kLessEqual, std::max(lo, 0.0) + 1e3);
      if (!std::isfinite(lo)) m.add_row({{j, 1.0}}, milp::RowSense::kGreaterEqual, std::min(hi, 0.0) - 1e3);
    }
    const milp::SolveOutcome out = milp::solve_milp(m);
    if (!out.has_incumbent()) break;
    std::vector<double> x(out.incumbent->begin(), out.incumbent->begin() + p.n());
    if (!tried.insert(x).second) continue;
    for (const auto& xi : p.uncertainty.finite) {
      ++rep.pairs_checked;
      try {
        const double v = recourse_value(p, x, xi);
        if (v < K) rep.violations.push_back({Violation::Kind::kBelowK, x, xi, v});
      } catch (const Error& e) {
        const auto kind = e.code() == ErrorCode::kInfeasibleRecourse ? Violation::Kind::kInfeasibleRecourse
                                                                     : Violation::Kind::kUnboundedRecourse;
        rep.violations.push_back({kind, x, xi, 0.0});
      }
    }
  }
  return rep;
}

// JSON ----------------------------------------------------------------------

inline milp::RowSense parse_sense(const std::string& s) {
  if (s == "<=" || s == "L") return milp::RowSense::kLessEqual;
  if (s == ">=" || s == "G") return milp::RowSense::kGreaterEqual;
  if (s == "=" || s == "==" || s == "E") return milp::RowSense::kEqual;
  throw Error(ErrorCode::kParse, "unknown row sense '" + s + "'");
}

inline std::string sense_string(milp::RowSense s) {
  switch (s) {
    case milp::RowSense::kLessEqual: return "<=";
    case milp::RowSense::kGreaterEqual: return ">=";
    case milp::RowSense::kEqual: return "=";
  }
  return "?";
}

inline TwoStageProblem problem_from_json(const nlohmann::json& j) {
  try {
    TwoStageProblem p;
    p.c = j.at("c").get<std::vector<double>>();
    p.q = j.at("q").get<std::vector<double>>();
    p.T_mat = j.at("Tmat").get<Matrix>();
    p.W = j.at("W").get<Matrix>();
    p.C = j.at("C").get<Matrix>();
    p.h = j.at("h").get<std::vector<double>>();
    if (j.contains("first_stage")) {
      const auto& f = j.at("first_stage");
      if (f.contains("A")) p.first_stage.A = f.at("A").get<Matrix>();
      if (f.contains("b")) p.first_stage.b = f.at("b").get<std::vector<double>>();
      if (f.contains("sense")) {
        for (const auto& s : f.at("sense")) p.first_stage.sense.push_back(parse_sense(s.get<std::string>()));
      }
      if (f.contains("integer")) p.first_stage.integer = f.at("integer").get<std::vector<int>>();
      if (f.contains("bounds")) {
        for (const auto& b : f.at("bounds")) {
          auto num = [](const nlohmann::json& v, double inf) {
            return v.is_null() ? inf : v.get<double>();
          };
          p.first_stage.bounds.emplace_back(num(b.at(0), -milp::kInf), num(b.at(1), milp::kInf));
        }
      }
    }
    p.uncertainty.finite = j.at("uncertainty").at("finite").get<Matrix>();
    p.check();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

inline nlohmann::json problem_to_json(const TwoStageProblem& p) {
  nlohmann::json f;
  f["A"] = p.first_stage.A;
  f["b"] = p.first_stage.b;
  f["sense"] = nlohmann::json::array();
  for (auto s : p.first_stage.sense) f["sense"].push_back(sense_string(s));
  f["integer"] = p.first_stage.integer;
  f["bounds"] = nlohmann::json::array();
  for (const auto& [lo, hi] : p.first_stage.bounds) {
    f["bounds"].push_back({std::isfinite(lo) ? nlohmann::json(lo) : nlohmann::json(nullptr),
                           std::isfinite(hi) ? nlohmann::json(hi) : nlohmann::json(nullptr)});
  }
  return {{"c", p.c},   {"q", p.q}, {"Tmat", p.T_mat},    {"W", p.W},
          {"C", p.C},   {"h", p.h}, {"first_stage", f}, {"uncertainty", {{"finite", p.uncertainty.finite}}}};
}

}  // namespace iccg
