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

#pragma once

#include <chrono>
#include <cmath>
#include <memory>
#include <optional>
#include <queue>
#include <vector>

#include "iccg/milp/model.hpp"
#include "iccg/milp/simplex.hpp"

namespace iccg::milp {

inline constexpr double kIntegralityTol = 1e-6;

namespace detail {

struct Node {
  double key;  // parent relaxation value, internal minimization sense
  long id;
  std::vector<double> lower;
  std::vector<double> upper;
  std::shared_ptr<const Basis> basis;
};

struct NodeOrder {
  bool operator()(const std::unique_ptr<Node>& a, const std::unique_ptr<Node>& b) const {
    if (a->key != b->key) return a->key > b->key;
    return a->id > b->id;
  }
};

// Most fractional integer column, lowest index on ties; -1 when integral.
inline int branching_column(const LinearModel& model, const std::vector<double>& x) {
  int best = -1;
  double best_frac = kIntegralityTol;
  for (int j = 0; j < model.num_columns(); ++j) {
    if (!model.is_integer(j)) continue;
    const double f = std::abs(x[j] - std::round(x[j]));
    if (f > best_frac + 1e-12) {
      best_frac = f;
      best = j;
    }
  }
  return best;
}

inline std::vector<double> snap_integers(const LinearModel& model, std::vector<double> x) {
  std::vector<double> snapped = x;
  for (int j = 0; j < model.num_columns(); ++j) {
    if (model.is_integer(j)) snapped[j] = std::round(snapped[j]);
  }
  return model.max_violation(snapped) <= 1e-7 ? snapped : x;
}

}  // namespace detail

/// Branch-and-bound over the bounded simplex. Best-bound node selection,
/// most-fractional branching, and a rounding dive at the root to find an
/// early incumbent. Limits are checked between node solves.
inline SolveOutcome solve_milp(const LinearModel& model, const SolveControls& controls = {},
                               SimplexOptions lp_options = {}) {
  using Clock = std::chrono::steady_clock;
  model.check();
  controls.check();
  const auto start = Clock::now();
  const double sign = model.sense() == ObjectiveSense::kMaximize ? -1.0 : 1.0;
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  Simplex simplex(model, lp_options);
  SolveOutcome out;

  double upper = kInf;  // internal minimization sense
  double lower = -kInf;
  std::optional<std::vector<double>> incumbent;
  long nodes = 0;
  long iterations = 0;

  auto report = [&] {
    if (controls.on_progress) controls.on_progress(Progress{nodes, sign * upper, sign * lower});
  };
  auto prune_tol = [](double u) { return std::isfinite(u) ? 1e-9 * std::max(1.0, std::abs(u)) : 0.0; };
  auto offer = [&](const std::vector<double>& x) {
    std::vector<double> snapped = detail::snap_integers(model, x);
    const double v = sign * model.evaluate(snapped);
    if (v < upper) {
      upper = v;
      incumbent = std::move(snapped);
      if (lower > upper) lower = upper;
      report();
    }
  };

  std::vector<double> root_lo(model.num_columns());
  std::vector<double> root_up(model.num_columns());
  for (int j = 0; j < model.num_columns(); ++j) {
    root_lo[j] = model.column(j).lower;
    root_up[j] = model.column(j).upper;
    if (model.is_integer(j)) {
      root_lo[j] = std::ceil(root_lo[j] - kIntegralityTol);
      root_up[j] = std::floor(root_up[j] + kIntegralityTol);
    }
  }

  LpResult root = simplex.solve(&root_lo, &root_up);
  iterations += root.iterations;
  nodes = 1;
  if (root.status == SolveStatus::kInfeasible || root.status == SolveStatus::kUnbounded) {
    out.status = root.status;
    out.nodes = nodes;
    out.simplex_iterations = iterations;
    if (root.status == SolveStatus::kUnbounded) out.incumbent_value = out.best_bound = root.objective;
    return out;
  }
  lower = sign * root.objective;
  report();

  // Root dive: fix the least fractional column to its nearest integer until
  // the relaxation is integral or infeasible.
  {
    std::vector<double> lo = root_lo;
    std::vector<double> up = root_up;
    LpResult cur = root;
    const int cap = 2 * model.num_integer_columns() + 2;
    for (int step = 0; step < cap && cur.status == SolveStatus::kOptimal; ++step) {
      int pick = -1;
      double pick_frac = 1.0;
      for (int j = 0; j < model.num_columns(); ++j) {
        if (!model.is_integer(j) || lo[j] == up[j]) continue;
        const double f = std::abs(cur.x[j] - std::round(cur.x[j]));
        if (f <= kIntegralityTol) continue;
        if (f < pick_frac) {
          pick_frac = f;
          pick = j;
        }
      }
      if (pick < 0) {
        if (detail::branching_column(model, cur.x) < 0) offer(cur.x);
        break;
      }
      const double near = std::round(cur.x[pick]);
      const double far = cur.x[pick] > near ? near + 1.0 : near - 1.0;
      bool ok = false;
      for (double v : {near, far}) {
        if (v < lo[pick] || v > up[pick]) continue;
        std::vector<double> lo2 = lo, up2 = up;
        lo2[pick] = up2[pick] = v;
        LpResult next = cur.basis ? simplex.solve_warm(*cur.basis, lo2, up2)
                                  : simplex.solve(&lo2, &up2);
        iterations += next.iterations;
        if (next.status == SolveStatus::kOptimal) {
          lo = std::move(lo2);
          up = std::move(up2);
          cur = std::move(next);
          ok = true;
          break;
        }
      }
      if (!ok) break;
    }
  }

  std::priority_queue<std::unique_ptr<detail::Node>, std::vector<std::unique_ptr<detail::Node>>,
                      detail::NodeOrder>
      open;
  long next_id = 0;
  auto branch = [&](const LpResult& lp, const std::vector<double>& lo,
                    const std::vector<double>& up, double key) {
    const int j = detail::branching_column(model, lp.x);
    std::shared_ptr<const Basis> basis;
    if (lp.basis) basis = std::make_shared<const Basis>(*lp.basis);
    auto down = std::make_unique<detail::Node>(detail::Node{key, next_id++, lo, up, basis});
    down->upper[j] = std::floor(lp.x[j]);
    auto upn = std::make_unique<detail::Node>(detail::Node{key, next_id++, lo, up, basis});
    upn->lower[j] = std::ceil(lp.x[j]);
    open.push(std::move(down));
    open.push(std::move(upn));
  };

  if (detail::branching_column(model, root.x) < 0) {
    offer(root.x);
  } else if (sign * root.objective < upper - prune_tol(upper)) {
    branch(root, root_lo, root_up, sign * root.objective);
  }

  SolveStatus status = SolveStatus::kOptimal;
  for (;;) {
    // Drop nodes that cannot beat the incumbent.
    while (!open.empty() && open.top()->key >= upper - prune_tol(upper)) open.pop();
    if (open.empty()) {
      if (incumbent) {
        lower = upper;
        report();
      }
      status = incumbent ? SolveStatus::kOptimal : SolveStatus::kInfeasible;
      break;
    }
    const double frontier = std::min(open.top()->key, upper);
    if (frontier > lower) {
      lower = frontier;
      report();
    }
    if (incumbent && controls.rel_gap > 0.0 && relative_gap(upper, lower) <= controls.rel_gap) {
      status = SolveStatus::kGapReached;
      break;
    }
    const bool may_stop = incumbent.has_value() || !controls.require_incumbent;
    if (may_stop && controls.time_limit && elapsed() >= *controls.time_limit) {
      status = SolveStatus::kTimeLimit;
      break;
    }
    if (may_stop && controls.node_limit && nodes >= *controls.node_limit) {
      status = SolveStatus::kNodeLimit;
      break;
    }

    std::unique_ptr<detail::Node> node(std::move(const_cast<std::unique_ptr<detail::Node>&>(open.top())));
    open.pop();
    LpResult lp = node->basis ? simplex.solve_warm(*node->basis, node->lower, node->upper)
                              : simplex.solve(&node->lower, &node->upper);
    iterations += lp.iterations;
    ++nodes;
    if (lp.status != SolveStatus::kOptimal) continue;
    const double value = std::max(sign * lp.objective, node->key);
    if (value >= upper - prune_tol(upper)) continue;
    if (detail::branching_column(model, lp.x) < 0) {
      offer(lp.x);
      continue;
    }
    branch(lp, node->lower, node->upper, value);
  }

  out.status = status;
  out.nodes = nodes;
  out.simplex_iterations = iterations;
  if (status == SolveStatus::kInfeasible) return out;
  out.incumbent = incumbent;
  out.incumbent_value = incumbent ? sign * upper : (sign > 0 ? kInf : -kInf);
  out.best_bound = sign * std::min(lower, upper);
  out.rel_gap_achieved = incumbent ? relative_gap(upper, std::min(lower, upper)) : kInf;
  return out;
}

}  // namespace iccg::milp
