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

// Bounded-variable simplex over the row-slack standard form
//
//   A x + s = b,   lo <= (x, s) <= up,
//
// where a <= row gets s in [0, inf), a >= row gets s in (-inf, 0] and an
// equality row gets s fixed at 0. Phase one adds one artificial per row whose
// slack would start outside its bounds. The basis inverse is kept dense and
// updated in product form; it is refactorized from scratch every
// kRefactorInterval pivots and before any optimality claim.
//
// A dual simplex warm start is available for branch-and-bound children whose
// only change is a tightened column bound.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "iccg/error.hpp"
#include "iccg/milp/model.hpp"

namespace iccg::milp {

struct SimplexOptions {
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-9;
  long degenerate_switch = 1000;  // consecutive degenerate pivots before Bland
  long iteration_limit = 0;       // 0 means derived from problem size
};

enum class VarState : std::uint8_t { kBasic, kAtLower, kAtUpper, kFreeZero };

/// Snapshot of a basis that can seed a later solve of the same model with
/// different column bounds.
struct Basis {
  std::vector<VarState> state;  // structurals then slacks
  std::vector<int> head;        // basic variable per row position
};

struct LpResult {
  SolveStatus status = SolveStatus::kInfeasible;
  std::vector<double> x;  // structural values
  double objective = kInf;  // model sense, offset included
  std::vector<double> row_duals;
  std::vector<double> reduced_costs;
  long iterations = 0;
  std::optional<Basis> basis;
};

class Simplex {
 public:
  explicit Simplex(const LinearModel& model, SimplexOptions options = {})
      : model_(model), opt_(options) {
    m_ = model.num_rows();
    n_ = model.num_columns();
    total_ = n_ + 2 * m_;
    cols_.assign(n_, {});
    for (int i = 0; i < m_; ++i) {
      for (const Term& t : model.row(i).terms) {
        if (t.coefficient != 0.0) cols_[t.column].push_back({i, t.coefficient});
      }
    }
    b_.resize(m_);
    for (int i = 0; i < m_; ++i) b_[i] = model.row(i).rhs;
    const double sign = model.sense() == ObjectiveSense::kMaximize ? -1.0 : 1.0;
    cost2_.assign(total_, 0.0);
    for (int j = 0; j < n_; ++j) cost2_[j] = sign * model.objective()[j];
    if (opt_.iteration_limit <= 0) opt_.iteration_limit = 20000 + 50L * (m_ + total_);
  }

  /// Solves with the model's bounds, or with `lower`/`upper` overriding the
  /// structural column bounds.
  LpResult solve(const std::vector<double>* lower = nullptr,
                 const std::vector<double>* upper = nullptr) {
    set_bounds(lower, upper);
    for (int attempt = 0; attempt < 3; ++attempt) {
      force_bland_ = attempt > 0;
      const Outcome o = solve_cold();
      if (o != Outcome::kNumerical) return finish(o);
    }
    throw Error(ErrorCode::kNumericalFailure, "simplex failed after refactorization retries");
  }

  /// Re-solves from `start` with new structural bounds using the dual simplex,
  /// falling back to a cold solve when the basis is unusable.
  LpResult solve_warm(const Basis& start, const std::vector<double>& lower,
                      const std::vector<double>& upper) {
    set_bounds(&lower, &upper);
    force_bland_ = false;
    const Outcome o = solve_from_basis(start);
    if (o != Outcome::kNumerical) return finish(o);
    return solve(&lower, &upper);
  }

 private:
  enum class Outcome { kOptimal, kInfeasible, kUnbounded, kNumerical };
  struct Entry {
    int row;
    double value;
  };
  static constexpr int kRefactorInterval = 100;

  bool is_slack(int j) const { return j >= n_ && j < n_ + m_; }
  bool is_artificial(int j) const { return j >= n_ + m_; }

  void set_bounds(const std::vector<double>* lower, const std::vector<double>* upper) {
    lo_.assign(total_, 0.0);
    up_.assign(total_, 0.0);
    for (int j = 0; j < n_; ++j) {
      lo_[j] = lower ? (*lower)[j] : model_.column(j).lower;
      up_[j] = upper ? (*upper)[j] : model_.column(j).upper;
    }
    for (int i = 0; i < m_; ++i) {
      const RowSense s = model_.row(i).sense;
      lo_[n_ + i] = s == RowSense::kLessEqual ? 0.0 : (s == RowSense::kEqual ? 0.0 : -kInf);
      up_[n_ + i] = s == RowSense::kGreaterEqual ? 0.0 : (s == RowSense::kEqual ? 0.0 : kInf);
    }
    art_sign_.assign(m_, 1.0);
  }

  // Column j of [A | I | diag(art_sign)] times the dense vector v (dot).
  double column_dot(int j, const Eigen::VectorXd& v) const {
    if (j < n_) {
      double s = 0.0;
      for (const Entry& e : cols_[j]) s += e.value * v[e.row];
      return s;
    }
    if (is_slack(j)) return v[j - n_];
    return art_sign_[j - n_ - m_] * v[j - n_ - m_];
  }

  // B^{-1} a_j.
  Eigen::VectorXd ftran(int j) const {
    if (j < n_) {
      Eigen::VectorXd out = Eigen::VectorXd::Zero(m_);
      for (const Entry& e : cols_[j]) out.noalias() += e.value * binv_.col(e.row);
      return out;
    }
    if (is_slack(j)) return binv_.col(j - n_);
    return art_sign_[j - n_ - m_] * binv_.col(j - n_ - m_);
  }

  bool refactor() {
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(m_, m_);
    for (int k = 0; k < m_; ++k) {
      const int j = head_[k];
      if (j < n_) {
        for (const Entry& e : cols_[j]) basis(e.row, k) = e.value;
      } else if (is_slack(j)) {
        basis(j - n_, k) = 1.0;
      } else {
        basis(j - n_ - m_, k) = art_sign_[j - n_ - m_];
      }
    }
    if (m_ == 0) {
      binv_.resize(0, 0);
      return true;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(basis);
    lu.setThreshold(1e-11);
    if (!lu.isInvertible()) return false;
    binv_ = lu.inverse();
    since_refactor_ = 0;
    recompute_basic_values();
    return true;
  }

  void recompute_basic_values() {
    Eigen::VectorXd rhs(m_);
    for (int i = 0; i < m_; ++i) rhs[i] = b_[i];
    for (int j = 0; j < total_; ++j) {
      if (state_[j] == VarState::kBasic || x_[j] == 0.0) continue;
      if (j < n_) {
        for (const Entry& e : cols_[j]) rhs[e.row] -= e.value * x_[j];
      } else if (is_slack(j)) {
        rhs[j - n_] -= x_[j];
      } else {
        rhs[j - n_ - m_] -= art_sign_[j - n_ - m_] * x_[j];
      }
    }
    const Eigen::VectorXd xb = binv_ * rhs;
    for (int k = 0; k < m_; ++k) x_[head_[k]] = xb[k];
  }

  Eigen::VectorXd duals(const std::vector<double>& cost) const {
    Eigen::VectorXd cb(m_);
    for (int k = 0; k < m_; ++k) cb[k] = cost[head_[k]];
    return binv_.transpose() * cb;
  }

  double tol_for(double bound) const { return opt_.feasibility_tol * (1.0 + std::abs(bound)); }

  double basic_infeasibility(int j) const {
    if (x_[j] < lo_[j] - tol_for(lo_[j])) return lo_[j] - x_[j];
    if (x_[j] > up_[j] + tol_for(up_[j])) return x_[j] - up_[j];
    return 0.0;
  }

  void place_nonbasic(int j) {
    if (std::isfinite(lo_[j])) {
      state_[j] = VarState::kAtLower;
      x_[j] = lo_[j];
    } else if (std::isfinite(up_[j])) {
      state_[j] = VarState::kAtUpper;
      x_[j] = up_[j];
    } else {
      state_[j] = VarState::kFreeZero;
      x_[j] = 0.0;
    }
  }

  void pivot(int r, int q, const Eigen::VectorXd& alpha) {
    const double ar = alpha[r];
    Eigen::RowVectorXd rowr = binv_.row(r) / ar;
    Eigen::VectorXd v = alpha;
    v[r] -= 1.0;
    binv_.noalias() -= v * rowr;
    binv_.row(r) = rowr;
    head_[r] = q;
    state_[q] = VarState::kBasic;
    ++since_refactor_;
  }

  // Slack basis with artificials covering rows whose slack starts infeasible.
  void crash_slack_basis() {
    x_.assign(total_, 0.0);
    state_.assign(total_, VarState::kAtLower);
    head_.assign(m_, -1);
    for (int j = 0; j < n_; ++j) place_nonbasic(j);
    std::vector<double> residual = b_;
    for (int j = 0; j < n_; ++j) {
      if (x_[j] == 0.0) continue;
      for (const Entry& e : cols_[j]) residual[e.row] -= e.value * x_[j];
    }
    binv_ = Eigen::MatrixXd::Identity(m_, m_);
    for (int i = 0; i < m_; ++i) {
      const int s = n_ + i;
      const int a = n_ + m_ + i;
      const double r = residual[i];
      if (r >= lo_[s] && r <= up_[s]) {
        head_[i] = s;
        state_[s] = VarState::kBasic;
        x_[s] = r;
        lo_[a] = up_[a] = 0.0;
        state_[a] = VarState::kAtLower;
      } else {
        const double v = std::clamp(r, lo_[s], up_[s]);
        x_[s] = v;
        state_[s] = v == lo_[s] ? VarState::kAtLower : VarState::kAtUpper;
        const double e = r - v;
        art_sign_[i] = e >= 0 ? 1.0 : -1.0;
        lo_[a] = 0.0;
        up_[a] = kInf;
        head_[i] = a;
        state_[a] = VarState::kBasic;
        x_[a] = std::abs(e);
        binv_(i, i) = art_sign_[i];
      }
    }
    since_refactor_ = 0;
  }

  // Primal simplex on the given costs from the current (primal feasible) basis.
  Outcome primal(const std::vector<double>& cost, bool phase_one) {
    long degenerate = 0;
    bool bland = force_bland_;
    for (;;) {
      if (++iterations_ > opt_.iteration_limit) return Outcome::kNumerical;
      if (since_refactor_ >= kRefactorInterval && !refactor()) return Outcome::kNumerical;
      const Eigen::VectorXd y = duals(cost);

      int q = -1;
      int dir = 0;
      double best = 0.0;
      for (int j = 0; j < total_; ++j) {
        const VarState s = state_[j];
        if (s == VarState::kBasic) continue;
        if (!phase_one && is_artificial(j)) continue;
        if (up_[j] - lo_[j] <= 0.0 && s != VarState::kFreeZero) continue;
        const double d = cost[j] - column_dot(j, y);
        int want = 0;
        if ((s == VarState::kAtLower || s == VarState::kFreeZero) && d < -opt_.optimality_tol) want = 1;
        if ((s == VarState::kAtUpper || s == VarState::kFreeZero) && d > opt_.optimality_tol) want = -1;
        if (want == 0) continue;
        if (bland) {
          q = j;
          dir = want;
          break;
        }
        if (std::abs(d) > best) {
          best = std::abs(d);
          q = j;
          dir = want;
        }
      }
      if (q < 0) {
        // Confirm on a fresh factorization before claiming optimality.
        if (since_refactor_ > 0) {
          if (!refactor()) return Outcome::kNumerical;
          if (!basis_feasible()) return Outcome::kNumerical;
          continue;
        }
        return Outcome::kOptimal;
      }

      const Eigen::VectorXd alpha = ftran(q);
      // Harris two-pass ratio test; Bland mode keeps the exact minimum with
      // smallest-index ties.
      double theta_max = kInf;
      for (int k = 0; k < m_; ++k) {
        const double rate = -dir * alpha[k];
        if (std::abs(alpha[k]) <= opt_.pivot_tol) continue;
        const int j = head_[k];
        if (rate < 0 && std::isfinite(lo_[j])) {
          const double slack = x_[j] - lo_[j] + (bland ? 0.0 : tol_for(lo_[j]));
          theta_max = std::min(theta_max, std::max(slack, 0.0) / -rate);
        } else if (rate > 0 && std::isfinite(up_[j])) {
          const double slack = up_[j] - x_[j] + (bland ? 0.0 : tol_for(up_[j]));
          theta_max = std::min(theta_max, std::max(slack, 0.0) / rate);
        }
      }
      const double flip = up_[q] - lo_[q];
      if (std::isfinite(flip) && flip <= theta_max) {
        // Entering variable reaches its opposite bound first.
        for (int k = 0; k < m_; ++k) x_[head_[k]] -= dir * flip * alpha[k];
        if (state_[q] == VarState::kAtLower) {
          state_[q] = VarState::kAtUpper;
          x_[q] = up_[q];
        } else {
          state_[q] = VarState::kAtLower;
          x_[q] = lo_[q];
        }
        degenerate = 0;
        continue;
      }
      if (!std::isfinite(theta_max)) {
        return phase_one ? Outcome::kNumerical : Outcome::kUnbounded;
      }
      int r = -1;
      double theta = 0.0;
      double best_pivot = 0.0;
      for (int k = 0; k < m_; ++k) {
        const double rate = -dir * alpha[k];
        if (std::abs(alpha[k]) <= opt_.pivot_tol) continue;
        const int j = head_[k];
        double t = kInf;
        if (rate < 0 && std::isfinite(lo_[j])) t = std::max(x_[j] - lo_[j], 0.0) / -rate;
        if (rate > 0 && std::isfinite(up_[j])) t = std::max(up_[j] - x_[j], 0.0) / rate;
        if (!(t <= theta_max)) continue;
        if (bland) {
          if (r < 0 || t < theta - 1e-12 || (t <= theta + 1e-12 && j < head_[r])) {
            r = k;
            theta = t;
          }
        } else if (std::abs(alpha[k]) > best_pivot) {
          best_pivot = std::abs(alpha[k]);
          r = k;
          theta = t;
        }
      }
      if (r < 0) return Outcome::kNumerical;
      if (std::abs(alpha[r]) < 1e-11) {
        if (!refactor()) return Outcome::kNumerical;
        continue;
      }
      const int leaving = head_[r];
      const bool to_lower = -dir * alpha[r] < 0;
      for (int k = 0; k < m_; ++k) x_[head_[k]] -= dir * theta * alpha[k];
      x_[q] += dir * theta;
      pivot(r, q, alpha);
      if (to_lower) {
        state_[leaving] = VarState::kAtLower;
        x_[leaving] = lo_[leaving];
      } else {
        state_[leaving] = VarState::kAtUpper;
        x_[leaving] = up_[leaving];
      }
      if (theta <= 1e-12) {
        if (++degenerate > opt_.degenerate_switch) bland = true;
      } else {
        degenerate = 0;
      }
    }
  }

  bool basis_feasible() const {
    for (int k = 0; k < m_; ++k) {
      if (basic_infeasibility(head_[k]) > 0.0) return false;
    }
    return true;
  }

  // Swap basic artificials (fixed at zero after phase one) for real columns.
  void drive_out_artificials() {
    for (int r = 0; r < m_; ++r) {
      if (!is_artificial(head_[r])) continue;
      const Eigen::RowVectorXd rho = binv_.row(r);
      int best = -1;
      double best_abs = 1e-7;
      for (int j = 0; j < n_ + m_; ++j) {
        if (state_[j] == VarState::kBasic) continue;
        const double a = column_dot(j, rho.transpose());
        if (std::abs(a) > best_abs) {
          best_abs = std::abs(a);
          best = j;
        }
      }
      if (best < 0) continue;  // redundant row
      const int art = head_[r];
      const Eigen::VectorXd alpha = ftran(best);
      // Degenerate swap: the artificial is at zero so no value changes.
      const double theta = x_[art] / alpha[r];
      for (int k = 0; k < m_; ++k) x_[head_[k]] -= theta * alpha[k];
      x_[best] += theta;
      pivot(r, best, alpha);
      state_[art] = VarState::kAtLower;
      x_[art] = 0.0;
    }
  }

  Outcome solve_cold() {
    iterations_ = 0;
    crash_slack_basis();
    bool need_phase_one = false;
    for (int i = 0; i < m_; ++i) need_phase_one |= head_[i] >= n_ + m_;
    if (need_phase_one) {
      std::vector<double> c1(total_, 0.0);
      for (int i = 0; i < m_; ++i) c1[n_ + m_ + i] = 1.0;
      const Outcome o = primal(c1, true);
      if (o != Outcome::kOptimal) return Outcome::kNumerical;
      double infeas = 0.0;
      double scale = 1.0;
      for (int i = 0; i < m_; ++i) {
        infeas += x_[n_ + m_ + i];
        scale = std::max(scale, std::abs(b_[i]));
      }
      if (infeas > opt_.feasibility_tol * scale) return Outcome::kInfeasible;
      for (int i = 0; i < m_; ++i) lo_[n_ + m_ + i] = up_[n_ + m_ + i] = 0.0;
      drive_out_artificials();
      if (!refactor()) return Outcome::kNumerical;
    }
    return primal(cost2_, false);
  }

  bool dual_feasible(const Eigen::VectorXd& y) const {
    for (int j = 0; j < n_ + m_; ++j) {
      const VarState s = state_[j];
      if (s == VarState::kBasic || up_[j] - lo_[j] <= 0.0) continue;
      const double d = cost2_[j] - column_dot(j, y);
      if ((s == VarState::kAtLower || s == VarState::kFreeZero) && d < -1e-7) return false;
      if ((s == VarState::kAtUpper || s == VarState::kFreeZero) && d > 1e-7) return false;
    }
    return true;
  }

  Outcome solve_from_basis(const Basis& start) {
    iterations_ = 0;
    if (static_cast<int>(start.state.size()) != n_ + m_ ||
        static_cast<int>(start.head.size()) != m_) {
      return Outcome::kNumerical;
    }
    x_.assign(total_, 0.0);
    state_.assign(total_, VarState::kAtLower);
    for (int j = 0; j < n_ + m_; ++j) {
      state_[j] = start.state[j];
      switch (state_[j]) {
        case VarState::kBasic: break;
        case VarState::kAtLower:
          if (!std::isfinite(lo_[j])) place_nonbasic(j); else x_[j] = lo_[j];
          break;
        case VarState::kAtUpper:
          if (!std::isfinite(up_[j])) place_nonbasic(j); else x_[j] = up_[j];
          break;
        case VarState::kFreeZero: place_nonbasic(j); break;
      }
    }
    for (int i = 0; i < m_; ++i) lo_[n_ + m_ + i] = up_[n_ + m_ + i] = 0.0;
    head_ = start.head;
    if (!refactor()) return Outcome::kNumerical;
    if (!dual_feasible(duals(cost2_))) return Outcome::kNumerical;

    // A cold solve is cheap next to a long dual run, so give up early.
    const long warm_limit = std::min<long>(opt_.iteration_limit, 20L * (m_ + n_) + 200);
    long degenerate = 0;
    bool bland = false;
    for (;;) {
      if (++iterations_ > warm_limit) return Outcome::kNumerical;
      if (since_refactor_ >= kRefactorInterval && !refactor()) return Outcome::kNumerical;
      // Largest infeasibility leaves; in Bland mode the lowest-index
      // infeasible basic variable does, which rules out cycling.
      int r = -1;
      double worst = 0.0;
      for (int k = 0; k < m_; ++k) {
        const double v = basic_infeasibility(head_[k]);
        if (v <= 0.0) continue;
        if (bland ? (r < 0 || head_[k] < head_[r]) : v > worst) {
          worst = v;
          r = k;
        }
      }
      if (r < 0) {
        if (since_refactor_ > 0) {
          if (!refactor()) return Outcome::kNumerical;
          continue;
        }
        break;
      }
      const int leaving = head_[r];
      const bool below = x_[leaving] < lo_[leaving];
      const Eigen::VectorXd y = duals(cost2_);
      const Eigen::VectorXd rho = binv_.row(r).transpose();
      int q = -1;
      double best_ratio = kInf;
      double best_abs = 0.0;
      for (int j = 0; j < n_ + m_; ++j) {
        const VarState s = state_[j];
        if (s == VarState::kBasic || up_[j] - lo_[j] <= 0.0) continue;
        const double a = column_dot(j, rho);
        if (std::abs(a) <= opt_.pivot_tol) continue;
        // x_r moves by -a * dx_j; pick the sign of dx_j the bound state allows.
        const bool can_increase = s == VarState::kAtLower || s == VarState::kFreeZero;
        const bool can_decrease = s == VarState::kAtUpper || s == VarState::kFreeZero;
        const bool ok = below ? ((a < 0 && can_increase) || (a > 0 && can_decrease))
                              : ((a > 0 && can_increase) || (a < 0 && can_decrease));
        if (!ok) continue;
        const double d = cost2_[j] - column_dot(j, y);
        const double ratio = std::abs(d) / std::abs(a);
        const bool tied = ratio <= best_ratio + 1e-12;
        if (ratio < best_ratio - 1e-12 || (tied && !bland && std::abs(a) > best_abs)) {
          best_ratio = ratio;
          best_abs = std::abs(a);
          q = j;
        }
      }
      if (q < 0) return Outcome::kInfeasible;
      if (best_ratio <= 1e-12) {
        if (++degenerate > 50) bland = true;
      } else {
        degenerate = 0;
      }
      const Eigen::VectorXd alpha = ftran(q);
      if (std::abs(alpha[r]) < 1e-11) return Outcome::kNumerical;
      const double target = below ? lo_[leaving] : up_[leaving];
      const double step = (x_[leaving] - target) / alpha[r];
      for (int k = 0; k < m_; ++k) x_[head_[k]] -= step * alpha[k];
      x_[q] += step;
      pivot(r, q, alpha);
      state_[leaving] = below ? VarState::kAtLower : VarState::kAtUpper;
      x_[leaving] = target;
    }
    // Polish any residual dual infeasibility with primal phase two.
    return primal(cost2_, false);
  }

  LpResult finish(Outcome o) {
    LpResult res;
    res.iterations = iterations_;
    if (o == Outcome::kInfeasible) {
      res.status = SolveStatus::kInfeasible;
      return res;
    }
    if (o == Outcome::kUnbounded) {
      res.status = SolveStatus::kUnbounded;
      res.objective = model_.sense() == ObjectiveSense::kMaximize ? kInf : -kInf;
      return res;
    }
    res.status = SolveStatus::kOptimal;
    res.x.assign(x_.begin(), x_.begin() + n_);
    res.objective = model_.evaluate(res.x);
    const double sign = model_.sense() == ObjectiveSense::kMaximize ? -1.0 : 1.0;
    const Eigen::VectorXd y = duals(cost2_);
    res.row_duals.resize(m_);
    for (int i = 0; i < m_; ++i) res.row_duals[i] = sign * y[i];
    res.reduced_costs.resize(n_);
    for (int j = 0; j < n_; ++j) res.reduced_costs[j] = sign * (cost2_[j] - column_dot(j, y));
    Basis basis;
    basis.state.assign(state_.begin(), state_.begin() + n_ + m_);
    basis.head = head_;
    // A basic artificial on a redundant row cannot seed a warm start.
    bool clean = true;
    for (int j : head_) clean &= !is_artificial(j);
    if (clean) res.basis = std::move(basis);
    return res;
  }

  const LinearModel& model_;
  SimplexOptions opt_;
  int m_ = 0;
  int n_ = 0;
  int total_ = 0;
  std::vector<std::vector<Entry>> cols_;
  std::vector<double> b_;
  std::vector<double> cost2_;
  std::vector<double> lo_;
  std::vector<double> up_;
  std::vector<double> art_sign_;
  std::vector<double> x_;
  std::vector<VarState> state_;
  std::vector<int> head_;
  Eigen::MatrixXd binv_;
  int since_refactor_ = 0;
  long iterations_ = 0;
  bool force_bland_ = false;
};

/// Solves the continuous relaxation of `model` (integrality marks ignored).
inline SolveOutcome solve_lp(const LinearModel& model, SimplexOptions options = {}) {
  Simplex simplex(model, options);
  LpResult r = simplex.solve();
  SolveOutcome out;
  out.status = r.status;
  out.simplex_iterations = r.iterations;
  if (r.status == SolveStatus::kOptimal) {
    out.incumbent_value = r.objective;
    out.best_bound = r.objective;
    out.rel_gap_achieved = 0.0;
    out.incumbent = std::move(r.x);
    out.row_duals = std::move(r.row_duals);
    out.reduced_costs = std::move(r.reduced_costs);
  } else if (r.status == SolveStatus::kUnbounded) {
    out.incumbent_value = r.objective;
    out.best_bound = r.objective;
  }
  return out;
}

/// Dual objective y'b + sum_j d_j x_j of an optimal LP outcome; equals the
/// primal objective at an optimal basis.
inline double dual_objective(const LinearModel& model, const SolveOutcome& lp) {
  double v = model.offset();
  for (int i = 0; i < model.num_rows(); ++i) v += lp.row_duals[i] * model.row(i).rhs;
  const auto& x = *lp.incumbent;
  for (int j = 0; j < model.num_columns(); ++j) v += lp.reduced_costs[j] * x[j];
  return v;
}

}  // namespace iccg::milp
