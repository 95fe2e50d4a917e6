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

// Mixed-integer linear model container and solve result types shared by the
// simplex and branch-and-bound engines.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "iccg/error.hpp"

namespace iccg::milp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class ObjectiveSense { kMinimize, kMaximize };
enum class RowSense { kLessEqual, kEqual, kGreaterEqual };
enum class ColumnType { kContinuous, kBinary, kInteger };

struct Column {
  double lower = 0.0;
  double upper = kInf;
  ColumnType type = ColumnType::kContinuous;
  std::string name;
};

struct Term {
  int column;
  double coefficient;
};

struct Row {
  std::vector<Term> terms;
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
  std::string name;
};

/// A linear objective over bounded columns with linear rows. Binary columns
/// are clamped to [0,1] when added.
class LinearModel {
 public:
  explicit LinearModel(ObjectiveSense sense = ObjectiveSense::kMinimize) : sense_(sense) {}

  int add_column(double lower, double upper, ColumnType type = ColumnType::kContinuous,
                 double cost = 0.0, std::string name = {}) {
    if (type == ColumnType::kBinary) {
      lower = std::max(lower, 0.0);
      upper = std::min(upper, 1.0);
    }
    columns_.push_back(Column{lower, upper, type, std::move(name)});
    objective_.push_back(cost);
    return static_cast<int>(columns_.size()) - 1;
  }

  int add_row(std::vector<Term> terms, RowSense sense, double rhs, std::string name = {}) {
    for (const Term& t : terms) {
      if (t.column < 0 || t.column >= num_columns()) {
        throw Error(ErrorCode::kDimension, "row term references column " +
                                               std::to_string(t.column));
      }
    }
    rows_.push_back(Row{std::move(terms), sense, rhs, std::move(name)});
    return static_cast<int>(rows_.size()) - 1;
  }

  void set_cost(int column, double cost) { objective_.at(column) = cost; }
  void set_offset(double offset) { offset_ = offset; }
  void set_sense(ObjectiveSense sense) { sense_ = sense; }
  void set_bounds(int column, double lower, double upper) {
    columns_.at(column).lower = lower;
    columns_.at(column).upper = upper;
  }

  int num_columns() const { return static_cast<int>(columns_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  ObjectiveSense sense() const { return sense_; }
  double offset() const { return offset_; }
  const std::vector<double>& objective() const { return objective_; }
  const std::vector<Column>& columns() const { return columns_; }
  const std::vector<Row>& rows() const { return rows_; }
  const Column& column(int j) const { return columns_.at(j); }
  const Row& row(int i) const { return rows_.at(i); }

  bool is_integer(int j) const { return columns_[j].type != ColumnType::kContinuous; }
  int num_integer_columns() const {
    return static_cast<int>(std::count_if(columns_.begin(), columns_.end(), [](const Column& c) {
      return c.type != ColumnType::kContinuous;
    }));
  }

  double evaluate(const std::vector<double>& x) const {
    double v = offset_;
    for (int j = 0; j < num_columns(); ++j) v += objective_[j] * x[j];
    return v;
  }

  double row_activity(int i, const std::vector<double>& x) const {
    double a = 0.0;
    for (const Term& t : rows_[i].terms) a += t.coefficient * x[t.column];
    return a;
  }

  /// Largest violation of rows, bounds and (optionally) integrality, each
  /// scaled by 1 + |rhs| or 1 + |bound|.
  double max_violation(const std::vector<double>& x, bool check_integrality = false) const {
    double worst = 0.0;
    for (int j = 0; j < num_columns(); ++j) {
      const Column& c = columns_[j];
      worst = std::max(worst, (c.lower - x[j]) / (1.0 + std::abs(c.lower)));
      worst = std::max(worst, (x[j] - c.upper) / (1.0 + std::abs(c.upper)));
      if (check_integrality && c.type != ColumnType::kContinuous) {
        worst = std::max(worst, std::abs(x[j] - std::round(x[j])));
      }
    }
    for (int i = 0; i < num_rows(); ++i) {
      const Row& r = rows_[i];
      const double a = row_activity(i, x);
      const double scale = 1.0 + std::abs(r.rhs);
      if (r.sense != RowSense::kGreaterEqual) worst = std::max(worst, (a - r.rhs) / scale);
      if (r.sense != RowSense::kLessEqual) worst = std::max(worst, (r.rhs - a) / scale);
    }
    return worst;
  }

  /// Throws DimensionError when an integer column lacks finite bounds.
  void check() const {
    for (int j = 0; j < num_columns(); ++j) {
      const Column& c = columns_[j];
      if (c.type != ColumnType::kContinuous &&
          (!std::isfinite(c.lower) || !std::isfinite(c.upper))) {
        throw Error(ErrorCode::kDimension,
                    "integer column " + std::to_string(j) + " needs finite bounds");
      }
      if (c.lower > c.upper) {
        throw Error(ErrorCode::kDimension,
                    "column " + std::to_string(j) + " has lower > upper");
      }
    }
  }

 private:
  ObjectiveSense sense_;
  double offset_ = 0.0;
  std::vector<double> objective_;
  std::vector<Column> columns_;
  std::vector<Row> rows_;
};

enum class SolveStatus { kOptimal, kGapReached, kTimeLimit, kNodeLimit, kInfeasible, kUnbounded };

constexpr std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "Optimal";
    case SolveStatus::kGapReached: return "GapReached";
    case SolveStatus::kTimeLimit: return "TimeLimit";
    case SolveStatus::kNodeLimit: return "NodeLimit";
    case SolveStatus::kInfeasible: return "Infeasible";
    case SolveStatus::kUnbounded: return "Unbounded";
  }
  return "Unknown";
}

/// One snapshot of branch-and-bound progress, emitted whenever either bound
/// moves.
struct Progress {
  long nodes = 0;
  double incumbent_value = kInf;
  double best_bound = -kInf;
};

struct SolveControls {
  double rel_gap = 0.0;
  std::optional<double> time_limit;  // seconds
  std::optional<long> node_limit;
  /// Keep searching past the time/node limit until a first incumbent exists.
  bool require_incumbent = false;
  std::function<void(const Progress&)> on_progress;

  void check() const {
    if (!(rel_gap >= 0.0 && rel_gap < 1.0)) {
      throw Error(ErrorCode::kParam, "rel_gap must lie in [0,1)");
    }
  }
};

/// Relative gap with the denominator guarded away from zero.
inline double relative_gap(double upper, double lower) {
  return (upper - lower) / std::max(std::abs(upper), 1e-12);
}

struct SolveOutcome {
  SolveStatus status = SolveStatus::kInfeasible;
  std::optional<std::vector<double>> incumbent;
  /// Values in the model's own sense. For minimization best_bound <=
  /// incumbent_value; for maximization the order flips.
  double incumbent_value = kInf;
  double best_bound = -kInf;
  double rel_gap_achieved = kInf;
  long nodes = 0;
  long simplex_iterations = 0;
  /// LP only: row duals and column reduced costs of the final basis, in the
  /// model's own sense.
  std::vector<double> row_duals;
  std::vector<double> reduced_costs;

  bool has_incumbent() const { return incumbent.has_value(); }
};

/// Plain-text LP-style dump for debugging; not a stable format.
inline void dump_lp_text(const LinearModel& m, std::ostream& os) {
  auto name = [&](int j) {
    return m.column(j).name.empty() ? "x" + std::to_string(j) : m.column(j).name;
  };
  auto term = [&](double a, int j) {
    std::ostringstream s;
    s << (a < 0 ? " - " : " + ") << std::abs(a) << ' ' << name(j);
    return s.str();
  };
  os << (m.sense() == ObjectiveSense::kMinimize ? "Minimize" : "Maximize") << "\n obj:";
  for (int j = 0; j < m.num_columns(); ++j) {
    if (m.objective()[j] != 0.0) os << term(m.objective()[j], j);
  }
  if (m.offset() != 0.0) os << (m.offset() < 0 ? " - " : " + ") << std::abs(m.offset());
  os << "\nSubject To\n";
  for (int i = 0; i < m.num_rows(); ++i) {
    const Row& r = m.row(i);
    os << ' ' << (r.name.empty() ? "c" + std::to_string(i) : r.name) << ':';
    for (const Term& t : r.terms) os << term(t.coefficient, t.column);
    os << (r.sense == RowSense::kLessEqual ? " <= " : r.sense == RowSense::kEqual ? " = " : " >= ")
       << r.rhs << '\n';
  }
  os << "Bounds\n";
  for (int j = 0; j < m.num_columns(); ++j) {
    const Column& c = m.column(j);
    if (std::isinf(c.lower) && std::isinf(c.upper)) {
      os << ' ' << name(j) << " free\n";
    } else {
      os << ' ' << (std::isinf(c.lower) ? std::string("-inf") : std::to_string(c.lower))
         << " <= " << name(j) << " <= "
         << (std::isinf(c.upper) ? std::string("+inf") : std::to_string(c.upper)) << '\n';
    }
  }
  bool header = false;
  for (int j = 0; j < m.num_columns(); ++j) {
    if (!m.is_integer(j)) continue;
    if (!header) os << "General\n";
    header = true;
    os << ' ' << name(j) << '\n';
  }
  os << "End\n";
}

}  // namespace iccg::milp
