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

// Experiment harness for the operating-room scheduling benchmark: seeded
// instance generation, a matrix runner producing one CSV row per run, and
// time/gap performance profiles rendered as CSV or SVG.

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "iccg/drorsp.hpp"
#include "iccg/engine.hpp"
#include "iccg/error.hpp"
#include "iccg/report.hpp"
#include "json.hpp"

namespace iccg::bench {

// ---------------------------------------------------------------------------
// Instance generation

/// Lognormal duration law (minutes) truncated to [lo, hi].
struct SurgeryType {
  std::string name;
  double median = 100.0;
  double log_sd = 0.3;
  double lo = 30.0;
  double hi = 480.0;
  double proportion = 1.0;
};

/// Mirrors data/surgery_types.json.
inline std::vector<SurgeryType> default_surgery_types() {
  return {
      {"short", 45.0, 0.35, 30.0, 480.0, 1.0},
      {"minor", 75.0, 0.35, 30.0, 480.0, 1.0},
      {"standard", 110.0, 0.30, 30.0, 480.0, 1.0},
      {"intermediate", 150.0, 0.30, 30.0, 480.0, 1.0},
      {"major", 200.0, 0.25, 30.0, 480.0, 1.0},
      {"complex", 270.0, 0.25, 30.0, 480.0, 1.0},
  };
}

inline std::vector<SurgeryType> surgery_types_from_json(const nlohmann::json& j) {
  try {
    std::vector<SurgeryType> out;
    for (const auto& t : j.at("types")) {
      out.push_back(SurgeryType{t.at("name").get<std::string>(), t.at("median").get<double>(),
                                t.at("log_sd").get<double>(), t.at("lo").get<double>(),
                                t.at("hi").get<double>(), t.value("proportion", 1.0)});
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("surgery types: ") + e.what());
  }
}

enum class Percentiles { k20_80, k10_90 };

constexpr std::string_view to_string(Percentiles p) {
  return p == Percentiles::k20_80 ? "20-80" : "10-90";
}

inline Percentiles percentiles_from_string(std::string_view s) {
  if (s == "20-80") return Percentiles::k20_80;
  if (s == "10-90") return Percentiles::k10_90;
  throw Error(ErrorCode::kSpec, "percentile pair must be 20-80 or 10-90, got '" + std::string(s) + "'");
}

struct GenSpec {
  std::uint64_t seed = 1;
  int num_surgeries = 10;
  int num_ors = 3;
  Percentiles percentiles = Percentiles::k20_80;
  double c_f = 1.0;
  double c_v = 1.0 / 30.0;
  int samples_per_type = 500;
  double T = 480.0;
  std::vector<SurgeryType> types = default_surgery_types();

  void check() const {
    if (num_ors < 1) throw Error(ErrorCode::kSpec, "num_ors must be positive");
    if (num_surgeries < num_ors) throw Error(ErrorCode::kSpec, "need |I| >= |R|");
    if (samples_per_type < 2) throw Error(ErrorCode::kSpec, "samples_per_type must be at least 2");
    if (!(c_f >= 0.0 && c_v >= 0.0 && T > 0.0)) {
      throw Error(ErrorCode::kSpec, "costs must be nonnegative and T positive");
    }
    if (types.empty()) throw Error(ErrorCode::kSpec, "no surgery types");
    double total = 0.0;
    for (const SurgeryType& t : types) {
      if (!(t.median > 0.0 && t.log_sd > 0.0 && t.lo < t.hi && t.lo <= t.median && t.median <= t.hi)) {
        throw Error(ErrorCode::kSpec, "surgery type '" + t.name + "' is malformed");
      }
      if (!(t.proportion >= 0.0)) throw Error(ErrorCode::kSpec, "negative type proportion");
      total += t.proportion;
    }
    if (!(total > 0.0)) throw Error(ErrorCode::kSpec, "type proportions sum to zero");
  }
};

/// Moments and bounds estimated from one type's sample.
struct TypeStats {
  double mu = 0.0;
  double nu = 0.0;  // mean absolute deviation
  double dlo = 0.0;
  double dhi = 0.0;
  double raw_min = 0.0;
  double raw_max = 0.0;
};

/// Linear interpolation between order statistics at rank p/100 * (n-1).
inline double percentile(std::vector<double> sorted, double p) {
  if (sorted.empty()) throw Error(ErrorCode::kEmptyInput, "percentile of an empty sample");
  std::sort(sorted.begin(), sorted.end());
  const double pos = p / 100.0 * static_cast<double>(sorted.size() - 1);
  const auto k = static_cast<std::size_t>(std::floor(pos));
  if (k + 1 >= sorted.size()) return sorted.back();
  return sorted[k] + (pos - static_cast<double>(k)) * (sorted[k + 1] - sorted[k]);
}

inline TypeStats estimate_type(const std::vector<double>& sample, Percentiles pcts) {
  TypeStats s;
  double sum = 0.0;
  for (double d : sample) sum += d;
  s.mu = sum / static_cast<double>(sample.size());
  double dev = 0.0;
  for (double d : sample) dev += std::abs(d - s.mu);
  s.nu = dev / static_cast<double>(sample.size());
  const double p = pcts == Percentiles::k20_80 ? 20.0 : 10.0;
  s.dlo = percentile(sample, p);
  s.dhi = percentile(sample, 100.0 - p);
  s.raw_min = *std::min_element(sample.begin(), sample.end());
  s.raw_max = *std::max_element(sample.begin(), sample.end());
  return s;
}

struct Generation {
  drorsp::Instance instance;
  std::vector<int> type_of;                  // per surgery
  std::vector<std::vector<double>> samples;  // per type
  std::vector<TypeStats> stats;              // per type
};

/// Draws the type samples first (so the moments do not depend on |I| or the
/// percentile pair), then the multinomial type counts. Surgeries are listed
/// grouped by type.
inline Generation generate(const GenSpec& spec) {
  spec.check();
  std::mt19937_64 rng(spec.seed);
  Generation g;
  for (const SurgeryType& t : spec.types) {
    std::lognormal_distribution<double> law(std::log(t.median), t.log_sd);
    std::vector<double> sample;
    sample.reserve(spec.samples_per_type);
    while (static_cast<int>(sample.size()) < spec.samples_per_type) {
      const double d = law(rng);
      if (d >= t.lo && d <= t.hi) sample.push_back(d);
    }
    g.stats.push_back(estimate_type(sample, spec.percentiles));
    g.samples.push_back(std::move(sample));
  }
  std::vector<double> weights;
  for (const SurgeryType& t : spec.types) weights.push_back(t.proportion);
  std::discrete_distribution<int> pick(weights.begin(), weights.end());
  std::vector<int> counts(spec.types.size(), 0);
  for (int i = 0; i < spec.num_surgeries; ++i) ++counts[pick(rng)];

  drorsp::Instance& inst = g.instance;
  inst.num_ors = spec.num_ors;
  inst.c_f = spec.c_f;
  inst.c_v = spec.c_v;
  inst.T = spec.T;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const TypeStats& s = g.stats[k];
    if (!(s.dlo <= s.mu && s.mu <= s.dhi)) {
      throw Error(ErrorCode::kSpec, "type '" + spec.types[k].name + "': mean outside the percentile bounds");
    }
    for (int c = 0; c < counts[k]; ++c) {
      inst.surgeries.push_back(drorsp::Surgery{s.mu, s.nu, s.dlo, s.dhi});
      g.type_of.push_back(static_cast<int>(k));
    }
  }
  return g;
}

inline drorsp::Instance generate_instance(const GenSpec& spec) { return generate(spec).instance; }

inline nlohmann::json spec_to_json(const GenSpec& s) {
  return {{"seed", s.seed},
          {"num_surgeries", s.num_surgeries},
          {"num_ors", s.num_ors},
          {"percentiles", std::string(to_string(s.percentiles))},
          {"c_f", s.c_f},
          {"c_v", s.c_v},
          {"samples_per_type", s.samples_per_type},
          {"T", s.T}};
}

/// Missing fields keep their defaults.
inline GenSpec spec_from_json(const nlohmann::json& j) {
  try {
    GenSpec s;
    s.seed = j.value("seed", s.seed);
    s.num_surgeries = j.value("num_surgeries", s.num_surgeries);
    s.num_ors = j.value("num_ors", s.num_ors);
    if (j.contains("percentiles")) s.percentiles = percentiles_from_string(j.at("percentiles").get<std::string>());
    s.c_f = j.value("c_f", s.c_f);
    s.c_v = j.value("c_v", s.c_v);
    s.samples_per_type = j.value("samples_per_type", s.samples_per_type);
    s.T = j.value("T", s.T);
    if (j.contains("types")) s.types = surgery_types_from_json(j);
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("generator spec: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Solving and the experiment matrix

enum class Method { kCcg, kIccg };

constexpr std::string_view to_string(Method m) { return m == Method::kCcg ? "ccg" : "iccg"; }

inline Method method_from_string(std::string_view s) {
  if (s == "ccg") return Method::kCcg;
  if (s == "iccg") return Method::kIccg;
  throw Error(ErrorCode::kParam, "method must be ccg or iccg, got '" + std::string(s) + "'");
}

struct SolverSettings {
  Method method = Method::kIccg;
  CcgParams ccg;
  IccgParams iccg;
  drorsp::OracleMode oracle = drorsp::OracleMode::kMilp;
  drorsp::MasterOptions master;

  double epsilon() const { return method == Method::kCcg ? ccg.epsilon : iccg.epsilon; }

  void validate() const {
    if (method == Method::kCcg) {
      ccg.validate();
    } else {
      iccg.validate();
    }
  }
};

/// Reads the engine knobs under the CLI flag names (eps, eps_tilde, eps_mp,
/// alpha, tau, beta, exploit_freq, conservative_lb, max_iterations).
inline void apply_params(const nlohmann::json& j, SolverSettings& s) {
  try {
    if (j.contains("eps")) s.ccg.epsilon = s.iccg.epsilon = j.at("eps").get<double>();
    if (j.contains("eps_tilde")) s.iccg.epsilon_tilde = j.at("eps_tilde").get<double>();
    if (j.contains("eps_mp")) s.iccg.eps_mp_initial = j.at("eps_mp").get<double>();
    if (j.contains("alpha")) s.iccg.alpha = j.at("alpha").get<double>();
    if (j.contains("tau")) s.iccg.master_time_limit = j.at("tau").get<double>();
    if (j.contains("beta")) s.iccg.time_limit_increment = j.at("beta").get<double>();
    if (j.contains("exploit_freq")) s.iccg.exploit_frequency = j.at("exploit_freq").get<int>();
    if (j.contains("conservative_lb")) s.iccg.conservative_bound_update = j.at("conservative_lb").get<bool>();
    if (j.contains("max_iterations")) {
      s.ccg.max_iterations = s.iccg.max_iterations = j.at("max_iterations").get<int>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("solver parameters: ") + e.what());
  }
}

inline SolveReport solve_drorsp(const drorsp::Instance& inst, const SolverSettings& s) {
  (void)inst.check();
  s.validate();
  drorsp::MasterBuilderAdapter builder(inst, s.master);
  drorsp::OracleAdapter oracle(inst, s.oracle);
  return s.method == Method::kCcg ? solve_ccg(builder, oracle, s.ccg) : solve_iccg(builder, oracle, s.iccg);
}

struct ExperimentEntry {
  std::string run_id;
  GenSpec spec;
  SolverSettings solver;
};

struct ResultRow {
  std::string run_id;
  std::string method;
  std::uint64_t seed = 0;
  int nI = 0;
  int nR = 0;
  std::string pcts;
  double cf = 0.0;
  double cv = 0.0;
  double eps = 0.0;
  std::string status;
  double time_s = 0.0;
  double final_gap = 0.0;
  int iters = 0;
  int exploits = 0;
  int explores = 0;
  // Not serialized.
  double final_value = 0.0;
  std::string detail;
};

struct ExperimentOptions {
  double wall_cap_s = 120.0;
  int workers = 1;
};

inline ResultRow run_entry(const ExperimentEntry& e, double wall_cap_s) {
  ResultRow row;
  row.run_id = e.run_id;
  row.method = std::string(to_string(e.solver.method));
  row.seed = e.spec.seed;
  row.nI = e.spec.num_surgeries;
  row.nR = e.spec.num_ors;
  row.pcts = std::string(to_string(e.spec.percentiles));
  row.cf = e.spec.c_f;
  row.cv = e.spec.c_v;
  row.eps = e.solver.epsilon();
  row.final_gap = milp::kInf;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const drorsp::Instance inst = generate_instance(e.spec);
    SolverSettings s = e.solver;
    auto cap = [&](std::optional<double>& w) { w = w ? std::min(*w, wall_cap_s) : wall_cap_s; };
    cap(s.ccg.wall_time_limit);
    cap(s.iccg.wall_time_limit);
    const SolveReport rep = solve_drorsp(inst, s);
    row.status = std::string(to_string(rep.termination));
    row.final_gap = rep.actual_gap;
    row.final_value = rep.final_value;
    row.iters = static_cast<int>(rep.iterations.size());
    row.exploits = rep.exploit_count;
    row.explores = rep.explore_count;
    row.detail = rep.detail;
  } catch (const std::exception& ex) {
    row.status = "Error";
    row.detail = ex.what();
  }
  row.time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

/// One row per entry, in entry order whatever the worker count. A failing
/// entry yields an Error row; the matrix always runs to the end.
inline std::vector<ResultRow> run_experiment(const std::vector<ExperimentEntry>& matrix,
                                             const ExperimentOptions& opt = {}) {
  std::vector<ResultRow> rows(matrix.size());
  const int workers = std::max(1, std::min<int>(opt.workers, static_cast<int>(matrix.size())));
  if (workers <= 1) {
    for (std::size_t k = 0; k < matrix.size(); ++k) rows[k] = run_entry(matrix[k], opt.wall_cap_s);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < matrix.size(); k = next++) rows[k] = run_entry(matrix[k], opt.wall_cap_s);
    });
  }
  for (std::thread& t : pool) t.join();
  return rows;
}

/// Matrix file:
///   {"wall_cap_s": 120, "workers": 1,
///    "runs": [{"run_id": "a", "method": "iccg", "spec": {...}, "params": {...}},
///             {"run_id": "b", "methods": ["ccg", "iccg"], "seeds": [1, 2], "spec": {...}}]}
/// An entry with "seeds" and/or "methods" expands to their product, with
/// run ids "<run_id>-s<seed>-<method>".
struct Matrix {
  std::vector<ExperimentEntry> entries;
  ExperimentOptions options;
};

inline Matrix matrix_from_json(const nlohmann::json& j) {
  try {
    Matrix m;
    m.options.wall_cap_s = j.value("wall_cap_s", m.options.wall_cap_s);
    m.options.workers = j.value("workers", m.options.workers);
    if (!(m.options.wall_cap_s > 0.0)) throw Error(ErrorCode::kSpec, "wall_cap_s must be positive");
    int counter = 0;
    for (const auto& r : j.at("runs")) {
      const GenSpec base = spec_from_json(r.value("spec", nlohmann::json::object()));
      SolverSettings solver;
      apply_params(r.value("params", nlohmann::json::object()), solver);
      if (r.contains("oracle")) {
        const std::string mode = r.at("oracle").get<std::string>();
        if (mode != "milp" && mode != "enumerate") throw Error(ErrorCode::kSpec, "oracle must be milp or enumerate");
        solver.oracle = mode == "milp" ? drorsp::OracleMode::kMilp : drorsp::OracleMode::kEnumerate;
      }
      std::vector<std::string> methods;
      if (r.contains("methods")) {
        methods = r.at("methods").get<std::vector<std::string>>();
      } else {
        methods.push_back(r.value("method", std::string("iccg")));
      }
      std::vector<std::uint64_t> seeds;
      if (r.contains("seeds")) {
        seeds = r.at("seeds").get<std::vector<std::uint64_t>>();
      } else {
        seeds.push_back(base.seed);
      }
      const bool expand = r.contains("methods") || r.contains("seeds");
      const std::string id = r.value("run_id", "run" + std::to_string(counter));
      for (std::uint64_t seed : seeds) {
        for (const std::string& meth : methods) {
          ExperimentEntry e;
          e.spec = base;
          e.spec.seed = seed;
          e.solver = solver;
          e.solver.method = method_from_string(meth);
          e.run_id = expand ? id + "-s" + std::to_string(seed) + "-" + meth : id;
          m.entries.push_back(std::move(e));
        }
      }
      ++counter;
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("experiment matrix: ") + e.what());
  }
}

inline constexpr std::string_view kResultsCsvHeader =
    "run_id,method,seed,nI,nR,pcts,cf,cv,eps,status,time_s,final_gap,iters,exploits,explores";

/// '#' lines carry the run protocol; `wall_cap_s=` is read back by the
/// profile step.
inline std::string results_csv(const std::vector<ResultRow>& rows, double wall_cap_s) {
  std::string out = "# iccg experiment results\n";
  out += "# desk-scale protocol: |I| in 8..14, |R| in {2,3}, per-run wall cap " + format_number(wall_cap_s) +
         " s (original study: 2 h)\n";
  out += "# wall_cap_s=" + format_number(wall_cap_s) + "\n";
  out += kResultsCsvHeader;
  out += '\n';
  for (const ResultRow& r : rows) {
    out += r.run_id + ',' + r.method + ',' + std::to_string(r.seed) + ',' + std::to_string(r.nI) + ',' +
           std::to_string(r.nR) + ',' + r.pcts + ',' + format_number(r.cf) + ',' + format_number(r.cv) + ',' +
           format_number(r.eps) + ',' + r.status + ',' + format_number(r.time_s) + ',' +
           format_number(r.final_gap) + ',' + std::to_string(r.iters) + ',' + std::to_string(r.exploits) + ',' +
           std::to_string(r.explores) + '\n';
  }
  return out;
}

struct ResultsTable {
  std::vector<ResultRow> rows;
  std::optional<double> wall_cap_s;
};

inline ResultsTable parse_results_csv(std::string_view text) {
  ResultsTable t;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = false;
  int lineno = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::kParse, "results csv line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string key = "# wall_cap_s=";
      if (line.rfind(key, 0) == 0) t.wall_cap_s = std::strtod(line.c_str() + key.size(), nullptr);
      continue;
    }
    if (!header) {
      if (line != kResultsCsvHeader) fail("unexpected header");
      header = true;
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (line.back() == ',') f.emplace_back();
    if (f.size() != 15) fail("expected 15 fields");
    try {
      ResultRow r;
      r.run_id = f[0];
      r.method = f[1];
      r.seed = std::stoull(f[2]);
      r.nI = std::stoi(f[3]);
      r.nR = std::stoi(f[4]);
      r.pcts = f[5];
      r.cf = std::stod(f[6]);
      r.cv = std::stod(f[7]);
      r.eps = std::stod(f[8]);
      r.status = f[9];
      r.time_s = std::stod(f[10]);
      r.final_gap = std::stod(f[11]);
      r.iters = std::stoi(f[12]);
      r.exploits = std::stoi(f[13]);
      r.explores = std::stoi(f[14]);
      t.rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      fail("malformed number");
    }
  }
  if (!header) throw Error(ErrorCode::kParse, "results csv has no header");
  return t;
}

// ---------------------------------------------------------------------------
// Performance profiles

enum class Metric { kTime, kGap };

constexpr std::string_view to_string(Metric m) { return m == Metric::kTime ? "time" : "gap"; }

inline Metric metric_from_string(std::string_view s) {
  if (s == "time") return Metric::kTime;
  if (s == "gap") return Metric::kGap;
  throw Error(ErrorCode::kParam, "metric must be time or gap");
}

struct ProfilePoint {
  double threshold = 0.0;
  double fraction = 0.0;
};

struct ProfileCurve {
  Metric metric = Metric::kTime;
  std::vector<ProfilePoint> points;
  // Metadata; "mixed" when the rows disagree.
  std::string method;
  std::string eps;
  std::string pcts;
  std::string costs;
  int population = 0;  // rows the fractions are taken over
};

namespace bench_detail {

template <class F>
std::string uniform_field(const std::vector<ResultRow>& rows, F f) {
  std::string v = f(rows.front());
  for (const ResultRow& r : rows) {
    if (f(r) != v) return "mixed";
  }
  return v;
}

}  // namespace bench_detail

/// Time: share of all rows that Converged within t. Gap: among rows stopped
/// by the time cap, share whose final gap is at most g; with no such row
/// every fraction is 1 (no capped run exceeds any gap).
inline ProfileCurve performance_profile(const std::vector<ResultRow>& rows, Metric metric,
                                        std::vector<double> thresholds) {
  if (rows.empty()) throw Error(ErrorCode::kEmptyInput, "no result rows");
  if (thresholds.empty()) throw Error(ErrorCode::kEmptyInput, "no thresholds");
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  ProfileCurve c;
  c.metric = metric;
  c.method = bench_detail::uniform_field(rows, [](const ResultRow& r) { return r.method; });
  c.eps = bench_detail::uniform_field(rows, [](const ResultRow& r) { return format_number(r.eps); });
  c.pcts = bench_detail::uniform_field(rows, [](const ResultRow& r) { return r.pcts; });
  c.costs = bench_detail::uniform_field(
      rows, [](const ResultRow& r) { return format_number(r.cf) + "/" + format_number(r.cv); });
  std::vector<double> values;
  if (metric == Metric::kTime) {
    c.population = static_cast<int>(rows.size());
    for (const ResultRow& r : rows) {
      if (r.status == "Converged") values.push_back(r.time_s);
    }
  } else {
    for (const ResultRow& r : rows) {
      if (r.status == "TimeLimit") values.push_back(r.final_gap);
    }
    c.population = static_cast<int>(values.size());
  }
  for (double t : thresholds) {
    double frac = 1.0;
    if (c.population > 0) {
      const auto hit = std::count_if(values.begin(), values.end(), [t](double v) { return v <= t; });
      frac = static_cast<double>(hit) / c.population;
    }
    c.points.push_back({t, frac});
  }
  return c;
}

/// One curve per method, ordered by method name.
inline std::vector<ProfileCurve> profiles_by_method(const std::vector<ResultRow>& rows, Metric metric,
                                                    const std::vector<double>& thresholds) {
  if (rows.empty()) throw Error(ErrorCode::kEmptyInput, "no result rows");
  std::map<std::string, std::vector<ResultRow>> groups;
  for (const ResultRow& r : rows) groups[r.method].push_back(r);
  std::vector<ProfileCurve> out;
  for (const auto& [method, group] : groups) out.push_back(performance_profile(group, metric, thresholds));
  return out;
}

/// Evenly spaced grid: [0, cap] in 60 steps for time, [0, 0.5] in steps of
/// 0.01 for gap.
inline std::vector<double> default_thresholds(Metric metric, double wall_cap_s) {
  std::vector<double> out;
  if (metric == Metric::kTime) {
    for (int k = 0; k <= 60; ++k) out.push_back(wall_cap_s * k / 60.0);
  } else {
    for (int k = 0; k <= 50; ++k) out.push_back(k / 100.0);
  }
  return out;
}

inline std::string curves_csv(const std::vector<ProfileCurve>& curves) {
  std::string out = "method,metric,eps,pcts,costs,population,threshold,fraction\n";
  for (const ProfileCurve& c : curves) {
    for (const ProfilePoint& p : c.points) {
      out += c.method + ',' + std::string(to_string(c.metric)) + ',' + c.eps + ',' + c.pcts + ',' + c.costs + ',' +
             std::to_string(c.population) + ',' + format_number(p.threshold) + ',' + format_number(p.fraction) +
             '\n';
    }
  }
  return out;
}

namespace bench_detail {

inline std::string fixed(double v, int digits = 2) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline std::string escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace bench_detail

/// Step plot of the curves with a legend. Uses only rect, polyline and text.
inline std::string render_profile_svg(const std::vector<ProfileCurve>& curves) {
  using bench_detail::fixed;
  if (curves.empty()) throw Error(ErrorCode::kEmptyInput, "no curves to render");
  constexpr double kW = 640, kH = 420, kLeft = 70, kRight = 170, kTop = 30, kBottom = 60;
  constexpr double kPlotW = kW - kLeft - kRight, kPlotH = kH - kTop - kBottom;
  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

  double lo = milp::kInf, hi = -milp::kInf;
  for (const ProfileCurve& c : curves) {
    for (const ProfilePoint& p : c.points) {
      lo = std::min(lo, p.threshold);
      hi = std::max(hi, p.threshold);
    }
  }
  if (!(lo < milp::kInf)) throw Error(ErrorCode::kEmptyInput, "curves have no points");
  if (hi <= lo) hi = lo + 1.0;
  auto px = [&](double t) { return kLeft + (t - lo) / (hi - lo) * kPlotW; };
  auto py = [&](double f) { return kTop + (1.0 - f) * kPlotH; };

  const Metric metric = curves.front().metric;
  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fixed(kW, 0) + "\" height=\"" +
       fixed(kH, 0) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + fixed(kW, 0) + "\" height=\"" + fixed(kH, 0) + "\" fill=\"white\"/>\n";
  s += "<rect x=\"" + fixed(kLeft) + "\" y=\"" + fixed(kTop) + "\" width=\"" + fixed(kPlotW) + "\" height=\"" +
       fixed(kPlotH) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double f = k / 4.0;
    s += "<text x=\"" + fixed(kLeft - 8) + "\" y=\"" + fixed(py(f) + 4) + "\" text-anchor=\"end\">" + fixed(f) +
         "</text>\n";
    const double t = lo + (hi - lo) * k / 4.0;
    s += "<text x=\"" + fixed(px(t)) + "\" y=\"" + fixed(kTop + kPlotH + 18) + "\" text-anchor=\"middle\">" +
         format_number(t) + "</text>\n";
  }
  const std::string xlabel = metric == Metric::kTime ? "time (s)" : "relative gap";
  s += "<text x=\"" + fixed(kLeft + kPlotW / 2) + "\" y=\"" + fixed(kH - 18) + "\" text-anchor=\"middle\">" +
       xlabel + "</text>\n";
  s += "<text x=\"16\" y=\"" + fixed(kTop + kPlotH / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
       fixed(kTop + kPlotH / 2) + ")\">fraction of instances</text>\n";

  for (std::size_t k = 0; k < curves.size(); ++k) {
    const ProfileCurve& c = curves[k];
    const std::string color = kColors[k % std::size(kColors)];
    std::string pts;
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      const ProfilePoint& p = c.points[i];
      if (i > 0) pts += ' ' + fixed(px(p.threshold)) + ',' + fixed(py(c.points[i - 1].fraction));
      if (!pts.empty()) pts += ' ';
      pts += fixed(px(p.threshold)) + ',' + fixed(py(p.fraction));
    }
    s += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\" points=\"" + pts + "\"/>\n";
    const double ly = kTop + 10 + 22.0 * static_cast<double>(k);
    s += "<rect x=\"" + fixed(kLeft + kPlotW + 16) + "\" y=\"" + fixed(ly) + "\" width=\"14\" height=\"10\" fill=\"" +
         color + "\"/>\n";
    s += "<text x=\"" + fixed(kLeft + kPlotW + 36) + "\" y=\"" + fixed(ly + 9) + "\">" +
         bench_detail::escape(c.method + " (eps " + c.eps + ")") + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace iccg::bench
