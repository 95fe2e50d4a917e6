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

// Command-line front end: gen, solve, bench, profile and validate.
// Exit codes: 0 success, 1 usage or input error, 2 solve failure.

#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "iccg/bench.hpp"
#include "iccg/drorsp.hpp"
#include "iccg/model.hpp"
#include "iccg/report.hpp"
#include "json.hpp"

namespace iccg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitSolve = 2;

namespace cli_detail {

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParse, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline nlohmann::json read_json(const std::string& path) {
  try {
    return nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParse, path + ": " + e.what());
  }
}

/// "-" writes to `out`.
inline void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kParse, "cannot write '" + path + "'");
  f << text;
}

inline std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kParse, "bad threshold '" + cell + "'");
    }
  }
  return out;
}

/// Engine knobs shared by the commands that solve.
struct SolveFlags {
  std::string method = "iccg";
  double eps = 0.02;
  double eps_tilde = 0.015;
  double eps_mp = 0.02;
  double alpha = 0.8;
  std::optional<double> tau;
  double beta = 0.0;
  std::optional<int> exploit_freq;
  bool conservative_lb = false;
  int max_iterations = 500;
  std::optional<double> wall;
  std::string oracle = "milp";

  void attach(CLI::App* app) {
    app->add_option("--method", method, "Decomposition method")->check(CLI::IsMember({"ccg", "iccg"}));
    app->add_option("--eps", eps, "Target relative optimality gap");
    app->add_option("--eps-tilde", eps_tilde, "Inexact-gap threshold for exploitation (i-C&CG)");
    app->add_option("--eps-mp", eps_mp, "Initial master relative gap (i-C&CG)");
    app->add_option("--alpha", alpha, "Master gap reduction factor on exploitation (i-C&CG)");
    app->add_option("--tau", tau, "Master time limit in seconds (i-C&CG)");
    app->add_option("--beta", beta, "Master time limit increment on exploitation, seconds (i-C&CG)");
    app->add_option("--exploit-freq", exploit_freq, "Force exploitation when j - l exceeds this (i-C&CG)");
    app->add_flag("--conservative-lb", conservative_lb, "Set Lbar to the certified bound after each master");
    app->add_option("--max-iterations", max_iterations, "Cap on master solves");
    app->add_option("--wall", wall, "Wall-clock limit for the whole run, seconds");
    app->add_option("--oracle", oracle, "Scheduling worst-case oracle")
        ->check(CLI::IsMember({"milp", "enumerate"}));
  }

  bench::SolverSettings settings() const {
    bench::SolverSettings s;
    s.method = bench::method_from_string(method);
    s.ccg.epsilon = eps;
    s.ccg.max_iterations = max_iterations;
    s.ccg.wall_time_limit = wall;
    s.iccg.epsilon = eps;
    s.iccg.epsilon_tilde = eps_tilde;
    s.iccg.eps_mp_initial = eps_mp;
    s.iccg.alpha = alpha;
    s.iccg.master_time_limit = tau;
    s.iccg.time_limit_increment = beta;
    s.iccg.exploit_frequency = exploit_freq;
    s.iccg.conservative_bound_update = conservative_lb;
    s.iccg.max_iterations = max_iterations;
    s.iccg.wall_time_limit = wall;
    s.oracle = oracle == "milp" ? drorsp::OracleMode::kMilp : drorsp::OracleMode::kEnumerate;
    return s;
  }
};

inline bool is_schedule(const nlohmann::json& j) { return j.is_object() && j.contains("surgeries"); }

inline nlohmann::json schedule_json(const drorsp::Instance& inst, const std::vector<double>& x) {
  if (x.empty()) return nullptr;
  const drorsp::FirstStage fs = drorsp::first_stage_of(inst, x);
  std::vector<int> room_of(inst.nI(), -1);
  for (int i = 0; i < inst.nI(); ++i) {
    for (int r = 0; r < inst.nR(); ++r) {
      if (fs.y[i][r] > 0.5) room_of[i] = r;
    }
  }
  return {{"open", fs.x}, {"room_of", room_of}, {"eta", fs.eta}, {"phi", fs.phi}};
}

}  // namespace cli_detail

/// Parses argv and runs one command. Diagnostics go to `err`; "-" output
/// paths go to `out`.
inline int dispatch(int argc, const char* const* argv, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  using namespace cli_detail;
  CLI::App app{"Column-and-constraint generation toolkit for two-stage robust optimization", "iccg"};
  app.require_subcommand(1);

  // gen
  bench::GenSpec gen_spec;
  std::string pcts = "20-80";
  std::string types_path;
  std::string gen_out = "-";
  CLI::App* gen = app.add_subcommand("gen", "Generate a surgery-scheduling instance (JSON)");
  gen->add_option("--seed", gen_spec.seed, "Random seed");
  gen->add_option("--surgeries", gen_spec.num_surgeries, "Number of surgeries |I|");
  gen->add_option("--ors", gen_spec.num_ors, "Number of operating rooms |R|");
  gen->add_option("--pcts", pcts, "Percentile pair for duration bounds")->check(CLI::IsMember({"20-80", "10-90"}));
  gen->add_option("--cf", gen_spec.c_f, "Fixed cost per opened room");
  gen->add_option("--cv", gen_spec.c_v, "Overtime cost per minute");
  gen->add_option("--samples", gen_spec.samples_per_type, "Samples drawn per surgery type");
  gen->add_option("--minutes", gen_spec.T, "Working minutes per room");
  gen->add_option("--types", types_path, "Surgery-type file (defaults to the built-in table)");
  gen->add_option("-o,--out", gen_out, "Output path, '-' for stdout");

  // solve
  SolveFlags solve_flags;
  std::string solve_in;
  std::string report_path = "-";
  std::string log_path;
  std::string run_id = "run";
  CLI::App* solve = app.add_subcommand("solve", "Solve an instance; writes a report (JSON) and iteration log (CSV)");
  solve->add_option("instance", solve_in, "Scheduling instance or two-stage problem (JSON)")->required();
  solve_flags.attach(solve);
  solve->add_option("--report", report_path, "Report JSON path, '-' for stdout");
  solve->add_option("--log", log_path, "Iteration log CSV path");
  solve->add_option("--run-id", run_id, "Run id written to the iteration log");

  // bench
  std::string matrix_path;
  std::string bench_out = "-";
  std::optional<double> bench_cap;
  std::optional<int> bench_workers;
  CLI::App* benchc = app.add_subcommand("bench", "Run an experiment matrix; writes results CSV");
  benchc->add_option("matrix", matrix_path, "Matrix file (JSON)")->required();
  benchc->add_option("-o,--out", bench_out, "Results CSV path, '-' for stdout");
  benchc->add_option("--wall-cap", bench_cap, "Per-run wall-clock cap in seconds (overrides the file)");
  benchc->add_option("--workers", bench_workers, "Runs executed concurrently (overrides the file)");

  // profile
  std::string results_path;
  std::string metric = "time";
  std::string thresholds;
  std::string curve_out;
  std::string svg_out;
  CLI::App* profile = app.add_subcommand("profile", "Performance profile of a results CSV (CSV and SVG)");
  profile->add_option("results", results_path, "Results CSV")->required();
  profile->add_option("--metric", metric, "Profile metric")->check(CLI::IsMember({"time", "gap"}));
  profile->add_option("--thresholds", thresholds, "Comma-separated thresholds (default: an even grid)");
  profile->add_option("--csv", curve_out, "Curve CSV path, '-' for stdout");
  profile->add_option("--svg", svg_out, "SVG path");

  // validate
  std::string validate_in;
  int validate_samples = 32;
  std::uint64_t validate_seed = 1;
  CLI::App* validate = app.add_subcommand("validate", "Check an instance against the standing assumptions");
  validate->add_option("instance", validate_in, "Scheduling instance or two-stage problem (JSON)")->required();
  validate->add_option("--samples", validate_samples, "Sampled first-stage points");
  validate->add_option("--seed", validate_seed, "Sampling seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (gen->parsed()) {
      gen_spec.percentiles = bench::percentiles_from_string(pcts);
      if (!types_path.empty()) gen_spec.types = bench::surgery_types_from_json(read_json(types_path));
      const drorsp::Instance inst = bench::generate_instance(gen_spec);
      write_text(gen_out, drorsp::instance_to_json(inst).dump(2) + "\n", out);
      return kExitOk;
    }

    if (solve->parsed()) {
      const bench::SolverSettings s = solve_flags.settings();
      s.validate();
      const nlohmann::json in = read_json(solve_in);
      SolveReport rep;
      nlohmann::json extra;
      try {
        if (is_schedule(in)) {
          const drorsp::Instance inst = drorsp::instance_from_json(in);
          rep = bench::solve_drorsp(inst, s);
          extra = schedule_json(inst, rep.final_x);
        } else {
          const TwoStageProblem p = problem_from_json(in);
          FiniteMasterBuilder builder(p);
          FiniteOracle oracle(p);
          rep = s.method == bench::Method::kCcg ? solve_ccg(builder, oracle, s.ccg)
                                                : solve_iccg(builder, oracle, s.iccg);
        }
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kParse || e.code() == ErrorCode::kDimension) throw;
        err << "solve failed: " << e.what() << "\n";
        return kExitSolve;
      }
      nlohmann::json j = report_to_json(rep);
      if (!extra.is_null()) j["schedule"] = extra;
      write_text(report_path, j.dump(2) + "\n", out);
      if (!log_path.empty()) write_text(log_path, iteration_log_csv(rep, run_id), out);
      if (rep.termination != Termination::kConverged) {
        err << "solve stopped without convergence: " << to_string(rep.termination)
            << (rep.detail.empty() ? "" : " (" + rep.detail + ")") << "\n";
        return kExitSolve;
      }
      return kExitOk;
    }

    if (benchc->parsed()) {
      bench::Matrix m = bench::matrix_from_json(read_json(matrix_path));
      if (bench_cap) m.options.wall_cap_s = *bench_cap;
      if (bench_workers) m.options.workers = *bench_workers;
      if (!(m.options.wall_cap_s > 0.0)) throw Error(ErrorCode::kParam, "wall cap must be positive");
      const auto rows = bench::run_experiment(m.entries, m.options);
      write_text(bench_out, bench::results_csv(rows, m.options.wall_cap_s), out);
      return kExitOk;
    }

    if (profile->parsed()) {
      const bench::ResultsTable t = bench::parse_results_csv(read_text(results_path));
      const bench::Metric mt = bench::metric_from_string(metric);
      double cap = t.wall_cap_s.value_or(0.0);
      if (!(cap > 0.0)) {
        for (const bench::ResultRow& r : t.rows) cap = std::max(cap, r.time_s);
        if (!(cap > 0.0)) cap = 1.0;
      }
      const std::vector<double> th = thresholds.empty() ? bench::default_thresholds(mt, cap) : parse_list(thresholds);
      const auto curves = bench::profiles_by_method(t.rows, mt, th);
      if (curve_out.empty() && svg_out.empty()) curve_out = "-";
      if (!curve_out.empty()) write_text(curve_out, bench::curves_csv(curves), out);
      if (!svg_out.empty()) write_text(svg_out, bench::render_profile_svg(curves), out);
      return kExitOk;
    }

    if (validate->parsed()) {
      const nlohmann::json in = read_json(validate_in);
      nlohmann::json rep;
      bool ok = false;
      if (is_schedule(in)) {
        const drorsp::ValidationReport v =
            drorsp::validate_instance(drorsp::instance_from_json(in, false), validate_samples, 1e-6, validate_seed);
        rep = {{"kind", "schedule"}, {"samples", v.samples}, {"warnings", v.warnings}, {"violations", v.violations}};
        ok = v.ok();
      } else {
        const ValidationReport v = validate_problem(problem_from_json(in), validate_samples, 1e-6, validate_seed);
        nlohmann::json vs = nlohmann::json::array();
        for (const Violation& x : v.violations) {
          vs.push_back({{"kind", std::string(to_string(x.kind))}, {"x", x.x}, {"xi", x.xi}, {"value", x.value}});
        }
        rep = {{"kind", "two_stage"}, {"pairs_checked", v.pairs_checked}, {"violations", vs}};
        ok = v.ok();
      }
      rep["ok"] = ok;
      out << rep.dump(2) << "\n";
      return ok ? kExitOk : kExitSolve;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kParam || e.code() == ErrorCode::kParse || e.code() == ErrorCode::kSpec ||
                   e.code() == ErrorCode::kDimension || e.code() == ErrorCode::kEmptyInput
               ? kExitUsage
               : kExitSolve;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitSolve;
  }
  return kExitUsage;
}

}  // namespace iccg::cli
