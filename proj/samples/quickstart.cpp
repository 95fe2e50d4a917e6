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

// Solves a small capacity-planning problem read from JSON with both
// decomposition methods, then generates and solves a surgery-scheduling
// instance.
//
//   quickstart [toy_capacity.json]

#include <cstdio>
#include <fstream>

#include "iccg/bench.hpp"
#include "iccg/model.hpp"

namespace {

void print(const iccg::SolveReport& rep) {
  std::printf("  %-5s %-10s value %.6f  lower bound %.6f  masters %zu  explores %d  exploits %d\n",
              rep.method.c_str(), std::string(iccg::to_string(rep.termination)).c_str(), rep.final_value,
              rep.valid_lower_bound, rep.iterations.size(), rep.explore_count, rep.exploit_count);
}

}  // namespace

int main(int argc, char** argv) {
  const char* path = argc > 1 ? argv[1] : "toy_capacity.json";
  std::ifstream in(path);
  if (!in) {
    std::fprintf(stderr, "cannot open %s\n", path);
    return 1;
  }
  const iccg::TwoStageProblem p = iccg::problem_from_json(nlohmann::json::parse(in));
  iccg::FiniteMasterBuilder builder(p);
  iccg::FiniteOracle oracle(p);

  std::printf("capacity planning, %zu scenarios\n", p.uncertainty.finite.size());
  print(iccg::solve_ccg(builder, oracle, iccg::CcgParams{}));
  const iccg::SolveReport inexact = iccg::solve_iccg(builder, oracle, iccg::IccgParams{});
  print(inexact);
  std::printf("  capacities:");
  for (double x : inexact.final_x) std::printf(" %g", x);
  std::printf("\n  extensive form optimum %.6f\n", iccg::solve_extensive_form(p).v_star);

  iccg::bench::GenSpec spec;
  spec.seed = 2;
  spec.num_surgeries = 5;
  spec.num_ors = 2;
  const iccg::drorsp::Instance inst = iccg::bench::generate_instance(spec);
  iccg::bench::SolverSettings settings;
  settings.method = iccg::bench::Method::kIccg;
  const iccg::SolveReport rep = iccg::bench::solve_drorsp(inst, settings);
  std::printf("surgery scheduling, %d surgeries, %d rooms\n", inst.nI(), inst.nR());
  print(rep);
  const iccg::drorsp::FirstStage fs = iccg::drorsp::first_stage_of(inst, rep.final_x);
  for (int i = 0; i < inst.nI(); ++i) {
    for (int r = 0; r < inst.nR(); ++r) {
      if (fs.y[i][r] > 0.5) std::printf("  surgery %d (mean %.1f min) -> room %d\n", i, inst.surgeries[i].mu, r);
    }
  }
  return rep.termination == iccg::Termination::kConverged ? 0 : 2;
}
