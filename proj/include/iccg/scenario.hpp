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

#include <cmath>
#include <map>
#include <vector>

namespace iccg {

/// A realization of the uncertain parameters. `id` is assigned by the
/// registry that first sees the vector and is stable for the whole solve.
struct Scenario {
  std::vector<double> xi;
  int id = -1;
};

/// Rounds each component to 12 decimal digits so that vectors produced by
/// deterministic oracles compare equal exactly.
inline std::vector<double> canonical(const std::vector<double>& xi) {
  std::vector<double> out(xi.size());
  for (std::size_t k = 0; k < xi.size(); ++k) {
    out[k] = std::nearbyint(xi[k] * 1e12) / 1e12;
    if (out[k] == 0.0) out[k] = 0.0;  // drop negative zero
  }
  return out;
}

/// Assigns ids in discovery order.
class ScenarioRegistry {
 public:
  const Scenario& intern(const std::vector<double>& xi) {
    std::vector<double> key = canonical(xi);
    auto it = index_.find(key);
    if (it != index_.end()) return scenarios_[it->second];
    const int id = static_cast<int>(scenarios_.size());
    index_.emplace(key, id);
    scenarios_.push_back(Scenario{std::move(key), id});
    return scenarios_.back();
  }

  const Scenario& at(int id) const { return scenarios_.at(id); }
  const std::vector<Scenario>& all() const { return scenarios_; }
  int size() const { return static_cast<int>(scenarios_.size()); }

 private:
  std::map<std::vector<double>, int> index_;
  std::vector<Scenario> scenarios_;
};

}  // namespace iccg
