// Copyright 2026 The Authors.
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

#ifndef UPA_SUITES_HPP_
#define UPA_SUITES_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "upa/equilibrium.hpp"
#include "upa/json_io.hpp"

namespace upa {

struct SuiteOptions {
  std::uint64_t trials = 0;  // 0 picks the suite default
  std::uint64_t seed = 0;
  std::optional<Rational> epsilon;  // unset picks the suite default
  std::uint64_t max_profiles = 10'000'000;
  // lemma1 only: "clip" (default) or "literal" (tail replaced by marginals,
  // which the suite is expected to reject).
  std::string variant = "clip";
};

struct SuiteResult {
  SuiteResult() = default;
  explicit SuiteResult(std::string n) : name(std::move(n)) {}

  std::string name;
  bool passed = true;
  std::uint64_t trials = 0;
  std::uint64_t checked = 0;  // individual assertions evaluated
  std::uint64_t violations = 0;
  Json counterexample;  // null, or the first failure as replayable JSON
  Json details = Json::object();

  // Counts one assertion; the first failing one keeps its payload.
  void record(bool ok, const std::function<Json()>& payload);
  Json to_json() const;
};

const std::vector<std::string>& suite_names();

// Throws ValidationError for an unknown name.
SuiteResult run_suite(const std::string& name, const SuiteOptions& options);

// Instance drawn for trial t of a seeded run: n in [n_lo, n_hi], k in
// [1, k_hi], marginals on {0, 1/4, ..., 1}.
AuctionInstance trial_instance(std::uint64_t seed, std::uint64_t trial,
                               int n_lo, int n_hi, int k_hi, int levels = 4);

// Enumerated undominated PNE for one instance of the random welfare corpus.
struct PneCase {
  std::uint64_t trial;
  AuctionInstance instance;
  StrategyGrid grid;
  std::vector<PneCertificate> pnes;
};

std::vector<PneCase> theorem1_corpus(std::uint64_t trials, std::uint64_t seed,
                                     const Rational& epsilon,
                                     std::uint64_t max_profiles);

SuiteResult check_theorem1(const std::vector<PneCase>& corpus);
SuiteResult check_lemma3(const std::vector<PneCase>& corpus);
SuiteResult check_eq2(const std::vector<PneCase>& corpus);
SuiteResult check_eq1(const std::vector<PneCase>& corpus);

}  // namespace upa

#endif  // UPA_SUITES_HPP_
