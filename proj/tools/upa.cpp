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

// Command-line driver: gen, solve, verify, bayes, suite.
//
// Exit codes: 0 success, 1 validation or usage error (including a failed
// verification or suite), 2 resource budget exhausted.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "upa/bayesian.hpp"
#include "upa/equilibrium.hpp"
#include "upa/errors.hpp"
#include "upa/instances.hpp"
#include "upa/json_io.hpp"
#include "upa/parallel.hpp"
#include "upa/suites.hpp"

namespace {

using upa::Json;
using upa::Rational;

constexpr const char* kVersion = "1.0.0";

enum ExitCode { kOk = 0, kInvalid = 1, kBudget = 2 };

struct Common {
  std::string epsilon = "1/4";
  std::uint64_t max_profiles = 10'000'000;
  int jobs = 0;
  std::uint64_t seed = 0;
  std::string report;
  bool zero_bids_lose = false;
};

struct Run {
  std::string command;
  Json parameters = Json::object();
  Json results = Json::object();
  std::string hash;
  int code = kOk;
};

Rational parse_epsilon(const std::string& text) {
  const Rational eps = Rational::parse(text);
  if (eps <= Rational(0)) throw upa::ValidationError("--epsilon must be positive");
  return eps;
}

upa::AllocationRule rule_of(const Common& c) { return {!c.zero_bids_lose}; }

Json budget_json(const upa::ResourceError& e) {
  return {{"error", e.what()}, {"required", e.required()}, {"budget", e.budget()}};
}

// ---- gen ---------------------------------------------------------------------

struct GenArgs {
  std::string family;
  int k = 0;
  int n = 2;
  int levels = 4;
  std::string out;
};

void cmd_gen(const GenArgs& a, const Common& c, Run& run) {
  run.parameters = {{"family", a.family}, {"k", a.k}, {"seed", c.seed}};
  Json sidecar{{"family", a.family}};
  upa::AuctionInstance instance;
  if (a.family == "paper" || a.family == "harmonic") {
    const auto gc = a.family == "paper" ? upa::paper_example(a.k)
                                        : upa::harmonic_instance(a.k);
    instance = gc.instance;
    sidecar["source"] = gc.source;
    sidecar["equilibrium"] = upa::profile_to_json(gc.equilibrium);
    upa::put_rational(sidecar, "expected_ratio", gc.expected_ratio);
    run.results["expected_ratio"] = gc.expected_ratio.str();
  } else if (a.family == "random") {
    run.parameters["n"] = a.n;
    run.parameters["levels"] = a.levels;
    instance = upa::random_submodular(a.n, a.k, c.seed, a.levels);
    sidecar["source"] = "random";
    sidecar["seed"] = c.seed;
  } else {
    throw upa::ValidationError("--family must be paper, harmonic or random");
  }
  const Json j = upa::instance_to_json(instance);
  run.hash = upa::content_hash(j);
  run.results["instance"] = j;
  if (!a.out.empty()) {
    upa::write_json_file(a.out, j);
    const std::string side =
        std::filesystem::path(a.out).replace_extension(".sidecar.json").string();
    upa::write_json_file(side, sidecar);
    run.results["files"] = {a.out, side};
  }
}

// ---- solve -------------------------------------------------------------------

struct SolveArgs {
  std::string instance;
  bool records = true;
};

void cmd_solve(const SolveArgs& a, const Common& c, Run& run) {
  const Json ij = upa::read_json_file(a.instance);
  const auto instance = upa::instance_from_json(ij);
  run.hash = upa::content_hash(upa::instance_to_json(instance));
  const Rational eps = parse_epsilon(c.epsilon);
  run.parameters = {{"instance", a.instance},
                    {"epsilon", eps.str()},
                    {"max_profiles", c.max_profiles},
                    {"zero_bids_win", !c.zero_bids_lose}};
  const auto grid = upa::build_grid(instance, eps);
  run.results["grid"] = upa::grid_summary(grid);
  const auto sets = upa::undominated_sets(instance, grid);
  Json und = Json::array();
  for (const auto& s : sets) und.push_back(s.size());
  run.results["undominated_per_bidder"] = und;
  std::vector<upa::PneCertificate> pnes;
  try {
    pnes = upa::enumerate_undominated_pne(
        instance, grid, upa::EnumerationOptions{c.max_profiles, rule_of(c)});
  } catch (const upa::ResourceError& e) {
    run.results["budget_exhausted"] = budget_json(e);
    run.results["pne_count"] = 0;
    run.results["partial"] = true;
    run.code = kBudget;
    return;
  }
  Rational worst(1);
  Json records = Json::array();
  for (const auto& p : pnes) {
    worst = upa::max(worst, p.ratio);
    if (a.records) records.push_back(upa::certificate_to_json(p));
  }
  run.results["pne_count"] = pnes.size();
  if (pnes.empty()) {
    run.results["worst_ratio"] = nullptr;
  } else {
    upa::put_rational(run.results, "worst_ratio", worst);
  }
  if (a.records) run.results["pnes"] = records;
}

// ---- verify ------------------------------------------------------------------

struct VerifyArgs {
  std::string instance;
  std::string profile;
};

void cmd_verify(const VerifyArgs& a, const Common& c, Run& run) {
  const auto instance = upa::instance_from_json(upa::read_json_file(a.instance));
  const auto profile =
      upa::profile_from_json(upa::read_json_file(a.profile), instance.units());
  run.hash = upa::content_hash(upa::instance_to_json(instance));
  const Rational eps = parse_epsilon(c.epsilon);
  run.parameters = {{"instance", a.instance},
                    {"profile", a.profile},
                    {"epsilon", eps.str()},
                    {"zero_bids_win", !c.zero_bids_lose}};
  upa::check_dimensions(instance, profile);
  auto grid = upa::build_grid(instance, eps);
  for (std::size_t i = 0; i < instance.bidders(); ++i) {
    upa::augment_grid(grid, i, std::vector<upa::BidVector>{profile[i]});
  }
  const auto rule = rule_of(c);
  run.results["outcome"] = upa::outcome_to_json(upa::allocate(instance, profile, rule));
  const auto verdict = upa::verify_pne(instance, profile, grid, rule);
  run.results["is_pne"] = verdict.holds();
  if (!verdict.holds()) {
    const auto& w = *verdict.witness;
    run.results["deviation"] = {
        {"bidder", w.bidder},
        {"bids", upa::profile_to_json(upa::BidProfile({w.bids}))["bids"][0]},
        {"gain", w.gain.str()}};
    run.code = kInvalid;
    return;
  }
  run.results["certificate"] =
      upa::certificate_to_json(upa::make_certificate(instance, profile, rule));
}

// ---- bayes -------------------------------------------------------------------

struct BayesArgs {
  std::string game;
  std::string verify;
  bool enumerate = false;
  bool undominated_only = false;
};

void cmd_bayes(const BayesArgs& a, const Common& c, Run& run) {
  if (a.verify.empty() == !a.enumerate) {
    throw upa::ValidationError("give exactly one of --verify and --enumerate");
  }
  const auto game = upa::game_from_json(upa::read_json_file(a.game));
  run.hash = upa::content_hash(upa::game_to_json(game));
  const Rational eps = parse_epsilon(c.epsilon);
  run.parameters = {{"game", a.game},
                    {"epsilon", eps.str()},
                    {"max_profiles", c.max_profiles},
                    {"undominated_only", a.undominated_only}};
  const auto rule = rule_of(c);
  auto grids = upa::build_bayes_grids(game, eps);
  run.results["note"] =
      "deviations range over the grid, not all real bid vectors; only pure "
      "strategies are enumerated";

  auto describe = [&](const upa::BayesStrategy& s) {
    Json j{{"strategy", upa::strategy_to_json(s)},
           {"undominated_support", upa::has_undominated_support(game, s)},
           {"no_overbidding_support", upa::has_no_overbidding_support(game, s)}};
    const Rational sw = upa::expected_welfare(game, s, rule);
    upa::put_rational(j, "expected_sw", sw);
    if (!sw.is_zero()) upa::put_rational(j, "bayes_poa", upa::bayes_poa(game, s, rule));
    return j;
  };

  if (!a.verify.empty()) {
    run.parameters["strategy"] = a.verify;
    const auto s = upa::strategy_from_json(upa::read_json_file(a.verify), game.units());
    s.validate(game);
    for (std::size_t i = 0; i < game.bidders(); ++i) {
      for (std::size_t t = 0; t < game.types(i).size(); ++t) {
        std::vector<upa::BidVector> own;
        for (const auto& e : s.plays[i][t].support) own.push_back(e.first);
        auto& set = grids.sets[i][t];
        set.insert(set.end(), own.begin(), own.end());
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
      }
    }
    const auto verdict = upa::verify_bne(game, s, grids, rule);
    run.results["is_bne"] = verdict.holds();
    run.results["evaluation"] = describe(s);
    if (!verdict.holds()) {
      const auto& w = *verdict.witness;
      run.results["deviation"] = {
          {"bidder", w.bidder},
          {"type", w.type},
          {"bids", upa::profile_to_json(upa::BidProfile({w.bids}))["bids"][0]},
          {"gain", w.gain.str()}};
      run.code = kInvalid;
    }
    return;
  }

  std::vector<upa::BayesStrategy> found;
  try {
    found = upa::enumerate_pure_bne(game, grids, a.undominated_only,
                                    upa::BneOptions{c.max_profiles, rule});
  } catch (const upa::ResourceError& e) {
    run.results["budget_exhausted"] = budget_json(e);
    run.results["bne_count"] = 0;
    run.code = kBudget;
    return;
  }
  Json list = Json::array();
  for (const auto& s : found) list.push_back(describe(s));
  run.results["bne_count"] = found.size();
  run.results["equilibria"] = list;
}

// ---- suite -------------------------------------------------------------------

struct SuiteArgs {
  std::string name;
  std::uint64_t trials = 0;
  std::string variant = "clip";
  bool epsilon_given = false;
};

void cmd_suite(const SuiteArgs& a, const Common& c, Run& run) {
  upa::SuiteOptions o;
  o.trials = a.trials;
  o.seed = c.seed;
  o.max_profiles = c.max_profiles;
  o.variant = a.variant;
  if (a.epsilon_given) o.epsilon = parse_epsilon(c.epsilon);
  run.parameters = {{"name", a.name}, {"trials", a.trials}, {"seed", c.seed}};
  if (a.epsilon_given) run.parameters["epsilon"] = o.epsilon->str();
  if (a.name == "lemma1") run.parameters["variant"] = a.variant;
  try {
    const auto r = upa::run_suite(a.name, o);
    run.results = r.to_json();
    if (!r.passed) run.code = kInvalid;
  } catch (const upa::ResourceError& e) {
    run.results["budget_exhausted"] = budget_json(e);
    run.code = kBudget;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic toolkit for the uniform price auction"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Common common;

  auto add_common = [&](CLI::App* sub, bool epsilon) {
    if (epsilon) sub->add_option("--epsilon", common.epsilon, "grid step as p/q");
    sub->add_option("--max-profiles", common.max_profiles, "enumeration budget");
    sub->add_option("--jobs", common.jobs, "worker threads (0 = runtime default)");
    sub->add_option("--seed", common.seed, "seed for all randomness");
    sub->add_option("--report", common.report, "write the run report here");
    sub->add_flag("--zero-bids-lose", common.zero_bids_lose,
                  "zero bids never win; units may stay unsold");
  };

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "generate an instance and its sidecar");
  g->add_option("--family", gen.family, "paper, harmonic or random")->required();
  g->add_option("--k", gen.k, "number of units")->required();
  g->add_option("--n", gen.n, "bidders (random family)");
  g->add_option("--levels", gen.levels, "value levels (random family)");
  g->add_option("--out", gen.out, "instance file; the sidecar goes next to it");
  add_common(g, false);

  SolveArgs solve;
  bool no_records = false;
  auto* s = app.add_subcommand("solve", "enumerate undominated pure equilibria");
  s->add_option("--instance", solve.instance, "instance JSON")->required();
  s->add_flag("--summary-only", no_records, "omit per-equilibrium records");
  add_common(s, true);

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "check one profile for profitable deviations");
  v->add_option("--instance", verify.instance, "instance JSON")->required();
  v->add_option("--profile", verify.profile, "profile JSON")->required();
  add_common(v, true);

  BayesArgs bayes;
  auto* b = app.add_subcommand("bayes", "Bayes-Nash verification and enumeration");
  b->add_option("--game", bayes.game, "game JSON")->required();
  b->add_option("--verify", bayes.verify, "strategy JSON to verify");
  b->add_flag("--enumerate", bayes.enumerate, "enumerate pure Bayes-Nash equilibria");
  b->add_flag("--undominated-only", bayes.undominated_only,
              "restrict candidates to undominated vectors");
  add_common(b, true);

  SuiteArgs suite;
  auto* su = app.add_subcommand("suite", "run a property suite");
  su->add_option("--name", suite.name, "suite name")->required();
  su->add_option("--trials", suite.trials, "number of trials (0 = suite default)");
  su->add_option("--variant", suite.variant, "lemma1 construction: clip or literal");
  add_common(su, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }
  upa::set_jobs(common.jobs);
  solve.records = !no_records;
  suite.epsilon_given = su->count("--epsilon") > 0;

  Run run;
  std::string echo;
  echo = "upa";
  for (int i = 1; i < argc; ++i) echo += " " + std::string(argv[i]);
  run.command = echo;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (*g) cmd_gen(gen, common, run);
    if (*s) cmd_solve(solve, common, run);
    if (*v) cmd_verify(verify, common, run);
    if (*b) cmd_bayes(bayes, common, run);
    if (*su) cmd_suite(suite, common, run);
  } catch (const upa::ResourceError& e) {
    std::cerr << "budget exhausted: " << e.what() << " (required " << e.required()
              << ", budget " << e.budget() << ")\n";
    return kBudget;
  } catch (const upa::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start).count();

  Json report{{"command", run.command},
              {"version", kVersion},
              {"hash", run.hash.empty() ? Json(nullptr) : Json(run.hash)},
              {"parameters", run.parameters},
              {"results", run.results},
              {"exit_code", run.code},
              {"duration_ms", ms}};
  std::cout << report.dump(2) << "\n";
  if (!common.report.empty()) {
    try {
      upa::write_json_file(common.report, report);
    } catch (const upa::ValidationError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kInvalid;
    }
  }
  return run.code;
}
