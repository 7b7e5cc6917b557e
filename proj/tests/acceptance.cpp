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

// End-to-end acceptance run. One PASS/FAIL line per criterion; exit status 1
// if any line fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "test_util.hpp"
#include "upa/auction.hpp"
#include "upa/bayesian.hpp"
#include "upa/equilibrium.hpp"
#include "upa/instances.hpp"
#include "upa/suites.hpp"

namespace {

using upa::Rational;
using upa::testing::R;

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

// Shared by the criteria that run on the random corpus.
std::vector<upa::PneCase> corpus;

Outcome worked_examples() {
  Outcome o;
  const int ks[] = {2, 3, 4};
  const char* eps[] = {"1/2", "1/6", "1/12"};
  const char* want[] = {"4/3", "18/13", "48/35"};
  std::string got;
  for (int c = 0; c < 3; ++c) {
    const auto t = std::chrono::steady_clock::now();
    const auto ex = upa::paper_example(ks[c]);
    const auto grid = upa::build_grid(ex.instance, R(eps[c]));
    const auto pnes = upa::enumerate_undominated_pne(ex.instance, grid);
    Rational worst(1);
    for (const auto& p : pnes) worst = upa::max(worst, p.ratio);
    const double s = seconds_since(t);
    o.require(worst == R(want[c]), "k=" + std::to_string(ks[c]) + " worst " + worst.str());
    o.require(s < 1.0, "k=" + std::to_string(ks[c]) + " took " + std::to_string(s) + "s");
    got += (c ? " " : "") + worst.str();
  }
  if (o.ok) o.detail = "worst ratios " + got;
  return o;
}

Outcome harmonic_family() {
  Outcome o;
  const auto t = std::chrono::steady_clock::now();
  double slack = 1e300;
  for (int k = 9; k <= 40; ++k) {
    const auto c = upa::harmonic_instance(k);
    const auto grid = upa::harmonic_deviation_grid(c);
    o.require(upa::verify_pne(c.instance, c.equilibrium, grid).holds(),
              "k=" + std::to_string(k) + " not an equilibrium");
    const Rational ratio = upa::make_certificate(c.instance, c.equilibrium).ratio;
    o.require(ratio == c.expected_ratio, "k=" + std::to_string(k) + " ratio " + ratio.str());
    const double bound = 1.0 / (1.0 - std::exp(-1.0) + 2.0 / k);
    o.require(ratio.to_double() >= bound - 1e-9, "k=" + std::to_string(k) + " below bound");
    slack = std::min(slack, ratio.to_double() - bound);
    if (k == 9) o.require(ratio == R("11340/7991"), "k=9 ratio " + ratio.str());
  }
  const double s = seconds_since(t);
  o.require(s < 10.0, "took " + std::to_string(s) + "s");
  if (o.ok) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "k=9..40, min slack %.4f, %.2fs", slack, s);
    o.detail = buf;
  }
  return o;
}

Outcome random_welfare() {
  Outcome o;
  const auto t = std::chrono::steady_clock::now();
  corpus = upa::theorem1_corpus(100, 1, R("1/4"), 10'000'000);
  std::size_t total = 0, oracle_checked = 0;
  Rational worst_share(1);
  for (const auto& pc : corpus) {
    total += pc.pnes.size();
    for (const auto& p : pc.pnes) {
      const Rational share = p.welfare / p.optimal_welfare;
      worst_share = upa::min(worst_share, share);
      o.require(share >= R("6321/10000"), "trial " + std::to_string(pc.trial) +
                                               " share " + share.str());
    }
    if (pc.instance.bidders() <= 2) {
      std::vector<upa::BidProfile> got;
      for (const auto& p : pc.pnes) got.push_back(p.profile);
      o.require(got == upa::testing::OracleEnumeration(pc.instance, pc.grid),
                "trial " + std::to_string(pc.trial) + " disagrees with brute force");
      ++oracle_checked;
    }
  }
  const double s = seconds_since(t);
  o.require(s < 300.0, "took " + std::to_string(s) + "s");
  if (o.ok) {
    o.detail = std::to_string(total) + " equilibria over 100 instances, min SW/SW* " +
               worst_share.str() + ", " + std::to_string(oracle_checked) +
               " instances matched brute force";
  }
  return o;
}

Outcome normalization() {
  Outcome o;
  std::size_t n = 0;
  for (const auto& pc : corpus) {
    for (const auto& p : pc.pnes) {
      const auto before = upa::allocate(pc.instance, p.profile);
      const auto q = upa::normalize_pne(pc.instance, p.profile, pc.grid);
      auto grid = pc.grid;
      for (std::size_t i = 0; i < q.bidders(); ++i) {
        upa::augment_grid(grid, i, std::vector<upa::BidVector>{q[i]});
      }
      const auto after = upa::allocate(pc.instance, q);
      const std::string where = "trial " + std::to_string(pc.trial);
      o.require(upa::verify_pne(pc.instance, q, grid).holds(), where + " not stable");
      o.require(after.allocation == before.allocation, where + " allocation moved");
      o.require(after.price <= before.price, where + " price rose");
      bool anchored = after.price.is_zero();
      for (std::size_t i = 0; i < pc.instance.bidders(); ++i) {
        anchored = anchored || after.price == pc.instance.valuation(i).first_unit();
      }
      o.require(anchored, where + " price " + after.price.str());
      ++n;
    }
  }
  if (o.ok) o.detail = std::to_string(n) + " normalized equilibria";
  return o;
}

Outcome suite_pair(std::initializer_list<const char*> names, std::uint64_t trials,
                   double budget_s) {
  Outcome o;
  const auto t = std::chrono::steady_clock::now();
  std::string summary;
  for (const char* name : names) {
    upa::SuiteOptions opts;
    opts.trials = trials;
    const auto r = upa::run_suite(name, opts);
    o.require(r.passed, std::string(name) + ": " + r.counterexample.dump());
    summary += (summary.empty() ? "" : ", ") + std::string(name) + " " +
               std::to_string(r.checked) + " checks";
  }
  const double s = seconds_since(t);
  if (budget_s > 0) o.require(s < budget_s, "took " + std::to_string(s) + "s");
  if (o.ok) o.detail = summary;
  return o;
}

Outcome dominance() {
  Outcome o = suite_pair({"lemma1", "lemma2"}, 50, 300.0);
  upa::SuiteOptions opts;
  opts.trials = 50;
  opts.variant = "literal";
  const auto literal = upa::run_suite("lemma1", opts);
  o.require(!literal.passed, "the literal construction was not refuted");
  if (o.ok) o.detail += "; literal construction refuted";
  return o;
}

Outcome certificates() {
  Outcome o;
  Rational max_ratio(1), max_cert(1);
  std::size_t n = 0;
  for (const auto& pc : corpus) {
    for (const auto& p : pc.pnes) {
      const auto q = upa::normalize_pne(pc.instance, p.profile, pc.grid);
      const std::string where = "trial " + std::to_string(pc.trial);
      o.require(upa::check_eq2_deviations(pc.instance, q), where + " deviation bound");
      const auto out = upa::allocate(pc.instance, q);
      o.require(upa::social_welfare(pc.instance, out.allocation) >= upa::welfare_lower_bound(pc.instance, q),
                where + " welfare chain");
      max_ratio = upa::max(max_ratio, p.ratio);
      max_cert = upa::max(max_cert, upa::poa_certificate(pc.instance, q));
      ++n;
    }
  }
  o.require(max_ratio <= max_cert, "max ratio " + max_ratio.str() + " > " + max_cert.str());
  if (o.ok) {
    o.detail = std::to_string(n) + " profiles, max ratio " + max_ratio.str() +
               " <= max certificate " + max_cert.str();
  }
  return o;
}

Outcome bayesian() {
  using upa::testing::V;
  Outcome o;
  const auto t = std::chrono::steady_clock::now();
  std::vector<upa::BayesianGame> games;
  games.emplace_back(
      2, std::vector<std::vector<upa::Valuation>>{{V({"1", "1/2"}), V({"1/2", "0"})},
                                                 {V({"1", "1"}), V({"1/2", "1/2"})}},
      std::vector<std::vector<Rational>>{{R("1/2"), R("1/2")}, {R("1/3"), R("2/3")}});
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto a = upa::random_submodular(2, 2, 100 + 2 * seed, 2);
    const auto b = upa::random_submodular(2, 2, 101 + 2 * seed, 2);
    games.emplace_back(
        2,
        std::vector<std::vector<upa::Valuation>>{{a.valuation(0), b.valuation(0)},
                                                 {a.valuation(1), b.valuation(1)}},
        std::vector<std::vector<Rational>>{{R("1/4"), R("3/4")}, {R("1/2"), R("1/2")}});
  }
  std::size_t bne = 0;
  Rational worst(1);
  for (std::size_t g = 0; g < games.size(); ++g) {
    const auto& game = games[g];
    const auto grids = upa::build_bayes_grids(game, R("1/2"));
    const std::string where = "game " + std::to_string(g);
    for (bool und : {false, true}) {
      const auto found = upa::enumerate_pure_bne(game, grids, und);
      o.require(found == upa::testing::OracleBne(game, grids, und),
                where + " disagrees with brute force");
      for (const auto& s : found) {
        o.require(upa::bookkeeping_by_types(game, s) == upa::bookkeeping_direct(game, s),
                  where + " bookkeeping");
        if (!und || !upa::has_undominated_support(game, s)) continue;
        if (upa::expected_welfare(game, s).is_zero()) continue;
        const Rational poa = upa::bayes_poa(game, s);
        o.require(poa <= Rational(3), where + " poa " + poa.str());
        worst = upa::max(worst, poa);
        ++bne;
      }
    }
  }
  const double s = seconds_since(t);
  o.require(s < 120.0, "took " + std::to_string(s) + "s");
  if (o.ok) {
    o.detail = std::to_string(games.size()) + " games, " + std::to_string(bne) +
               " undominated equilibria, worst ratio " + worst.str();
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"worked examples", worked_examples},
      {"harmonic lower-bound family", harmonic_family},
      {"random instances welfare share", random_welfare},
      {"normalization", normalization},
      {"weak dominance", dominance},
      {"per-profile inequalities", [] { return suite_pair({"lemma5", "lemma6"}, 10000, 0); }},
      {"deviation and welfare certificates", certificates},
      {"Bayes-Nash enumeration", bayesian},
  };
  int failed = 0;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    Outcome o;
    try {
      o = criteria[c].run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.ok) ++failed;
    std::printf("%s %zu %s: %s\n", o.ok ? "PASS" : "FAIL", c + 1, criteria[c].name,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
