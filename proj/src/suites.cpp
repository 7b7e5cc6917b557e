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

#include "upa/suites.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "upa/bayesian.hpp"
#include "upa/errors.hpp"
#include "upa/instances.hpp"

namespace upa {

void SuiteResult::record(bool ok, const std::function<Json()>& payload) {
  ++checked;
  if (ok) return;
  ++violations;
  passed = false;
  if (counterexample.is_null()) counterexample = payload();
}

Json SuiteResult::to_json() const {
  return {{"suite", name},
          {"passed", passed},
          {"trials", trials},
          {"checked", checked},
          {"violations", violations},
          {"counterexample", counterexample},
          {"details", details}};
}

AuctionInstance trial_instance(std::uint64_t seed, std::uint64_t trial,
                               int n_lo, int n_hi, int k_hi, int levels) {
  // One SplitMix64 stream per (seed, trial); its first output seeds the
  // valuations.
  SplitMix64 rng(seed * 0x9e3779b97f4a7c15ULL + trial);
  const std::uint64_t draw = rng.next();
  const int n = rng.between(n_lo, n_hi);
  const int k = rng.between(1, k_hi);
  return random_submodular(n, k, draw, levels);
}

namespace {

Json replay(const AuctionInstance& instance, const BidProfile& profile) {
  return {{"instance", instance_to_json(instance)},
          {"profile", profile_to_json(profile)}};
}

Json vec(const BidVector& b) { return profile_to_json(BidProfile({b}))["bids"][0]; }

Rational pick_epsilon(const SuiteOptions& o, const char* fallback) {
  return o.epsilon.value_or(Rational::parse(fallback));
}

std::uint64_t pick_trials(const SuiteOptions& o, std::uint64_t fallback) {
  return o.trials == 0 ? fallback : o.trials;
}

// ---- complete information -------------------------------------------------

SuiteResult paper_suite(const SuiteOptions&) {
  SuiteResult r{"paper"};
  const std::map<int, const char*> eps{{2, "1/2"}, {3, "1/6"}, {4, "1/12"}};
  Json rows = Json::array();
  for (const auto& [k, e] : eps) {
    ++r.trials;
    const auto c = paper_example(k);
    const auto grid = build_grid(c.instance, Rational::parse(e));
    const auto pnes = enumerate_undominated_pne(c.instance, grid);
    Rational worst(1);
    for (const auto& p : pnes) worst = max(worst, p.ratio);
    r.record(worst == c.expected_ratio, [&] {
      return Json{{"k", k}, {"worst_ratio", worst.str()},
                  {"expected", c.expected_ratio.str()},
                  {"instance", instance_to_json(c.instance)}};
    });
    const bool has_known_profile =
        std::any_of(pnes.begin(), pnes.end(),
                    [&](const auto& p) { return p.profile == c.equilibrium; });
    r.record(has_known_profile, [&] { return replay(c.instance, c.equilibrium); });
    r.record(poa_certificate(c.instance, c.equilibrium) == c.expected_ratio,
             [&] { return replay(c.instance, c.equilibrium); });
    Json row{{"k", k}, {"epsilon", e}, {"pne_count", pnes.size()}};
    put_rational(row, "worst_ratio", worst);
    rows.push_back(row);
  }
  r.details["examples"] = rows;
  return r;
}

SuiteResult theorem2_suite(const SuiteOptions&) {
  SuiteResult r{"theorem2"};
  Json rows = Json::array();
  for (int k = 9; k <= 40; ++k) {
    ++r.trials;
    const auto c = harmonic_instance(k);
    const auto grid = harmonic_deviation_grid(c);
    const auto verdict = verify_pne(c.instance, c.equilibrium, grid);
    r.record(verdict.holds(), [&] {
      Json j = replay(c.instance, c.equilibrium);
      j["k"] = k;
      j["deviation"] = {{"bidder", verdict.witness->bidder},
                        {"bids", vec(verdict.witness->bids)},
                        {"gain", verdict.witness->gain.str()}};
      return j;
    });
    const double bound = 1.0 / (1.0 - std::exp(-1.0) + 2.0 / k);
    r.record(c.expected_ratio.to_double() >= bound - 1e-9, [&] {
      return Json{{"k", k}, {"ratio", c.expected_ratio.str()}, {"bound", bound}};
    });
    const auto out = allocate(c.instance, c.equilibrium);
    const Rational realized =
        optimal_allocation(c.instance).welfare / social_welfare(c.instance, out.allocation);
    r.record(realized == c.expected_ratio, [&] {
      return Json{{"k", k}, {"realized", realized.str()},
                  {"formula", c.expected_ratio.str()}};
    });
    r.record(check_eq2_deviations(c.instance, c.equilibrium),
             [&] { return replay(c.instance, c.equilibrium); });
    if (k == 9) {
      r.record(c.expected_ratio == Rational(11340, 7991),
               [&] { return Json{{"k", 9}, {"ratio", c.expected_ratio.str()}}; });
    }
    Json row{{"k", k}, {"q", harmonic_q(k)}};
    put_rational(row, "ratio", c.expected_ratio);
    row["bound"] = bound;
    row["grid_vectors"] = grid.vectors[0].size() + grid.vectors[1].size();
    rows.push_back(row);
  }
  r.details["family"] = rows;
  return r;
}

}  // namespace

std::vector<PneCase> theorem1_corpus(std::uint64_t trials, std::uint64_t seed,
                                     const Rational& epsilon,
                                     std::uint64_t max_profiles) {
  std::vector<PneCase> corpus;
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto instance = trial_instance(seed, t, 1, 3, 4);
    auto grid = build_grid(instance, epsilon);
    auto pnes = enumerate_undominated_pne(instance, grid,
                                          EnumerationOptions{max_profiles, {}});
    corpus.push_back({t, std::move(instance), std::move(grid), std::move(pnes)});
  }
  return corpus;
}

SuiteResult check_theorem1(const std::vector<PneCase>& corpus) {
  SuiteResult r{"theorem1"};
  const Rational threshold(6321, 10000);
  Rational worst(1);
  std::uint64_t pne_total = 0;
  for (const auto& c : corpus) {
    ++r.trials;
    for (const auto& p : c.pnes) {
      ++pne_total;
      worst = max(worst, p.ratio);
      r.record(p.welfare >= threshold * p.optimal_welfare, [&] {
        Json j = replay(c.instance, p.profile);
        j["trial"] = c.trial;
        j["sw"] = p.welfare.str();
        j["sw_opt"] = p.optimal_welfare.str();
        return j;
      });
      // Optimum winners keep at least one unit.
      const auto opt = optimal_allocation(c.instance);
      bool keeps = true;
      for (std::size_t i = 0; i < opt.allocation.size(); ++i) {
        if (opt.allocation[i] > 0 && p.allocation[i] == 0) keeps = false;
      }
      r.record(keeps, [&] {
        Json j = replay(c.instance, p.profile);
        j["trial"] = c.trial;
        j["property"] = "optimum winner left empty-handed";
        return j;
      });
    }
  }
  r.details["pne_total"] = pne_total;
  r.details["threshold"] = threshold.str();
  put_rational(r.details, "worst_ratio", worst);
  return r;
}

SuiteResult check_lemma3(const std::vector<PneCase>& corpus) {
  SuiteResult r{"lemma3"};
  std::uint64_t changed = 0;
  for (const auto& c : corpus) {
    ++r.trials;
    for (const auto& p : c.pnes) {
      const auto n = normalize_pne(c.instance, p.profile, c.grid);
      const auto after = allocate(c.instance, n);
      if (!(n == p.profile)) ++changed;
      auto fail = [&](const char* what) {
        return [&, what] {
          Json j = replay(c.instance, p.profile);
          j["trial"] = c.trial;
          j["normalized"] = profile_to_json(n);
          j["property"] = what;
          return j;
        };
      };
      r.record(verify_pne(c.instance, n, c.grid).holds(), fail("not a PNE"));
      r.record(after.allocation == p.allocation, fail("allocation changed"));
      r.record(after.price <= p.price, fail("price increased"));
      bool price_ok = after.price.is_zero();
      for (const auto& v : c.instance.valuations()) {
        price_ok = price_ok || after.price == v.first_unit();
      }
      r.record(price_ok, fail("final price is neither 0 nor a first-unit value"));
    }
  }
  r.details["profiles_changed"] = changed;
  return r;
}

SuiteResult check_eq2(const std::vector<PneCase>& corpus) {
  SuiteResult r{"eq2"};
  for (const auto& c : corpus) {
    ++r.trials;
    for (const auto& p : c.pnes) {
      const auto n = normalize_pne(c.instance, p.profile, c.grid);
      auto fail = [&](const char* what) {
        return [&, what] {
          Json j = replay(c.instance, n);
          j["trial"] = c.trial;
          j["property"] = what;
          return j;
        };
      };
      r.record(check_eq2_deviations(c.instance, n), fail("deviation inequality"));
      const Rational sw = social_welfare(c.instance, allocate(c.instance, n).allocation);
      r.record(sw >= welfare_lower_bound(c.instance, n), fail("welfare chain"));
    }
  }
  return r;
}

SuiteResult check_eq1(const std::vector<PneCase>& corpus) {
  SuiteResult r{"eq1"};
  Rational global_ratio(1), global_cert(1);
  for (const auto& c : corpus) {
    ++r.trials;
    if (c.pnes.empty()) continue;
    Rational ratio(1), cert(1);
    for (const auto& p : c.pnes) {
      const auto n = normalize_pne(c.instance, p.profile, c.grid);
      ratio = max(ratio, p.ratio);
      cert = max(cert, poa_certificate(c.instance, n));
    }
    global_ratio = max(global_ratio, ratio);
    global_cert = max(global_cert, cert);
    r.record(ratio <= cert, [&] {
      return Json{{"trial", c.trial},
                  {"instance", instance_to_json(c.instance)},
                  {"max_ratio", ratio.str()},
                  {"max_certificate", cert.str()}};
    });
  }
  put_rational(r.details, "max_ratio", global_ratio);
  put_rational(r.details, "max_certificate", global_cert);
  return r;
}

namespace {

SuiteResult corpus_suite(const std::string& name, const SuiteOptions& o) {
  const auto corpus = theorem1_corpus(pick_trials(o, 100), o.seed,
                                      pick_epsilon(o, "1/4"), o.max_profiles);
  SuiteResult r;
  if (name == "theorem1") r = check_theorem1(corpus);
  if (name == "lemma3") r = check_lemma3(corpus);
  if (name == "eq2") r = check_eq2(corpus);
  if (name == "eq1") r = check_eq1(corpus);
  r.details["epsilon"] = pick_epsilon(o, "1/4").str();
  return r;
}

// ---- dominance ------------------------------------------------------------

SuiteResult dominance_suite(const std::string& name, const SuiteOptions& o) {
  SuiteResult r{name};
  const bool lemma1 = name == "lemma1";
  if (lemma1 && o.variant != "clip" && o.variant != "literal") {
    throw ValidationError("unknown lemma1 variant \"" + o.variant + "\"");
  }
  const Rational eps = pick_epsilon(o, "1/4");
  std::uint64_t candidates = 0, profiles = 0;
  for (std::uint64_t t = 0; t < pick_trials(o, 50); ++t) {
    ++r.trials;
    const auto instance = trial_instance(o.seed, t, 2, 3, 3);
    const auto grid = build_grid(instance, eps);
    const auto probes = probe_sets(instance, eps);
    for (std::size_t i = 0; i < instance.bidders(); ++i) {
      const auto& v = instance.valuation(i);
      for (const auto& b : grid.vectors[i]) {
        BidVector d;
        if (lemma1) {
          if (is_conservative(v, b)) continue;
          d = o.variant == "literal" ? replace_tail_with_marginals(v, b)
                                     : overbid_dominator(v, b);
        } else {
          if (!is_conservative(v, b) || b[0] >= v.first_unit()) continue;
          d = underbid_dominator(v, b);
        }
        ++candidates;
        const auto check = compare_against_opponents(
            instance, i, b, d, probes, DominanceOptions{o.max_profiles, {}});
        profiles += check.profiles_checked;
        r.record(check.dominated(), [&] {
          Json j{{"trial", t},
                 {"instance", instance_to_json(instance)},
                 {"bidder", i},
                 {"bids", vec(b)},
                 {"dominator", vec(d)},
                 {"never_worse", check.never_worse},
                 {"sometimes_better", check.sometimes_better}};
          if (check.worse_at) j["profile"] = profile_to_json(*check.worse_at);
          return j;
        });
      }
    }
  }
  r.details["epsilon"] = eps.str();
  r.details["vectors_checked"] = candidates;
  r.details["opponent_profiles"] = profiles;
  if (lemma1) r.details["variant"] = o.variant;
  return r;
}

// ---- Bayesian-layer lemmas on complete-information profiles ---------------

VectorSet conservative_subset(const Valuation& v, const VectorSet& grid) {
  VectorSet out;
  for (const auto& b : grid) {
    if (is_conservative(v, b)) out.push_back(b);
  }
  return out;
}

SuiteResult lemma5_suite(const SuiteOptions& o) {
  SuiteResult r{"lemma5"};
  const Rational eps = pick_epsilon(o, "1/4");
  std::uint64_t orderings = 0;
  for (std::uint64_t t = 0; t < pick_trials(o, 10000); ++t) {
    ++r.trials;
    const auto instance = trial_instance(o.seed, t, 1, 3, 4);
    const auto grid = build_grid(instance, eps);
    SplitMix64 rng(o.seed ^ (t * 0xd1b54a32d192ed03ULL));
    std::vector<BidVector> vs;
    for (std::size_t i = 0; i < instance.bidders(); ++i) {
      const auto und = undominated_set(instance.valuation(i), grid.vectors[i]);
      vs.push_back(und[rng.below(und.size())]);
    }
    const BidProfile profile(std::move(vs));
    const auto opt = optimal_allocation(instance);
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < opt.allocation.size(); ++i) {
      if (opt.allocation[i] > 0) order.push_back(i);
    }
    do {
      ++orderings;
      r.record(check_lemma5(instance, profile, order), [&] {
        Json j = replay(instance, profile);
        j["trial"] = t;
        j["ordering"] = order;
        return j;
      });
    } while (std::next_permutation(order.begin(), order.end()));
  }
  r.details["orderings_checked"] = orderings;
  return r;
}

SuiteResult lemma6_suite(const SuiteOptions& o) {
  SuiteResult r{"lemma6"};
  const Rational eps = pick_epsilon(o, "1/4");
  for (std::uint64_t t = 0; t < pick_trials(o, 10000); ++t) {
    ++r.trials;
    const auto instance = trial_instance(o.seed, t, 1, 3, 4);
    const auto grid = build_grid(instance, eps);
    SplitMix64 rng(o.seed ^ (t * 0x94d049bb133111ebULL));
    std::vector<BidVector> vs;
    for (std::size_t i = 0; i < instance.bidders(); ++i) {
      const auto c = conservative_subset(instance.valuation(i), grid.vectors[i]);
      vs.push_back(c[rng.below(c.size())]);
    }
    const BidProfile profile(std::move(vs));
    for (std::size_t i = 0; i < instance.bidders(); ++i) {
      for (int j = 0; j <= instance.units(); ++j) {
        r.record(check_lemma6(instance, i, j, profile), [&] {
          Json jj = replay(instance, profile);
          jj["trial"] = t;
          jj["bidder"] = i;
          jj["j"] = j;
          return jj;
        });
      }
    }
  }
  return r;
}

// ---- Bayesian games ----------------------------------------------------------

BayesianGame trial_game(std::uint64_t seed, std::uint64_t trial, int k_hi) {
  SplitMix64 rng(seed * 0xbf58476d1ce4e5b9ULL + trial + 1);
  const int k = rng.between(1, k_hi);
  std::vector<std::vector<Valuation>> types(2);
  std::vector<std::vector<Rational>> priors;
  for (std::size_t i = 0; i < 2; ++i) {
    for (int t = 0; t < 2; ++t) {
      types[i].push_back(random_submodular(1, k, rng.next(), 2).valuation(0));
    }
    const int a = rng.between(1, 3);
    priors.push_back({Rational(a, 4), Rational(4 - a, 4)});
  }
  return BayesianGame(k, std::move(types), std::move(priors));
}

Json game_replay(const BayesianGame& g, const BayesStrategy& s) {
  return {{"game", game_to_json(g)}, {"strategy", strategy_to_json(s)}};
}

// A strategy mixing two grid vectors per type with seeded weights.
BayesStrategy random_mixed(const BayesianGame& g, const BayesGrids& grids,
                           SplitMix64& rng) {
  BayesStrategy s;
  for (std::size_t i = 0; i < g.bidders(); ++i) {
    auto& plays = s.plays.emplace_back();
    for (std::size_t t = 0; t < g.types(i).size(); ++t) {
      const auto& set = grids.sets[i][t];
      const auto a = rng.below(set.size());
      auto b = rng.below(set.size());
      MixedBid m;
      if (a == b) {
        m = MixedBid::pure(set[a]);
      } else {
        const int w = rng.between(1, 4);
        m.support = {{set[a], Rational(w, 5)}, {set[b], Rational(5 - w, 5)}};
      }
      plays.push_back(std::move(m));
    }
  }
  return s;
}

SuiteResult bayes_suite(const std::string& name, const SuiteOptions& o) {
  SuiteResult r{name};
  const Rational eps = pick_epsilon(o, "1/2");
  std::uint64_t equilibria = 0;
  Rational worst(1);
  for (std::uint64_t t = 0; t < pick_trials(o, 20); ++t) {
    ++r.trials;
    const auto game = trial_game(o.seed, t, 2);
    const auto grids = build_bayes_grids(game, eps);
    const int k = game.units();
    const BneOptions opts{o.max_profiles, {}};
    if (name == "theorem3" || name == "corollary1") {
      const bool und = name == "theorem3";
      const Rational bound = und ? Rational(4) - Rational(2, k) : Rational(4);
      for (const auto& s : enumerate_pure_bne(game, grids, und, opts)) {
        if (!und && !has_no_overbidding_support(game, s)) continue;
        ++equilibria;
        const Rational opt = expected_optimal_welfare(game);
        const Rational sw = expected_welfare(game, s);
        const bool ok = sw.is_zero() ? opt.is_zero() : opt / sw <= bound;
        if (!sw.is_zero()) worst = max(worst, opt / sw);
        r.record(ok, [&] {
          Json j = game_replay(game, s);
          j["trial"] = t;
          j["expected_sw"] = sw.str();
          j["expected_sw_opt"] = opt.str();
          j["bound"] = bound.str();
          return j;
        });
      }
    } else {  // bookkeeping
      r.record(conditional_prior_is_product(game), [&] {
        return Json{{"game", game_to_json(game)}, {"property", "independence"}};
      });
      std::vector<BayesStrategy> strategies = enumerate_pure_bne(game, grids, false, opts);
      SplitMix64 rng(o.seed + t);
      for (int m = 0; m < 4; ++m) strategies.push_back(random_mixed(game, grids, rng));
      for (const auto& s : strategies) {
        ++equilibria;
        const Rational a = bookkeeping_by_types(game, s);
        const Rational b = bookkeeping_direct(game, s);
        r.record(a == b, [&] {
          Json j = game_replay(game, s);
          j["by_types"] = a.str();
          j["direct"] = b.str();
          return j;
        });
      }
    }
  }
  r.details["epsilon"] = eps.str();
  r.details[name == "bookkeeping" ? "strategies" : "equilibria"] = equilibria;
  if (name != "bookkeeping") put_rational(r.details, "worst_ratio", worst);
  r.details["caveat"] =
      "pure Bayes strategies only; mixed equilibria are verified when supplied, "
      "not searched";
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "paper",  "theorem1", "theorem2", "lemma1",   "lemma2",
      "lemma3", "eq1",      "eq2",      "lemma5",   "lemma6",
      "theorem3", "corollary1", "bookkeeping"};
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options) {
  if (name == "paper") return paper_suite(options);
  if (name == "theorem2") return theorem2_suite(options);
  if (name == "theorem1" || name == "lemma3" || name == "eq1" || name == "eq2") {
    return corpus_suite(name, options);
  }
  if (name == "lemma1" || name == "lemma2") return dominance_suite(name, options);
  if (name == "lemma5") return lemma5_suite(options);
  if (name == "lemma6") return lemma6_suite(options);
  if (name == "theorem3" || name == "corollary1" || name == "bookkeeping") {
    return bayes_suite(name, options);
  }
  std::string known;
  for (const auto& n : suite_names()) known += (known.empty() ? "" : ", ") + n;
  throw ValidationError("unknown suite \"" + name + "\" (known: " + known + ")");
}

}  // namespace upa
