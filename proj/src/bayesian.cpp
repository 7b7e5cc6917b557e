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

#include "upa/bayesian.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "upa/errors.hpp"
#include "upa/kernel.hpp"
#include "upa/parallel.hpp"

namespace upa {

BayesianGame::BayesianGame(int k, std::vector<std::vector<Valuation>> types,
                           std::vector<std::vector<Rational>> priors)
    : k_(k), types_(std::move(types)), priors_(std::move(priors)) {
  if (k_ < 1) throw ValidationError("k must be at least 1");
  if (types_.empty()) throw ValidationError("a game needs at least one bidder");
  if (types_.size() != priors_.size()) {
    throw ValidationError("one prior per bidder is required");
  }
  for (std::size_t i = 0; i < types_.size(); ++i) {
    const std::string who = "bidder " + std::to_string(i);
    if (types_[i].empty()) throw ValidationError(who + " has no types");
    if (types_[i].size() != priors_[i].size()) {
      throw ValidationError(who + ": prior length differs from type count");
    }
    Rational sum;
    for (const auto& p : priors_[i]) {
      if (p.is_negative()) throw ValidationError(who + ": negative prior");
      sum += p;
    }
    if (sum != Rational(1)) {
      throw ValidationError(who + ": prior sums to " + sum.str());
    }
    for (const auto& v : types_[i]) {
      if (v.units() != k_) {
        throw ValidationError(who + ": type has " + std::to_string(v.units()) +
                              " marginals, expected " + std::to_string(k_));
      }
    }
  }
}

std::uint64_t BayesianGame::profile_count() const {
  std::uint64_t total = 1;
  for (const auto& t : types_) total = saturating_mul(total, t.size());
  return total;
}

std::vector<std::size_t> BayesianGame::type_profile(std::uint64_t index) const {
  std::vector<std::size_t> sizes;
  for (const auto& t : types_) sizes.push_back(t.size());
  std::vector<std::size_t> digits;
  MixedRadix(std::move(sizes)).decode(index, digits);
  return digits;
}

Rational BayesianGame::probability(std::span<const std::size_t> types) const {
  Rational p(1);
  for (std::size_t i = 0; i < types.size(); ++i) p *= priors_[i][types[i]];
  return p;
}

AuctionInstance BayesianGame::instance_at(
    std::span<const std::size_t> types) const {
  std::vector<Valuation> vs;
  for (std::size_t i = 0; i < types.size(); ++i) {
    vs.push_back(types_[i][types[i]]);
  }
  return AuctionInstance(k_, std::move(vs));
}

BayesianGame BayesianGame::degenerate(const AuctionInstance& instance) {
  std::vector<std::vector<Valuation>> types;
  std::vector<std::vector<Rational>> priors;
  for (const auto& v : instance.valuations()) {
    types.push_back({v});
    priors.push_back({Rational(1)});
  }
  return BayesianGame(instance.units(), std::move(types), std::move(priors));
}

MixedBid MixedBid::pure(BidVector b) {
  MixedBid m;
  m.support.emplace_back(std::move(b), Rational(1));
  return m;
}

void MixedBid::validate(int units) const {
  if (support.empty()) throw ValidationError("empty mixed strategy");
  Rational sum;
  for (const auto& [b, p] : support) {
    if (b.units() != units) {
      throw StructuralError("support vector has " + std::to_string(b.units()) +
                            " entries, expected " + std::to_string(units));
    }
    if (p <= Rational(0)) {
      throw ValidationError("support probability must be positive");
    }
    sum += p;
  }
  if (sum != Rational(1)) {
    throw ValidationError("mixed strategy sums to " + sum.str());
  }
}

BayesStrategy BayesStrategy::pure(
    const std::vector<std::vector<BidVector>>& bids) {
  BayesStrategy s;
  for (const auto& per_type : bids) {
    auto& plays = s.plays.emplace_back();
    for (const auto& b : per_type) plays.push_back(MixedBid::pure(b));
  }
  return s;
}

BayesStrategy BayesStrategy::lift(const BidProfile& profile) {
  std::vector<std::vector<BidVector>> bids;
  for (const auto& b : profile.vectors()) bids.push_back({b});
  return pure(bids);
}

bool BayesStrategy::is_pure() const {
  for (const auto& per_type : plays) {
    for (const auto& m : per_type) {
      if (m.support.size() != 1) return false;
    }
  }
  return true;
}

void BayesStrategy::validate(const BayesianGame& game) const {
  if (plays.size() != game.bidders()) {
    throw StructuralError("strategy covers " + std::to_string(plays.size()) +
                          " bidders, game has " +
                          std::to_string(game.bidders()));
  }
  for (std::size_t i = 0; i < plays.size(); ++i) {
    if (plays[i].size() != game.types(i).size()) {
      throw StructuralError("bidder " + std::to_string(i) +
                            ": one play per type is required");
    }
    for (const auto& m : plays[i]) m.validate(game.units());
  }
}

bool operator==(const BayesStrategy& a, const BayesStrategy& b) {
  if (a.plays.size() != b.plays.size()) return false;
  for (std::size_t i = 0; i < a.plays.size(); ++i) {
    if (a.plays[i].size() != b.plays[i].size()) return false;
    for (std::size_t t = 0; t < a.plays[i].size(); ++t) {
      if (a.plays[i][t].support != b.plays[i][t].support) return false;
    }
  }
  return true;
}

std::uint64_t BayesGrids::slot_total() const {
  std::uint64_t total = 0;
  for (const auto& per_type : sets) {
    for (const auto& s : per_type) total += s.size();
  }
  return total;
}

BayesGrids build_bayes_grids(const BayesianGame& game, const Rational& epsilon,
                             GridOptions options) {
  if (epsilon <= Rational(0)) {
    throw ValidationError("grid step must be positive, got " + epsilon.str());
  }
  BayesGrids grids;
  grids.epsilon = epsilon;
  for (std::size_t i = 0; i < game.bidders(); ++i) {
    auto& per_type = grids.sets.emplace_back();
    for (const auto& v : game.types(i)) {
      const auto values = grid_values(v, epsilon);
      per_type.push_back(non_increasing_vectors(
          values, game.units(), options.max_vectors_per_bidder));
    }
  }
  return grids;
}

BidVector deviation_vector(const Valuation& v, int j) {
  if (j < 0 || j > v.units()) {
    throw ValidationError("deviation length " + std::to_string(j) +
                          " outside 0.." + std::to_string(v.units()));
  }
  std::vector<Rational> b(static_cast<std::size_t>(v.units()));
  std::copy(v.marginals().begin(), v.marginals().begin() + j, b.begin());
  return BidVector(std::move(b));
}

bool check_lemma6(const AuctionInstance& instance, std::size_t i, int j,
                  const BidProfile& profile, AllocationRule rule) {
  check_dimensions(instance, profile);
  for (std::size_t o = 0; o < instance.bidders(); ++o) {
    if (o != i && !is_conservative(instance.valuation(o), profile[o])) {
      throw PreconditionError("bidder " + std::to_string(o) +
                              " overbids a marginal value");
    }
  }
  const auto& v = instance.valuation(i);
  const auto dev = deviation_vector(v, j);
  if (j == 0) return true;
  const DeviationKernel kernel(profile, i, rule);
  const Rational lhs = kernel.utility(v, dev);
  const Rational rhs = v.value(j) - Rational(j) * beta_without(profile, i, j);
  return lhs >= rhs;
}

namespace {

struct PrefixChainTerms {
  std::vector<int> x_opt;
  Rational p;
  Rational sw;
  std::vector<Rational> beta;  // ascending winning bids
};

void check_ordering(const Allocation& x_opt,
                    std::span<const std::size_t> ordering) {
  std::vector<std::size_t> winners;
  for (std::size_t i = 0; i < x_opt.size(); ++i) {
    if (x_opt[i] > 0) winners.push_back(i);
  }
  std::vector<std::size_t> sorted(ordering.begin(), ordering.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted != winners) {
    throw ValidationError(
        "ordering must be a permutation of the optimum winners");
  }
}

Rational lemma5_lhs(const BidProfile& profile, const Allocation& x_opt,
                    std::span<const std::size_t> ordering) {
  Rational lhs;
  for (const auto i : ordering) {
    const int t = (x_opt[i] + 1) / 2;
    lhs += Rational(t) * beta_without(profile, i, t);
  }
  return lhs;
}

}  // namespace

bool check_lemma5(const AuctionInstance& instance, const BidProfile& profile,
                  std::span<const std::size_t> ordering, AllocationRule rule) {
  check_dimensions(instance, profile);
  for (std::size_t i = 0; i < instance.bidders(); ++i) {
    if (!is_undominated_candidate(instance.valuation(i), profile[i])) {
      throw PreconditionError("bidder " + std::to_string(i) +
                              " does not bid an undominated vector");
    }
  }
  const auto opt = optimal_allocation(instance);
  check_ordering(opt.allocation, ordering);
  const auto outcome = allocate(instance, profile, rule);
  const auto& beta = outcome.winning_bids;
  const int k = instance.units();

  if (!ordering.empty()) {
    const std::size_t first = ordering.front();
    const Rational anchor =
        beta_without(profile, first, (opt.allocation[first] + 1) / 2);
    Rational lhs;
    int psi = 0;
    for (const auto i : ordering) {
      const int t = (opt.allocation[i] + 1) / 2;
      lhs += Rational(t) * beta_without(profile, i, t);
      psi += opt.allocation[i];
      Rational rhs = anchor;
      for (int j = 1; j <= psi - 1; ++j) {
        rhs += beta[static_cast<std::size_t>(j - 1)];
      }
      if (lhs > rhs) return false;
    }
  }
  const Rational lhs = lemma5_lhs(profile, opt.allocation, ordering);
  const Rational sw = social_welfare(instance, outcome.allocation);
  return lhs <= outcome.price + Rational(k - 1, k) * sw;
}

bool check_lemma5_no_overbidding(const AuctionInstance& instance,
                                 const BidProfile& profile,
                                 std::span<const std::size_t> ordering,
                                 AllocationRule rule) {
  check_dimensions(instance, profile);
  for (std::size_t i = 0; i < instance.bidders(); ++i) {
    if (!is_no_overbidding(instance.valuation(i), profile[i])) {
      throw PreconditionError("bidder " + std::to_string(i) + " overbids");
    }
  }
  const auto opt = optimal_allocation(instance);
  check_ordering(opt.allocation, ordering);
  const auto outcome = allocate(instance, profile, rule);
  return lemma5_lhs(profile, opt.allocation, ordering) <=
         social_welfare(instance, outcome.allocation);
}

namespace {

using Weighted = std::vector<std::pair<const BidVector*, Rational>>;

// Bidder j's bid distribution with its type integrated out.
Weighted marginal_bids(const BayesianGame& game, const BayesStrategy& strategy,
                       std::size_t j) {
  Weighted out;
  for (std::size_t t = 0; t < game.types(j).size(); ++t) {
    const Rational pt = game.prior(j)[t];
    if (pt.is_zero()) continue;
    for (const auto& [b, p] : strategy.plays[j][t].support) {
      out.emplace_back(&b, pt * p);
    }
  }
  return out;
}

// Calls f(opponent vectors, weight) for every opponent bid combination.
template <typename F>
void for_each_opponent_mix(const BayesianGame& game,
                           const BayesStrategy& strategy, std::size_t i,
                           F&& f) {
  std::vector<Weighted> mixes(game.bidders());
  std::vector<std::size_t> sizes(game.bidders(), 1);
  for (std::size_t j = 0; j < game.bidders(); ++j) {
    if (j == i) continue;
    mixes[j] = marginal_bids(game, strategy, j);
    sizes[j] = mixes[j].size();
  }
  const MixedRadix radix(sizes);
  std::vector<std::size_t> digits;
  std::vector<const BidVector*> vectors(game.bidders(), nullptr);
  for (std::uint64_t index = 0; index < radix.total(); ++index) {
    radix.decode(index, digits);
    Rational w(1);
    for (std::size_t j = 0; j < game.bidders(); ++j) {
      if (j == i) continue;
      vectors[j] = mixes[j][digits[j]].first;
      w *= mixes[j][digits[j]].second;
    }
    f(vectors, w);
  }
}

// Expected utility of each candidate in `candidates` for bidder i of type t.
std::vector<Rational> deviation_table(const BayesianGame& game,
                                      const BayesStrategy& strategy,
                                      std::size_t i, std::size_t t,
                                      std::span<const BidVector> candidates,
                                      AllocationRule rule) {
  std::vector<Rational> eu(candidates.size());
  const auto& v = game.type(i, t);
  for_each_opponent_mix(
      game, strategy, i,
      [&](const std::vector<const BidVector*>& vectors, const Rational& w) {
        const DeviationKernel kernel(vectors, i, game.units(), rule);
        for (std::size_t c = 0; c < candidates.size(); ++c) {
          eu[c] += w * kernel.utility(v, candidates[c]);
        }
      });
  return eu;
}

// Calls f(types, instance, profile, weight) over joint types and supports.
template <typename F>
void for_each_outcome(const BayesianGame& game, const BayesStrategy& strategy,
                      F&& f) {
  const std::uint64_t profiles = game.profile_count();
  for (std::uint64_t index = 0; index < profiles; ++index) {
    const auto types = game.type_profile(index);
    const Rational pv = game.probability(types);
    if (pv.is_zero()) continue;
    const auto instance = game.instance_at(types);
    std::vector<std::size_t> sizes;
    for (std::size_t i = 0; i < types.size(); ++i) {
      sizes.push_back(strategy.plays[i][types[i]].support.size());
    }
    const MixedRadix radix(sizes);
    std::vector<std::size_t> digits;
    for (std::uint64_t s = 0; s < radix.total(); ++s) {
      radix.decode(s, digits);
      Rational w = pv;
      std::vector<BidVector> bids;
      for (std::size_t i = 0; i < types.size(); ++i) {
        const auto& [b, p] = strategy.plays[i][types[i]].support[digits[i]];
        bids.push_back(b);
        w *= p;
      }
      f(types, instance, BidProfile(std::move(bids)), w);
    }
  }
}

}  // namespace

Rational expected_deviation_utility(const BayesianGame& game,
                                    const BayesStrategy& strategy,
                                    std::size_t i, std::size_t t,
                                    const BidVector& c, AllocationRule rule) {
  strategy.validate(game);
  return deviation_table(game, strategy, i, t, std::span(&c, 1), rule)[0];
}

Rational expected_utility(const BayesianGame& game,
                          const BayesStrategy& strategy, std::size_t i,
                          std::size_t t, AllocationRule rule) {
  strategy.validate(game);
  const auto& support = strategy.plays.at(i).at(t).support;
  std::vector<BidVector> own;
  for (const auto& entry : support) own.push_back(entry.first);
  const auto eu = deviation_table(game, strategy, i, t, own, rule);
  Rational total;
  for (std::size_t s = 0; s < support.size(); ++s) {
    total += support[s].second * eu[s];
  }
  return total;
}

BneVerdict verify_bne(const BayesianGame& game, const BayesStrategy& strategy,
                      const BayesGrids& grids, AllocationRule rule) {
  strategy.validate(game);
  if (grids.sets.size() != game.bidders()) {
    throw StructuralError("grids cover a different number of bidders");
  }
  for (std::size_t i = 0; i < game.bidders(); ++i) {
    if (grids.sets[i].size() != game.types(i).size()) {
      throw StructuralError("bidder " + std::to_string(i) +
                            ": one grid per type is required");
    }
    for (std::size_t t = 0; t < game.types(i).size(); ++t) {
      const auto& grid = grids.sets[i][t];
      if (grid.empty()) continue;
      const Rational current = expected_utility(game, strategy, i, t, rule);
      const auto eu = deviation_table(game, strategy, i, t, grid, rule);
      std::size_t best = 0;
      for (std::size_t c = 1; c < grid.size(); ++c) {
        if (eu[c] > eu[best]) best = c;
      }
      if (eu[best] > current) {
        return {BayesDeviation{i, t, grid[best], eu[best] - current}};
      }
    }
  }
  return {};
}

Rational expected_optimal_welfare(const BayesianGame& game) {
  Rational total;
  for (std::uint64_t index = 0; index < game.profile_count(); ++index) {
    const auto types = game.type_profile(index);
    const Rational pv = game.probability(types);
    if (pv.is_zero()) continue;
    total += pv * optimal_allocation(game.instance_at(types)).welfare;
  }
  return total;
}

Rational expected_welfare(const BayesianGame& game,
                          const BayesStrategy& strategy, AllocationRule rule) {
  strategy.validate(game);
  Rational total;
  for_each_outcome(game, strategy,
                   [&](const std::vector<std::size_t>&,
                       const AuctionInstance& instance,
                       const BidProfile& profile, const Rational& w) {
                     const auto outcome = allocate(instance, profile, rule);
                     total += w * social_welfare(instance, outcome.allocation);
                   });
  return total;
}

Rational bayes_poa(const BayesianGame& game, const BayesStrategy& strategy,
                   AllocationRule rule) {
  const Rational sw = expected_welfare(game, strategy, rule);
  if (sw.is_zero()) {
    throw std::domain_error("expected equilibrium welfare is zero");
  }
  return expected_optimal_welfare(game) / sw;
}

namespace {

template <typename Pred>
bool every_support(const BayesianGame& game, const BayesStrategy& strategy,
                   Pred pred) {
  strategy.validate(game);
  for (std::size_t i = 0; i < game.bidders(); ++i) {
    for (std::size_t t = 0; t < game.types(i).size(); ++t) {
      for (const auto& entry : strategy.plays[i][t].support) {
        if (!pred(game.type(i, t), entry.first)) return false;
      }
    }
  }
  return true;
}

}  // namespace

bool has_undominated_support(const BayesianGame& game,
                             const BayesStrategy& strategy) {
  return every_support(game, strategy, is_undominated_candidate);
}

bool has_no_overbidding_support(const BayesianGame& game,
                                const BayesStrategy& strategy) {
  return every_support(game, strategy, is_no_overbidding);
}

Rational bookkeeping_by_types(const BayesianGame& game,
                              const BayesStrategy& strategy,
                              AllocationRule rule) {
  Rational total;
  for (std::size_t i = 0; i < game.bidders(); ++i) {
    for (std::size_t t = 0; t < game.types(i).size(); ++t) {
      const Rational p = game.prior(i)[t];
      if (p.is_zero()) continue;
      total += p * expected_utility(game, strategy, i, t, rule);
    }
  }
  return total;
}

Rational bookkeeping_direct(const BayesianGame& game,
                            const BayesStrategy& strategy,
                            AllocationRule rule) {
  strategy.validate(game);
  Rational total;
  for_each_outcome(game, strategy,
                   [&](const std::vector<std::size_t>&,
                       const AuctionInstance& instance,
                       const BidProfile& profile, const Rational& w) {
                     for (std::size_t i = 0; i < instance.bidders(); ++i) {
                       total += w * utility(instance, profile, i, rule);
                     }
                   });
  return total;
}

bool conditional_prior_is_product(const BayesianGame& game) {
  const std::uint64_t profiles = game.profile_count();
  std::vector<std::vector<std::size_t>> all;
  std::vector<Rational> joint;
  for (std::uint64_t index = 0; index < profiles; ++index) {
    all.push_back(game.type_profile(index));
    joint.push_back(game.probability(all.back()));
  }
  for (std::size_t i = 0; i < game.bidders(); ++i) {
    for (std::size_t t = 0; t < game.types(i).size(); ++t) {
      Rational marginal;
      for (std::size_t s = 0; s < all.size(); ++s) {
        if (all[s][i] == t) marginal += joint[s];
      }
      if (marginal.is_zero()) continue;
      for (std::size_t s = 0; s < all.size(); ++s) {
        if (all[s][i] != t) continue;
        Rational product(1);
        for (std::size_t j = 0; j < game.bidders(); ++j) {
          if (j != i) product *= game.prior(j)[all[s][j]];
        }
        if (joint[s] / marginal != product) return false;
      }
    }
  }
  return true;
}

OptimumProfileIndex index_optima(const BayesianGame& game) {
  OptimumProfileIndex index;
  index.winning_profiles.resize(game.bidders());
  for (std::uint64_t s = 0; s < game.profile_count(); ++s) {
    OptimumEntry e;
    e.types = game.type_profile(s);
    e.probability = game.probability(e.types);
    auto opt = optimal_allocation(game.instance_at(e.types));
    e.allocation = std::move(opt.allocation);
    e.welfare = opt.welfare;
    for (std::size_t i = 0; i < e.allocation.size(); ++i) {
      e.half_demands.push_back((e.allocation[i] + 1) / 2);
      if (e.allocation[i] > 0) {
        e.winners.push_back(i);
        index.winning_profiles[i].push_back(index.entries.size());
      }
    }
    index.entries.push_back(std::move(e));
  }
  return index;
}

namespace {

struct CandidateSpace {
  std::vector<const VectorSet*> slots;  // bidder-major, then type
  std::vector<VectorSet> owned;
  MixedRadix radix{{}};
};

CandidateSpace candidate_space(const BayesianGame& game,
                               const BayesGrids& grids, bool undominated_only,
                               std::uint64_t budget) {
  if (grids.sets.size() != game.bidders()) {
    throw StructuralError("grids cover a different number of bidders");
  }
  CandidateSpace space;
  if (undominated_only) {
    for (std::size_t i = 0; i < game.bidders(); ++i) {
      for (std::size_t t = 0; t < game.types(i).size(); ++t) {
        space.owned.push_back(
            undominated_set(game.type(i, t), grids.sets[i].at(t)));
      }
    }
  }
  std::vector<std::size_t> sizes;
  std::size_t slot = 0;
  for (std::size_t i = 0; i < game.bidders(); ++i) {
    if (grids.sets[i].size() != game.types(i).size()) {
      throw StructuralError("bidder " + std::to_string(i) +
                            ": one grid per type is required");
    }
    for (std::size_t t = 0; t < game.types(i).size(); ++t, ++slot) {
      const VectorSet* set =
          undominated_only ? &space.owned[slot] : &grids.sets[i][t];
      space.slots.push_back(set);
      sizes.push_back(set->size());
    }
  }
  space.radix = MixedRadix(std::move(sizes));
  if (space.radix.total() > budget) {
    throw ResourceError("pure Bayes strategy candidates exceed the budget",
                        space.radix.total(), budget);
  }
  return space;
}

BayesStrategy decode_candidate(const BayesianGame& game,
                               const CandidateSpace& space,
                               std::uint64_t index,
                               std::vector<std::size_t>& digits) {
  space.radix.decode(index, digits);
  BayesStrategy s;
  std::size_t slot = 0;
  for (std::size_t i = 0; i < game.bidders(); ++i) {
    auto& plays = s.plays.emplace_back();
    for (std::size_t t = 0; t < game.types(i).size(); ++t, ++slot) {
      plays.push_back(MixedBid::pure((*space.slots[slot])[digits[slot]]));
    }
  }
  return s;
}

}  // namespace

std::vector<BayesStrategy> enumerate_pure_bne_serial(const BayesianGame& game,
                                                     const BayesGrids& grids,
                                                     bool undominated_only,
                                                     BneOptions options) {
  const auto space =
      candidate_space(game, grids, undominated_only, options.max_candidates);
  std::vector<BayesStrategy> found;
  std::vector<std::size_t> digits;
  for (std::uint64_t index = 0; index < space.radix.total(); ++index) {
    auto s = decode_candidate(game, space, index, digits);
    if (verify_bne(game, s, grids, options.rule).holds()) {
      found.push_back(std::move(s));
    }
  }
  return found;
}

std::vector<BayesStrategy> enumerate_pure_bne(const BayesianGame& game,
                                              const BayesGrids& grids,
                                              bool undominated_only,
                                              BneOptions options) {
  const auto space =
      candidate_space(game, grids, undominated_only, options.max_candidates);
  const auto total = static_cast<std::int64_t>(space.radix.total());
  std::vector<std::pair<std::uint64_t, BayesStrategy>> found;
  ExceptionSlot errors;
#pragma omp parallel
  {
    std::vector<std::pair<std::uint64_t, BayesStrategy>> local;
    std::vector<std::size_t> digits;
#pragma omp for schedule(dynamic, 64) nowait
    for (std::int64_t index = 0; index < total; ++index) {
      if (errors.failed()) continue;
      errors.run([&] {
        const auto idx = static_cast<std::uint64_t>(index);
        auto s = decode_candidate(game, space, idx, digits);
        if (verify_bne(game, s, grids, options.rule).holds()) {
          local.emplace_back(idx, std::move(s));
        }
      });
    }
#pragma omp critical
    for (auto& entry : local) found.push_back(std::move(entry));
  }
  errors.rethrow();
  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<BayesStrategy> out;
  for (auto& entry : found) out.push_back(std::move(entry.second));
  return out;
}

}  // namespace upa
