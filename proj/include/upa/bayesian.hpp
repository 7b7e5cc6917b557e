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

#ifndef UPA_BAYESIAN_HPP_
#define UPA_BAYESIAN_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "upa/auction.hpp"
#include "upa/strategies.hpp"

namespace upa {

// Finite types per bidder with independent priors; the joint prior is the
// product of the per-bidder priors.
class BayesianGame {
 public:
  BayesianGame() = default;
  // Throws ValidationError on a negative prior entry, priors not summing to
  // one, mismatched type/prior counts, or a type with other than k marginals.
  BayesianGame(int k, std::vector<std::vector<Valuation>> types,
               std::vector<std::vector<Rational>> priors);

  int units() const { return k_; }
  std::size_t bidders() const { return types_.size(); }
  const std::vector<Valuation>& types(std::size_t i) const { return types_[i]; }
  const std::vector<Rational>& prior(std::size_t i) const { return priors_[i]; }
  const Valuation& type(std::size_t i, std::size_t t) const {
    return types_[i][t];
  }

  // Number of joint type profiles (saturating).
  std::uint64_t profile_count() const;
  // Per-bidder type indices for joint profile `index` (bidder 0 most
  // significant), with its probability.
  std::vector<std::size_t> type_profile(std::uint64_t index) const;
  Rational probability(std::span<const std::size_t> types) const;
  // The complete-information instance at a joint type profile.
  AuctionInstance instance_at(std::span<const std::size_t> types) const;

  // One type per bidder with probability one.
  static BayesianGame degenerate(const AuctionInstance& instance);

 private:
  int k_ = 0;
  std::vector<std::vector<Valuation>> types_;
  std::vector<std::vector<Rational>> priors_;
};

// A finite distribution over bid vectors.
struct MixedBid {
  std::vector<std::pair<BidVector, Rational>> support;

  static MixedBid pure(BidVector b);
  // Throws ValidationError unless probabilities are positive and sum to one.
  void validate(int units) const;
};

// plays[i][t]: what bidder i of type t bids.
struct BayesStrategy {
  std::vector<std::vector<MixedBid>> plays;

  static BayesStrategy pure(const std::vector<std::vector<BidVector>>& bids);
  static BayesStrategy lift(const BidProfile& profile);
  bool is_pure() const;
  // Throws StructuralError unless the shape matches the game.
  void validate(const BayesianGame& game) const;
  friend bool operator==(const BayesStrategy& a, const BayesStrategy& b);
};

// Deviation sets per bidder and type.
struct BayesGrids {
  Rational epsilon;
  std::vector<std::vector<VectorSet>> sets;
  std::uint64_t slot_total() const;  // sum of all set sizes
};

// For each type: {0, eps, ...} up to m(1) joined with the marginals.
BayesGrids build_bayes_grids(const BayesianGame& game, const Rational& epsilon,
                             GridOptions options = {});

// (m(1), ..., m(j), 0, ..., 0). Throws ValidationError unless 0 <= j <= k.
BidVector deviation_vector(const Valuation& v, int j);

// u_i(m_i^[j], b_-i) >= v_i(j) - j * beta_j(b_-i). Bidder i's own vector in
// `profile` is ignored. Throws PreconditionError if an opponent overbids a
// marginal.
bool check_lemma6(const AuctionInstance& instance, std::size_t i, int j,
                  const BidProfile& profile, AllocationRule rule = {});

// With t_i = ceil(x*_i / 2) and psi the prefix sums of x* along `ordering`,
// checks every prefix
//   sum_{j<=s} t_j beta_{t_j}(b_-j) <= beta_{t_1}(b_-1) + sum_{j<psi_s} beta_j(b)
// and then sum_i t_i beta_{t_i}(b_-i) <= p(b) + (k-1)/k SW(b).
// Throws PreconditionError if some b_i is not undominated and
// ValidationError unless `ordering` is a permutation of the optimum winners.
bool check_lemma5(const AuctionInstance& instance, const BidProfile& profile,
                  std::span<const std::size_t> ordering,
                  AllocationRule rule = {});

// Aggregate no-overbidding variant: sum_i t_i beta_{t_i}(b_-i) <= SW(b).
// Throws PreconditionError unless every b_i satisfies no-overbidding.
bool check_lemma5_no_overbidding(const AuctionInstance& instance,
                                 const BidProfile& profile,
                                 std::span<const std::size_t> ordering,
                                 AllocationRule rule = {});

// E[u_i] for bidder i of type t, over opponents' types and all supports.
Rational expected_utility(const BayesianGame& game,
                          const BayesStrategy& strategy, std::size_t i,
                          std::size_t t, AllocationRule rule = {});
// The same when bidder i of type t bids c instead.
Rational expected_deviation_utility(const BayesianGame& game,
                                    const BayesStrategy& strategy,
                                    std::size_t i, std::size_t t,
                                    const BidVector& c,
                                    AllocationRule rule = {});

struct BayesDeviation {
  std::size_t bidder;
  std::size_t type;
  BidVector bids;
  Rational gain;
};

// Empty witness: no bidder type gains by a grid deviation. Otherwise the
// first (bidder, type) that gains and its best deviation, ties broken
// lexicographically.
struct BneVerdict {
  std::optional<BayesDeviation> witness;
  bool holds() const { return !witness.has_value(); }
};

BneVerdict verify_bne(const BayesianGame& game, const BayesStrategy& strategy,
                      const BayesGrids& grids, AllocationRule rule = {});

// E[SW(x*)] over the prior.
Rational expected_optimal_welfare(const BayesianGame& game);
// E[SW] when bids follow `strategy`.
Rational expected_welfare(const BayesianGame& game,
                          const BayesStrategy& strategy,
                          AllocationRule rule = {});
// E[SW*] / E[SW]. Throws std::domain_error when E[SW] is zero.
Rational bayes_poa(const BayesianGame& game, const BayesStrategy& strategy,
                   AllocationRule rule = {});

// Every support vector of every type is undominated (b(1) = v(1) and
// conservative) or, for the second, satisfies aggregate no-overbidding.
bool has_undominated_support(const BayesianGame& game,
                             const BayesStrategy& strategy);
bool has_no_overbidding_support(const BayesianGame& game,
                                const BayesStrategy& strategy);

// sum_i sum_t pi_i(t) E[u_i | t]  and  E_v E_b sum_i u_i(b).
Rational bookkeeping_by_types(const BayesianGame& game,
                              const BayesStrategy& strategy,
                              AllocationRule rule = {});
Rational bookkeeping_direct(const BayesianGame& game,
                            const BayesStrategy& strategy,
                            AllocationRule rule = {});

// pi(w_-i | v_i) recovered from the joint prior equals prod_{j != i} pi_j(w_j)
// for every bidder, type with positive probability, and opponent profile.
bool conditional_prior_is_product(const BayesianGame& game);

struct OptimumEntry {
  std::vector<std::size_t> types;
  Rational probability;
  Allocation allocation;
  Rational welfare;
  std::vector<std::size_t> winners;
  std::vector<int> half_demands;  // ceil(x_i / 2)
};

struct OptimumProfileIndex {
  std::vector<OptimumEntry> entries;  // one per joint type profile
  // winning_profiles[i]: entries where bidder i wins at least one unit.
  std::vector<std::vector<std::size_t>> winning_profiles;
};

OptimumProfileIndex index_optima(const BayesianGame& game);

struct BneOptions {
  std::uint64_t max_candidates = 10'000'000;
  AllocationRule rule;
};

// Every pure Bayes strategy (one grid vector per bidder and type) passing
// verify_bne, in lexicographic order. With undominated_only, candidates are
// restricted to undominated vectors per type; deviations always range over
// the full grids. Throws ResourceError past options.max_candidates.
std::vector<BayesStrategy> enumerate_pure_bne(const BayesianGame& game,
                                              const BayesGrids& grids,
                                              bool undominated_only,
                                              BneOptions options = {});
std::vector<BayesStrategy> enumerate_pure_bne_serial(const BayesianGame& game,
                                                     const BayesGrids& grids,
                                                     bool undominated_only,
                                                     BneOptions options = {});

}  // namespace upa

#endif  // UPA_BAYESIAN_HPP_
