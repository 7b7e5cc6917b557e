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

#ifndef UPA_STRATEGIES_HPP_
#define UPA_STRATEGIES_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "upa/auction.hpp"

namespace upa {

using VectorSet = std::vector<BidVector>;

// Finite per-bidder strategy sets for one instance.
struct StrategyGrid {
  Rational epsilon;
  // Per-bidder entry cap, m_i(1).
  std::vector<Rational> value_caps;
  // Per-bidder vectors, sorted lexicographically and duplicate-free.
  std::vector<VectorSet> vectors;

  std::uint64_t profile_count() const;  // saturating
};

struct GridOptions {
  std::uint64_t max_vectors_per_bidder = 1'000'000;
};

// {0, eps, 2eps, ...} up to m(1), joined with the marginals; ascending.
std::vector<Rational> grid_values(const Valuation& v, const Rational& epsilon);

// C(values + units - 1, units), saturating.
std::uint64_t count_non_increasing(std::size_t values, int units);

// Every non-increasing vector of length `units` over `values` (ascending,
// distinct), in lexicographic order. Throws ResourceError past `budget`.
VectorSet non_increasing_vectors(std::span<const Rational> values, int units,
                                 std::uint64_t budget);

// Throws ValidationError for epsilon <= 0 and ResourceError when a bidder's
// grid would exceed options.max_vectors_per_bidder.
StrategyGrid build_grid(const AuctionInstance& instance,
                        const Rational& epsilon, GridOptions options = {});

// Adds vectors to bidder i's set, keeping it sorted and duplicate-free.
void augment_grid(StrategyGrid& grid, std::size_t i,
                  std::span<const BidVector> extra);

// b(j) <= m(j) for every j.
bool is_conservative(const Valuation& v, const BidVector& b);
// Aggregate no-overbidding: b(1) + ... + b(r) <= v(r) for every r.
bool is_no_overbidding(const Valuation& v, const BidVector& b);
// b(1) = v(1) and conservative.
bool is_undominated_candidate(const Valuation& v, const BidVector& b);

VectorSet undominated_set(const Valuation& v, std::span<const BidVector> grid);

// For a vector overbidding some marginal: keeps every bid below its marginal
// and lowers every overbid to the marginal, i.e. b'(r) = min(b(r), m(r)).
// Throws PreconditionError if b does not overbid.
BidVector overbid_dominator(const Valuation& v, const BidVector& b);

// The variant that keeps b(r) for r < j and copies m(r) for every r >= j,
// where j is the first overbid. It can raise bids below the marginal and is
// not a dominator in general; kept to show the suite rejects it.
BidVector replace_tail_with_marginals(const Valuation& v, const BidVector& b);

// Raises b(1) to v(1). Throws PreconditionError unless b(1) < v(1).
BidVector underbid_dominator(const Valuation& v, const BidVector& b);

struct DominanceCheck {
  bool never_worse = true;  // u(b') >= u(b) on every opponent profile
  bool sometimes_better = false;
  std::uint64_t profiles_checked = 0;
  // First opponent profile (full profile, bidder i holding b) where b' loses.
  std::optional<BidProfile> worse_at;

  bool dominated() const { return never_worse && sometimes_better; }
};

struct DominanceOptions {
  std::uint64_t max_profiles = 50'000'000;
  AllocationRule rule;
};

// Exhaustive comparison of u_i(b', .) against u_i(b, .) over the product of
// the opponents' sets (opponent_sets[i] is ignored). The serial and OpenMP
// versions return identical results.
DominanceCheck compare_against_opponents(
    const AuctionInstance& instance, std::size_t i, const BidVector& b,
    const BidVector& dominator, const std::vector<VectorSet>& opponent_sets,
    DominanceOptions options = {});
DominanceCheck compare_against_opponents_serial(
    const AuctionInstance& instance, std::size_t i, const BidVector& b,
    const BidVector& dominator, const std::vector<VectorSet>& opponent_sets,
    DominanceOptions options = {});

// True iff `dominator` is never worse and strictly better at least once.
bool is_weakly_dominated_by(const AuctionInstance& instance, std::size_t i,
                            const BidVector& b, const BidVector& dominator,
                            const std::vector<VectorSet>& opponent_sets,
                            DominanceOptions options = {});

// Opponent sets for dominance checks: every non-increasing vector over the
// shared value lattice {0, eps, ...} joined with all marginals, the midpoint
// of each consecutive pair, and one value above the largest marginal. The
// midpoints let an opponent bid strictly between two lattice values.
std::vector<VectorSet> probe_sets(const AuctionInstance& instance,
                                  const Rational& epsilon,
                                  std::uint64_t budget = 1'000'000);

}  // namespace upa

#endif  // UPA_STRATEGIES_HPP_
