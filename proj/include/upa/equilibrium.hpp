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

#ifndef UPA_EQUILIBRIUM_HPP_
#define UPA_EQUILIBRIUM_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "upa/auction.hpp"
#include "upa/strategies.hpp"

namespace upa {

struct BestResponse {
  BidVector bids;
  Rational utility;
};

// Utility-maximizing vector of `grid` against profile_{-i}; ties go to the
// lexicographically smallest vector. Throws ValidationError on an empty grid.
BestResponse best_response(const AuctionInstance& instance, std::size_t i,
                           const BidProfile& profile,
                           std::span<const BidVector> grid,
                           AllocationRule rule = {});

struct Deviation {
  std::size_t bidder;
  BidVector bids;
  Rational gain;
};

// Empty witness means no bidder has a strictly profitable deviation in its
// grid set. Otherwise the witness is the best response of the lowest-index
// bidder that can gain.
struct PneVerdict {
  std::optional<Deviation> witness;
  bool holds() const { return !witness.has_value(); }
};

PneVerdict verify_pne(const AuctionInstance& instance,
                      const BidProfile& profile, const StrategyGrid& grid,
                      AllocationRule rule = {});

struct WinnerPartition {
  std::vector<std::size_t> keeps_share;   // W0: x_i >= x*_i > 0
  std::vector<std::size_t> loses_units;   // W1: x_i < x*_i
  std::vector<std::size_t> extra_winners; // W2: x_i > 0 = x*_i
};

WinnerPartition partition_winners(const Allocation& x, const Allocation& x_opt);

struct PneCertificate {
  BidProfile profile;
  Allocation allocation;
  Rational price;
  Rational welfare;
  Rational optimal_welfare;
  Rational ratio;  // optimal_welfare / welfare
  WinnerPartition partition;
  Rational eq1_bound;
};

PneCertificate make_certificate(const AuctionInstance& instance,
                                const BidProfile& profile,
                                AllocationRule rule = {});

struct EnumerationOptions {
  std::uint64_t max_profiles = 10'000'000;
  AllocationRule rule;
};

// Per-bidder undominated subsets of the grid.
std::vector<VectorSet> undominated_sets(const AuctionInstance& instance,
                                        const StrategyGrid& grid);

// Every profile in the product of undominated sets that is a PNE against the
// full grid, in lexicographic profile order. Throws ResourceError when the
// product exceeds options.max_profiles.
std::vector<PneCertificate> enumerate_undominated_pne(
    const AuctionInstance& instance, const StrategyGrid& grid,
    EnumerationOptions options = {});
std::vector<PneCertificate> enumerate_undominated_pne_serial(
    const AuctionInstance& instance, const StrategyGrid& grid,
    EnumerationOptions options = {});

// Raises every winner's won bids to the marginal values, then repeatedly
// zeroes the bids tied at a price that is neither 0 nor any v_i(1), from the
// tied bid onwards. Throws PreconditionError unless the input is an
// undominated PNE over `grid`.
BidProfile normalize_pne(const AuctionInstance& instance,
                         const BidProfile& profile, const StrategyGrid& grid,
                         AllocationRule rule = {});

// max(1, max over bidders with x*_i > x_i of
//   v_i(x*_i) / (v_i(x_i) + beta_1 + ... + beta_{x*_i - x_i})).
Rational poa_certificate(const AuctionInstance& instance,
                         const BidProfile& profile, AllocationRule rule = {});

// For every bidder losing units against the optimum and j = 1..r_i:
//   beta_j >= (v_i(x_i + j) - v_i(x_i) + x_i * p) / (x_i + j).
bool check_eq2_deviations(const AuctionInstance& instance,
                          const BidProfile& profile, AllocationRule rule = {});

// sum_{W0} v_i(x*_i) + sum_{W1} (v_i(x_i) + beta_1 + ... + beta_{r_i}).
// Conservative profiles have welfare at least this large.
Rational welfare_lower_bound(const AuctionInstance& instance,
                             const BidProfile& profile,
                             AllocationRule rule = {});

}  // namespace upa

#endif  // UPA_EQUILIBRIUM_HPP_
