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

#ifndef UPA_AUCTION_HPP_
#define UPA_AUCTION_HPP_

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "upa/rational.hpp"

namespace upa {

// Units allocated to each bidder.
using Allocation = std::vector<int>;

// True iff the sequence is non-increasing and non-negative.
bool is_submodular(std::span<const Rational> marginals);

// A submodular valuation over identical units, stored as its marginal values
// m(1) >= m(2) >= ... >= m(k) >= 0.
class Valuation {
 public:
  Valuation() = default;
  // Throws ValidationError unless the marginals are submodular.
  explicit Valuation(std::vector<Rational> marginals);
  // Zero-pads to `units` entries; throws if more than `units` are given.
  static Valuation padded(std::vector<Rational> marginals, int units);

  int units() const { return static_cast<int>(marginals_.size()); }
  const std::vector<Rational>& marginals() const { return marginals_; }
  // 1-based: marginal(1) is the value of the first unit.
  const Rational& marginal(int unit) const;
  // v(x) = m(1) + ... + m(x); v(0) = 0. Throws std::out_of_range.
  const Rational& value(int x) const;
  // v(1), or 0 for a zero-unit valuation.
  Rational first_unit() const;

  friend bool operator==(const Valuation& a, const Valuation& b) {
    return a.marginals_ == b.marginals_;
  }

 private:
  std::vector<Rational> marginals_;
  std::vector<Rational> cumulative_;
};

Rational cumulative_value(const Valuation& v, int x);

// Marginal bids b(1) >= ... >= b(k) >= 0.
class BidVector {
 public:
  BidVector() = default;
  // Throws ValidationError on a negative or increasing entry.
  explicit BidVector(std::vector<Rational> bids);
  static BidVector zeros(int units);
  static BidVector padded(std::vector<Rational> bids, int units);
  // The truthful vector (m(1), ..., m(k)).
  static BidVector truthful(const Valuation& v);

  int units() const { return static_cast<int>(bids_.size()); }
  const std::vector<Rational>& bids() const { return bids_; }
  // 0-based.
  const Rational& operator[](std::size_t pos) const { return bids_[pos]; }

  friend bool operator==(const BidVector&, const BidVector&) = default;
  friend auto operator<=>(const BidVector& a, const BidVector& b) {
    return a.bids_ <=> b.bids_;
  }

 private:
  std::vector<Rational> bids_;
};

// One bid vector per bidder, all of the same length.
class BidProfile {
 public:
  BidProfile() = default;
  // Throws StructuralError when vector lengths differ.
  explicit BidProfile(std::vector<BidVector> vectors);

  std::size_t bidders() const { return vectors_.size(); }
  int units() const { return vectors_.empty() ? 0 : vectors_.front().units(); }
  const std::vector<BidVector>& vectors() const { return vectors_; }
  const BidVector& operator[](std::size_t i) const { return vectors_[i]; }

  // Copy with bidder i's vector replaced.
  BidProfile with(std::size_t i, BidVector bids) const;

  friend bool operator==(const BidProfile&, const BidProfile&) = default;
  friend auto operator<=>(const BidProfile& a, const BidProfile& b) {
    return a.vectors_ <=> b.vectors_;
  }

 private:
  std::vector<BidVector> vectors_;
};

// k identical units and one valuation per bidder.
class AuctionInstance {
 public:
  AuctionInstance() = default;
  // Throws ValidationError unless k >= 1, n >= 1 and every valuation has k
  // marginals.
  AuctionInstance(int k, std::vector<Valuation> valuations);

  int units() const { return k_; }
  std::size_t bidders() const { return valuations_.size(); }
  const std::vector<Valuation>& valuations() const { return valuations_; }
  const Valuation& valuation(std::size_t i) const { return valuations_[i]; }

  friend bool operator==(const AuctionInstance&,
                         const AuctionInstance&) = default;

 private:
  int k_ = 0;
  std::vector<Valuation> valuations_;
};

// Whether zero bids may be granted units. With `zero_bids_win` false, units
// without a positive bid stay unsold.
struct AllocationRule {
  bool zero_bids_win = true;
};

struct AuctionOutcome {
  Allocation allocation;
  Rational price;
  // Ascending: winning_bids[0] is beta_1.
  std::vector<Rational> winning_bids;
};

// Throws StructuralError if `profile` does not match `instance`.
void check_dimensions(const AuctionInstance& instance,
                      const BidProfile& profile);

// The k highest marginal bids each win a unit; ties go to the lower bidder
// index, then the lower unit index. The price is the highest rejected bid.
AuctionOutcome allocate(const AuctionInstance& instance,
                        const BidProfile& profile, AllocationRule rule = {});

// beta_j(b): the j-th lowest of the k winning bids (1 <= j <= k).
Rational beta(const BidProfile& profile, int j);

// The k winning bids, ascending, once bidder i is removed; missing bids are
// zeros.
std::vector<Rational> winning_bids_without(const BidProfile& profile,
                                           std::size_t i);
Rational beta_without(const BidProfile& profile, std::size_t i, int j);

Rational utility(const AuctionInstance& instance, const BidProfile& profile,
                 std::size_t i, AllocationRule rule = {});

// Sum of v_i(x_i). Throws ValidationError when more than k units are used.
Rational social_welfare(const AuctionInstance& instance,
                        const Allocation& allocation);

struct OptimalAllocation {
  Allocation allocation;
  Rational welfare;
};

// Greedy over marginal values (value desc, bidder asc, unit asc). Units whose
// best remaining marginal is zero are left unassigned; they add no welfare.
OptimalAllocation optimal_allocation(const AuctionInstance& instance);

}  // namespace upa

#endif  // UPA_AUCTION_HPP_
