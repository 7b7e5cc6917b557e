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

#include "upa/auction.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "upa/errors.hpp"

namespace upa {
namespace {

struct RankedBid {
  Rational value;
  std::size_t bidder;
  int unit;
};

// Allocation priority: higher value first, then lower bidder, then lower unit.
bool outranks(const RankedBid& a, const RankedBid& b) {
  if (a.value != b.value) return a.value > b.value;
  if (a.bidder != b.bidder) return a.bidder < b.bidder;
  return a.unit < b.unit;
}

void check_unit_index(int j, int k) {
  if (j < 1 || j > k) {
    throw std::out_of_range("unit index " + std::to_string(j) +
                            " outside 1.." + std::to_string(k));
  }
}

}  // namespace

bool is_submodular(std::span<const Rational> marginals) {
  for (std::size_t j = 0; j < marginals.size(); ++j) {
    if (marginals[j].is_negative()) return false;
    if (j > 0 && marginals[j] > marginals[j - 1]) return false;
  }
  return true;
}

Valuation::Valuation(std::vector<Rational> marginals)
    : marginals_(std::move(marginals)) {
  if (!is_submodular(marginals_)) {
    throw ValidationError(
        "marginal values must be non-negative and non-increasing");
  }
  cumulative_.reserve(marginals_.size() + 1);
  cumulative_.emplace_back(0);
  for (const auto& m : marginals_) cumulative_.push_back(cumulative_.back() + m);
}

Valuation Valuation::padded(std::vector<Rational> marginals, int units) {
  if (static_cast<int>(marginals.size()) > units) {
    throw ValidationError("valuation has " + std::to_string(marginals.size()) +
                          " marginals for " + std::to_string(units) + " units");
  }
  marginals.resize(static_cast<std::size_t>(units), Rational(0));
  return Valuation(std::move(marginals));
}

const Rational& Valuation::marginal(int unit) const {
  check_unit_index(unit, units());
  return marginals_[static_cast<std::size_t>(unit - 1)];
}

const Rational& Valuation::value(int x) const {
  if (x < 0 || x > units()) {
    throw std::out_of_range("unit count " + std::to_string(x) +
                            " outside 0.." + std::to_string(units()));
  }
  return cumulative_[static_cast<std::size_t>(x)];
}

Rational Valuation::first_unit() const {
  return marginals_.empty() ? Rational(0) : marginals_.front();
}

Rational cumulative_value(const Valuation& v, int x) { return v.value(x); }

BidVector::BidVector(std::vector<Rational> bids) : bids_(std::move(bids)) {
  for (std::size_t j = 0; j < bids_.size(); ++j) {
    if (bids_[j].is_negative()) {
      throw ValidationError("bid " + std::to_string(j + 1) + " is negative");
    }
    if (j > 0 && bids_[j] > bids_[j - 1]) {
      throw ValidationError("marginal bids must be non-increasing (bid " +
                            std::to_string(j + 1) + " exceeds bid " +
                            std::to_string(j) + ")");
    }
  }
}

BidVector BidVector::zeros(int units) {
  return BidVector(std::vector<Rational>(static_cast<std::size_t>(units)));
}

BidVector BidVector::padded(std::vector<Rational> bids, int units) {
  if (static_cast<int>(bids.size()) > units) {
    throw StructuralError("bid vector has " + std::to_string(bids.size()) +
                          " entries for " + std::to_string(units) + " units");
  }
  bids.resize(static_cast<std::size_t>(units), Rational(0));
  return BidVector(std::move(bids));
}

BidVector BidVector::truthful(const Valuation& v) {
  return BidVector(v.marginals());
}

BidProfile::BidProfile(std::vector<BidVector> vectors)
    : vectors_(std::move(vectors)) {
  for (const auto& b : vectors_) {
    if (b.units() != vectors_.front().units()) {
      throw StructuralError("bid vectors in a profile must share one length");
    }
  }
}

BidProfile BidProfile::with(std::size_t i, BidVector bids) const {
  BidProfile copy = *this;
  copy.vectors_.at(i) = std::move(bids);
  return copy;
}

AuctionInstance::AuctionInstance(int k, std::vector<Valuation> valuations)
    : k_(k), valuations_(std::move(valuations)) {
  if (k_ < 1) throw ValidationError("an auction needs at least one unit");
  if (valuations_.empty()) {
    throw ValidationError("an auction needs at least one bidder");
  }
  for (std::size_t i = 0; i < valuations_.size(); ++i) {
    if (valuations_[i].units() != k_) {
      throw ValidationError("bidder " + std::to_string(i) + " has " +
                            std::to_string(valuations_[i].units()) +
                            " marginals, expected " + std::to_string(k_));
    }
  }
}

void check_dimensions(const AuctionInstance& instance,
                      const BidProfile& profile) {
  if (profile.bidders() != instance.bidders()) {
    throw StructuralError("profile has " + std::to_string(profile.bidders()) +
                          " bid vectors for " +
                          std::to_string(instance.bidders()) + " bidders");
  }
  if (profile.units() != instance.units()) {
    throw StructuralError("bid vectors have " +
                          std::to_string(profile.units()) + " entries for " +
                          std::to_string(instance.units()) + " units");
  }
}

AuctionOutcome allocate(const AuctionInstance& instance,
                        const BidProfile& profile, AllocationRule rule) {
  check_dimensions(instance, profile);
  const int k = instance.units();

  std::vector<RankedBid> bids;
  bids.reserve(profile.bidders() * static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < profile.bidders(); ++i) {
    for (int j = 0; j < k; ++j) {
      bids.push_back({profile[i][static_cast<std::size_t>(j)], i, j});
    }
  }
  std::sort(bids.begin(), bids.end(), outranks);

  AuctionOutcome out;
  out.allocation.assign(profile.bidders(), 0);
  std::size_t taken = 0;
  while (taken < bids.size() && static_cast<int>(taken) < k) {
    if (!rule.zero_bids_win && bids[taken].value.is_zero()) break;
    ++out.allocation[bids[taken].bidder];
    out.winning_bids.push_back(bids[taken].value);
    ++taken;
  }
  out.price = taken < bids.size() ? bids[taken].value : Rational(0);
  std::reverse(out.winning_bids.begin(), out.winning_bids.end());
  return out;
}

Rational beta(const BidProfile& profile, int j) {
  const int k = profile.units();
  check_unit_index(j, k);
  std::vector<Rational> all;
  for (const auto& b : profile.vectors()) {
    all.insert(all.end(), b.bids().begin(), b.bids().end());
  }
  // j-th lowest of the top k is the (k - j + 1)-th highest overall.
  const auto nth = all.begin() + (k - j);
  std::nth_element(all.begin(), nth, all.end(), std::greater<>());
  return *nth;
}

std::vector<Rational> winning_bids_without(const BidProfile& profile,
                                           std::size_t i) {
  if (i >= profile.bidders()) {
    throw std::out_of_range("bidder " + std::to_string(i) + " out of range");
  }
  const auto k = static_cast<std::size_t>(profile.units());
  std::vector<Rational> rest;
  for (std::size_t o = 0; o < profile.bidders(); ++o) {
    if (o == i) continue;
    rest.insert(rest.end(), profile[o].bids().begin(), profile[o].bids().end());
  }
  if (rest.size() < k) rest.resize(k, Rational(0));
  std::partial_sort(rest.begin(), rest.begin() + static_cast<long>(k),
                    rest.end(), std::greater<>());
  rest.resize(k);
  std::reverse(rest.begin(), rest.end());
  return rest;
}

Rational beta_without(const BidProfile& profile, std::size_t i, int j) {
  check_unit_index(j, profile.units());
  return winning_bids_without(profile, i)[static_cast<std::size_t>(j - 1)];
}

Rational utility(const AuctionInstance& instance, const BidProfile& profile,
                 std::size_t i, AllocationRule rule) {
  const auto out = allocate(instance, profile, rule);
  const int x = out.allocation.at(i);
  return instance.valuation(i).value(x) - Rational(x) * out.price;
}

Rational social_welfare(const AuctionInstance& instance,
                        const Allocation& allocation) {
  if (allocation.size() != instance.bidders()) {
    throw StructuralError("allocation has " +
                          std::to_string(allocation.size()) + " entries for " +
                          std::to_string(instance.bidders()) + " bidders");
  }
  int total = 0;
  for (int x : allocation) {
    if (x < 0) throw ValidationError("negative allocation");
    total += x;
  }
  if (total > instance.units()) {
    throw ValidationError("allocation uses " + std::to_string(total) +
                          " units, only " + std::to_string(instance.units()) +
                          " exist");
  }
  Rational sw;
  for (std::size_t i = 0; i < allocation.size(); ++i) {
    sw += instance.valuation(i).value(allocation[i]);
  }
  return sw;
}

OptimalAllocation optimal_allocation(const AuctionInstance& instance) {
  const int k = instance.units();
  // Each bidder's marginals are already sorted, so a k-step merge over the
  // bidders' next unit suffices.
  OptimalAllocation best;
  best.allocation.assign(instance.bidders(), 0);
  for (int step = 0; step < k; ++step) {
    std::size_t pick = instance.bidders();
    for (std::size_t i = 0; i < instance.bidders(); ++i) {
      const int next = best.allocation[i];
      if (next >= k) continue;
      const Rational& m = instance.valuation(i).marginals()[next];
      if (pick == instance.bidders() ||
          m > instance.valuation(pick).marginals()[best.allocation[pick]]) {
        pick = i;
      }
    }
    if (pick == instance.bidders()) break;
    const Rational& m =
        instance.valuation(pick).marginals()[best.allocation[pick]];
    if (m.is_zero()) break;
    best.welfare += m;
    ++best.allocation[pick];
  }
  return best;
}

}  // namespace upa
