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
#include <functional>
#include <stdexcept>

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "upa/errors.hpp"
#include "upa/instances.hpp"

namespace upa {
namespace {

using testing::B;
using testing::R;
using testing::Rs;
using testing::V;

AuctionInstance WorkedK3() {
  return AuctionInstance(3, {V({"1", "1", "1"}), V({"2/3", "0", "0"}),
                             V({"1/2", "0", "0"})});
}

BidProfile WorkedK3Bids() {
  return BidProfile({B({"1", "0", "0"}), B({"2/3", "0", "0"}),
                     B({"1/2", "0", "0"})});
}

Valuation HarmonicV2() {
  return V({"7/9", "3/4", "5/7", "2/3", "3/5", "1/2", "1/3", "0", "0"});
}

BidProfile HarmonicBids() {
  return BidProfile({B({"1", "1", "0", "0", "0", "0", "0", "0", "0"}),
                     BidVector::truthful(HarmonicV2())});
}

AuctionInstance HarmonicInstance() {
  return AuctionInstance(9, {Valuation(std::vector<Rational>(9, Rational(1))),
                             HarmonicV2()});
}

TEST(CumulativeValueTest, Examples) {
  EXPECT_EQ(cumulative_value(V({"1", "1", "1"}), 3), Rational(3));
  EXPECT_EQ(cumulative_value(V({"1/2", "1/3"}), 0), Rational(0));
  EXPECT_EQ(cumulative_value(HarmonicV2(), 7), R("5471/1260"));
  EXPECT_THROW(cumulative_value(V({"1"}), 2), std::out_of_range);
  EXPECT_THROW(cumulative_value(V({"1"}), -1), std::out_of_range);
}

TEST(CumulativeValueTest, AverageValueIsNonIncreasing) {
  const auto v = HarmonicV2();
  for (int x = 1; x < 9; ++x) {
    EXPECT_GE(v.value(x) / Rational(x), v.value(x + 1) / Rational(x + 1));
  }
}

TEST(SubmodularTest, Examples) {
  EXPECT_TRUE(is_submodular(Rs({"1", "2/3", "1/2"})));
  EXPECT_FALSE(is_submodular(Rs({"1/2", "2/3"})));
  EXPECT_FALSE(is_submodular(Rs({"1", "-1/2"})));
  EXPECT_TRUE(is_submodular(HarmonicV2().marginals()));
  EXPECT_THROW(V({"1/2", "2/3"}), ValidationError);
}

TEST(BidVectorTest, ValidatesAndPads) {
  EXPECT_THROW(B({"1/2", "1"}), ValidationError);
  EXPECT_THROW(B({"-1"}), ValidationError);
  EXPECT_EQ(BidVector::padded(Rs({"1"}), 3), B({"1", "0", "0"}));
  EXPECT_THROW(BidVector::padded(Rs({"1", "1"}), 1), StructuralError);
  EXPECT_THROW(BidProfile({B({"1"}), B({"1", "0"})}), StructuralError);
}

TEST(AllocateTest, WorkedK3) {
  const auto out = allocate(WorkedK3(), WorkedK3Bids());
  EXPECT_EQ(out.allocation, (Allocation{1, 1, 1}));
  EXPECT_EQ(out.price, Rational(0));
  EXPECT_EQ(out.winning_bids, Rs({"1/2", "2/3", "1"}));
}

TEST(AllocateTest, HarmonicK9) {
  const auto out = allocate(HarmonicInstance(), HarmonicBids());
  EXPECT_EQ(out.allocation, (Allocation{2, 7}));
  EXPECT_EQ(out.price, Rational(0));
}

TEST(AllocateTest, SingleBidder) {
  const AuctionInstance inst(1, {V({"1"})});
  const auto out = allocate(inst, BidProfile({B({"3/7"})}));
  EXPECT_EQ(out.allocation, (Allocation{1}));
  EXPECT_EQ(out.price, Rational(0));
}

TEST(AllocateTest, TiesGoToLowerBidderThenLowerUnit) {
  const AuctionInstance inst(2, {V({"1", "1"}), V({"1", "1"})});
  const auto out = allocate(inst, BidProfile({B({"1/2", "1/2"}), B({"1/2", "0"})}));
  EXPECT_EQ(out.allocation, (Allocation{2, 0}));
  EXPECT_EQ(out.price, R("1/2"));
}

TEST(AllocateTest, ZeroBidsMayStayUnsold) {
  const AuctionInstance inst(3, {V({"1", "1", "0"}), V({"1", "0", "0"})});
  const BidProfile bids({B({"1", "0", "0"}), B({"1/2", "0", "0"})});
  EXPECT_EQ(allocate(inst, bids).allocation, (Allocation{2, 1}));
  const auto strict = allocate(inst, bids, AllocationRule{false});
  EXPECT_EQ(strict.allocation, (Allocation{1, 1}));
  EXPECT_EQ(strict.price, Rational(0));
}

TEST(AllocateTest, DimensionMismatch) {
  EXPECT_THROW(allocate(WorkedK3(), BidProfile({B({"1", "0", "0"})})),
               StructuralError);
  EXPECT_THROW(allocate(WorkedK3(), BidProfile({B({"1"}), B({"0"}), B({"0"})})),
               StructuralError);
}

TEST(BetaTest, Examples) {
  EXPECT_EQ(beta(WorkedK3Bids(), 1), R("1/2"));
  EXPECT_EQ(beta(WorkedK3Bids(), 2), R("2/3"));
  EXPECT_EQ(beta(BidProfile({B({"0", "0"}), B({"0", "0"})}), 2), Rational(0));
  EXPECT_EQ(beta(HarmonicBids(), 1), R("1/3"));
  EXPECT_THROW(beta(WorkedK3Bids(), 0), std::out_of_range);
  EXPECT_THROW(beta(WorkedK3Bids(), 4), std::out_of_range);
}

TEST(BetaTest, WithoutBidder) {
  EXPECT_EQ(beta_without(WorkedK3Bids(), 0, 1), Rational(0));
  EXPECT_EQ(winning_bids_without(WorkedK3Bids(), 0), Rs({"0", "1/2", "2/3"}));
  const BidProfile lone({B({"1", "1"}), B({"0", "0"})});
  EXPECT_EQ(beta_without(lone, 0, 1), Rational(0));
  EXPECT_EQ(beta_without(lone, 0, 2), Rational(0));
  EXPECT_EQ(beta_without(HarmonicBids(), 0, 1), Rational(0));
}

TEST(UtilityTest, Examples) {
  EXPECT_EQ(utility(WorkedK3(), WorkedK3Bids(), 0), Rational(1));
  const BidProfile grab({B({"1", "1", "1"}), B({"2/3", "0", "0"}),
                         B({"1/2", "0", "0"})});
  EXPECT_EQ(utility(WorkedK3(), grab, 0), Rational(1));
  EXPECT_EQ(utility(WorkedK3(), grab, 1), Rational(0));
  EXPECT_EQ(utility(HarmonicInstance(), HarmonicBids(), 1), R("5471/1260"));
}

TEST(WelfareTest, Examples) {
  EXPECT_EQ(social_welfare(WorkedK3(), {1, 1, 1}), R("13/6"));
  EXPECT_EQ(social_welfare(WorkedK3(), {0, 0, 0}), Rational(0));
  EXPECT_THROW(social_welfare(WorkedK3(), {3, 1, 0}), ValidationError);
  const auto k4 = paper_example(4);
  EXPECT_EQ(social_welfare(k4.instance,
                           allocate(k4.instance, k4.equilibrium).allocation),
            R("35/12"));
}

TEST(OptimalAllocationTest, Examples) {
  const auto opt = optimal_allocation(WorkedK3());
  EXPECT_EQ(opt.allocation, (Allocation{3, 0, 0}));
  EXPECT_EQ(opt.welfare, Rational(3));
  const AuctionInstance single(3, {V({"1", "1/2", "1/4"})});
  EXPECT_EQ(optimal_allocation(single).allocation, (Allocation{3}));
}

// Exhaustive maximization over all ways of giving out at most k units.
Rational BruteForceOptimum(const AuctionInstance& inst) {
  Rational best;
  Allocation x(inst.bidders(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == inst.bidders()) {
      best = max(best, social_welfare(inst, x));
      return;
    }
    for (int u = 0; u <= left; ++u) {
      x[i] = u;
      rec(i + 1, left - u);
    }
    x[i] = 0;
  };
  rec(0, inst.units());
  return best;
}

TEST(OptimalAllocationTest, MatchesExhaustiveSearch) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    SplitMix64 rng(seed);
    const int n = rng.between(1, 3);
    const int k = rng.between(1, 5);
    const auto inst = random_submodular(n, k, seed, rng.between(2, 7));
    const auto opt = optimal_allocation(inst);
    EXPECT_EQ(opt.welfare, BruteForceOptimum(inst)) << "seed " << seed;
    EXPECT_EQ(opt.welfare, social_welfare(inst, opt.allocation));
  }
}

TEST(AllocateTest, RandomInvariants) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    SplitMix64 rng(seed ^ 0xabcdef);
    const int n = rng.between(1, 3);
    const int k = rng.between(1, 4);
    const auto inst = random_submodular(n, k, seed, 4);
    std::vector<BidVector> vs;
    for (int i = 0; i < n; ++i) {
      std::vector<Rational> b;
      for (int j = 0; j < k; ++j) b.emplace_back(rng.between(0, 4), 4);
      std::sort(b.begin(), b.end(), std::greater<>());
      vs.emplace_back(std::move(b));
    }
    const BidProfile profile(vs);
    const auto out = allocate(inst, profile);
    int units = 0;
    for (int x : out.allocation) units += x;
    EXPECT_EQ(units, k);
    EXPECT_LE(out.price, out.winning_bids.front());
    EXPECT_TRUE(std::is_sorted(out.winning_bids.begin(), out.winning_bids.end()));

    // The price is the (k+1)-th highest bid overall.
    std::vector<Rational> all;
    for (const auto& b : vs) all.insert(all.end(), b.bids().begin(), b.bids().end());
    std::sort(all.begin(), all.end(), std::greater<>());
    EXPECT_EQ(out.price, static_cast<int>(all.size()) > k ? all[static_cast<std::size_t>(k)] : Rational(0));

    // Winning bids are the bids granted units.
    std::vector<Rational> granted;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < out.allocation[static_cast<std::size_t>(i)]; ++j) {
        granted.push_back(vs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      }
    }
    std::sort(granted.begin(), granted.end());
    EXPECT_EQ(granted, out.winning_bids);

    for (int i = 0; i < n; ++i) {
      for (int j = 1; j <= k; ++j) {
        EXPECT_LE(beta_without(profile, static_cast<std::size_t>(i), j),
                  beta(profile, j));
      }
    }
  }
}

}  // namespace
}  // namespace upa
