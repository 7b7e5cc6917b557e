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

#ifndef UPA_INSTANCES_HPP_
#define UPA_INSTANCES_HPP_

#include <cstdint>
#include <string>

#include "upa/auction.hpp"
#include "upa/strategies.hpp"

namespace upa {

// SplitMix64 (Steele, Lea, Flood 2014): state += 0x9e3779b97f4a7c15, then
// the output is mixed with shifts 30/27/31 and multipliers
// 0xbf58476d1ce4e5b9 / 0x94d049bb133111eb.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // Uniform in [0, bound) by rejection; bound >= 1.
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [lo, hi].
  int between(int lo, int hi);

 private:
  std::uint64_t state_;
};

struct GeneratedCase {
  AuctionInstance instance;
  BidProfile equilibrium;
  Rational expected_ratio;
  std::string source;
};

// The worked examples for k = 2, 3, 4 with ratios 4/3, 18/13, 48/35.
// Throws ValidationError for other k.
GeneratedCase paper_example(int k);

// H_m = 1 + 1/2 + ... + 1/m, exact.
Rational harmonic_number(int m);

// floor(k/e - 1), decided exactly from rational bounds on e with error below
// 1e-30. Throws std::runtime_error if k/e - 1 lies within 1e-15 of an
// integer.
int harmonic_q(int k);

// Two bidders: v1(x) = x and v2 with marginals (r-j+1)/(k-j+1) for j <= r,
// r = k - q, zero afterwards. Bidder 1 bids 1 on q units, bidder 2 is
// truthful; the ratio is k / (k - q (H_k - H_q)). Requires k >= 9.
GeneratedCase harmonic_instance(int k);

// Deviation sets for the harmonic case: bidder 1 may bid 1 on any number of
// units followed by any number of copies of one of bidder 2's bid values
// (this includes capturing j of bidder 2's units at price j/(q+j)); bidder 2
// may bid any prefix of its truthful vector.
StrategyGrid harmonic_deviation_grid(const GeneratedCase& c);

// Deterministic in (n, k, seed, levels): each bidder draws k values from
// {0, 1/levels, ..., 1} and sorts them descending. If every m(1) is zero,
// bidder 0's first marginal becomes 1/levels.
AuctionInstance random_submodular(int n, int k, std::uint64_t seed,
                                  int levels);

}  // namespace upa

#endif  // UPA_INSTANCES_HPP_
