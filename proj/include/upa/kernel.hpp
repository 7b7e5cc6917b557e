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

#ifndef UPA_KERNEL_HPP_
#define UPA_KERNEL_HPP_

#include <cstddef>
#include <vector>

#include "upa/auction.hpp"

namespace upa {

// The opponents' side of a profile, pre-ranked in allocation priority, so a
// single bidder's outcome under any candidate vector is one O(k) merge
// instead of a full sort. Agrees with allocate() on every input.
class DeviationKernel {
 public:
  struct Result {
    int units;
    Rational price;
  };

  // Bidder `self`'s own vector in `profile` is ignored.
  DeviationKernel(const BidProfile& profile, std::size_t self,
                  AllocationRule rule = {});

  // Opponents given directly (one entry per bidder; entry `self` ignored).
  DeviationKernel(const std::vector<const BidVector*>& vectors,
                  std::size_t self, int units, AllocationRule rule = {});

  Result evaluate(const BidVector& bids) const;
  Rational utility(const Valuation& v, const BidVector& bids) const;

 private:
  struct Entry {
    Rational value;
    std::size_t bidder;
  };

  void rank();

  std::size_t self_;
  int units_;
  AllocationRule rule_;
  std::vector<Entry> ranked_;
};

}  // namespace upa

#endif  // UPA_KERNEL_HPP_
