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

#include "upa/kernel.hpp"

#include <algorithm>

namespace upa {

DeviationKernel::DeviationKernel(const BidProfile& profile, std::size_t self,
                                 AllocationRule rule)
    : self_(self), units_(profile.units()), rule_(rule) {
  ranked_.reserve((profile.bidders() - 1) * static_cast<std::size_t>(units_));
  for (std::size_t o = 0; o < profile.bidders(); ++o) {
    if (o == self_) continue;
    for (const auto& b : profile[o].bids()) ranked_.push_back({b, o});
  }
  rank();
}

DeviationKernel::DeviationKernel(const std::vector<const BidVector*>& vectors,
                                 std::size_t self, int units,
                                 AllocationRule rule)
    : self_(self), units_(units), rule_(rule) {
  for (std::size_t o = 0; o < vectors.size(); ++o) {
    if (o == self_) continue;
    for (const auto& b : vectors[o]->bids()) ranked_.push_back({b, o});
  }
  rank();
}

void DeviationKernel::rank() {
  // Insertion order is (bidder, unit) ascending; a stable sort on value keeps
  // that as the tie-break.
  std::stable_sort(ranked_.begin(), ranked_.end(),
                   [](const Entry& a, const Entry& b) { return a.value > b.value; });
}

DeviationKernel::Result DeviationKernel::evaluate(const BidVector& bids) const {
  const auto own = bids.bids().size();
  std::size_t mine = 0;
  std::size_t theirs = 0;
  int taken = 0;

  // Returns true when the next-ranked bid is the candidate's own.
  auto own_next = [&]() {
    if (mine >= own) return false;
    if (theirs >= ranked_.size()) return true;
    const Rational& a = bids[mine];
    const Entry& e = ranked_[theirs];
    if (a != e.value) return a > e.value;
    return self_ < e.bidder;
  };

  while (taken < units_ && (mine < own || theirs < ranked_.size())) {
    const bool is_own = own_next();
    const Rational& value = is_own ? bids[mine] : ranked_[theirs].value;
    if (!rule_.zero_bids_win && value.is_zero()) break;
    if (is_own) {
      ++mine;
    } else {
      ++theirs;
    }
    ++taken;
  }

  Result r{static_cast<int>(mine), Rational(0)};
  if (mine < own || theirs < ranked_.size()) {
    r.price = own_next() ? bids[mine] : ranked_[theirs].value;
  }
  return r;
}

Rational DeviationKernel::utility(const Valuation& v,
                                  const BidVector& bids) const {
  const auto r = evaluate(bids);
  return v.value(r.units) - Rational(r.units) * r.price;
}

}  // namespace upa
