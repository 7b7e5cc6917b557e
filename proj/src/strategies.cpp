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

#include "upa/strategies.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "upa/errors.hpp"
#include "upa/kernel.hpp"
#include "upa/parallel.hpp"

namespace upa {
namespace {

void sort_unique(std::vector<Rational>& values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
}

void sort_unique(VectorSet& vectors) {
  std::sort(vectors.begin(), vectors.end());
  vectors.erase(std::unique(vectors.begin(), vectors.end()), vectors.end());
}

// Lattice points {0, eps, ..., floor(cap/eps)*eps}.
std::vector<Rational> lattice(const Rational& cap, const Rational& epsilon,
                              std::uint64_t budget) {
  const Rational steps = cap / epsilon;
  const std::int64_t last = steps.num() / steps.den();
  if (static_cast<std::uint64_t>(last) >= budget) {
    throw ResourceError("value lattice too fine for cap " + cap.str(),
                        static_cast<std::uint64_t>(last) + 1, budget);
  }
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(last) + 1);
  for (std::int64_t s = 0; s <= last; ++s) out.push_back(epsilon * Rational(s));
  return out;
}

void fill(std::span<const Rational> values, std::size_t top, std::size_t pos,
          std::vector<Rational>& scratch, VectorSet& out) {
  if (pos == scratch.size()) {
    out.emplace_back(scratch);
    return;
  }
  // Ascending values at each position give lexicographic order; `top` keeps
  // the vector non-increasing.
  for (std::size_t v = 0; v <= top; ++v) {
    scratch[pos] = values[v];
    fill(values, v, pos + 1, scratch, out);
  }
}

}  // namespace

std::uint64_t StrategyGrid::profile_count() const {
  std::uint64_t total = 1;
  for (const auto& set : vectors) total = saturating_mul(total, set.size());
  return total;
}

std::vector<Rational> grid_values(const Valuation& v, const Rational& epsilon) {
  auto values = lattice(v.first_unit(), epsilon,
                        std::numeric_limits<std::uint64_t>::max());
  values.insert(values.end(), v.marginals().begin(), v.marginals().end());
  sort_unique(values);
  return values;
}

std::uint64_t count_non_increasing(std::size_t values, int units) {
  // C(values + units - 1, units), built incrementally so every partial
  // quotient is an integer.
  if (values == 0) return units == 0 ? 1 : 0;
  std::uint64_t c = 1;
  const auto n = static_cast<std::uint64_t>(values) - 1;
  for (std::uint64_t r = 1; r <= static_cast<std::uint64_t>(units); ++r) {
    const std::uint64_t num = n + r;
    if (c > std::numeric_limits<std::uint64_t>::max() / num) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    c = c * num / r;
  }
  return c;
}

VectorSet non_increasing_vectors(std::span<const Rational> values, int units,
                                 std::uint64_t budget) {
  const auto count = count_non_increasing(values.size(), units);
  if (count > budget) {
    throw ResourceError("strategy grid too large", count, budget);
  }
  VectorSet out;
  out.reserve(static_cast<std::size_t>(count));
  if (values.empty()) return out;
  std::vector<Rational> scratch(static_cast<std::size_t>(units));
  fill(values, values.size() - 1, 0, scratch, out);
  return out;
}

StrategyGrid build_grid(const AuctionInstance& instance,
                        const Rational& epsilon, GridOptions options) {
  if (epsilon <= Rational(0)) {
    throw ValidationError("grid step must be positive, got " + epsilon.str());
  }
  StrategyGrid grid;
  grid.epsilon = epsilon;
  for (const auto& v : instance.valuations()) {
    const auto values = grid_values(v, epsilon);
    grid.value_caps.push_back(v.first_unit());
    grid.vectors.push_back(non_increasing_vectors(
        values, instance.units(), options.max_vectors_per_bidder));
  }
  return grid;
}

void augment_grid(StrategyGrid& grid, std::size_t i,
                  std::span<const BidVector> extra) {
  auto& set = grid.vectors.at(i);
  set.insert(set.end(), extra.begin(), extra.end());
  sort_unique(set);
}

bool is_conservative(const Valuation& v, const BidVector& b) {
  for (int j = 0; j < b.units(); ++j) {
    if (b[static_cast<std::size_t>(j)] > v.marginals()[static_cast<std::size_t>(j)]) {
      return false;
    }
  }
  return true;
}

bool is_no_overbidding(const Valuation& v, const BidVector& b) {
  Rational declared;
  for (int r = 1; r <= b.units(); ++r) {
    declared += b[static_cast<std::size_t>(r - 1)];
    if (declared > v.value(r)) return false;
  }
  return true;
}

bool is_undominated_candidate(const Valuation& v, const BidVector& b) {
  if (b.units() == 0) return true;
  return b[0] == v.first_unit() && is_conservative(v, b);
}

VectorSet undominated_set(const Valuation& v, std::span<const BidVector> grid) {
  VectorSet out;
  for (const auto& b : grid) {
    if (is_undominated_candidate(v, b)) out.push_back(b);
  }
  return out;
}

BidVector overbid_dominator(const Valuation& v, const BidVector& b) {
  if (is_conservative(v, b)) {
    throw PreconditionError("bid vector does not overbid any marginal value");
  }
  std::vector<Rational> out(b.bids());
  for (std::size_t r = 0; r < out.size(); ++r) {
    out[r] = min(out[r], v.marginals()[r]);
  }
  return BidVector(std::move(out));
}

BidVector replace_tail_with_marginals(const Valuation& v, const BidVector& b) {
  std::vector<Rational> out(b.bids());
  std::size_t j = 0;
  while (j < out.size() && out[j] <= v.marginals()[j]) ++j;
  if (j == out.size()) {
    throw PreconditionError("bid vector does not overbid any marginal value");
  }
  for (std::size_t r = j; r < out.size(); ++r) out[r] = v.marginals()[r];
  return BidVector(std::move(out));
}

BidVector underbid_dominator(const Valuation& v, const BidVector& b) {
  if (b.units() == 0 || !(b[0] < v.first_unit())) {
    throw PreconditionError("first bid is not below the first-unit value");
  }
  std::vector<Rational> out(b.bids());
  out[0] = v.first_unit();
  return BidVector(std::move(out));
}

namespace {

struct OpponentSpace {
  MixedRadix radix;
  std::vector<const VectorSet*> sets;
};

OpponentSpace opponent_space(const AuctionInstance& instance, std::size_t i,
                             const std::vector<VectorSet>& opponent_sets) {
  if (opponent_sets.size() != instance.bidders()) {
    throw StructuralError("need one opponent set per bidder");
  }
  std::vector<std::size_t> sizes;
  std::vector<const VectorSet*> sets;
  for (std::size_t o = 0; o < instance.bidders(); ++o) {
    if (o == i) continue;
    if (opponent_sets[o].empty()) {
      throw ValidationError("opponent " + std::to_string(o) +
                            " has an empty strategy set");
    }
    sizes.push_back(opponent_sets[o].size());
    sets.push_back(&opponent_sets[o]);
  }
  return {MixedRadix(std::move(sizes)), std::move(sets)};
}

// Evaluates one opponent profile; returns -1, 0, +1 for u(b') <, =, > u(b).
int compare_at(const AuctionInstance& instance, std::size_t i,
               const BidVector& b, const BidVector& dominator,
               const OpponentSpace& space, std::uint64_t index,
               std::vector<std::size_t>& digits,
               std::vector<const BidVector*>& row, AllocationRule rule) {
  space.radix.decode(index, digits);
  std::size_t d = 0;
  for (std::size_t o = 0; o < instance.bidders(); ++o) {
    row[o] = o == i ? &b : &(*space.sets[d])[digits[d]];
    if (o != i) ++d;
  }
  const DeviationKernel kernel(row, i, instance.units(), rule);
  const auto& v = instance.valuation(i);
  const Rational base = kernel.utility(v, b);
  const Rational alt = kernel.utility(v, dominator);
  if (alt < base) return -1;
  return alt > base ? 1 : 0;
}

BidProfile materialize(const AuctionInstance& instance, std::size_t i,
                       const BidVector& b, const OpponentSpace& space,
                       std::uint64_t index) {
  std::vector<std::size_t> digits;
  space.radix.decode(index, digits);
  std::vector<BidVector> vectors;
  std::size_t d = 0;
  for (std::size_t o = 0; o < instance.bidders(); ++o) {
    if (o == i) {
      vectors.push_back(b);
    } else {
      vectors.push_back((*space.sets[d])[digits[d]]);
      ++d;
    }
  }
  return BidProfile(std::move(vectors));
}

void check_budget(const OpponentSpace& space, const DominanceOptions& options) {
  if (space.radix.total() > options.max_profiles) {
    throw ResourceError("dominance check over too many opponent profiles",
                        space.radix.total(), options.max_profiles);
  }
}

}  // namespace

DominanceCheck compare_against_opponents_serial(
    const AuctionInstance& instance, std::size_t i, const BidVector& b,
    const BidVector& dominator, const std::vector<VectorSet>& opponent_sets,
    DominanceOptions options) {
  const auto space = opponent_space(instance, i, opponent_sets);
  check_budget(space, options);
  DominanceCheck out;
  std::vector<std::size_t> digits;
  std::vector<const BidVector*> row(instance.bidders());
  std::uint64_t first_worse = std::numeric_limits<std::uint64_t>::max();
  for (std::uint64_t idx = 0; idx < space.radix.total(); ++idx) {
    const int cmp = compare_at(instance, i, b, dominator, space, idx, digits,
                               row, options.rule);
    if (cmp < 0 && first_worse == std::numeric_limits<std::uint64_t>::max()) {
      first_worse = idx;
    }
    if (cmp > 0) out.sometimes_better = true;
  }
  out.profiles_checked = space.radix.total();
  if (first_worse != std::numeric_limits<std::uint64_t>::max()) {
    out.never_worse = false;
    out.worse_at = materialize(instance, i, b, space, first_worse);
  }
  return out;
}

DominanceCheck compare_against_opponents(
    const AuctionInstance& instance, std::size_t i, const BidVector& b,
    const BidVector& dominator, const std::vector<VectorSet>& opponent_sets,
    DominanceOptions options) {
  const auto space = opponent_space(instance, i, opponent_sets);
  check_budget(space, options);
  const auto total = static_cast<std::int64_t>(space.radix.total());
  std::uint64_t first_worse = std::numeric_limits<std::uint64_t>::max();
  bool better = false;
  ExceptionSlot errors;

#pragma omp parallel
  {
    std::vector<std::size_t> digits;
    std::vector<const BidVector*> row(instance.bidders());
    std::uint64_t local_worse = std::numeric_limits<std::uint64_t>::max();
    bool local_better = false;
#pragma omp for schedule(static) nowait
    for (std::int64_t idx = 0; idx < total; ++idx) {
      errors.run([&] {
        const int cmp =
            compare_at(instance, i, b, dominator, space,
                       static_cast<std::uint64_t>(idx), digits, row, options.rule);
        if (cmp < 0) {
          local_worse = std::min(local_worse, static_cast<std::uint64_t>(idx));
        }
        if (cmp > 0) local_better = true;
      });
    }
#pragma omp critical(upa_dominance_merge)
    {
      first_worse = std::min(first_worse, local_worse);
      better = better || local_better;
    }
  }
  errors.rethrow();

  DominanceCheck out;
  out.sometimes_better = better;
  out.profiles_checked = space.radix.total();
  if (first_worse != std::numeric_limits<std::uint64_t>::max()) {
    out.never_worse = false;
    out.worse_at = materialize(instance, i, b, space, first_worse);
  }
  return out;
}

bool is_weakly_dominated_by(const AuctionInstance& instance, std::size_t i,
                            const BidVector& b, const BidVector& dominator,
                            const std::vector<VectorSet>& opponent_sets,
                            DominanceOptions options) {
  return compare_against_opponents(instance, i, b, dominator, opponent_sets,
                                   options)
      .dominated();
}

std::vector<VectorSet> probe_sets(const AuctionInstance& instance,
                                  const Rational& epsilon,
                                  std::uint64_t budget) {
  if (epsilon <= Rational(0)) {
    throw ValidationError("grid step must be positive, got " + epsilon.str());
  }
  Rational cap;
  for (const auto& v : instance.valuations()) cap = max(cap, v.first_unit());
  auto base = lattice(cap, epsilon, budget);
  for (const auto& v : instance.valuations()) {
    base.insert(base.end(), v.marginals().begin(), v.marginals().end());
  }
  sort_unique(base);
  std::vector<Rational> values = base;
  for (std::size_t j = 1; j < base.size(); ++j) {
    values.push_back((base[j - 1] + base[j]) / Rational(2));
  }
  values.push_back(base.back() + epsilon);
  sort_unique(values);
  const auto shared = non_increasing_vectors(values, instance.units(), budget);
  return std::vector<VectorSet>(instance.bidders(), shared);
}

}  // namespace upa
