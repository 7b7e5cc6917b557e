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

#include "upa/equilibrium.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "upa/errors.hpp"
#include "upa/kernel.hpp"
#include "upa/parallel.hpp"

namespace upa {
namespace {

void check_grid(const AuctionInstance& instance, const StrategyGrid& grid) {
  if (grid.vectors.size() != instance.bidders()) {
    throw StructuralError("grid has " + std::to_string(grid.vectors.size()) +
                          " strategy sets for " +
                          std::to_string(instance.bidders()) + " bidders");
  }
}

// Fast PNE test used by the enumerators: stops at the first profitable
// deviation.
bool no_profitable_deviation(const AuctionInstance& instance,
                             const BidProfile& profile,
                             const StrategyGrid& grid, AllocationRule rule) {
  for (std::size_t i = 0; i < instance.bidders(); ++i) {
    const DeviationKernel kernel(profile, i, rule);
    const auto& v = instance.valuation(i);
    const Rational current = kernel.utility(v, profile[i]);
    for (const auto& c : grid.vectors[i]) {
      if (kernel.utility(v, c) > current) return false;
    }
  }
  return true;
}

BidProfile assemble(const std::vector<VectorSet>& sets,
                    const std::vector<std::size_t>& digits) {
  std::vector<BidVector> vectors;
  vectors.reserve(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    vectors.push_back(sets[i][digits[i]]);
  }
  return BidProfile(std::move(vectors));
}

MixedRadix undominated_space(const std::vector<VectorSet>& sets,
                             const EnumerationOptions& options) {
  std::vector<std::size_t> sizes;
  for (const auto& s : sets) sizes.push_back(s.size());
  MixedRadix radix(std::move(sizes));
  if (radix.total() > options.max_profiles) {
    throw ResourceError("undominated profile space exceeds the budget",
                        radix.total(), options.max_profiles);
  }
  return radix;
}

}  // namespace

BestResponse best_response(const AuctionInstance& instance, std::size_t i,
                           const BidProfile& profile,
                           std::span<const BidVector> grid,
                           AllocationRule rule) {
  check_dimensions(instance, profile);
  if (grid.empty()) throw ValidationError("best response over an empty grid");
  const DeviationKernel kernel(profile, i, rule);
  const auto& v = instance.valuation(i);
  BestResponse best{grid.front(), kernel.utility(v, grid.front())};
  for (const auto& c : grid.subspan(1)) {
    const Rational u = kernel.utility(v, c);
    if (u > best.utility || (u == best.utility && c < best.bids)) {
      best = {c, u};
    }
  }
  return best;
}

PneVerdict verify_pne(const AuctionInstance& instance,
                      const BidProfile& profile, const StrategyGrid& grid,
                      AllocationRule rule) {
  check_dimensions(instance, profile);
  check_grid(instance, grid);
  for (std::size_t i = 0; i < instance.bidders(); ++i) {
    if (grid.vectors[i].empty()) continue;
    const Rational current = utility(instance, profile, i, rule);
    auto br = best_response(instance, i, profile, grid.vectors[i], rule);
    if (br.utility > current) {
      return {Deviation{i, std::move(br.bids), br.utility - current}};
    }
  }
  return {};
}

WinnerPartition partition_winners(const Allocation& x,
                                  const Allocation& x_opt) {
  if (x.size() != x_opt.size()) {
    throw StructuralError("allocations differ in bidder count");
  }
  WinnerPartition p;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x_opt[i] > 0) {
      (x[i] >= x_opt[i] ? p.keeps_share : p.loses_units).push_back(i);
    } else if (x[i] > 0) {
      p.extra_winners.push_back(i);
    }
  }
  return p;
}

PneCertificate make_certificate(const AuctionInstance& instance,
                                const BidProfile& profile,
                                AllocationRule rule) {
  const auto outcome = allocate(instance, profile, rule);
  const auto opt = optimal_allocation(instance);
  PneCertificate c;
  c.profile = profile;
  c.allocation = outcome.allocation;
  c.price = outcome.price;
  c.welfare = social_welfare(instance, outcome.allocation);
  c.optimal_welfare = opt.welfare;
  if (c.optimal_welfare.is_zero()) {
    c.ratio = Rational(1);
  } else if (c.welfare.is_zero()) {
    throw std::domain_error("equilibrium welfare is zero");
  } else {
    c.ratio = c.optimal_welfare / c.welfare;
  }
  c.partition = partition_winners(outcome.allocation, opt.allocation);
  c.eq1_bound = poa_certificate(instance, profile, rule);
  return c;
}

std::vector<VectorSet> undominated_sets(const AuctionInstance& instance,
                                        const StrategyGrid& grid) {
  check_grid(instance, grid);
  std::vector<VectorSet> sets;
  for (std::size_t i = 0; i < instance.bidders(); ++i) {
    sets.push_back(undominated_set(instance.valuation(i), grid.vectors[i]));
  }
  return sets;
}

std::vector<PneCertificate> enumerate_undominated_pne_serial(
    const AuctionInstance& instance, const StrategyGrid& grid,
    EnumerationOptions options) {
  const auto sets = undominated_sets(instance, grid);
  const auto radix = undominated_space(sets, options);
  std::vector<PneCertificate> out;
  std::vector<std::size_t> digits;
  for (std::uint64_t idx = 0; idx < radix.total(); ++idx) {
    radix.decode(idx, digits);
    auto profile = assemble(sets, digits);
    if (no_profitable_deviation(instance, profile, grid, options.rule)) {
      out.push_back(make_certificate(instance, profile, options.rule));
    }
  }
  return out;
}

std::vector<PneCertificate> enumerate_undominated_pne(
    const AuctionInstance& instance, const StrategyGrid& grid,
    EnumerationOptions options) {
  const auto sets = undominated_sets(instance, grid);
  const auto radix = undominated_space(sets, options);
  const auto total = static_cast<std::int64_t>(radix.total());

  std::vector<std::pair<std::uint64_t, PneCertificate>> found;
  ExceptionSlot errors;
#pragma omp parallel
  {
    std::vector<std::pair<std::uint64_t, PneCertificate>> local;
    std::vector<std::size_t> digits;
#pragma omp for schedule(dynamic, 16) nowait
    for (std::int64_t idx = 0; idx < total; ++idx) {
      errors.run([&] {
        radix.decode(static_cast<std::uint64_t>(idx), digits);
        auto profile = assemble(sets, digits);
        if (no_profitable_deviation(instance, profile, grid, options.rule)) {
          local.emplace_back(static_cast<std::uint64_t>(idx),
                             make_certificate(instance, profile, options.rule));
        }
      });
    }
#pragma omp critical(upa_pne_merge)
    found.insert(found.end(), std::make_move_iterator(local.begin()),
                 std::make_move_iterator(local.end()));
  }
  errors.rethrow();

  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<PneCertificate> out;
  out.reserve(found.size());
  for (auto& [idx, cert] : found) out.push_back(std::move(cert));
  return out;
}

BidProfile normalize_pne(const AuctionInstance& instance,
                         const BidProfile& profile, const StrategyGrid& grid,
                         AllocationRule rule) {
  check_dimensions(instance, profile);
  for (std::size_t i = 0; i < instance.bidders(); ++i) {
    if (!is_undominated_candidate(instance.valuation(i), profile[i])) {
      throw PreconditionError("bidder " + std::to_string(i) +
                              " does not play an undominated vector");
    }
  }
  if (!verify_pne(instance, profile, grid, rule).holds()) {
    throw PreconditionError("profile is not a pure Nash equilibrium");
  }

  const auto start = allocate(instance, profile, rule);
  std::vector<std::vector<Rational>> bids;
  for (std::size_t i = 0; i < instance.bidders(); ++i) {
    bids.push_back(profile[i].bids());
    const auto& m = instance.valuation(i).marginals();
    for (int r = 0; r < start.allocation[i]; ++r) {
      bids[i][static_cast<std::size_t>(r)] = m[static_cast<std::size_t>(r)];
    }
  }

  auto rebuild = [&] {
    std::vector<BidVector> vectors;
    for (auto& b : bids) vectors.emplace_back(b);
    return BidProfile(std::move(vectors));
  };
  auto is_first_unit_value = [&](const Rational& p) {
    for (const auto& v : instance.valuations()) {
      if (v.first_unit() == p) return true;
    }
    return false;
  };

  BidProfile current = rebuild();
  for (;;) {
    const auto outcome = allocate(instance, current, rule);
    const Rational& p = outcome.price;
    if (p.is_zero() || is_first_unit_value(p)) break;
    // Every losing bid equal to the price goes, together with the bidder's
    // later bids; the price strictly drops each round.
    for (std::size_t i = 0; i < bids.size(); ++i) {
      for (std::size_t r = static_cast<std::size_t>(outcome.allocation[i]);
           r < bids[i].size(); ++r) {
        if (bids[i][r] == p) {
          std::fill(bids[i].begin() + static_cast<long>(r), bids[i].end(),
                    Rational(0));
          break;
        }
      }
    }
    current = rebuild();
  }
  return current;
}

Rational poa_certificate(const AuctionInstance& instance,
                         const BidProfile& profile, AllocationRule rule) {
  const auto x = allocate(instance, profile, rule).allocation;
  const auto beta = allocate(instance, profile).winning_bids;
  const auto opt = optimal_allocation(instance);
  Rational bound(1);
  for (std::size_t i = 0; i < instance.bidders(); ++i) {
    const int missing = opt.allocation[i] - x[i];
    if (missing <= 0) continue;
    const auto& v = instance.valuation(i);
    Rational den = v.value(x[i]);
    for (int j = 0; j < missing; ++j) den += beta[static_cast<std::size_t>(j)];
    const Rational& num = v.value(opt.allocation[i]);
    if (den.is_zero()) {
      if (num.is_zero()) continue;
      throw std::domain_error("certificate denominator vanishes for bidder " +
                              std::to_string(i));
    }
    bound = max(bound, num / den);
  }
  return bound;
}

bool check_eq2_deviations(const AuctionInstance& instance,
                          const BidProfile& profile, AllocationRule rule) {
  const auto outcome = allocate(instance, profile, rule);
  const auto beta = allocate(instance, profile).winning_bids;
  const auto opt = optimal_allocation(instance);
  for (std::size_t i = 0; i < instance.bidders(); ++i) {
    const int xi = outcome.allocation[i];
    const int r = opt.allocation[i] - xi;
    const auto& v = instance.valuation(i);
    for (int j = 1; j <= r; ++j) {
      const Rational need =
          (v.value(xi + j) - v.value(xi) + Rational(xi) * outcome.price) /
          Rational(xi + j);
      if (beta[static_cast<std::size_t>(j - 1)] < need) return false;
    }
  }
  return true;
}

Rational welfare_lower_bound(const AuctionInstance& instance,
                             const BidProfile& profile, AllocationRule rule) {
  const auto x = allocate(instance, profile, rule).allocation;
  const auto beta = allocate(instance, profile).winning_bids;
  const auto opt = optimal_allocation(instance);
  const auto part = partition_winners(x, opt.allocation);
  Rational bound;
  for (auto i : part.keeps_share) {
    bound += instance.valuation(i).value(opt.allocation[i]);
  }
  for (auto i : part.loses_units) {
    bound += instance.valuation(i).value(x[i]);
    for (int j = 0; j < opt.allocation[i] - x[i]; ++j) {
      bound += beta[static_cast<std::size_t>(j)];
    }
  }
  return bound;
}

}  // namespace upa
