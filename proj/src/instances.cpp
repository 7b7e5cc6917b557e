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

#include "upa/instances.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "upa/errors.hpp"

namespace upa {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % bound;
}

int SplitMix64::between(int lo, int hi) {
  return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
}

namespace {

Valuation marginals_of(std::vector<Rational> m) { return Valuation(std::move(m)); }

BidVector single_unit_bid(const Rational& value, int k) {
  std::vector<Rational> b(static_cast<std::size_t>(k));
  b[0] = value;
  return BidVector(std::move(b));
}

}  // namespace

GeneratedCase paper_example(int k) {
  std::vector<Rational> others;
  Rational ratio;
  switch (k) {
    case 2:
      others = {Rational(1, 2)};
      ratio = Rational(4, 3);
      break;
    case 3:
      others = {Rational(2, 3), Rational(1, 2)};
      ratio = Rational(18, 13);
      break;
    case 4:
      others = {Rational(1, 2), Rational(2, 3), Rational(3, 4)};
      ratio = Rational(48, 35);
      break;
    default:
      throw ValidationError("worked examples exist for k = 2, 3, 4 only");
  }
  std::vector<Valuation> valuations;
  std::vector<BidVector> bids;
  valuations.push_back(Valuation(std::vector<Rational>(k, Rational(1))));
  bids.push_back(single_unit_bid(Rational(1), k));
  for (const auto& c : others) {
    valuations.push_back(Valuation::padded({c}, k));
    bids.push_back(single_unit_bid(c, k));
  }
  return {AuctionInstance(k, std::move(valuations)), BidProfile(std::move(bids)),
          ratio, "paper-k" + std::to_string(k)};
}

Rational harmonic_number(int m) {
  Rational h;
  for (int j = 1; j <= m; ++j) h += Rational(1, j);
  return h;
}

int harmonic_q(int k) {
  // e = sum 1/n!; truncating at N leaves a tail in (0, 1/(N! N)). With
  // N = 28 the tail is below 1.2e-31. Everything is scaled by N! * N so the
  // bounds are integers: lower = A N, upper = A N + 1 over D = N! N.
  constexpr int kTerms = 28;
  __int128 fact = 1;
  for (int n = 2; n <= kTerms; ++n) fact *= n;
  __int128 a = 0;
  __int128 term = fact;  // N!/n!, starting at n = 0
  for (int n = 0; n <= kTerms; ++n) {
    a += term;
    if (n < kTerms) term /= (n + 1);
  }
  const __int128 lower = a * kTerms;
  const __int128 upper = lower + 1;
  const __int128 den = fact * kTerms;

  // q = floor(k/e - 1) is the largest q with (q + 1) e < k.
  int q = -1;
  for (;;) {
    const __int128 next = q + 2;
    if (next * upper < static_cast<__int128>(k) * den) {
      ++q;
      continue;
    }
    if (next * lower > static_cast<__int128>(k) * den) break;
    throw std::runtime_error("cannot decide floor(k/e - 1) at this precision");
  }
  // Guard: |k/e - (q + 2)| and |k/e - (q + 1)| must both exceed 1e-15,
  // i.e. |k - m e| > 1e-15 e for m = q + 1, q + 2. Checked with e < 3.
  const __int128 scale = 1'000'000'000'000'000;  // 1e15
  for (const __int128 m : {static_cast<__int128>(q) + 1,
                           static_cast<__int128>(q) + 2}) {
    // Smallest possible |k D - m e D| given e in (lower, upper) / D.
    const __int128 kd = static_cast<__int128>(k) * den;
    const __int128 lo = m * lower;
    const __int128 hi = m * upper;
    __int128 gap;
    if (kd >= hi) {
      gap = kd - hi;
    } else if (kd <= lo) {
      gap = lo - kd;
    } else {
      gap = 0;
    }
    // gap / D <= 3e-15, rearranged so nothing overflows.
    if (gap <= 3 * den / scale) {
      throw std::runtime_error("k/e - 1 is too close to an integer");
    }
  }
  return q;
}

GeneratedCase harmonic_instance(int k) {
  if (k < 9) throw ValidationError("the harmonic family needs k >= 9");
  const int q = harmonic_q(k);
  const int r = k - q;

  std::vector<Rational> m2(static_cast<std::size_t>(k));
  for (int j = 1; j <= r; ++j) {
    m2[static_cast<std::size_t>(j - 1)] = Rational(r - j + 1, k - j + 1);
  }
  std::vector<Rational> b1(static_cast<std::size_t>(k));
  std::fill(b1.begin(), b1.begin() + q, Rational(1));

  auto v2 = marginals_of(m2);
  AuctionInstance instance(
      k, {Valuation(std::vector<Rational>(static_cast<std::size_t>(k), Rational(1))), v2});
  BidProfile eq({BidVector(std::move(b1)), BidVector::truthful(v2)});
  const Rational welfare =
      Rational(k) - Rational(q) * (harmonic_number(k) - harmonic_number(q));
  return {std::move(instance), std::move(eq), Rational(k) / welfare,
          "harmonic-k" + std::to_string(k)};
}

StrategyGrid harmonic_deviation_grid(const GeneratedCase& c) {
  const auto& instance = c.instance;
  const int k = instance.units();
  const auto& own = c.equilibrium[1].bids();

  std::vector<Rational> values;
  for (const auto& b : own) {
    if (!b.is_zero()) values.push_back(b);
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  StrategyGrid grid;
  grid.epsilon = Rational(1);
  grid.value_caps = {instance.valuation(0).first_unit(),
                     instance.valuation(1).first_unit()};
  grid.vectors.resize(2);
  auto& first = grid.vectors[0];
  for (int ones = 0; ones <= k; ++ones) {
    std::vector<Rational> b(static_cast<std::size_t>(k));
    std::fill(b.begin(), b.begin() + ones, Rational(1));
    first.emplace_back(b);
    for (const auto& value : values) {
      for (int t = 1; ones + t <= k; ++t) {
        auto d = b;
        std::fill(d.begin() + ones, d.begin() + ones + t, value);
        first.emplace_back(std::move(d));
      }
    }
  }
  const auto& m2 = instance.valuation(1).marginals();
  for (int j = 0; j <= k; ++j) {
    std::vector<Rational> b(static_cast<std::size_t>(k));
    std::copy(m2.begin(), m2.begin() + j, b.begin());
    grid.vectors[1].emplace_back(std::move(b));
  }
  for (auto& set : grid.vectors) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
  }
  return grid;
}

AuctionInstance random_submodular(int n, int k, std::uint64_t seed,
                                  int levels) {
  if (n < 1 || k < 1) throw ValidationError("need n, k >= 1");
  if (levels < 2) throw ValidationError("need levels >= 2");
  SplitMix64 rng(seed);
  std::vector<std::vector<Rational>> draws;
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> m;
    for (int j = 0; j < k; ++j) {
      m.emplace_back(static_cast<std::int64_t>(
                         rng.below(static_cast<std::uint64_t>(levels) + 1)),
                     levels);
    }
    std::sort(m.begin(), m.end(), std::greater<>());
    draws.push_back(std::move(m));
  }
  const bool all_zero = std::all_of(draws.begin(), draws.end(),
                                    [](const auto& m) { return m[0].is_zero(); });
  if (all_zero) draws[0][0] = Rational(1, levels);
  std::vector<Valuation> valuations;
  for (auto& m : draws) valuations.emplace_back(std::move(m));
  return AuctionInstance(k, std::move(valuations));
}

}  // namespace upa
