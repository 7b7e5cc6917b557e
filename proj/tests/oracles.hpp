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


// Brute-force references shared by the unit tests and the acceptance run.
// They use allocate() and utility() directly and nothing from the kernels.

#ifndef UPA_TESTS_ORACLES_HPP_
#define UPA_TESTS_ORACLES_HPP_

#include <cstddef>
#include <vector>

#include "upa/auction.hpp"
#include "upa/bayesian.hpp"
#include "upa/strategies.hpp"

namespace upa::testing {

// Tests every profile of the undominated product against every grid
// deviation using allocate() only.
inline std::vector<BidProfile> OracleEnumeration(const AuctionInstance& inst,
                                                 const StrategyGrid& grid) {
  const std::size_t n = inst.bidders();
  std::vector<VectorSet> und;
  for (std::size_t i = 0; i < n; ++i) {
    VectorSet s;
    for (const auto& b : grid.vectors[i]) {
      if (b[0] == inst.valuation(i).first_unit() &&
          is_conservative(inst.valuation(i), b)) {
        s.push_back(b);
      }
    }
    und.push_back(s);
  }
  std::vector<BidProfile> out;
  std::vector<std::size_t> idx(n, 0);
  for (const auto& s : und) {
    if (s.empty()) return out;
  }
  while (true) {
    std::vector<BidVector> bs;
    for (std::size_t i = 0; i < n; ++i) bs.push_back(und[i][idx[i]]);
    const BidProfile p(bs);
    bool stable = true;
    for (std::size_t i = 0; i < n && stable; ++i) {
      const Rational u = utility(inst, p, i);
      for (const auto& c : grid.vectors[i]) {
        if (utility(inst, p.with(i, c), i) > u) {
          stable = false;
          break;
        }
      }
    }
    if (stable) out.push_back(p);
    std::size_t d = n;
    while (d > 0) {
      --d;
      if (++idx[d] < und[d].size()) break;
      idx[d] = 0;
      if (d == 0) return out;
    }
  }
}

// Two bidders with two types each.
// Independent oracle: expected utilities straight from allocate() over
// every joint type profile, for every pure map of types to grid vectors.
inline std::vector<BayesStrategy> OracleBne(const BayesianGame& g, const BayesGrids& grids,
                                            bool undominated_only) {
  std::vector<std::vector<VectorSet>> cand(2);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t t = 0; t < 2; ++t) {
      VectorSet s;
      for (const auto& b : grids.sets[i][t]) {
        const auto& m = g.type(i, t).marginals();
        bool keep = true;
        if (undominated_only) {
          keep = b[0] == m[0];
          for (std::size_t j = 0; j < m.size(); ++j) keep = keep && b[j] <= m[j];
        }
        if (keep) s.push_back(b);
      }
      cand[i].push_back(s);
    }
  }
  auto eu = [&](const std::vector<std::vector<BidVector>>& plan, std::size_t i,
                std::size_t t, const BidVector& c) {
    const std::size_t o = 1 - i;
    Rational total;
    for (std::size_t w = 0; w < 2; ++w) {
      std::vector<Valuation> vs(2);
      std::vector<BidVector> bs(2);
      vs[i] = g.type(i, t);
      vs[o] = g.type(o, w);
      bs[i] = c;
      bs[o] = plan[o][w];
      total += g.prior(o)[w] *
               utility(AuctionInstance(g.units(), vs), BidProfile(bs), i);
    }
    return total;
  };
  std::vector<BayesStrategy> out;
  for (const auto& a0 : cand[0][0])
    for (const auto& a1 : cand[0][1])
      for (const auto& b0 : cand[1][0])
        for (const auto& b1 : cand[1][1]) {
          const std::vector<std::vector<BidVector>> plan{{a0, a1}, {b0, b1}};
          bool ok = true;
          for (std::size_t i = 0; i < 2 && ok; ++i) {
            for (std::size_t t = 0; t < 2 && ok; ++t) {
              const Rational now = eu(plan, i, t, plan[i][t]);
              for (const auto& c : grids.sets[i][t]) {
                if (eu(plan, i, t, c) > now) {
                  ok = false;
                  break;
                }
              }
            }
          }
          if (ok) out.push_back(BayesStrategy::pure(plan));
        }
  return out;
}

}  // namespace upa::testing

#endif  // UPA_TESTS_ORACLES_HPP_
