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

#include "upa/json_io.hpp"

#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "upa/errors.hpp"

namespace upa {
namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) {
    throw ValidationError(where + ": missing field \"" + key + "\"");
  }
  return *it;
}

const Json& array_field(const Json& j, const char* key,
                        const std::string& where) {
  const Json& a = field(j, key, where);
  if (!a.is_array()) {
    throw ValidationError(where + "." + key + ": expected an array");
  }
  return a;
}

int int_field(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_number_integer()) {
    throw ValidationError(where + "." + key + ": expected an integer");
  }
  return v.get<int>();
}

std::vector<Rational> rationals_from(const Json& a, const std::string& where) {
  std::vector<Rational> out;
  for (std::size_t j = 0; j < a.size(); ++j) {
    out.push_back(rational_from_json(a[j], where + "[" + std::to_string(j) + "]"));
  }
  return out;
}

Json rationals_to(const std::vector<Rational>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(to_json(x));
  return a;
}

Json indices(const std::vector<std::size_t>& xs) {
  Json a = Json::array();
  for (auto x : xs) a.push_back(x);
  return a;
}

template <typename T, typename F>
T annotate(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const StructuralError& e) {
    throw StructuralError(where + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

}  // namespace

Json to_json(const Rational& r) { return r.str(); }

void put_rational(Json& obj, const std::string& key, const Rational& r) {
  obj[key] = r.str();
  obj[key + "_float"] = r.to_double();
}

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    return annotate<Rational>(where, [&] {
      return Rational::parse(j.get<std::string>());
    });
  }
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw ValidationError(where + ": expected a \"p/q\" string");
}

Json instance_to_json(const AuctionInstance& instance) {
  Json bidders = Json::array();
  for (const auto& v : instance.valuations()) {
    bidders.push_back({{"marginals", rationals_to(v.marginals())}});
  }
  return {{"k", instance.units()}, {"bidders", bidders}};
}

AuctionInstance instance_from_json(const Json& j) {
  const int k = int_field(j, "k", "instance");
  const Json& bidders = array_field(j, "bidders", "instance");
  std::vector<Valuation> valuations;
  for (std::size_t i = 0; i < bidders.size(); ++i) {
    const std::string where = "bidders[" + std::to_string(i) + "]";
    auto m = rationals_from(array_field(bidders[i], "marginals", where),
                            where + ".marginals");
    valuations.push_back(annotate<Valuation>(where, [&] {
      return Valuation::padded(std::move(m), k);
    }));
  }
  return annotate<AuctionInstance>("instance", [&] {
    return AuctionInstance(k, std::move(valuations));
  });
}

Json profile_to_json(const BidProfile& profile) {
  Json bids = Json::array();
  for (const auto& b : profile.vectors()) bids.push_back(rationals_to(b.bids()));
  return {{"bids", bids}};
}

BidProfile profile_from_json(const Json& j, int units) {
  const Json& bids = array_field(j, "bids", "profile");
  std::vector<BidVector> vectors;
  for (std::size_t i = 0; i < bids.size(); ++i) {
    const std::string where = "bids[" + std::to_string(i) + "]";
    if (!bids[i].is_array()) throw ValidationError(where + ": expected an array");
    auto b = rationals_from(bids[i], where);
    vectors.push_back(annotate<BidVector>(where, [&] {
      return BidVector::padded(std::move(b), units);
    }));
  }
  return BidProfile(std::move(vectors));
}

Json outcome_to_json(const AuctionOutcome& outcome) {
  Json alloc = Json::array();
  for (int x : outcome.allocation) alloc.push_back(x);
  return {{"allocation", alloc},
          {"price", to_json(outcome.price)},
          {"winning_bids", rationals_to(outcome.winning_bids)}};
}

Json grid_summary(const StrategyGrid& grid) {
  Json sizes = Json::array();
  for (const auto& s : grid.vectors) sizes.push_back(s.size());
  return {{"epsilon", to_json(grid.epsilon)},
          {"per_bidder", sizes},
          {"profiles", grid.profile_count()}};
}

Json certificate_to_json(const PneCertificate& c) {
  Json alloc = Json::array();
  for (int x : c.allocation) alloc.push_back(x);
  Json j{{"profile", profile_to_json(c.profile)["bids"]},
         {"allocation", alloc},
         {"price", to_json(c.price)}};
  put_rational(j, "sw", c.welfare);
  put_rational(j, "sw_opt", c.optimal_welfare);
  put_rational(j, "ratio", c.ratio);
  j["partition"] = {{"W0", indices(c.partition.keeps_share)},
                    {"W1", indices(c.partition.loses_units)},
                    {"W2", indices(c.partition.extra_winners)}};
  put_rational(j, "eq1_bound", c.eq1_bound);
  return j;
}

Json game_to_json(const BayesianGame& game) {
  Json bidders = Json::array();
  for (std::size_t i = 0; i < game.bidders(); ++i) {
    Json types = Json::array();
    for (const auto& v : game.types(i)) {
      types.push_back({{"marginals", rationals_to(v.marginals())}});
    }
    bidders.push_back({{"types", types}, {"prior", rationals_to(game.prior(i))}});
  }
  return {{"k", game.units()}, {"bidders", bidders}};
}

BayesianGame game_from_json(const Json& j) {
  const int k = int_field(j, "k", "game");
  const Json& bidders = array_field(j, "bidders", "game");
  std::vector<std::vector<Valuation>> types;
  std::vector<std::vector<Rational>> priors;
  for (std::size_t i = 0; i < bidders.size(); ++i) {
    const std::string where = "bidders[" + std::to_string(i) + "]";
    const Json& ts = array_field(bidders[i], "types", where);
    auto& vs = types.emplace_back();
    for (std::size_t t = 0; t < ts.size(); ++t) {
      const std::string tw = where + ".types[" + std::to_string(t) + "]";
      auto m = rationals_from(array_field(ts[t], "marginals", tw), tw + ".marginals");
      vs.push_back(annotate<Valuation>(tw, [&] {
        return Valuation::padded(std::move(m), k);
      }));
    }
    priors.push_back(
        rationals_from(array_field(bidders[i], "prior", where), where + ".prior"));
  }
  return annotate<BayesianGame>("game", [&] {
    return BayesianGame(k, std::move(types), std::move(priors));
  });
}

Json strategy_to_json(const BayesStrategy& s) {
  Json bidders = Json::array();
  for (const auto& per_type : s.plays) {
    Json types = Json::array();
    for (const auto& m : per_type) {
      Json support = Json::array();
      for (const auto& [b, p] : m.support) {
        support.push_back({{"bids", rationals_to(b.bids())}, {"prob", to_json(p)}});
      }
      types.push_back({{"support", support}});
    }
    bidders.push_back({{"types", types}});
  }
  return {{"bidders", bidders}};
}

BayesStrategy strategy_from_json(const Json& j, int units) {
  const Json& bidders = array_field(j, "bidders", "strategy");
  BayesStrategy s;
  for (std::size_t i = 0; i < bidders.size(); ++i) {
    const std::string where = "bidders[" + std::to_string(i) + "]";
    const Json& ts = array_field(bidders[i], "types", where);
    auto& plays = s.plays.emplace_back();
    for (std::size_t t = 0; t < ts.size(); ++t) {
      const std::string tw = where + ".types[" + std::to_string(t) + "]";
      const Json& support = array_field(ts[t], "support", tw);
      MixedBid m;
      for (std::size_t e = 0; e < support.size(); ++e) {
        const std::string ew = tw + ".support[" + std::to_string(e) + "]";
        auto b = rationals_from(array_field(support[e], "bids", ew), ew + ".bids");
        auto vec = annotate<BidVector>(ew, [&] {
          return BidVector::padded(std::move(b), units);
        });
        m.support.emplace_back(std::move(vec),
                               rational_from_json(field(support[e], "prob", ew), ew + ".prob"));
      }
      plays.push_back(std::move(m));
    }
  }
  return s;
}

std::string content_hash(const Json& canonical) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : canonical.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 0xf];
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t p = 0; p + 1 < e.byte && p < text.size(); ++p) {
      if (text[p] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ValidationError(path + ":" + std::to_string(line) + ":" +
                          std::to_string(column) + ": malformed JSON");
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace upa
