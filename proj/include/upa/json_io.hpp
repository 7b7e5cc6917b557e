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

#ifndef UPA_JSON_IO_HPP_
#define UPA_JSON_IO_HPP_

#include <cstdint>
#include <string>

#include "json.hpp"
#include "upa/auction.hpp"
#include "upa/bayesian.hpp"
#include "upa/equilibrium.hpp"
#include "upa/strategies.hpp"

namespace upa {

using Json = nlohmann::ordered_json;

// Rationals are "p/q" strings; integers are accepted on input.
Json to_json(const Rational& r);
// Sets obj[key] = "p/q" and obj[key + "_float"] to a display-only double.
void put_rational(Json& obj, const std::string& key, const Rational& r);
Rational rational_from_json(const Json& j, const std::string& where);

Json instance_to_json(const AuctionInstance& instance);
// Throws ValidationError naming the offending field. Short marginal lists
// are zero-padded to k.
AuctionInstance instance_from_json(const Json& j);

Json profile_to_json(const BidProfile& profile);
BidProfile profile_from_json(const Json& j, int units);

Json outcome_to_json(const AuctionOutcome& outcome);
Json grid_summary(const StrategyGrid& grid);
Json certificate_to_json(const PneCertificate& c);

Json game_to_json(const BayesianGame& game);
BayesianGame game_from_json(const Json& j);
Json strategy_to_json(const BayesStrategy& s);
BayesStrategy strategy_from_json(const Json& j, int units);

// FNV-1a over the compact dump of the canonical JSON form, as 16 hex digits.
std::string content_hash(const Json& canonical);

// Reads and parses a file; syntax errors become ValidationError with the
// line and column.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace upa

#endif  // UPA_JSON_IO_HPP_
