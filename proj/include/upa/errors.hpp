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

#ifndef UPA_ERRORS_HPP_
#define UPA_ERRORS_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace upa {

// Malformed input: non-monotone bids, bad priors, allocations over k units.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Profile/instance dimensions disagree.
class StructuralError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// An operation was called outside its contract (e.g. normalizing a non-PNE).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A combinatorial enumeration would exceed the configured budget.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::uint64_t required,
                std::uint64_t budget)
      : std::runtime_error(what + " (required " + std::to_string(required) +
                           ", budget " + std::to_string(budget) + ")"),
        required_(required),
        budget_(budget) {}

  std::uint64_t required() const { return required_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

}  // namespace upa

#endif  // UPA_ERRORS_HPP_
