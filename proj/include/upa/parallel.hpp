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

#ifndef UPA_PARALLEL_HPP_
#define UPA_PARALLEL_HPP_

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <vector>

namespace upa {

// Worker count for OpenMP regions; values < 1 restore the runtime default.
void set_jobs(int jobs);
int jobs();

// Mixed-radix counter over a product of finite sets. Digit 0 is the most
// significant, so increasing indices walk the product lexicographically.
class MixedRadix {
 public:
  explicit MixedRadix(std::vector<std::size_t> sizes);

  // Saturates at UINT64_MAX.
  std::uint64_t total() const { return total_; }
  std::size_t width() const { return sizes_.size(); }
  void decode(std::uint64_t index, std::vector<std::size_t>& digits) const;

 private:
  std::vector<std::size_t> sizes_;
  std::uint64_t total_;
};

// Captures the first exception thrown inside an OpenMP region so it can be
// rethrown on the calling thread.
class ExceptionSlot {
 public:
  template <typename F>
  void run(F&& f) {
    try {
      f();
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu_);
      if (!error_) error_ = std::current_exception();
      failed_.store(true, std::memory_order_relaxed);
    }
  }
  bool failed() const { return failed_.load(std::memory_order_relaxed); }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mu_;
  std::exception_ptr error_;
  std::atomic<bool> failed_{false};
};

}  // namespace upa

#endif  // UPA_PARALLEL_HPP_
