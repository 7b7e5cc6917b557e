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

#include "upa/parallel.hpp"

#include "upa/rational.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace upa {
namespace {
int default_jobs() {
#ifdef _OPENMP
  static const int n = omp_get_max_threads();
  return n;
#else
  return 1;
#endif
}
}  // namespace

void set_jobs(int jobs) {
#ifdef _OPENMP
  omp_set_num_threads(jobs < 1 ? default_jobs() : jobs);
#else
  (void)jobs;
#endif
}

int jobs() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return default_jobs();
#endif
}

MixedRadix::MixedRadix(std::vector<std::size_t> sizes)
    : sizes_(std::move(sizes)), total_(1) {
  for (auto s : sizes_) total_ = saturating_mul(total_, s);
}

void MixedRadix::decode(std::uint64_t index,
                        std::vector<std::size_t>& digits) const {
  digits.resize(sizes_.size());
  for (std::size_t d = sizes_.size(); d-- > 0;) {
    digits[d] = static_cast<std::size_t>(index % sizes_[d]);
    index /= sizes_[d];
  }
}

}  // namespace upa
