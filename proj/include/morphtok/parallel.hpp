// Copyright 2026 The morphtok Authors
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

#ifndef MORPHTOK_PARALLEL_HPP_
#define MORPHTOK_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace morphtok {

// Work is cut into blocks of this many items regardless of the worker count,
// so per-block partial results (and their reduction order) never depend on
// how many threads ran.
inline constexpr std::size_t kBlockSize = 256;

inline std::size_t block_count(std::size_t n) {
  return (n + kBlockSize - 1) / kBlockSize;
}

// Calls fn(block, begin, end) for every block of [0, n). Blocks are claimed
// dynamically by up to `workers` threads; the first exception is rethrown.
template <typename Fn>
void for_each_block(std::size_t n, unsigned workers, Fn&& fn) {
  const std::size_t blocks = block_count(n);
  const auto run = [&](std::size_t b) {
    const std::size_t begin = b * kBlockSize;
    fn(b, begin, std::min(n, begin + kBlockSize));
  };
  if (workers <= 1 || blocks <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) run(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  const unsigned n_threads =
      static_cast<unsigned>(std::min<std::size_t>(workers, blocks));
  pool.reserve(n_threads);
  for (unsigned t = 0; t < n_threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t b = next++; b < blocks; b = next++) {
        try {
          run(b);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace morphtok

#endif  // MORPHTOK_PARALLEL_HPP_
