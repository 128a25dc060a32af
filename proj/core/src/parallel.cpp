// Copyright 2026 The apkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "apkit/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace apkit {
namespace {

std::atomic<int> g_override{0};

int env_threads() {
  const char* env = std::getenv("APKIT_THREADS");
  if (env == nullptr) return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || v <= 0) return 0;
  return static_cast<int>(std::min<long>(v, 1024));
}

}  // namespace

int thread_count() {
  if (const int o = g_override.load(); o > 0) return o;
  const int hw = std::max(1u, std::thread::hardware_concurrency());
  const int cap = env_threads();
  return cap > 0 ? std::min(hw, cap) : hw;
}

void set_thread_count(int threads) { g_override.store(std::max(0, threads)); }

namespace detail {

void run_chunks(std::size_t chunks, void (*body)(void*, std::size_t), void* ctx) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(thread_count()), chunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) body(ctx, c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr first_err;
  std::size_t first_err_chunk = chunks;
  auto work = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        body(ctx, c);
      } catch (...) {
        std::lock_guard lock(err_mu);
        // report the error of the lowest chunk so failures are reproducible
        if (c < first_err_chunk) {
          first_err_chunk = c;
          first_err = std::current_exception();
        }
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  pool.clear();
  if (first_err) std::rethrow_exception(first_err);
}

}  // namespace detail
}  // namespace apkit
