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

// Deterministic data-parallel helpers. Work is split into a fixed number of
// chunks that depends only on the problem size, never on the thread count, and
// every reduction is applied in index order afterwards. Results are therefore
// bit-identical for any value of APKIT_THREADS.

#ifndef APKIT_PARALLEL_HPP_
#define APKIT_PARALLEL_HPP_

#include <cstddef>
#include <exception>
#include <span>
#include <type_traits>
#include <vector>

namespace apkit {

/// Worker count: hardware concurrency, capped by the APKIT_THREADS
/// environment variable when it holds a positive integer.
int thread_count();

/// Overrides thread_count() for the current process (0 restores the default).
void set_thread_count(int threads);

namespace detail {
void run_chunks(std::size_t chunks, void (*body)(void*, std::size_t), void* ctx);
}  // namespace detail

/// Calls f(i) for every i in [0, n). Calls for distinct i may run
/// concurrently, so f must only write to per-index storage.
template <typename F>
void parallel_for(std::size_t n, F&& f) {
  if (n == 0) return;
  constexpr std::size_t kGrain = 64;
  const std::size_t chunks = (n + kGrain - 1) / kGrain;
  struct Ctx {
    F* f;
    std::size_t n;
  } ctx{&f, n};
  detail::run_chunks(
      chunks,
      [](void* raw, std::size_t chunk) {
        auto* c = static_cast<Ctx*>(raw);
        const std::size_t lo = chunk * kGrain;
        const std::size_t hi = lo + kGrain < c->n ? lo + kGrain : c->n;
        for (std::size_t i = lo; i < hi; ++i) (*c->f)(i);
      },
      &ctx);
}

/// Evaluates f over [0, n) into a vector, in parallel.
template <typename F>
auto parallel_map(std::size_t n, F&& f) {
  using R = std::decay_t<decltype(f(std::size_t{0}))>;
  std::vector<R> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = f(i); });
  return out;
}

/// Pairwise (cascade) summation; the tree shape depends only on the length.
template <typename T>
T pairwise_sum(std::span<const T> v) {
  constexpr std::size_t kLeaf = 16;
  if (v.size() <= kLeaf) {
    T acc{};
    for (const T& x : v) acc += x;
    return acc;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

template <typename T>
T pairwise_sum(const std::vector<T>& v) {
  return pairwise_sum(std::span<const T>(v));
}

/// Index of the first maximum (smallest index wins ties). Empty input gives 0.
template <typename T>
std::size_t argmax_first(std::span<const T> v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

}  // namespace apkit

#endif  // APKIT_PARALLEL_HPP_
