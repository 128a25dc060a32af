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

#ifndef APKIT_BOX_SUM_HPP_
#define APKIT_BOX_SUM_HPP_

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "apkit/domain.hpp"
#include "apkit/error.hpp"

namespace apkit {

/// Summed-area table over a sampled domain, accumulated in long double.
/// Box sums on wrapping axes may start anywhere and span several periods.
template <typename T>
class BoxSum {
 public:
  BoxSum(const DomainSpec& domain, std::span<const T> values)
      : shape_(domain.shape()) {
    const std::size_t d = shape_.size();
    wraps_.resize(d);
    for (std::size_t a = 0; a < d; ++a) wraps_[a] = domain.wraps(a);
    pstride_.assign(d, 1);
    std::size_t total = 1;
    for (std::size_t a = d; a-- > 0;) {
      pstride_[a] = total;
      total *= shape_[a] + 1;
    }
    table_.assign(total, T{});
    // scatter values into the (n+1)^d table shifted by one on every axis
    CellIndex cell(d, 0);
    for (std::size_t flat = 0; flat < values.size(); ++flat) {
      std::size_t p = 0;
      for (std::size_t a = 0; a < d; ++a) p += (static_cast<std::size_t>(cell[a]) + 1) * pstride_[a];
      table_[p] = values[flat];
      for (std::size_t a = d; a-- > 0;) {
        if (++cell[a] < static_cast<std::int64_t>(shape_[a])) break;
        cell[a] = 0;
      }
    }
    for (std::size_t a = 0; a < d; ++a) {
      const std::size_t stride = pstride_[a];
      const std::size_t len = shape_[a] + 1;
      for (std::size_t p = 0; p < total; ++p) {
        const std::size_t i = (p / stride) % len;
        if (i > 0) table_[p] += table_[p - stride];
      }
    }
    if (d > 0) period_total_ = table_.back();
  }

  /// Sum over cells [start, start + count) per axis.
  T sum(std::span<const std::int64_t> start, std::span<const std::size_t> count) const {
    const std::size_t d = shape_.size();
    if (d == 1) return sum_1d(start[0], count[0]);
    std::vector<std::vector<Segment>> segs(d);
    for (std::size_t a = 0; a < d; ++a) segs[a] = segments(a, start[a], count[a]);
    T total{};
    std::vector<std::size_t> pick(d, 0);
    for (;;) {
      long double mult = 1.0L;
      std::vector<std::int64_t> lo(d), hi(d);
      for (std::size_t a = 0; a < d; ++a) {
        const Segment& s = segs[a][pick[a]];
        lo[a] = s.lo;
        hi[a] = s.hi;
        mult *= s.mult;
      }
      total += corner_sum(lo, hi) * mult;
      std::size_t a = d;
      while (a-- > 0) {
        if (++pick[a] < segs[a].size()) break;
        pick[a] = 0;
      }
      if (a == static_cast<std::size_t>(-1)) break;
    }
    return total;
  }

  T sum_1d(std::int64_t start, std::size_t count) const {
    const auto n = static_cast<std::int64_t>(shape_[0]);
    if (!wraps_[0]) {
      check_range(start, count, n);
      return table_[static_cast<std::size_t>(start) + count] - table_[static_cast<std::size_t>(start)];
    }
    std::int64_t s = start % n;
    if (s < 0) s += n;
    const auto c = static_cast<std::int64_t>(count);
    const std::int64_t periods = c / n;
    const std::int64_t rem = c % n;
    T total = period_total_ * static_cast<long double>(periods);
    if (s + rem <= n) {
      total += table_[static_cast<std::size_t>(s + rem)] - table_[static_cast<std::size_t>(s)];
    } else {
      total += table_[static_cast<std::size_t>(n)] - table_[static_cast<std::size_t>(s)];
      total += table_[static_cast<std::size_t>(s + rem - n)];
    }
    return total;
  }

 private:
  struct Segment {
    std::int64_t lo;
    std::int64_t hi;
    long double mult;
  };

  static void check_range(std::int64_t start, std::size_t count, std::int64_t n) {
    if (start < 0 || start + static_cast<std::int64_t>(count) > n)
      throw SupportError("box leaves a non-wrapping domain");
  }

  std::vector<Segment> segments(std::size_t a, std::int64_t start, std::size_t count) const {
    const auto n = static_cast<std::int64_t>(shape_[a]);
    if (!wraps_[a]) {
      check_range(start, count, n);
      return {{start, start + static_cast<std::int64_t>(count), 1.0L}};
    }
    std::vector<Segment> out;
    std::int64_t s = start % n;
    if (s < 0) s += n;
    const auto c = static_cast<std::int64_t>(count);
    if (c / n > 0) out.push_back({0, n, static_cast<long double>(c / n)});
    const std::int64_t rem = c % n;
    if (rem > 0) {
      if (s + rem <= n) {
        out.push_back({s, s + rem, 1.0L});
      } else {
        out.push_back({s, n, 1.0L});
        out.push_back({0, s + rem - n, 1.0L});
      }
    }
    if (out.empty()) out.push_back({0, 0, 0.0L});
    return out;
  }

  T corner_sum(const std::vector<std::int64_t>& lo, const std::vector<std::int64_t>& hi) const {
    const std::size_t d = lo.size();
    T acc{};
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
      std::size_t p = 0;
      int parity = 0;
      for (std::size_t a = 0; a < d; ++a) {
        if (mask & (std::size_t{1} << a)) {
          p += static_cast<std::size_t>(lo[a]) * pstride_[a];
          ++parity;
        } else {
          p += static_cast<std::size_t>(hi[a]) * pstride_[a];
        }
      }
      if (parity % 2 == 0)
        acc += table_[p];
      else
        acc -= table_[p];
    }
    return acc;
  }

  std::vector<std::size_t> shape_;
  std::vector<bool> wraps_;
  std::vector<std::size_t> pstride_;
  std::vector<T> table_;
  T period_total_{};
};

using RealBoxSum = BoxSum<long double>;
using ComplexBoxSum = BoxSum<std::complex<long double>>;

}  // namespace apkit

#endif  // APKIT_BOX_SUM_HPP_
