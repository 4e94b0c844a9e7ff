// Copyright 2026 The Hourglass Authors
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

#ifndef HOURGLASS_BIGCOUNT_HPP
#define HOURGLASS_BIGCOUNT_HPP

#include <cmath>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace hourglass {

/// Exact path count. Path counts grow exponentially with path length, so no
/// fixed-width integer is safe.
using BigCount = boost::multiprecision::cpp_int;

namespace detail {

// Keep the top 63 significant bits of a non-negative value and return the
// number of bits dropped.
inline std::uint64_t leading_bits(const BigCount &x, long &shift) {
  if (x == 0) {
    shift = 0;
    return 0;
  }
  const long msb = static_cast<long>(boost::multiprecision::msb(x));
  shift = msb > 62 ? msb - 62 : 0;
  return static_cast<std::uint64_t>(x >> shift);
}

} // namespace detail

/// num / den rounded to double. Both operands must be non-negative and den
/// non-zero; the result carries ~60 bits of relative precision before the
/// final rounding.
inline double ratio(const BigCount &num, const BigCount &den) {
  long ns = 0;
  long ds = 0;
  const auto n = detail::leading_bits(num, ns);
  const auto d = detail::leading_bits(den, ds);
  if (n == 0)
    return 0.0;
  return std::ldexp(static_cast<long double>(n) / static_cast<long double>(d),
                    static_cast<int>(ns - ds));
}

/// Natural log of a positive count.
inline double log_count(const BigCount &x) {
  long shift = 0;
  const auto lead = detail::leading_bits(x, shift);
  return std::log(static_cast<double>(lead)) +
         static_cast<double>(shift) * std::log(2.0);
}

inline std::string to_string(const BigCount &x) { return x.str(); }

} // namespace hourglass

#endif // HOURGLASS_BIGCOUNT_HPP
