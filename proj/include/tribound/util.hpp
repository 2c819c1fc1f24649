#pragma once

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tribound/errors.hpp"

namespace tribound {

/// Exact integer type for cochain values, weights and Delta levels.
using Int = std::int64_t;

/// Wide intermediate used while evaluating expressions.
using Wide = __int128;

namespace detail {

inline Wide checked_add(Wide a, Wide b) {
  Wide r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

inline Wide checked_sub(Wide a, Wide b) {
  Wide r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
  return r;
}

inline Wide checked_mul(Wide a, Wide b) {
  Wide r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

inline Wide checked_pow(Wide base, unsigned exponent) {
  if (base == 0) return exponent == 0 ? 1 : 0;
  if (base == 1) return 1;
  if (base == -1) return (exponent % 2 == 0) ? 1 : -1;
  Wide r = 1;
  for (unsigned i = 0; i < exponent; ++i) r = checked_mul(r, base);
  return r;
}

inline Int narrow(Wide v) {
  if (v > static_cast<Wide>(INT64_MAX) || v < static_cast<Wide>(INT64_MIN))
    throw OverflowError("value exceeds the 64-bit result range");
  return static_cast<Int>(v);
}

inline Int add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

inline Int sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
  return r;
}

inline Int mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

inline std::string to_string(Wide v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  std::string digits;
  // Work on the negative side so the minimum value does not overflow.
  Wide t = negative ? v : -v;
  while (t != 0) {
    digits.push_back(static_cast<char>('0' - static_cast<int>(t % 10)));
    t /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

}  // namespace detail

/// Canonical representative of v in {0, ..., n-1}.
constexpr int mod(long long v, int n) {
  const long long r = v % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

/// 64-bit FNV-1a; stable across platforms, used for cache keys and diagram hashes.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

// Helpers over sorted, deduplicated integer vectors.

inline bool sorted_contains(const std::vector<Int>& set, Int v) {
  return std::binary_search(set.begin(), set.end(), v);
}

inline void sort_unique(std::vector<Int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

/// {v, -v : v in set}, sorted.
inline std::vector<Int> symmetric_closure(const std::vector<Int>& set) {
  std::vector<Int> out;
  out.reserve(set.size() * 2);
  for (Int v : set) {
    out.push_back(v);
    out.push_back(detail::sub(0, v));
  }
  sort_unique(out);
  return out;
}

inline std::vector<Int> sorted_intersection(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<Int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace tribound
