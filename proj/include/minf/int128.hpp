#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace minf {

using i128 = __int128;
using u128 = unsigned __int128;

inline i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::range_error("128-bit accumulator overflow (add)");
  return r;
}

inline i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::range_error("128-bit accumulator overflow (mul)");
  return r;
}

inline i128 checked_sub(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::range_error("128-bit accumulator overflow (sub)");
  return r;
}

std::string to_string(i128 v);
std::string to_string(u128 v);

// Throws std::invalid_argument on malformed text, std::range_error when out of range.
u128 parse_u128(const std::string& text);

}  // namespace minf
