#pragma once

// Per-n update rules shared by the parallel scan and its serial reference.

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "minf/sieve.hpp"

namespace minf::detail {

inline double ratio_at(std::int64_t msum, std::uint64_t x) {
  return static_cast<double>(msum) / std::sqrt(static_cast<double>(x));
}

// Contribution of the cell [n, n + 1) to the weak-Mertens integral, in units of 2^-64.
inline u128 wm_cell(std::int64_t msum, std::uint64_t n) {
  if (msum == 0) return 0;
  const double m = static_cast<double>(msum);
  const double term = (m * m) / (static_cast<double>(n) * static_cast<double>(n + 1));
  if (term < 1.0) return static_cast<std::uint64_t>(term * 0x1p64);
  if (term >= 0x1p62) throw std::range_error("weak-Mertens accumulator overflow");
  return static_cast<u128>(term * 0x1p64);
}

inline u128 add_wm(u128 a, u128 b) {
  u128 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::range_error("weak-Mertens accumulator overflow");
  return r;
}

inline std::int64_t add_msum(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::range_error("summatory value overflows 64 bits");
  return r;
}

// Advance a state from x = n - 1 to x = n with f(n) = value.
inline void step(ScanState& st, std::uint64_t n, std::int64_t value) {
  if (n >= 2) st.wm_fixed = add_wm(st.wm_fixed, wm_cell(st.msum, n - 1));
  st.msum = add_msum(st.msum, value);
  const double r = ratio_at(st.msum, n);
  if (st.x == 0) {
    st.min_ratio = st.max_ratio = r;
    st.argmin = st.argmax = n;
  } else {
    if (r < st.min_ratio) {
      st.min_ratio = r;
      st.argmin = n;
    }
    if (r > st.max_ratio) {
      st.max_ratio = r;
      st.argmax = n;
    }
  }
  st.x = n;
}

// Summary of a contiguous run first..last given M(first - 1).
struct Partial {
  std::uint64_t first = 0;
  std::uint64_t last = 0;
  std::int64_t msum = 0;  // M(last)
  double min_ratio = 0;
  std::uint64_t argmin = 0;
  double max_ratio = 0;
  std::uint64_t argmax = 0;
  u128 wm = 0;
};

class PartialFold {
 public:
  PartialFold(std::uint64_t first, std::int64_t msum_before) {
    p_.first = first;
    p_.msum = msum_before;
  }

  void push(std::uint64_t n, std::int64_t value) {
    if (n >= 2) p_.wm = add_wm(p_.wm, wm_cell(p_.msum, n - 1));
    p_.msum = add_msum(p_.msum, value);
    const double r = ratio_at(p_.msum, n);
    if (n == p_.first) {
      p_.min_ratio = p_.max_ratio = r;
      p_.argmin = p_.argmax = n;
    } else {
      if (r < p_.min_ratio) {
        p_.min_ratio = r;
        p_.argmin = n;
      }
      if (r > p_.max_ratio) {
        p_.max_ratio = r;
        p_.argmax = n;
      }
    }
    p_.last = n;
  }

  const Partial& result() const { return p_; }

 private:
  Partial p_;
};

inline void merge(ScanState& st, const Partial& p) {
  st.wm_fixed = add_wm(st.wm_fixed, p.wm);
  st.msum = p.msum;
  if (st.x == 0) {
    st.min_ratio = p.min_ratio;
    st.argmin = p.argmin;
    st.max_ratio = p.max_ratio;
    st.argmax = p.argmax;
  } else {
    if (p.min_ratio < st.min_ratio) {
      st.min_ratio = p.min_ratio;
      st.argmin = p.argmin;
    }
    if (p.max_ratio > st.max_ratio) {
      st.max_ratio = p.max_ratio;
      st.argmax = p.argmax;
    }
  }
  st.x = p.last;
}

inline bool is_checkpoint(std::uint64_t x, const ScanOptions& o) {
  return x % o.checkpoint_every == 0 || x == o.x_max;
}

// Validates options and an optional resume state; returns the starting state.
ScanState initial_state(const ScanOptions& options, const std::optional<ScanState>& resume);

}  // namespace minf::detail
