#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "minf/factorint.hpp"
#include "minf/int128.hpp"
#include "minf/rational.hpp"

namespace minf {

enum class ConvKind { Dirichlet, Infinitary, Biunitary };

inline constexpr ConvKind kAllConvKinds[] = {ConvKind::Dirichlet, ConvKind::Infinitary, ConvKind::Biunitary};

std::string_view to_string(ConvKind kind);
ConvKind parse_conv_kind(std::string_view name);

// Values f(1..N) of an arithmetic function. Immutable once built.
class FnTable {
 public:
  FnTable() = default;
  // values[k - 1] holds f(k).
  explicit FnTable(std::vector<i128> values) : values_(std::move(values)) {}

  static FnTable generate(std::size_t limit, const std::function<i128(std::uint64_t)>& f);

  std::size_t limit() const { return values_.size(); }
  // 1-based; n must lie in [1, limit()].
  i128 operator()(std::size_t n) const { return values_[n - 1]; }
  i128 at(std::size_t n) const;
  std::span<const i128> values() const { return values_; }

  friend bool operator==(const FnTable&, const FnTable&) = default;

 private:
  std::vector<i128> values_;
};

FnTable constant_one(std::size_t limit);
FnTable delta(std::size_t limit);
FnTable identity_fn(std::size_t limit);
FnTable table_of(ArithKind kind, std::size_t limit);

// Divisors d of n admissible for the given product: all divisors, infinitary divisors,
// or d with gcud(d, n/d) = 1.
std::vector<std::uint64_t> admissible_divisors(ConvKind kind, std::uint64_t n);

// (f * g)(n) for n = 1..N. Throws std::length_error when a table is shorter than N.
FnTable convolve(ConvKind kind, const FnTable& f, const FnTable& g, std::size_t limit, int threads = 0);

// Exact inverse under the chosen product; requires f(1) != 0 (std::domain_error otherwise).
std::vector<Rational> inverse_exact(ConvKind kind, const FnTable& f, std::size_t limit);

// As inverse_exact, but asserts every value is an integer (guaranteed when f(1) = +-1).
FnTable inverse(ConvKind kind, const FnTable& f, std::size_t limit);

struct AssociativityWitness {
  std::size_t f = 0, g = 0, h = 0;  // indices into the pool
  std::uint64_t n = 0;
  i128 left = 0;   // ((f * g) * h)(n)
  i128 right = 0;  // (f * (g * h))(n)
};

// Scans (f, g, h) over the pool in index order, n ascending, and returns the first
// point where the two associations disagree.
std::optional<AssociativityWitness> find_nonassociative_witness(ConvKind kind, std::size_t limit,
                                                                std::span<const FnTable> pool,
                                                                int threads = 0);

// True when t(mn) == t(m) t(n) for every coprime pair with mn <= limit.
bool is_multiplicative(const FnTable& t, std::size_t limit);

}  // namespace minf
