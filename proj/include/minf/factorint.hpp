#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "minf/int128.hpp"

namespace minf {

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Canonical decomposition n = prod p^nu, primes strictly ascending. Empty for n == 1.
struct Factorization {
  std::uint64_t n = 1;
  std::vector<PrimePower> factors;

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

// Binary support B(nu) of an exponent: nu = sum over bits of 2^j.
struct ExponentBits {
  unsigned value = 0;
  std::vector<unsigned> bits;

  std::size_t size() const { return bits.size(); }
};

enum class ArithKind { Mu, MuInf, TauInf, SigmaInf, TauBB, SigmaBB };

inline constexpr ArithKind kAllArithKinds[] = {ArithKind::Mu,       ArithKind::MuInf,
                                               ArithKind::TauInf,   ArithKind::SigmaInf,
                                               ArithKind::TauBB,    ArithKind::SigmaBB};

std::string_view to_string(ArithKind kind);
// Accepts mu, mu_inf, tau_inf, sigma_inf, tau_bb, sigma_bb. Throws std::invalid_argument.
ArithKind parse_arith_kind(std::string_view name);

// Deterministic Miller-Rabin, exact for the whole 64-bit range.
bool is_prime(std::uint64_t n);

// Trial division by primes below 2^16, then Miller-Rabin + Pollard-Brent rho.
// Throws std::invalid_argument for n == 0.
Factorization factorize(std::uint64_t n);

// Throws std::invalid_argument for nu == 0.
ExponentBits exponent_bits(unsigned nu);

// mu_inf(p^nu) = (-1)^{|B(nu)|}, extended multiplicatively; never zero.
int mu_infinity(std::uint64_t n);
int mu_infinity(const Factorization& f);

// f(p^e) for the multiplicative function selected by kind. Throws std::range_error on overflow.
i128 prime_power_value(ArithKind kind, std::uint64_t p, unsigned e);

// f(n) for the multiplicative function selected by kind; f(1) == 1 for every kind.
i128 pointwise(ArithKind kind, std::uint64_t n);
i128 pointwise(ArithKind kind, const Factorization& f);

}  // namespace minf
