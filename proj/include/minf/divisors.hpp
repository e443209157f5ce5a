#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "minf/factorint.hpp"

namespace minf {

enum class DivisorSystem { Infinitary, Unitary, Biunitary, All };

std::string_view to_string(DivisorSystem system);
DivisorSystem parse_divisor_system(std::string_view name);

struct DivisorSet {
  std::uint64_t n = 1;
  DivisorSystem system = DivisorSystem::All;
  std::vector<std::uint64_t> divisors;  // strictly ascending
};

// Enumeration refuses n whose full divisor count reaches this cap (std::length_error).
inline constexpr std::size_t kMaxDivisorCount = std::size_t{1} << 20;

// Sets are assembled multiplicatively from the admissible powers of each prime.
DivisorSet divisors_of(DivisorSystem system, const Factorization& f);
DivisorSet divisors_of(DivisorSystem system, std::uint64_t n);

DivisorSet infinitary_divisors(std::uint64_t n);
DivisorSet unitary_divisors(std::uint64_t n);
DivisorSet biunitary_divisors(std::uint64_t n);

// p^b |_inf p^a  iff  (b & a) == b, i.e. binom(a, b) is odd.
bool divides_infinitary(std::uint64_t d, std::uint64_t n);
// Same test on factored arguments, so prime powers beyond 64 bits can be asked about.
bool divides_infinitary(std::span<const PrimePower> d, std::span<const PrimePower> n);

// Greatest common unitary divisor: product of p^a over primes with v_p(a) == v_p(b) > 0.
std::uint64_t gcud(std::uint64_t a, std::uint64_t b);

}  // namespace minf
