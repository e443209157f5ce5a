#include "minf/divisors.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace minf {

std::string_view to_string(DivisorSystem system) {
  switch (system) {
    case DivisorSystem::Infinitary: return "infinitary";
    case DivisorSystem::Unitary: return "unitary";
    case DivisorSystem::Biunitary: return "biunitary";
    case DivisorSystem::All: return "all";
  }
  return "?";
}

DivisorSystem parse_divisor_system(std::string_view name) {
  for (auto s : {DivisorSystem::Infinitary, DivisorSystem::Unitary, DivisorSystem::Biunitary,
                 DivisorSystem::All})
    if (to_string(s) == name) return s;
  throw std::invalid_argument("unknown divisor system: " + std::string(name));
}

namespace {

bool admissible(DivisorSystem system, unsigned b, unsigned a) {
  switch (system) {
    case DivisorSystem::Infinitary: return (b & a) == b;
    case DivisorSystem::Unitary: return b == 0 || b == a;
    case DivisorSystem::Biunitary: return !(a % 2 == 0 && 2 * b == a);
    case DivisorSystem::All: return true;
  }
  return false;
}

}  // namespace

DivisorSet divisors_of(DivisorSystem system, const Factorization& f) {
  std::size_t full_count = 1;
  for (const auto& pp : f.factors) {
    full_count *= pp.exponent + 1;
    if (full_count >= kMaxDivisorCount)
      throw std::length_error("divisor enumeration exceeds the size cap for n = " + std::to_string(f.n));
  }

  DivisorSet out;
  out.n = f.n;
  out.system = system;
  out.divisors.reserve(full_count);
  out.divisors.push_back(1);
  for (const auto& pp : f.factors) {
    const std::size_t base = out.divisors.size();
    std::uint64_t power = 1;
    for (unsigned b = 1; b <= pp.exponent; ++b) {
      power *= pp.prime;
      if (!admissible(system, b, pp.exponent)) continue;
      for (std::size_t i = 0; i < base; ++i) out.divisors.push_back(out.divisors[i] * power);
    }
  }
  std::sort(out.divisors.begin(), out.divisors.end());
  return out;
}

DivisorSet divisors_of(DivisorSystem system, std::uint64_t n) { return divisors_of(system, factorize(n)); }

DivisorSet infinitary_divisors(std::uint64_t n) { return divisors_of(DivisorSystem::Infinitary, n); }
DivisorSet unitary_divisors(std::uint64_t n) { return divisors_of(DivisorSystem::Unitary, n); }
DivisorSet biunitary_divisors(std::uint64_t n) { return divisors_of(DivisorSystem::Biunitary, n); }

bool divides_infinitary(std::uint64_t d, std::uint64_t n) {
  if (d == 0 || n == 0) throw std::invalid_argument("divides_infinitary: arguments must be positive");
  if (n % d != 0) return false;
  return divides_infinitary(factorize(d).factors, factorize(n).factors);
}

bool divides_infinitary(std::span<const PrimePower> d, std::span<const PrimePower> n) {
  std::size_t k = 0;
  for (const auto& pp : d) {
    while (k < n.size() && n[k].prime < pp.prime) ++k;
    if (k == n.size() || n[k].prime != pp.prime) return false;
    if ((pp.exponent & n[k].exponent) != pp.exponent) return false;
  }
  return true;
}

std::uint64_t gcud(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) throw std::invalid_argument("gcud: arguments must be positive");
  std::uint64_t result = 1;
  for (const auto& pp : factorize(a).factors) {
    std::uint64_t rest = b;
    unsigned e = 0;
    while (rest % pp.prime == 0) {
      rest /= pp.prime;
      ++e;
    }
    if (e != pp.exponent) continue;
    for (unsigned i = 0; i < e; ++i) result *= pp.prime;
  }
  return result;
}

}  // namespace minf
