#include "minf/factorint.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

namespace minf {

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::string to_string(i128 v) {
  if (v >= 0) return to_string(static_cast<u128>(v));
  return "-" + to_string(static_cast<u128>(0) - static_cast<u128>(v));
}

u128 parse_u128(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty integer field");
  u128 v = 0;
  const u128 max = ~static_cast<u128>(0);
  for (char c : text) {
    if (c < '0' || c > '9') throw std::invalid_argument("malformed integer field: " + text);
    const auto digit = static_cast<unsigned>(c - '0');
    if (v > (max - digit) / 10) throw std::range_error("integer field out of range: " + text);
    v = v * 10 + digit;
  }
  return v;
}

std::string_view to_string(ArithKind kind) {
  switch (kind) {
    case ArithKind::Mu: return "mu";
    case ArithKind::MuInf: return "mu_inf";
    case ArithKind::TauInf: return "tau_inf";
    case ArithKind::SigmaInf: return "sigma_inf";
    case ArithKind::TauBB: return "tau_bb";
    case ArithKind::SigmaBB: return "sigma_bb";
  }
  return "?";
}

ArithKind parse_arith_kind(std::string_view name) {
  for (ArithKind k : kAllArithKinds)
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown arithmetic function: " + std::string(name));
}

namespace {

// Montgomery arithmetic modulo an odd 64-bit n.
class Montgomery {
 public:
  explicit Montgomery(std::uint64_t n) : n_(n), inv_(n) {
    for (int i = 0; i < 6; ++i) inv_ *= 2 - n * inv_;
    const std::uint64_t r = (0 - n) % n;
    r2_ = static_cast<std::uint64_t>(static_cast<u128>(r) * r % n);
  }

  std::uint64_t modulus() const { return n_; }

  std::uint64_t reduce(u128 t) const {
    const std::uint64_t m = static_cast<std::uint64_t>(t) * inv_;
    const auto tm = static_cast<std::uint64_t>((static_cast<u128>(m) * n_) >> 64);
    const auto th = static_cast<std::uint64_t>(t >> 64);
    return th >= tm ? th - tm : th - tm + n_;
  }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return reduce(static_cast<u128>(a) * b); }
  std::uint64_t to_mont(std::uint64_t a) const { return mul(a % n_, r2_); }
  std::uint64_t one() const { return to_mont(1); }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return (s < a || s >= n_) ? s - n_ : s;
  }

  std::uint64_t pow(std::uint64_t base, std::uint64_t e) const {
    std::uint64_t r = one();
    while (e > 0) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

 private:
  std::uint64_t n_;
  std::uint64_t inv_;
  std::uint64_t r2_ = 0;
};

constexpr unsigned kTrialBound = 1u << 16;

struct TrialPrime {
  std::uint32_t p;
  std::uint64_t inverse;  // p^{-1} mod 2^64
  std::uint64_t limit;    // floor((2^64 - 1) / p)
};

const std::vector<TrialPrime>& trial_primes() {
  static const std::vector<TrialPrime> table = [] {
    std::vector<bool> composite(kTrialBound, false);
    std::vector<TrialPrime> out;
    for (std::uint32_t i = 3; i < kTrialBound; i += 2) {
      if (composite[i]) continue;
      std::uint64_t inv = i;
      for (int k = 0; k < 6; ++k) inv *= 2 - i * inv;
      out.push_back({i, inv, ~std::uint64_t{0} / i});
      for (std::uint64_t j = std::uint64_t{i} * i; j < kTrialBound; j += 2 * i) composite[j] = true;
    }
    return out;
  }();
  return table;
}

bool miller_rabin(std::uint64_t n) {
  const Montgomery mont(n);
  const std::uint64_t d = (n - 1) >> std::countr_zero(n - 1);
  const int s = std::countr_zero(n - 1);
  const std::uint64_t one = mont.one();
  const std::uint64_t minus_one = mont.to_mont(n - 1);
  for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    const std::uint64_t base = a % n;
    if (base == 0) continue;
    std::uint64_t x = mont.pow(mont.to_mont(base), d);
    if (x == one || x == minus_one) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mont.mul(x, x);
      if (x == minus_one) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Pollard-Brent rho; returns a nontrivial factor of the odd composite n.
std::uint64_t pollard_brent(std::uint64_t n) {
  const Montgomery mont(n);
  for (std::uint64_t c0 = 1;; ++c0) {
    const std::uint64_t c = mont.to_mont(c0);
    auto step = [&](std::uint64_t v) { return mont.add(mont.mul(v, v), c); };
    std::uint64_t y = mont.to_mont(2), x = y, ys = y;
    std::uint64_t q = mont.one(), g = 1;
    constexpr std::uint64_t kBatch = 128;
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = step(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        const std::uint64_t lim = std::min(kBatch, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = step(y);
          q = mont.mul(q, x > y ? x - y : y - x);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = step(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_large(std::uint64_t n, std::vector<std::uint64_t>& primes) {
  if (n == 1) return;
  if (miller_rabin(n)) {
    primes.push_back(n);
    return;
  }
  const std::uint64_t d = pollard_brent(n);
  split_large(d, primes);
  split_large(n / d, primes);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (const auto& tp : trial_primes()) {
    if (std::uint64_t{tp.p} * tp.p > n) return true;
    if (n * tp.inverse <= tp.limit) return n == tp.p;
    if (tp.p > 64) break;
  }
  return miller_rabin(n);
}

Factorization factorize(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  Factorization out;
  out.n = n;
  if (const int twos = std::countr_zero(n); twos > 0) {
    out.factors.push_back({2, static_cast<unsigned>(twos)});
    n >>= twos;
  }
  for (const auto& tp : trial_primes()) {
    if (std::uint64_t{tp.p} * tp.p > n) break;
    unsigned e = 0;
    while (n * tp.inverse <= tp.limit) {
      n *= tp.inverse;
      ++e;
    }
    if (e > 0) out.factors.push_back({tp.p, e});
  }
  if (n == 1) return out;
  // Every prime below 2^16 has been removed, so a cofactor below 2^32 is prime.
  if (n < (std::uint64_t{1} << 32)) {
    out.factors.push_back({n, 1});
    return out;
  }
  std::vector<std::uint64_t> large;
  split_large(n, large);
  std::sort(large.begin(), large.end());
  for (std::uint64_t p : large) {
    if (!out.factors.empty() && out.factors.back().prime == p)
      ++out.factors.back().exponent;
    else
      out.factors.push_back({p, 1});
  }
  return out;
}

ExponentBits exponent_bits(unsigned nu) {
  if (nu == 0) throw std::invalid_argument("exponent_bits: exponent must be >= 1");
  ExponentBits out;
  out.value = nu;
  for (unsigned j = 0; j < 32; ++j)
    if ((nu >> j) & 1u) out.bits.push_back(j);
  return out;
}

int mu_infinity(const Factorization& f) {
  unsigned parity = 0;
  for (const auto& pp : f.factors) parity ^= static_cast<unsigned>(std::popcount(pp.exponent)) & 1u;
  return parity ? -1 : 1;
}

int mu_infinity(std::uint64_t n) { return mu_infinity(factorize(n)); }

i128 prime_power_value(ArithKind kind, std::uint64_t p, unsigned e) {
  if (e == 0) return 1;
  switch (kind) {
    case ArithKind::Mu:
      return e == 1 ? -1 : 0;
    case ArithKind::MuInf:
      return (std::popcount(e) & 1) ? -1 : 1;
    case ArithKind::TauInf:
      return i128{1} << std::popcount(e);
    case ArithKind::SigmaInf: {
      i128 r = 1;
      i128 component = p;  // p^{2^j}
      for (unsigned j = 0; (e >> j) != 0; ++j) {
        if (j > 0) component = checked_mul(component, component);
        if ((e >> j) & 1u) r = checked_mul(r, checked_add(1, component));
      }
      return r;
    }
    case ArithKind::TauBB:
      return (e % 2 == 1) ? i128{e} + 1 : i128{e};
    case ArithKind::SigmaBB: {
      i128 sum = 0;
      i128 power = 1;
      for (unsigned b = 0; b <= e; ++b) {
        if (b > 0) power = checked_mul(power, static_cast<i128>(p));
        if (e % 2 == 0 && b == e / 2) continue;
        sum = checked_add(sum, power);
      }
      return sum;
    }
  }
  throw std::invalid_argument("prime_power_value: unknown kind");
}

i128 pointwise(ArithKind kind, const Factorization& f) {
  i128 r = 1;
  for (const auto& pp : f.factors) {
    r = checked_mul(r, prime_power_value(kind, pp.prime, pp.exponent));
    if (r == 0) break;
  }
  return r;
}

i128 pointwise(ArithKind kind, std::uint64_t n) { return pointwise(kind, factorize(n)); }

}  // namespace minf
