#include <doctest.h>

#include <random>

#include "minf/divisors.hpp"
#include "minf/factorint.hpp"

using namespace minf;

namespace {

std::uint64_t remultiply(const Factorization& f) {
  u128 acc = 1;
  for (const auto& pp : f.factors)
    for (unsigned i = 0; i < pp.exponent; ++i) acc *= pp.prime;
  return static_cast<std::uint64_t>(acc);
}

bool brute_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("is_prime on small range matches trial division") {
  for (std::uint64_t n = 0; n < 20000; ++n) CHECK(is_prime(n) == brute_prime(n));
}

TEST_CASE("is_prime on known hard cases") {
  CHECK(is_prime(2305843009213693951ULL));   // 2^61 - 1
  CHECK(is_prime(18446744073709551557ULL));  // largest prime below 2^64
  CHECK_FALSE(is_prime(561));
  CHECK_FALSE(is_prime(2047));
  CHECK_FALSE(is_prime(3215031751ULL));
  CHECK_FALSE(is_prime(3825123056546413051ULL));
  CHECK_FALSE(is_prime(4294967291ULL * 4294967279ULL));
}

TEST_CASE("factorize examples") {
  CHECK(factorize(1).factors.empty());
  const auto twelve = factorize(12);
  REQUIRE(twelve.factors.size() == 2);
  CHECK(twelve.factors[0].prime == 2);
  CHECK(twelve.factors[0].exponent == 2);
  CHECK(twelve.factors[1].prime == 3);
  CHECK(twelve.factors[1].exponent == 1);
  const auto m61 = factorize(2305843009213693951ULL);
  REQUIRE(m61.factors.size() == 1);
  CHECK(m61.factors[0].prime == 2305843009213693951ULL);
  CHECK(m61.factors[0].exponent == 1);
  const auto semi = factorize(4294967291ULL * 4294967279ULL);
  REQUIRE(semi.factors.size() == 2);
  CHECK(semi.factors[0].prime == 4294967279ULL);
  CHECK(semi.factors[1].prime == 4294967291ULL);
  const auto pow2 = factorize(std::uint64_t{1} << 63);
  REQUIRE(pow2.factors.size() == 1);
  CHECK(pow2.factors[0].exponent == 63);
  CHECK_THROWS_AS(factorize(0), std::invalid_argument);
}

TEST_CASE("factorize re-multiplies for 1e5 random 64-bit inputs") {
  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 100000; ++i) {
    const std::uint64_t n = (i % 4 == 0) ? (rng() >> (i % 61)) + 1 : rng() | 1;
    const auto f = factorize(n);
    REQUIRE(remultiply(f) == n);
    for (std::size_t k = 0; k < f.factors.size(); ++k) {
      REQUIRE(is_prime(f.factors[k].prime));
      if (k > 0) REQUIRE(f.factors[k - 1].prime < f.factors[k].prime);
    }
  }
}

TEST_CASE("exponent_bits") {
  const auto three = exponent_bits(3);
  CHECK(three.size() == 2);
  CHECK(three.bits == std::vector<unsigned>{0, 1});
  CHECK(exponent_bits(4).bits == std::vector<unsigned>{2});
  CHECK(exponent_bits(7).size() == 3);
  CHECK_THROWS_AS(exponent_bits(0), std::invalid_argument);
}

TEST_CASE("mu_infinity prime-power table") {
  const int expected[] = {-1, -1, 1, -1, 1, 1, -1};
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 101ULL}) {
    std::uint64_t q = 1;
    for (int nu = 1; nu <= 7; ++nu) {
      q *= p;
      CHECK(mu_infinity(q) == expected[nu - 1]);
    }
  }
  CHECK(mu_infinity(8) == 1);
  CHECK(mu_infinity(128) == -1);
  CHECK(mu_infinity(12) == 1);
  CHECK(mu_infinity(1) == 1);
}

TEST_CASE("pointwise examples") {
  CHECK(pointwise(ArithKind::TauInf, 16) == 2);
  CHECK(pointwise(ArithKind::SigmaInf, 8) == 15);
  CHECK(pointwise(ArithKind::TauBB, 16) == 4);
  CHECK(pointwise(ArithKind::Mu, 4) == 0);
  CHECK(pointwise(ArithKind::Mu, 30) == -1);
  CHECK(pointwise(ArithKind::SigmaBB, 16) == 1 + 2 + 8 + 16);
  CHECK_THROWS_AS(pointwise(ArithKind::Mu, 0), std::invalid_argument);
}

TEST_CASE("arith kind names round-trip") {
  for (ArithKind k : kAllArithKinds) CHECK(parse_arith_kind(to_string(k)) == k);
  CHECK_THROWS_AS(parse_arith_kind("nope"), std::invalid_argument);
}

TEST_CASE("mu_infinity never vanishes") {
  for (std::uint64_t n = 1; n <= 100000; ++n) REQUIRE((mu_infinity(n) == 1 || mu_infinity(n) == -1));
}

TEST_CASE("multiplicativity on coprime pairs up to 1e6") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20000; ++i) {
    const std::uint64_t m = 1 + rng() % 1000, n = 1 + rng() % 1000;
    if (std::gcd(m, n) != 1) continue;
    for (ArithKind k : kAllArithKinds) REQUIRE(pointwise(k, m * n) == pointwise(k, m) * pointwise(k, n));
  }
}

TEST_CASE("tau_inf and sigma_inf agree with enumerated infinitary divisors to 1e5") {
  for (std::uint64_t n = 1; n <= 100000; ++n) {
    const auto f = factorize(n);
    const auto set = divisors_of(DivisorSystem::Infinitary, f);
    i128 sum = 0;
    for (auto d : set.divisors) sum += d;
    REQUIRE(pointwise(ArithKind::TauInf, f) == static_cast<i128>(set.divisors.size()));
    REQUIRE(pointwise(ArithKind::SigmaInf, f) == sum);
  }
}

TEST_CASE("int128 formatting and parsing") {
  CHECK(to_string(i128{0}) == "0");
  CHECK(to_string(-(static_cast<i128>(1) << 100)) == "-1267650600228229401496703205376");
  CHECK(parse_u128("340282366920938463463374607431768211455") == ~u128{0});
  CHECK_THROWS(parse_u128("340282366920938463463374607431768211456"));
  CHECK_THROWS(parse_u128("12a"));
  CHECK_THROWS_AS(checked_mul(static_cast<i128>(1) << 100, static_cast<i128>(1) << 30), std::range_error);
}
