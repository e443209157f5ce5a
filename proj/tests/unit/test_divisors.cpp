#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "minf/divisors.hpp"

using namespace minf;

namespace {

using Divs = std::vector<std::uint64_t>;

Divs all_divisors_brute(std::uint64_t n) {
  Divs out;
  for (std::uint64_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

// C(a, b) mod 2 by Kummer: odd iff adding b and a - b in base 2 has no carry.
bool binomial_odd_kummer(unsigned a, unsigned b) {
  unsigned x = b, y = a - b, carry = 0;
  while (x != 0 || y != 0 || carry != 0) {
    const unsigned s = (x & 1) + (y & 1) + carry;
    if (s >= 2) return false;
    carry = s >> 1;
    x >>= 1;
    y >>= 1;
  }
  return true;
}

// Pascal's triangle mod 2, independent of bit tricks.
std::vector<std::vector<bool>> pascal_mod2(unsigned rows) {
  std::vector<std::vector<bool>> c(rows + 1);
  for (unsigned a = 0; a <= rows; ++a) {
    c[a].assign(a + 1, true);
    for (unsigned b = 1; b < a; ++b) c[a][b] = c[a - 1][b - 1] != c[a - 1][b];
  }
  return c;
}

}  // namespace

TEST_CASE("infinitary divisor examples") {
  CHECK(infinitary_divisors(1).divisors == Divs{1});
  CHECK(infinitary_divisors(8).divisors == Divs{1, 2, 4, 8});
  CHECK(infinitary_divisors(16).divisors == Divs{1, 16});
  CHECK(infinitary_divisors(48).divisors == Divs{1, 3, 16, 48});
}

TEST_CASE("divides_infinitary examples") {
  CHECK_FALSE(divides_infinitary(4, 16));
  CHECK(divides_infinitary(2, 10));
  CHECK(divides_infinitary(1, 97));
  CHECK_FALSE(divides_infinitary(3, 10));
}

TEST_CASE("unitary and bi-unitary examples") {
  CHECK(unitary_divisors(12).divisors == Divs{1, 3, 4, 12});
  CHECK(unitary_divisors(8).divisors == Divs{1, 8});
  CHECK(unitary_divisors(1).divisors == Divs{1});
  CHECK(biunitary_divisors(16).divisors == Divs{1, 2, 8, 16});
  CHECK(biunitary_divisors(27).divisors == Divs{1, 3, 9, 27});
  CHECK(biunitary_divisors(12).divisors == Divs{1, 3, 4, 12});  // 2 and 6 fail: gcud(2, 6) = 2
}

TEST_CASE("gcud examples") {
  CHECK(gcud(48, 12) == 3);
  CHECK(gcud(12, 8) == 1);
  CHECK(gcud(360, 360) == 360);
  CHECK(gcud(1, 1) == 1);
}

TEST_CASE("divisor system names round-trip") {
  for (auto s : {DivisorSystem::Infinitary, DivisorSystem::Unitary, DivisorSystem::Biunitary, DivisorSystem::All})
    CHECK(parse_divisor_system(to_string(s)) == s);
  CHECK_THROWS_AS(parse_divisor_system("bogus"), std::invalid_argument);
}

TEST_CASE("odd-binomial criterion for prime powers up to exponent 64") {
  const auto pascal = pascal_mod2(64);
  for (std::uint64_t p : {2ULL, 3ULL}) {
    for (unsigned a = 0; a <= 64; ++a) {
      u128 pa = 1;
      bool fits = true;
      for (unsigned i = 0; i < a; ++i) {
        pa *= p;
        if (pa > UINT64_MAX) fits = false;
      }
      if (!fits) continue;
      u128 pb = 1;
      for (unsigned b = 0; b <= a; ++b, pb *= p) {
        const bool by_mask = (b & a) == b;
        REQUIRE(pascal[a][b] == binomial_odd_kummer(a, b));
        REQUIRE(by_mask == pascal[a][b]);
        REQUIRE(divides_infinitary(static_cast<std::uint64_t>(pb), static_cast<std::uint64_t>(pa)) == pascal[a][b]);
      }
    }
  }
}

TEST_CASE("bi-unitary rule matches gcud definition to 1e4") {
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    Divs expected;
    for (auto d : divisors_of(DivisorSystem::All, n).divisors)
      if (gcud(d, n / d) == 1) expected.push_back(d);
    REQUIRE(biunitary_divisors(n).divisors == expected);
  }
}

TEST_CASE("subset relations to 1e4") {
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    const auto all = divisors_of(DivisorSystem::All, n).divisors;
    if (n <= 2000) REQUIRE(all == all_divisors_brute(n));
    const auto uni = unitary_divisors(n).divisors;
    const auto bi = biunitary_divisors(n).divisors;
    const auto inf = infinitary_divisors(n).divisors;
    for (const auto* set : {&uni, &bi, &inf}) {
      REQUIRE(std::is_sorted(set->begin(), set->end()));
      REQUIRE(std::includes(all.begin(), all.end(), set->begin(), set->end()));
    }
    REQUIRE(std::includes(bi.begin(), bi.end(), uni.begin(), uni.end()));
    REQUIRE(std::includes(inf.begin(), inf.end(), uni.begin(), uni.end()));
  }
}

TEST_CASE("gcud is commutative and divides gcd on random pairs") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 10000; ++i) {
    const std::uint64_t a = 1 + rng() % 1000000, b = 1 + rng() % 1000000;
    const auto g = gcud(a, b);
    REQUIRE(g == gcud(b, a));
    REQUIRE(std::gcd(a, b) % g == 0);
    REQUIRE(gcud(g, a / g) == 1);
  }
}

TEST_CASE("divisor count guard") {
  // 2^63 has 64 divisors; a highly composite 64-bit number stays well below the cap.
  CHECK(divisors_of(DivisorSystem::All, std::uint64_t{1} << 63).divisors.size() == 64);
  CHECK(divisors_of(DivisorSystem::All, 18401055938125660800ULL).divisors.size() == 184320);
  CHECK_THROWS_AS(divisors_of(DivisorSystem::All, 0), std::invalid_argument);
}
