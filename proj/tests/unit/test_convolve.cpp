#include <doctest.h>

#include <random>

#include "minf/convolve.hpp"
#include "minf/divisors.hpp"

using namespace minf;

namespace {

FnTable random_table(std::size_t limit, std::mt19937_64& rng, bool unit_at_one) {
  return FnTable::generate(limit, [&](std::uint64_t n) -> i128 {
    if (n == 1 && unit_at_one) return 1;
    return static_cast<i128>(rng() % 11) - 5;
  });
}

// Straight divisor-sum definition, independent of the library's kernel.
i128 convolve_at(ConvKind kind, const FnTable& f, const FnTable& g, std::uint64_t n) {
  i128 acc = 0;
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    const bool ok = kind == ConvKind::Dirichlet    ? true
                    : kind == ConvKind::Infinitary ? divides_infinitary(d, n)
                                                   : gcud(d, n / d) == 1;
    if (ok) acc += f(d) * g(n / d);
  }
  return acc;
}

}  // namespace

TEST_CASE("convolution examples") {
  const auto one = constant_one(10);
  const auto mu_inf = table_of(ArithKind::MuInf, 10);
  CHECK(convolve(ConvKind::Infinitary, mu_inf, one, 10)(8) == 0);
  CHECK(convolve(ConvKind::Dirichlet, one, one, 10)(6) == 4);
  const auto id = identity_fn(10);
  for (auto kind : kAllConvKinds) CHECK(convolve(kind, delta(10), id, 10) == id);
}

TEST_CASE("kernel agrees with the defining sum") {
  std::mt19937_64 rng(3);
  const std::size_t n_max = 300;
  const auto f = random_table(n_max, rng, false), g = random_table(n_max, rng, false);
  for (auto kind : kAllConvKinds) {
    const auto h = convolve(kind, f, g, n_max);
    for (std::uint64_t n = 1; n <= n_max; ++n) REQUIRE(h(n) == convolve_at(kind, f, g, n));
  }
}

TEST_CASE("admissible divisors") {
  CHECK(admissible_divisors(ConvKind::Infinitary, 8) == std::vector<std::uint64_t>{1, 2, 4, 8});
  CHECK(admissible_divisors(ConvKind::Biunitary, 16) == std::vector<std::uint64_t>{1, 2, 8, 16});
  CHECK(admissible_divisors(ConvKind::Dirichlet, 6) == std::vector<std::uint64_t>{1, 2, 3, 6});
}

TEST_CASE("inverse examples") {
  const std::size_t n_max = 2000;
  const auto one = constant_one(n_max);
  CHECK(inverse(ConvKind::Infinitary, one, n_max) == table_of(ArithKind::MuInf, n_max));
  CHECK(inverse(ConvKind::Biunitary, one, n_max) == table_of(ArithKind::MuInf, n_max));
  CHECK(inverse(ConvKind::Dirichlet, one, n_max) == table_of(ArithKind::Mu, n_max));
}

TEST_CASE("inverse errors and exact rationals") {
  const auto zero_at_one = FnTable::generate(5, [](std::uint64_t n) -> i128 { return n == 1 ? 0 : 1; });
  CHECK_THROWS_AS(inverse_exact(ConvKind::Dirichlet, zero_at_one, 5), std::domain_error);
  const auto two = FnTable::generate(4, [](std::uint64_t) -> i128 { return 2; });
  const auto exact = inverse_exact(ConvKind::Dirichlet, two, 4);
  CHECK(exact[0].str() == "1/2");
  CHECK(exact[1].str() == "-1/2");
  CHECK(exact[3].str() == "0");
  CHECK_THROWS_AS(inverse(ConvKind::Dirichlet, two, 4), std::domain_error);
  CHECK_THROWS_AS(convolve(ConvKind::Dirichlet, two, two, 5), std::length_error);
}

TEST_CASE("commutativity on random tables") {
  std::mt19937_64 rng(11);
  const std::size_t n_max = 200;
  for (int rep = 0; rep < 5; ++rep) {
    const auto f = random_table(n_max, rng, false), g = random_table(n_max, rng, false);
    for (auto kind : kAllConvKinds) REQUIRE(convolve(kind, f, g, n_max) == convolve(kind, g, f, n_max));
  }
}

TEST_CASE("associativity of Dirichlet and infinitary products") {
  std::mt19937_64 rng(12);
  const std::size_t n_max = 200;
  for (int rep = 0; rep < 5; ++rep) {
    const auto f = random_table(n_max, rng, false), g = random_table(n_max, rng, false),
               h = random_table(n_max, rng, false);
    for (auto kind : {ConvKind::Dirichlet, ConvKind::Infinitary}) {
      const auto left = convolve(kind, convolve(kind, f, g, n_max), h, n_max);
      const auto right = convolve(kind, f, convolve(kind, g, h, n_max), n_max);
      REQUIRE(left == right);
    }
    const std::vector<FnTable> pool{f, g, h};
    CHECK_FALSE(find_nonassociative_witness(ConvKind::Infinitary, n_max, pool).has_value());
  }
}

TEST_CASE("bi-unitary non-associativity witness") {
  const std::size_t n_max = 100;
  const std::vector<FnTable> ones{constant_one(n_max)};
  CHECK_FALSE(find_nonassociative_witness(ConvKind::Biunitary, n_max, ones).has_value());
  CHECK_FALSE(find_nonassociative_witness(ConvKind::Infinitary, n_max, ones).has_value());
  const std::vector<FnTable> deltas{delta(n_max)};
  CHECK_FALSE(find_nonassociative_witness(ConvKind::Biunitary, n_max, deltas).has_value());

  const std::vector<FnTable> pool{constant_one(n_max), table_of(ArithKind::MuInf, n_max)};
  const auto w = find_nonassociative_witness(ConvKind::Biunitary, n_max, pool);
  REQUIRE(w.has_value());
  CHECK(w->f == 0);
  CHECK(w->g == 0);
  CHECK(w->h == 1);
  CHECK(w->n == 32);
  CHECK(w->left == -1);
  CHECK(w->right == 1);
  const auto& one = pool[0];
  const auto& m = pool[1];
  CHECK(convolve_at(ConvKind::Biunitary, convolve(ConvKind::Biunitary, one, one, n_max), m, 32) == w->left);
  CHECK(convolve_at(ConvKind::Biunitary, one, convolve(ConvKind::Biunitary, one, m, n_max), 32) == w->right);
  CHECK_FALSE(find_nonassociative_witness(ConvKind::Infinitary, n_max, pool).has_value());
}

TEST_CASE("f times its inverse is delta, N = 1e4") {
  const std::size_t n_max = 10000;
  std::mt19937_64 rng(5);
  const std::vector<FnTable> fs{constant_one(n_max), table_of(ArithKind::MuInf, n_max), random_table(n_max, rng, true)};
  for (auto kind : kAllConvKinds)
    for (const auto& f : fs) REQUIRE(convolve(kind, f, inverse(kind, f, n_max), n_max) == delta(n_max));
}

TEST_CASE("multiplicativity is preserved by infinitary and bi-unitary products") {
  const std::size_t n_max = 10000;
  const std::vector<FnTable> fs{constant_one(n_max), table_of(ArithKind::MuInf, n_max),
                                table_of(ArithKind::TauInf, n_max)};
  for (auto kind : {ConvKind::Infinitary, ConvKind::Biunitary})
    for (const auto& f : fs)
      for (const auto& g : fs) REQUIRE(is_multiplicative(convolve(kind, f, g, n_max), n_max));
  CHECK_FALSE(is_multiplicative(FnTable::generate(100, [](std::uint64_t n) -> i128 { return n == 6 ? 5 : 1; }), 100));
}

TEST_CASE("inverse of one equals mu_inf to 1e5") {
  const std::size_t n_max = 100000;
  const auto one = constant_one(n_max);
  const auto mu_inf = table_of(ArithKind::MuInf, n_max);
  CHECK(inverse(ConvKind::Infinitary, one, n_max) == mu_inf);
  CHECK(inverse(ConvKind::Biunitary, one, n_max) == mu_inf);
}

TEST_CASE("thread count does not change results") {
  std::mt19937_64 rng(8);
  const std::size_t n_max = 3000;
  const auto f = random_table(n_max, rng, false), g = random_table(n_max, rng, false);
  for (auto kind : kAllConvKinds) CHECK(convolve(kind, f, g, n_max, 1) == convolve(kind, f, g, n_max, 4));
}
