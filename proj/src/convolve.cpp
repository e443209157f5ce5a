#include "minf/convolve.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "minf/divisors.hpp"
#include "minf/parallel.hpp"

namespace minf {

namespace {

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rational::Rational(i128 num, i128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = checked_sub(0, num);
    den = checked_sub(0, den);
  }
  const i128 g = gcd128(num, den);
  num_ = g > 1 ? num / g : num;
  den_ = g > 1 ? den / g : den;
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.den_ == 1 && b.den_ == 1) return Rational(checked_add(a.num_, b.num_));
  const i128 g = gcd128(a.den_, b.den_);
  const i128 bd = b.den_ / g;
  return Rational(checked_add(checked_mul(a.num_, bd), checked_mul(b.num_, a.den_ / g)),
                  checked_mul(a.den_, bd));
}

Rational operator*(const Rational& a, const Rational& b) {
  if (a.den_ == 1 && b.den_ == 1) return Rational(checked_mul(a.num_, b.num_));
  const i128 g1 = gcd128(a.num_, b.den_);
  const i128 g2 = gcd128(b.num_, a.den_);
  const i128 s1 = g1 > 1 ? g1 : 1;
  const i128 s2 = g2 > 1 ? g2 : 1;
  return Rational(checked_mul(a.num_ / s1, b.num_ / s2), checked_mul(a.den_ / s2, b.den_ / s1));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("rational division by zero");
  return a * Rational(b.den_, b.num_);
}

std::string Rational::str() const {
  return den_ == 1 ? to_string(num_) : to_string(num_) + "/" + to_string(den_);
}

std::string_view to_string(ConvKind kind) {
  switch (kind) {
    case ConvKind::Dirichlet: return "dirichlet";
    case ConvKind::Infinitary: return "infinitary";
    case ConvKind::Biunitary: return "biunitary";
  }
  return "?";
}

ConvKind parse_conv_kind(std::string_view name) {
  for (ConvKind k : kAllConvKinds)
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown convolution: " + std::string(name));
}

FnTable FnTable::generate(std::size_t limit, const std::function<i128(std::uint64_t)>& f) {
  std::vector<i128> v(limit);
  for (std::size_t k = 1; k <= limit; ++k) v[k - 1] = f(k);
  return FnTable(std::move(v));
}

i128 FnTable::at(std::size_t n) const {
  if (n < 1 || n > values_.size())
    throw std::out_of_range("FnTable index " + std::to_string(n) + " outside [1, " +
                            std::to_string(values_.size()) + "]");
  return values_[n - 1];
}

FnTable constant_one(std::size_t limit) { return FnTable(std::vector<i128>(limit, 1)); }

FnTable delta(std::size_t limit) {
  std::vector<i128> v(limit, 0);
  if (limit > 0) v[0] = 1;
  return FnTable(std::move(v));
}

FnTable identity_fn(std::size_t limit) {
  return FnTable::generate(limit, [](std::uint64_t n) { return static_cast<i128>(n); });
}

FnTable table_of(ArithKind kind, std::size_t limit) {
  return FnTable::generate(limit, [kind](std::uint64_t n) { return pointwise(kind, n); });
}

std::vector<std::uint64_t> admissible_divisors(ConvKind kind, std::uint64_t n) {
  DivisorSystem system = DivisorSystem::All;
  if (kind == ConvKind::Infinitary) system = DivisorSystem::Infinitary;
  if (kind == ConvKind::Biunitary) system = DivisorSystem::Biunitary;
  return divisors_of(system, n).divisors;
}

namespace {

void require_cover(const FnTable& t, std::size_t limit, const char* name) {
  if (t.limit() < limit)
    throw std::length_error(std::string("table ") + name + " covers 1.." + std::to_string(t.limit()) +
                            ", need 1.." + std::to_string(limit));
}

}  // namespace

FnTable convolve(ConvKind kind, const FnTable& f, const FnTable& g, std::size_t limit, int threads) {
  require_cover(f, limit, "f");
  require_cover(g, limit, "g");
  std::vector<i128> out(limit, 0);
  parallel_for(0, static_cast<std::int64_t>(limit), threads, [&](std::int64_t i) {
    const std::uint64_t n = static_cast<std::uint64_t>(i) + 1;
    i128 acc = 0;
    for (std::uint64_t d : admissible_divisors(kind, n)) acc = checked_add(acc, checked_mul(f(d), g(n / d)));
    out[i] = acc;
  });
  return FnTable(std::move(out));
}

std::vector<Rational> inverse_exact(ConvKind kind, const FnTable& f, std::size_t limit) {
  require_cover(f, limit, "f");
  if (limit == 0) return {};
  if (f(1) == 0) throw std::domain_error("no inverse exists: f(1) = 0");
  const Rational inv_f1 = Rational(1) / Rational(f(1));
  std::vector<Rational> g(limit);
  g[0] = inv_f1;
  for (std::uint64_t n = 2; n <= limit; ++n) {
    Rational acc;
    for (std::uint64_t d : admissible_divisors(kind, n)) {
      if (d == n) break;
      const i128 fv = f(n / d);
      if (fv != 0) acc += Rational(fv) * g[d - 1];
    }
    g[n - 1] = -(inv_f1 * acc);
  }
  return g;
}

FnTable inverse(ConvKind kind, const FnTable& f, std::size_t limit) {
  const auto exact = inverse_exact(kind, f, limit);
  std::vector<i128> out(exact.size());
  for (std::size_t i = 0; i < exact.size(); ++i) {
    if (!exact[i].is_integer())
      throw std::domain_error("inverse value at n = " + std::to_string(i + 1) +
                              " is not an integer: " + exact[i].str());
    out[i] = exact[i].num();
  }
  return FnTable(std::move(out));
}

std::optional<AssociativityWitness> find_nonassociative_witness(ConvKind kind, std::size_t limit,
                                                                std::span<const FnTable> pool,
                                                                int threads) {
  for (std::size_t a = 0; a < pool.size(); ++a) {
    for (std::size_t b = 0; b < pool.size(); ++b) {
      const FnTable fg = convolve(kind, pool[a], pool[b], limit, threads);
      for (std::size_t c = 0; c < pool.size(); ++c) {
        const FnTable left = convolve(kind, fg, pool[c], limit, threads);
        const FnTable right = convolve(kind, pool[a], convolve(kind, pool[b], pool[c], limit, threads), limit, threads);
        for (std::size_t n = 1; n <= limit; ++n) {
          if (left(n) != right(n)) return AssociativityWitness{a, b, c, n, left(n), right(n)};
        }
      }
    }
  }
  return std::nullopt;
}

bool is_multiplicative(const FnTable& t, std::size_t limit) {
  require_cover(t, limit, "t");
  if (limit >= 1 && t(1) != 1) return false;
  for (std::uint64_t m = 2; m * m <= limit; ++m) {
    for (std::uint64_t n = m + 1; m * n <= limit; ++n) {
      if (std::gcd(m, n) != 1) continue;
      if (t(m * n) != checked_mul(t(m), t(n))) return false;
    }
  }
  return true;
}

}  // namespace minf
