#pragma once

#include <string>

#include "minf/int128.hpp"

namespace minf {

// Exact rational with 128-bit numerator/denominator; overflow raises std::range_error.
class Rational {
 public:
  Rational() = default;
  Rational(i128 value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(i128 num, i128 den);

  i128 num() const { return num_; }
  i128 den() const { return den_; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const { return Rational(checked_sub(0, num_), den_); }
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }

  friend bool operator==(const Rational&, const Rational&) = default;

  std::string str() const;

 private:
  i128 num_ = 0;
  i128 den_ = 1;
};

}  // namespace minf
