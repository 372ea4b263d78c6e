#pragma once

#include <gmpxx.h>

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>

namespace virfuse {

/// Arbitrary-precision rational number, always held in canonical form:
/// gcd(|num|, den) = 1, den > 0, zero is 0/1.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit by design, scalars are pervasive
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_.canonicalize();
  }
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Parses "p/q" or "p" with an optional leading minus sign. Anything
  /// else (floats, exponents, whitespace) is rejected.
  static Rational parse(const std::string& s) {
    if (!looks_exact(s)) throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    mpq_class v;
    if (v.set_str(s, 10) != 0) throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    if (v.get_den() == 0) throw std::invalid_argument("Rational: zero denominator in '" + s + "'");
    v.canonicalize();
    return Rational(std::move(v));
  }

  std::string str() const { return v_.get_str(); }  // "p/q", or "p" when q = 1
  std::string num_str() const { return v_.get_num().get_str(); }
  std::string den_str() const { return v_.get_den().get_str(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  const mpq_class& raw() const { return v_; }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

private:
  static bool looks_exact(const std::string& s) {
    std::size_t i = 0;
    auto digits = [&](std::size_t from) {
      std::size_t j = from;
      while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
      return j;
    };
    if (i < s.size() && s[i] == '-') ++i;
    std::size_t j = digits(i);
    if (j == i) return false;
    if (j == s.size()) return true;
    if (s[j] != '/') return false;
    std::size_t k = digits(j + 1);
    return k > j + 1 && k == s.size();
  }

  mpq_class v_;
};

/// r^e for small non-negative exponents.
inline Rational pow_ui(const Rational& r, unsigned e) {
  Rational out(1);
  for (unsigned i = 0; i < e; ++i) out *= r;
  return out;
}

}  // namespace virfuse
