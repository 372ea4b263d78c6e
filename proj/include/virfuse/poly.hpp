#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "virfuse/rational.hpp"

namespace virfuse {

/// Dense univariate polynomial over Rational in the formal variable x.
/// Coefficients are stored in ascending degree order; the trailing
/// coefficient is nonzero, so the zero polynomial is the empty sequence.
class Poly {
public:
  Poly() = default;
  Poly(const Rational& constant) {  // NOLINT: implicit constants are convenient
    if (!constant.is_zero()) c_.push_back(constant);
  }
  Poly(long constant) : Poly(Rational(constant)) {}  // NOLINT
  explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly x() { return Poly(std::vector<Rational>{0, 1}); }
  /// a*x + b
  static Poly linear(const Rational& a, const Rational& b) {
    return Poly(std::vector<Rational>{b, a});
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Poly& operator+=(const Poly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a) { return a.scaled(Rational(-1)); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(out));
  }

  Poly scaled(const Rational& s) const {
    if (s.is_zero()) return {};
    std::vector<Rational> out(c_);
    for (auto& v : out) v *= s;
    return Poly(std::move(out));
  }

  Rational eval(const Rational& at) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + *it;
    return acc;
  }

  /// Substitutes x -> a*x + b.
  Poly compose_linear(const Rational& a, const Rational& b) const {
    Poly acc;
    Poly lin = linear(a, b);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + Poly(*it);
    return acc;
  }

  /// Scales so that the leading coefficient is 1. Throws on the zero polynomial.
  Poly monic() const {
    if (is_zero()) throw std::domain_error("Poly: monic of zero polynomial");
    return scaled(Rational(1) / leading());
  }

  /// Synthetic division by (x - root): returns (quotient, remainder)
  /// with *this == quotient*(x - root) + remainder.
  std::pair<Poly, Rational> divide_linear(const Rational& root) const {
    if (is_zero()) return {Poly(), Rational(0)};
    std::vector<Rational> q(c_.size() - 1, Rational(0));
    Rational carry = c_.back();
    for (std::size_t i = c_.size() - 1; i-- > 0;) {
      q[i] = carry;
      carry = c_[i] + carry * root;
    }
    return {Poly(std::move(q)), carry};
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Human-readable rendering, highest degree first, e.g. "x^2 + 4*x + 15/4".
  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      const Rational& a = c_[i];
      if (a.is_zero()) continue;
      Rational mag = a.sign() < 0 ? -a : a;
      if (out.empty())
        out += a.sign() < 0 ? "-" : "";
      else
        out += a.sign() < 0 ? " - " : " + ";
      bool unit = mag == Rational(1);
      if (i == 0) {
        out += mag.str();
      } else {
        if (!unit) out += mag.str() + "*";
        out += "x";
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<Rational> c_;
};

inline void to_json(nlohmann::ordered_json& j, const Poly& p) {
  j = nlohmann::ordered_json::array();
  for (const auto& c : p.coeffs()) j.push_back(c.str());
}

inline void from_json(const nlohmann::ordered_json& j, Poly& p) {
  std::vector<Rational> coeffs;
  for (const auto& s : j) coeffs.push_back(Rational::parse(s.get<std::string>()));
  p = Poly(std::move(coeffs));
}

struct RootReport {
  std::map<Rational, int> multiplicity;  // per candidate, 0 when not a root
  bool splits = false;                   // all of deg(p) accounted for by candidates
};

/// For each candidate r, the largest k with (x - r)^k dividing p.
/// `splits` reports whether the candidates exhaust the degree of p.
inline RootReport rational_roots(const Poly& p, const std::set<Rational>& candidates) {
  if (p.is_zero()) throw std::invalid_argument("rational_roots: zero polynomial");
  RootReport report;
  Poly work = p;
  for (const auto& cand : candidates) {
    int mult = 0;
    for (;;) {
      auto [quot, rem] = work.divide_linear(cand);
      if (!rem.is_zero()) break;
      work = quot;
      ++mult;
    }
    report.multiplicity[cand] = mult;
  }
  report.splits = work.degree() == 0;
  return report;
}

}  // namespace virfuse
