#pragma once

#include <compare>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "virfuse/rational.hpp"

namespace virfuse {

/// Index of a PBW basis monomial L(-j1) L(-j2) ... L(-jk) with
/// j1 >= j2 >= ... >= jk >= 1. The empty monomial is the identity.
class PBWMonomial {
public:
  PBWMonomial() = default;
  PBWMonomial(std::initializer_list<int> parts) : PBWMonomial(std::vector<int>(parts)) {}
  explicit PBWMonomial(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 1) throw std::invalid_argument("PBWMonomial: parts must be positive");
      if (i > 0 && parts_[i - 1] < parts_[i])
        throw std::invalid_argument("PBWMonomial: parts must be non-increasing");
    }
  }

  const std::vector<int>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  std::size_t size() const { return parts_.size(); }
  int level() const {
    int s = 0;
    for (int j : parts_) s += j;
    return s;
  }

  friend auto operator<=>(const PBWMonomial&, const PBWMonomial&) = default;

  std::string str() const {
    std::string out = "[";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(parts_[i]);
    }
    return out + "]";
  }

private:
  std::vector<int> parts_;
};

inline void to_json(nlohmann::ordered_json& j, const PBWMonomial& m) { j = m.parts(); }

inline void from_json(const nlohmann::ordered_json& j, PBWMonomial& m) {
  m = PBWMonomial(j.get<std::vector<int>>());
}

/// All partitions of n, lexicographically largest first: [n] first, [1,...,1] last.
inline std::vector<PBWMonomial> partitions_of(int n) {
  if (n < 0) throw std::invalid_argument("partitions_of: negative level");
  std::vector<PBWMonomial> out;
  std::vector<int> current;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      current.push_back(part);
      self(self, remaining - part, part);
      current.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

/// Finite rational combination of PBW monomials; zero coefficients are never stored.
class Operator {
public:
  Operator() = default;

  static Operator monomial(PBWMonomial m, const Rational& coeff = Rational(1)) {
    Operator op;
    op.add(std::move(m), coeff);
    return op;
  }

  const std::map<PBWMonomial, Rational>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  Rational coeff(const PBWMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add(PBWMonomial m, const Rational& coeff) {
    if (coeff.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(std::move(m), coeff);
    if (!fresh) {
      it->second += coeff;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  bool homogeneous() const {
    if (terms_.empty()) return true;
    int lvl = terms_.begin()->first.level();
    for (const auto& [m, _] : terms_)
      if (m.level() != lvl) return false;
    return true;
  }

  /// Common level of a nonempty homogeneous operator.
  int level() const {
    if (terms_.empty()) throw std::domain_error("Operator: level of empty operator");
    int lvl = terms_.begin()->first.level();
    for (const auto& [m, _] : terms_)
      if (m.level() != lvl) throw std::domain_error("Operator: not homogeneous");
    return lvl;
  }

  friend bool operator==(const Operator& a, const Operator& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Operator& a, const Operator& b) { return !(a == b); }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += c.str() + "*L" + m.str();
    }
    return out;
  }

private:
  std::map<PBWMonomial, Rational> terms_;
};

/// a + scalar * b.
inline Operator operator_combine(const Operator& a, const Operator& b, const Rational& scalar) {
  Operator out = a;
  for (const auto& [m, c] : b.terms()) out.add(m, scalar * c);
  return out;
}

inline void to_json(nlohmann::ordered_json& j, const Operator& op) {
  j = nlohmann::ordered_json::array();
  for (const auto& [m, c] : op.terms()) {
    nlohmann::ordered_json term;
    term["partition"] = m;
    term["coeff"] = c.str();
    j.push_back(std::move(term));
  }
}

inline void from_json(const nlohmann::ordered_json& j, Operator& op) {
  op = Operator();
  for (const auto& term : j)
    op.add(term.at("partition").get<PBWMonomial>(),
           Rational::parse(term.at("coeff").get<std::string>()));
}

/// One term of a commutator expansion: coeff * L_{mode}, or coeff * C when central.
struct BracketTerm {
  bool central = false;
  int mode = 0;
  Rational coeff;
};

/// Expansion of [L_m, L_n 1] = (m-n) L_{m+n} + (m^3-m)/12 delta_{m+n,0} C.
inline std::vector<BracketTerm> bracket(int m, int n) {
  std::vector<BracketTerm> out;
  if (m != n) out.push_back({false, m + n, Rational(m - n)});
  if (m + n == 0 && m != 0) {
    long lm = m;
    Rational central_coeff(lm * lm * lm - lm, 12);
    if (!central_coeff.is_zero()) out.push_back({true, 0, central_coeff});
  }
  return out;
}

/// Central charge of the family c(t) = 13 - 6t - 6/t.
inline Rational central_charge(const Rational& t) {
  if (t.is_zero()) throw std::domain_error("central_charge: t must be nonzero");
  return Rational(13) - Rational(6) * t - Rational(6) / t;
}

/// The parameter t together with its central charge.
struct CentralData {
  Rational t;
  Rational c;
  explicit CentralData(const Rational& t_) : t(t_), c(central_charge(t_)) {}
};

}  // namespace virfuse
