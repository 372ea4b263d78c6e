#pragma once

#include <map>
#include <stdexcept>
#include <utility>

#include "virfuse/poly.hpp"
#include "virfuse/rational.hpp"
#include "virfuse/vir_core.hpp"

namespace virfuse {

/// Parameters of the density module D_{lambda,mu}. Both may be polynomials in
/// the indeterminate x; the classical module is recovered at constant values.
struct DensityParams {
  Poly lambda;
  Poly mu;
};

/// Finite combination of the basis vectors w_r with polynomial coefficients.
class DensityState {
public:
  DensityState() = default;

  static DensityState basis(int r) {
    DensityState s;
    s.add(r, Poly(Rational(1)));
    return s;
  }

  const std::map<int, Poly>& support() const { return support_; }
  bool is_zero() const { return support_.empty(); }

  Poly coeff(int r) const {
    auto it = support_.find(r);
    return it == support_.end() ? Poly() : it->second;
  }

  void add(int r, const Poly& p) {
    if (p.is_zero()) return;
    auto [it, fresh] = support_.try_emplace(r, p);
    if (!fresh) {
      it->second += p;
      if (it->second.is_zero()) support_.erase(it);
    }
  }

  friend bool operator==(const DensityState& a, const DensityState& b) {
    return a.support_ == b.support_;
  }

private:
  std::map<int, Poly> support_;
};

/// L_n w_r = (mu + r + lambda(n+1)) w_{r-n}, extended linearly.
inline DensityState density_act(int n, const DensityState& s, const DensityParams& params) {
  DensityState out;
  for (const auto& [r, coeff] : s.support()) {
    Poly factor = params.mu + Poly(Rational(r)) + params.lambda.scaled(Rational(n + 1));
    out.add(r - n, factor * coeff);
  }
  return out;
}

/// Coefficient of w_N in op applied to w_0, where N is the level of the
/// homogeneous operator op: the f polynomial of the density projection.
inline Poly project_f(const Operator& op, const DensityParams& params) {
  if (op.empty()) return {};
  int level = op.level();  // throws when not homogeneous
  Poly total;
  for (const auto& [m, coeff] : op.terms()) {
    DensityState state = DensityState::basis(0);
    const auto& parts = m.parts();
    for (auto it = parts.rbegin(); it != parts.rend(); ++it)
      state = density_act(-*it, state, params);
    total += state.coeff(level).scaled(coeff);
  }
  return total;
}

namespace detail {

/// Element a + b*theta of Q[theta] / (theta^2 + 1/t), with theta = sqrt(-1/t).
struct ThetaNum {
  Rational even;
  Rational odd;
};

/// a*theta^{-1} + b*theta, using theta^{-1} = -t*theta.
inline ThetaNum theta_linear(const Rational& a, const Rational& b, const Rational& t) {
  return {Rational(0), b - t * a};
}

inline ThetaNum theta_mul(const ThetaNum& x, const ThetaNum& y, const Rational& t) {
  return {x.even * y.even - x.odd * y.odd / t, x.even * y.odd + x.odd * y.even};
}

/// Projects a theta-ring value known to be rational; a nonzero odd part means
/// the square-root symbol failed to cancel, which the formulas exclude.
inline Rational theta_even_part(const ThetaNum& x) {
  if (!x.odd.is_zero()) throw std::logic_error("theta elimination: odd part survived");
  return x.even;
}

/// A_{p,q}(l,k): the product of the two odd theta-linear factors attached to
/// the lattice point (l,k); always rational.
inline Rational ff_factor_a(int p, int q, const Rational& l, const Rational& k,
                            const Rational& t) {
  Rational half(1, 2);
  ThetaNum first = theta_linear(Rational(p - 1) * half + l, Rational(q - 1) * half + k, t);
  ThetaNum second = theta_linear(Rational(p + 1) * half - l, Rational(q + 1) * half - k, t);
  return theta_even_part(theta_mul(first, second, t));
}

}  // namespace detail

/// Right side of the squared-projection product formula: the product over the
/// symmetric lattice l in {-(p-1)/2..(p-1)/2}, k in {-(q-1)/2..(q-1)/2} (unit
/// steps) of (mu + A(l,k)) (mu + A(-l,-k)) - 4 lambda (l theta^{-1} + k theta)^2,
/// with every theta occurrence eliminated exactly via theta^2 = -1/t. The
/// symmetric range visits each unordered factor pair twice, which is what
/// makes the product the square of the projection polynomial.
inline Poly ff_squared(int p, int q, const Rational& t, const DensityParams& params) {
  if (p < 1 || q < 1) throw std::invalid_argument("ff_squared: p, q must be positive");
  if (t.is_zero()) throw std::domain_error("ff_squared: t must be nonzero");
  Poly result{Rational(1)};
  for (int i = 0; i < p; ++i) {
    Rational l(2 * i - (p - 1), 2);
    for (int j = 0; j < q; ++j) {
      Rational k(2 * j - (q - 1), 2);
      Rational a_plus = detail::ff_factor_a(p, q, l, k, t);
      Rational a_minus = detail::ff_factor_a(p, q, -l, -k, t);
      detail::ThetaNum s = detail::theta_linear(l, k, t);
      Rational square = detail::theta_even_part(detail::theta_mul(s, s, t));
      Poly factor = (params.mu + Poly(a_plus)) * (params.mu + Poly(a_minus)) -
                    params.lambda.scaled(Rational(4) * square);
      result = result * factor;
    }
  }
  return result;
}

}  // namespace virfuse
