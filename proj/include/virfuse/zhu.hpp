#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "virfuse/density.hpp"
#include "virfuse/poly.hpp"
#include "virfuse/rational.hpp"
#include "virfuse/verma.hpp"
#include "virfuse/vir_core.hpp"

namespace virfuse {

/// Lowest weights of the two modules entering a Zhu-bimodule reduction:
/// h_left for the bimodule factor, h_right for the module the tensor is
/// balanced over.
struct ReductionContext {
  Rational h_left;
  Rational h_right;
};

/// Closed-form image of [L(-j1)...L(-jk) v (x) 1] in C[x]: the product over
/// r of (j_r * h_right - x + beta(r)) with beta(r) = j_{r+1} + ... + j_k +
/// h_left. The empty monomial maps to 1.
inline Poly monomial_reduction(const PBWMonomial& m, const ReductionContext& ctx) {
  Poly result{Rational(1)};
  const auto& parts = m.parts();
  Rational beta = ctx.h_left;
  for (std::size_t r = parts.size(); r-- > 0;) {
    Poly factor = Poly::linear(Rational(-1), Rational(parts[r]) * ctx.h_right + beta);
    result = result * factor;
    beta += Rational(parts[r]);
  }
  return result;
}

/// Rewriting rule for a single lowering mode inside the Zhu quotient:
/// [L(-n) v] = [((n-1) L(-2) - L(-1) + L(0)) v] for n >= 2, and
/// [L(-1) v] = [L(0) v] for n = 1.
struct WangCombination {
  Rational c_lminus2;
  Rational c_lminus1;
  Rational c_lzero;
  friend bool operator==(const WangCombination&, const WangCombination&) = default;
};

inline WangCombination wang_rewrite(int n) {
  if (n < 1) throw std::invalid_argument("wang_rewrite: n must be positive");
  if (n == 1) return {Rational(0), Rational(0), Rational(1)};
  return {Rational(n - 1), Rational(-1), Rational(1)};
}

/// Lowest weight h_{i-1,1}(t) attached to the integer label i. At t=-1 this
/// is 1 - i^2/4, at t=1 it is (i-2)^2/4; the two-parameter Kac weight
/// specializes to a single polynomial in i once q=1.
inline Rational label_weight(int i, const Rational& t) {
  long im1 = i - 1;
  return Rational(im1 * im1 - 1, 4) * t - Rational(i - 2, 2);
}

/// Monic generator of the ideal cutting out the fusion quotient, with its
/// roots expressed as integer labels via label_weight.
struct IdealGenerator {
  int m = 0;
  int n = 0;
  Rational t;
  Poly gen;
  std::map<int, int> labels;
  bool complete = false;
};

inline void to_json(nlohmann::ordered_json& j, const IdealGenerator& g) {
  j["m"] = g.m;
  j["n"] = g.n;
  j["t"] = g.t.str();
  j["gen"] = g.gen;
  j["labels"] = nlohmann::ordered_json::object();
  for (const auto& [label, mult] : g.labels) j["labels"][std::to_string(label)] = mult;
  j["complete"] = g.complete;
}

inline void from_json(const nlohmann::ordered_json& j, IdealGenerator& g) {
  g.m = j.at("m").get<int>();
  g.n = j.at("n").get<int>();
  g.t = Rational::parse(j.at("t").get<std::string>());
  g.gen = j.at("gen").get<Poly>();
  g.labels.clear();
  for (const auto& [key, value] : j.at("labels").items()) g.labels[std::stoi(key)] = value.get<int>();
  g.complete = j.at("complete").get<bool>();
}

/// Builds the fusion ideal generator for the pair (m,n): projects the level
/// m-1 singular operator onto the density module with lambda = -h_n and
/// mu = h_m + h_n - x, normalizes monic, and expresses the roots as labels.
/// Roots are claimed by labels in descending order from m+n (then descending
/// negatives), so coinciding weights collapse onto the largest label with
/// accumulated multiplicity; complete reports whether every root was claimed.
inline IdealGenerator fusion_generator(int m, int n, const Rational& t,
                                       SingularSolver& solver = default_solver()) {
  if (m < 3 || n < 3) throw std::invalid_argument("fusion_generator: m, n must be >= 3");
  Rational h_m = label_weight(m, t);
  Rational h_n = label_weight(n, t);

  Operator op = solver.solve(m - 1, 1, t);
  DensityParams params{Poly(-h_n), Poly::linear(Rational(-1), h_m + h_n)};
  Poly f = project_f(op, params);

  IdealGenerator out;
  out.m = m;
  out.n = n;
  out.t = t;
  out.gen = f.monic();

  std::set<Rational> candidates;
  for (int i = -(m + n); i <= m + n; ++i) candidates.insert(label_weight(i, t));
  auto report = rational_roots(out.gen, candidates);
  out.complete = report.splits;

  std::map<Rational, int> remaining;
  for (const auto& [root, mult] : report.multiplicity)
    if (mult > 0) remaining[root] = mult;
  auto claim = [&](int i) {
    auto it = remaining.find(label_weight(i, t));
    if (it == remaining.end()) return;
    out.labels[i] = it->second;
    remaining.erase(it);
  };
  for (int i = m + n; i >= 0; --i) claim(i);
  for (int i = -1; i >= -(m + n); --i) claim(i);
  return out;
}

/// Whether the closed-form reduction agrees with the density-module action at
/// lambda = -h_right, mu = h_left + h_right - x: the coefficient of w_level
/// in the monomial applied to w_0 must equal monomial_reduction exactly.
inline bool reduction_coincidence(const PBWMonomial& m, const ReductionContext& ctx) {
  Poly closed = monomial_reduction(m, ctx);
  DensityParams params{Poly(-ctx.h_right), Poly::linear(Rational(-1), ctx.h_left + ctx.h_right)};
  DensityState state = DensityState::basis(0);
  const auto& parts = m.parts();
  for (auto it = parts.rbegin(); it != parts.rend(); ++it)
    state = density_act(-*it, state, params);
  return state.coeff(m.level()) == closed;
}

/// Dimension of algebra maps C[x]/<gen> -> C where x acts by rho: 1 exactly
/// when rho is a root of the generator.
inline int hom_dim(const IdealGenerator& g, const Rational& rho) {
  return g.gen.eval(rho).is_zero() ? 1 : 0;
}

}  // namespace virfuse
