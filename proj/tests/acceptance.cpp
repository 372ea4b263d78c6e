// Acceptance gate: eight end-to-end criteria, one pass/fail line each.
// Exit status is the number of failed criteria.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "virfuse/virfuse.hpp"

using namespace virfuse;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool ok, const std::string& detail = "") {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << index << ": " << name;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << "\n";
  if (!ok) ++g_failures;
}

int cg_dim(int m, int n, int r) {
  return clebsch_gordan(m - 2, n - 2).count(r - 2) ? 1 : 0;
}

bool table_matches_rule(const FusionTable& table, std::string& detail) {
  std::size_t expected_count = 512;
  if (table.entries.size() != expected_count) {
    detail = "entry count " + std::to_string(table.entries.size());
    return false;
  }
  for (const auto& [key, cell] : table.entries) {
    auto [m, n, r] = key;
    if (cell.dim != cg_dim(m, n, r)) {
      detail = "entry (" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(r) +
               ") = " + std::to_string(cell.dim);
      return false;
    }
  }
  detail = std::to_string(table.entries.size()) + " entries";
  return true;
}

long rand_range(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

Rational rand_rational(std::mt19937_64& rng, long max_num, long max_den) {
  return Rational(rand_range(rng, -max_num, max_num), rand_range(rng, 1, max_den));
}

PBWMonomial rand_monomial(std::mt19937_64& rng, int max_level) {
  int remaining = static_cast<int>(rand_range(rng, 0, max_level));
  std::vector<int> parts;
  while (remaining > 0) {
    int j = static_cast<int>(rand_range(rng, 1, remaining));
    parts.push_back(j);
    remaining -= j;
  }
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return PBWMonomial(std::move(parts));
}

const std::vector<Rational>& t_list() {
  static const std::vector<Rational> list{Rational(-1), Rational(1),     Rational(2),
                                          Rational(-2), Rational(1, 2), Rational(3)};
  return list;
}

void criterion_main_theorem() {
  std::string detail;
  bool ok = false;
  try {
    ok = table_matches_rule(fusion_table(9, Rational(-1)), detail);
  } catch (const std::exception& e) {
    detail = e.what();
  }
  report(1, "fusion table at t=-1 equals the shifted Clebsch-Gordan rule", ok, detail);
}

void criterion_key_factorization() {
  std::string detail;
  bool ok = true;
  try {
    for (int m = 3; m <= 9 && ok; ++m)
      for (int n = 3; n <= 9 && ok; ++n) {
        IdealGenerator g = fusion_generator(m, n, Rational(-1));
        Rational qn(static_cast<long>(n) * n, 4);
        Rational qm(static_cast<long>(m) * m, 4);
        DensityParams params{Poly(qn - Rational(1)),
                             Poly::linear(Rational(-1), Rational(2) - qn - qm)};
        if (g.gen * g.gen != ff_squared(m - 1, 1, Rational(-1), params)) {
          ok = false;
          detail = "square mismatch at m=" + std::to_string(m) + " n=" + std::to_string(n);
          break;
        }
        std::map<int, int> expect_labels;
        for (int i = n - m + 2; i <= n + m - 2; i += 2) expect_labels[std::abs(i)] += 1;
        if (g.labels != expect_labels || !g.complete) {
          ok = false;
          detail = "label mismatch at m=" + std::to_string(m) + " n=" + std::to_string(n);
          break;
        }
      }
    if (ok) {
      Poly g33 = fusion_generator(3, 3, Rational(-1)).gen;
      Poly expect33 = Poly::x() * (Poly::x() + Poly(Rational(3)));
      Poly g43 = fusion_generator(4, 3, Rational(-1)).gen;
      Poly expect43 = (Poly::x() - Poly(Rational(3, 4))) * (Poly::x() + Poly(Rational(5, 4))) *
                      (Poly::x() + Poly(Rational(21, 4)));
      if (g33 != expect33 || g43 != expect43) {
        ok = false;
        detail = "spot value mismatch";
      } else {
        detail = "49 pairs, squares and labels";
      }
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(2, "monic density projections square to the product formula with the expected labels",
         ok, detail);
}

void criterion_ff_identity() {
  std::string detail;
  bool ok = true;
  int checks = 0, skips = 0;
  std::mt19937_64 rng(42);
  try {
    for (int p = 1; p <= 8 && ok; ++p)
      for (int q = 1; p * q <= 8 && ok; ++q)
        for (const Rational& t : t_list()) {
          Rational lambda = rand_rational(rng, 8, 5);
          Operator op;
          try {
            op = default_solver().solve(p, q, t);
          } catch (const KernelDimensionError& e) {
            ++skips;
            std::cout << "  skipped p=" << p << " q=" << q << " t=" << t.str()
                      << ": kernel dimension " << e.dimension << "\n";
            continue;
          }
          DensityParams params{Poly(lambda), Poly::x()};
          Poly f = project_f(op, params);
          ++checks;
          if (f * f != ff_squared(p, q, t, params)) {
            ok = false;
            detail = "mismatch at p=" + std::to_string(p) + " q=" + std::to_string(q) +
                     " t=" + t.str();
            break;
          }
        }
    if (ok)
      detail = std::to_string(checks) + " checks, " + std::to_string(skips) + " skipped";
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(3, "squared projections equal the product formula across the generic parameter grid", ok,
         detail);
}

void criterion_reduction_coincidence() {
  std::string detail;
  bool ok = true;
  std::mt19937_64 rng(42);
  try {
    for (int i = 0; i < 200; ++i) {
      PBWMonomial m = rand_monomial(rng, 8);
      ReductionContext ctx{rand_rational(rng, 6, 4), rand_rational(rng, 6, 4)};
      if (!reduction_coincidence(m, ctx)) {
        ok = false;
        detail = "mismatch at monomial " + m.str();
        break;
      }
    }
    if (ok) detail = "200 random monomials";
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(4, "closed-form reduction coincides with the density action", ok, detail);
}

void criterion_correlation_coincidence() {
  std::string detail;
  bool ok = true;
  std::mt19937_64 rng(42);
  try {
    int done = 0;
    while (done < 100) {
      PBWMonomial mono = rand_monomial(rng, 8);
      if (mono.empty()) continue;
      int m = static_cast<int>(rand_range(rng, 2, 9));
      int n = static_cast<int>(rand_range(rng, 2, 9));
      int r = static_cast<int>(rand_range(rng, 2, 9));
      ReductionContext ctx{Rational(1) - Rational(static_cast<long>(n) * n, 4),
                           Rational(1) - Rational(static_cast<long>(m) * m, 4)};
      Rational at = Rational(1) - Rational(static_cast<long>(r) * r, 4);
      ++done;
      if (correlation_coefficients(mono.parts(), m, n, r) != monomial_reduction(mono, ctx).eval(at)) {
        ok = false;
        detail = "mismatch at js=" + mono.str();
        break;
      }
    }
    if (ok) detail = "100 random words";
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(5, "correlation coefficients equal the reduction at the label weight", ok, detail);
}

void criterion_singular_vectors() {
  std::string detail;
  bool ok = true;
  try {
    for (const Rational& t : t_list()) {
      if (default_solver().solve(1, 1, t) != Operator::monomial(PBWMonomial{1})) {
        ok = false;
        detail = "level 1 mismatch at t=" + t.str();
        break;
      }
      Operator expect21;
      expect21.add(PBWMonomial{1, 1}, Rational(1));
      expect21.add(PBWMonomial{2}, -t);
      if (default_solver().solve(2, 1, t) != expect21) {
        ok = false;
        detail = "level 2 mismatch at t=" + t.str();
        break;
      }
    }
    Operator expect31;
    expect31.add(PBWMonomial{1, 1, 1}, Rational(1));
    expect31.add(PBWMonomial{2, 1}, Rational(4));
    expect31.add(PBWMonomial{3}, Rational(6));
    if (ok && default_solver().solve(3, 1, Rational(-1)) != expect31) {
      ok = false;
      detail = "level 3 mismatch at t=-1";
    }
    int annihilated = 0;
    for (int p = 1; p <= 8 && ok; ++p)
      for (int q = 1; p * q <= 8 && ok; ++q)
        for (const Rational& t : t_list()) {
          Operator op;
          try {
            op = default_solver().solve(p, q, t);
          } catch (const KernelDimensionError&) {
            continue;
          }
          auto [c, h] = kac_weight(p, q, t);
          VermaVector v = apply_operator(op, ModuleContext{c, h});
          for (int k = 1; k <= p * q; ++k)
            if (!act_generator(k, v).is_zero()) {
              ok = false;
              detail = "annihilation fails at p=" + std::to_string(p) + " q=" + std::to_string(q) +
                       " t=" + t.str() + " k=" + std::to_string(k);
              break;
            }
          ++annihilated;
        }
    if (ok) detail = "known coefficients and " + std::to_string(annihilated) + " full annihilations";
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(6, "solved singular vectors match the known forms and are fully annihilated", ok, detail);
}

void criterion_dual_family() {
  std::string detail;
  bool ok = false;
  try {
    ok = table_matches_rule(fusion_table(9, Rational(1)), detail);
  } catch (const std::exception& e) {
    detail = e.what();
  }
  report(7, "fusion table at t=1 equals the shifted Clebsch-Gordan rule", ok, detail);
}

void criterion_structural() {
  std::string detail;
  bool ok = true;
  try {
    for (int m = -6; m <= 6 && ok; ++m)
      for (int n = -6; n <= 6 && ok; ++n) {
        auto ab = bracket(m, n);
        auto ba = bracket(n, m);
        std::map<std::pair<bool, int>, Rational> sum;
        for (const auto& term : ab) sum[{term.central, term.central ? 0 : term.mode}] += term.coeff;
        for (const auto& term : ba) sum[{term.central, term.central ? 0 : term.mode}] += term.coeff;
        for (const auto& [key, coeff] : sum)
          if (!coeff.is_zero()) {
            ok = false;
            detail = "antisymmetry fails at (" + std::to_string(m) + "," + std::to_string(n) + ")";
          }
      }

    auto nested = [](int a, int b, int c) {
      std::map<std::pair<bool, int>, Rational> e;
      for (const auto& outer : bracket(a, b)) {
        if (outer.central) continue;
        for (const auto& inner : bracket(outer.mode, c))
          e[{inner.central, inner.central ? 0 : inner.mode}] += outer.coeff * inner.coeff;
      }
      return e;
    };
    for (int m = -6; m <= 6 && ok; ++m)
      for (int n = -6; n <= 6 && ok; ++n)
        for (int p = -6; p <= 6 && ok; ++p) {
          std::map<std::pair<bool, int>, Rational> total;
          for (const auto& [key, coeff] : nested(m, n, p)) total[key] += coeff;
          for (const auto& [key, coeff] : nested(n, p, m)) total[key] += coeff;
          for (const auto& [key, coeff] : nested(p, m, n)) total[key] += coeff;
          for (const auto& [key, coeff] : total)
            if (!coeff.is_zero()) {
              ok = false;
              detail = "Jacobi fails at (" + std::to_string(m) + "," + std::to_string(n) + "," +
                       std::to_string(p) + ")";
            }
        }

    if (ok && (partitions_of(4).size() != 5 || partitions_of(8).size() != 22)) {
      ok = false;
      detail = "partition count mismatch";
    }

    if (ok) {
      nlohmann::ordered_json serial = fusion_table(9, Rational(-1), 1);
      nlohmann::ordered_json parallel = fusion_table(9, Rational(-1), 4);
      if (serial.dump() != parallel.dump()) {
        ok = false;
        detail = "parallel table differs from serial";
      }
    }
    if (ok) {
      SuiteReport a = verify_ff(6, 42);
      SuiteReport b = verify_ff(6, 42);
      nlohmann::ordered_json ja = a, jb = b;
      if (ja.dump() != jb.dump() || a.failures != 0) {
        ok = false;
        detail = "seeded verification not reproducible";
      }
    }
    if (ok) {
      auto dir = std::filesystem::temp_directory_path() /
                 ("virfuse_acceptance_" + std::to_string(::getpid()));
      std::filesystem::remove_all(dir);
      std::string cold, warm;
      {
        SingularSolver solver(12, dir);
        nlohmann::ordered_json j = solver.solve(3, 2, Rational(-1));
        cold = j.dump();
      }
      {
        SingularSolver solver(12, dir);
        nlohmann::ordered_json j = solver.solve(3, 2, Rational(-1));
        warm = j.dump();
      }
      std::filesystem::remove_all(dir);
      if (cold != warm) {
        ok = false;
        detail = "cold and warm cache outputs differ";
      }
    }
    if (ok) detail = "bracket laws, partition counts, determinism";
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(8, "structural invariants hold and outputs are deterministic", ok, detail);
}

}  // namespace

int main() {
  criterion_main_theorem();
  criterion_key_factorization();
  criterion_ff_identity();
  criterion_reduction_coincidence();
  criterion_correlation_coincidence();
  criterion_singular_vectors();
  criterion_dual_family();
  criterion_structural();
  return g_failures;
}
