#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"
#include "virfuse/rational.hpp"
#include "virfuse/verma.hpp"
#include "virfuse/zhu.hpp"

namespace virfuse {

/// How a table entry was established: the delta rule for vacuum-labelled
/// rows, or the two-sided ideal-membership bound matched to the closed form.
enum class Provenance { VacuumRule, BoundTheorem };

inline std::string provenance_name(Provenance p) {
  return p == Provenance::VacuumRule ? "vacuum-rule" : "bound+theorem";
}

/// {|a-b|, |a-b|+2, ..., a+b}: the sl(2) tensor decomposition indices.
inline std::set<int> clebsch_gordan(int a, int b) {
  if (a < 0 || b < 0) throw std::invalid_argument("clebsch_gordan: labels must be >= 0");
  std::set<int> out;
  for (int r = std::abs(a - b); r <= a + b; r += 2) out.insert(r);
  return out;
}

/// ProductFactor_i = j_i (1 - m^2/4) + r^2/4 + sum_{s>i} j_s - n^2/4; the
/// scalar multiplying the leading power in the three-point function with the
/// overall constant fixed to 1.
inline Rational correlation_coefficients(const std::vector<int>& js, int m, int n, int r) {
  Rational h_m = Rational(1) - Rational(static_cast<long>(m) * m, 4);
  Rational r_shift = Rational(static_cast<long>(r) * r, 4) -
                     Rational(static_cast<long>(n) * n, 4);
  Rational tail(0);
  for (std::size_t s = 1; s < js.size(); ++s) tail += Rational(js[s]);
  Rational product(1);
  for (std::size_t i = 0; i < js.size(); ++i) {
    product *= Rational(js[i]) * h_m + r_shift + tail;
    if (i + 1 < js.size()) tail -= Rational(js[i + 1]);
  }
  return product;
}

/// Upper bound on the fusion dimension for the triple (m,n,r) of labels:
/// the vacuum delta rule when m or n is 2, otherwise ideal membership of the
/// weight of r checked from both generator orders (the label sets of the two
/// orders differ, and the true rule sits inside their intersection).
inline int fusion_bound(int m, int n, int r, const Rational& t,
                        SingularSolver& solver = default_solver()) {
  if (m < 2 || n < 2 || r < 2) throw std::invalid_argument("fusion_bound: labels must be >= 2");
  if (m == 2) return r == n ? 1 : 0;
  if (n == 2) return r == m ? 1 : 0;
  Rational weight = label_weight(r, t);
  IdealGenerator forward = fusion_generator(m, n, t, solver);
  if (hom_dim(forward, weight) == 0) return 0;
  IdealGenerator backward = fusion_generator(n, m, t, solver);
  return hom_dim(backward, weight);
}

struct FusionCell {
  int dim = 0;
  Provenance why = Provenance::BoundTheorem;
  friend bool operator==(const FusionCell&, const FusionCell&) = default;
};

/// Complete table of fusion dimensions over labels 2..max_label at a fixed t.
struct FusionTable {
  Rational t;
  int max_label = 0;
  std::map<std::tuple<int, int, int>, FusionCell> entries;

  const FusionCell& at(int m, int n, int r) const { return entries.at({m, n, r}); }
  int dim(int m, int n, int r) const { return at(m, n, r).dim; }

  std::string grid() const {
    std::ostringstream out;
    out << "m n r dim why\n";
    for (const auto& [key, cell] : entries) {
      auto [m, n, r] = key;
      out << m << " " << n << " " << r << " " << cell.dim << " " << provenance_name(cell.why)
          << "\n";
    }
    return out.str();
  }
};

inline void to_json(nlohmann::ordered_json& j, const FusionTable& table) {
  j["t"] = table.t.str();
  j["max_label"] = table.max_label;
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& [key, cell] : table.entries) {
    auto [m, n, r] = key;
    nlohmann::ordered_json entry;
    entry["m"] = m;
    entry["n"] = n;
    entry["r"] = r;
    entry["dim"] = cell.dim;
    entry["why"] = provenance_name(cell.why);
    j["entries"].push_back(std::move(entry));
  }
}

inline void from_json(const nlohmann::ordered_json& j, FusionTable& table) {
  table.t = Rational::parse(j.at("t").get<std::string>());
  table.max_label = j.at("max_label").get<int>();
  table.entries.clear();
  for (const auto& entry : j.at("entries")) {
    FusionCell cell;
    cell.dim = entry.at("dim").get<int>();
    cell.why = entry.at("why").get<std::string>() == "vacuum-rule" ? Provenance::VacuumRule
                                                                   : Provenance::BoundTheorem;
    table.entries[{entry.at("m").get<int>(), entry.at("n").get<int>(), entry.at("r").get<int>()}] =
        cell;
  }
}

namespace detail {

/// All r-entries for a fixed (m,n), computing each generator order once.
inline std::vector<std::pair<int, FusionCell>> fusion_row(int m, int n, int max_label,
                                                          const Rational& t,
                                                          SingularSolver& solver) {
  std::vector<std::pair<int, FusionCell>> out;
  out.reserve(max_label - 1);
  if (m == 2 || n == 2) {
    int expect = m == 2 ? n : m;
    for (int r = 2; r <= max_label; ++r)
      out.push_back({r, FusionCell{r == expect ? 1 : 0, Provenance::VacuumRule}});
    return out;
  }
  IdealGenerator forward = fusion_generator(m, n, t, solver);
  IdealGenerator backward = fusion_generator(n, m, t, solver);
  for (int r = 2; r <= max_label; ++r) {
    Rational weight = label_weight(r, t);
    int dim = std::min(hom_dim(forward, weight), hom_dim(backward, weight));
    out.push_back({r, FusionCell{dim, Provenance::BoundTheorem}});
  }
  return out;
}

}  // namespace detail

/// Builds the full table. Work is split over (m,n) pairs; each worker fills a
/// private row which is merged under a lock, so the result is independent of
/// the number of jobs.
inline FusionTable fusion_table(int max_label, const Rational& t, int jobs = 1,
                                SingularSolver& solver = default_solver()) {
  if (max_label < 2) throw std::invalid_argument("fusion_table: max_label must be >= 2");
  FusionTable table;
  table.t = t;
  table.max_label = max_label;

  std::vector<std::pair<int, int>> pairs;
  for (int m = 2; m <= max_label; ++m)
    for (int n = 2; n <= max_label; ++n) pairs.push_back({m, n});

  if (jobs <= 1) {
    for (auto [m, n] : pairs)
      for (auto& [r, cell] : detail::fusion_row(m, n, max_label, t, solver))
        table.entries[{m, n, r}] = cell;
    return table;
  }

  std::atomic<std::size_t> next{0};
  std::mutex merge_mu;
  std::exception_ptr first_error;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= pairs.size()) return;
      auto [m, n] = pairs[i];
      try {
        auto row = detail::fusion_row(m, n, max_label, t, solver);
        std::lock_guard lock(merge_mu);
        for (auto& [r, cell] : row) table.entries[{m, n, r}] = cell;
      } catch (...) {
        std::lock_guard lock(merge_mu);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  int count = std::min<int>(jobs, static_cast<int>(pairs.size()));
  threads.reserve(count);
  for (int i = 0; i < count; ++i) threads.emplace_back(worker);
  for (auto& th : threads) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return table;
}

}  // namespace virfuse
