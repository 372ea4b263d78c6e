#pragma once

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"
#include "virfuse/linalg.hpp"
#include "virfuse/rational.hpp"
#include "virfuse/vir_core.hpp"

namespace virfuse {

/// (c(t), h_{p,q}(t)) for the Kac-parametrized lowest weight.
inline std::pair<Rational, Rational> kac_weight(int p, int q, const Rational& t) {
  if (p < 1 || q < 1) throw std::invalid_argument("kac_weight: p, q must be positive");
  if (t.is_zero()) throw std::domain_error("kac_weight: t must be nonzero");
  Rational h = Rational(static_cast<long>(p) * p - 1, 4) * t -
               Rational(static_cast<long>(p) * q - 1, 2) +
               Rational(static_cast<long>(q) * q - 1, 4) / t;
  return {central_charge(t), h};
}

/// Kac label (p,q) at parameter t with its lowest weight.
struct KacLabel {
  int p;
  int q;
  Rational t;
  Rational h;
  KacLabel(int p_, int q_, const Rational& t_) : p(p_), q(q_), t(t_) {
    h = kac_weight(p_, q_, t_).second;
  }
};

/// c_{p,q} = 1 - 6(p-q)^2 / (pq), the central charges of the minimal models.
inline Rational minimal_charge(int p, int q) {
  if (p < 2 || q < 2) throw std::invalid_argument("minimal_charge: p, q must be >= 2");
  long d = p - q;
  return Rational(1) - Rational(6 * d * d, static_cast<long>(p) * q);
}

/// Whether the vacuum module M(c,0)/<L(-1) vacuum> is simple: false exactly
/// when c is a minimal-model charge c_{p,q} with coprime p,q >= 2. Charges
/// with c >= 1 are decided exactly; otherwise the scan is bounded.
inline bool vacuum_simple(const Rational& c, int search_bound) {
  if (search_bound < 2) throw std::invalid_argument("vacuum_simple: bound must be >= 2");
  if (c >= Rational(1)) return true;
  for (int p = 2; p <= search_bound; ++p)
    for (int q = 2; q <= search_bound; ++q) {
      if (std::gcd(p, q) != 1) continue;
      if (c == minimal_charge(p, q)) return false;
    }
  return true;
}

/// Lowest-weight data of the ambient module M(c,h).
struct ModuleContext {
  Rational c;
  Rational h;
  friend bool operator==(const ModuleContext&, const ModuleContext&) = default;
};

/// Element of the level-`level` graded component of M(c,h), in the PBW basis.
class VermaVector {
public:
  VermaVector(ModuleContext ctx, int level) : ctx_(std::move(ctx)), level_(level) {
    if (level < 0) throw std::invalid_argument("VermaVector: negative level");
  }

  static VermaVector lowest_weight(ModuleContext ctx) {
    VermaVector v(std::move(ctx), 0);
    v.add(PBWMonomial{}, Rational(1));
    return v;
  }

  const ModuleContext& context() const { return ctx_; }
  int level() const { return level_; }
  const std::map<PBWMonomial, Rational>& coords() const { return coords_; }
  bool is_zero() const { return coords_.empty(); }

  Rational coord(const PBWMonomial& m) const {
    auto it = coords_.find(m);
    return it == coords_.end() ? Rational(0) : it->second;
  }

  void add(const PBWMonomial& m, const Rational& coeff) {
    if (coeff.is_zero()) return;
    if (m.level() != level_) throw std::invalid_argument("VermaVector: level mismatch");
    auto [it, fresh] = coords_.try_emplace(m, coeff);
    if (!fresh) {
      it->second += coeff;
      if (it->second.is_zero()) coords_.erase(it);
    }
  }

  friend bool operator==(const VermaVector& a, const VermaVector& b) {
    return a.ctx_ == b.ctx_ && a.level_ == b.level_ && a.coords_ == b.coords_;
  }

private:
  ModuleContext ctx_;
  int level_;
  std::map<PBWMonomial, Rational> coords_;
};

/// Applies op to the lowest-weight vector of M(c,h), landing at op's level.
inline VermaVector apply_operator(const Operator& op, const ModuleContext& ctx) {
  int lvl = op.empty() ? 0 : op.level();
  VermaVector v(ctx, lvl);
  for (const auto& [m, coeff] : op.terms()) v.add(m, coeff);
  return v;
}

/// Exact action of L_n on a graded Verma vector, re-expressed in the PBW
/// basis. Words are normal-ordered by adjacent transpositions, inserting the
/// commutator terms; trailing non-negative modes are resolved against the
/// lowest-weight vector (annihilation for positive modes, the eigenvalue h
/// for L_0, the scalar c for the central element).
inline VermaVector act_generator(int n, const VermaVector& v) {
  int out_level = v.level() - n;
  VermaVector out(v.context(), std::max(out_level, 0));
  if (out_level < 0) return out;
  const Rational& c = v.context().c;
  const Rational& h = v.context().h;

  std::vector<std::pair<std::vector<int>, Rational>> stack;
  for (const auto& [m, coeff] : v.coords()) {
    std::vector<int> word;
    word.reserve(m.size() + 1);
    word.push_back(n);
    for (int j : m.parts()) word.push_back(-j);
    stack.emplace_back(std::move(word), coeff);
  }

  while (!stack.empty()) {
    auto [word, coeff] = std::move(stack.back());
    stack.pop_back();

    bool rewritten = false;
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
      if (word[i] <= word[i + 1]) continue;
      int a = word[i], b = word[i + 1];

      std::vector<int> swapped = word;
      std::swap(swapped[i], swapped[i + 1]);
      stack.emplace_back(std::move(swapped), coeff);

      std::vector<int> merged(word.begin(), word.begin() + i);
      merged.push_back(a + b);
      merged.insert(merged.end(), word.begin() + i + 2, word.end());
      stack.emplace_back(std::move(merged), coeff * Rational(a - b));

      if (a + b == 0) {
        Rational central(static_cast<long>(a) * a * a - a, 12);
        if (!central.is_zero()) {
          std::vector<int> dropped(word.begin(), word.begin() + i);
          dropped.insert(dropped.end(), word.begin() + i + 2, word.end());
          stack.emplace_back(std::move(dropped), coeff * central * c);
        }
      }
      rewritten = true;
      break;
    }
    if (rewritten) continue;

    bool annihilated = false;
    while (!word.empty() && word.back() >= 0) {
      if (word.back() > 0) {
        annihilated = true;
        break;
      }
      word.pop_back();
      coeff *= h;
      if (coeff.is_zero()) break;
    }
    if (annihilated || coeff.is_zero()) continue;

    std::vector<int> parts;
    parts.reserve(word.size());
    for (int m : word) parts.push_back(-m);
    out.add(PBWMonomial(std::move(parts)), coeff);
  }
  return out;
}

struct SolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The joint kernel of L_1, L_2 at the requested level is not a line.
struct KernelDimensionError : SolveError {
  int dimension;
  KernelDimensionError(int p, int q, const Rational& t, int dim)
      : SolveError("singular vector (" + std::to_string(p) + "," + std::to_string(q) + ") at t=" +
                   t.str() + ": kernel dimension " + std::to_string(dim) + ", expected 1"),
        dimension(dim) {}
};

/// The kernel line has vanishing coefficient on L(-1)^N, so the normalization
/// required by the lowest-order convention does not exist.
struct NormalizationError : SolveError {
  NormalizationError(int p, int q, const Rational& t)
      : SolveError("singular vector (" + std::to_string(p) + "," + std::to_string(q) + ") at t=" +
                   t.str() + ": vanishing coefficient on the all-ones partition") {}
};

/// Requested level pq exceeds the configured cap.
struct LevelCapError : SolveError {
  LevelCapError(int level, int cap)
      : SolveError("level " + std::to_string(level) + " exceeds cap " + std::to_string(cap)) {}
};

namespace detail {

/// Kernel of the stacked maps L_1, L_2 from level N of M(c,h), over the
/// column basis partitions_of(N) (largest-first).
inline std::vector<std::vector<Rational>> annihilator_kernel(int level, const ModuleContext& ctx) {
  auto basis = partitions_of(level);
  std::vector<std::vector<VermaVector>> images;
  for (int n : {1, 2}) {
    if (level - n < 0) continue;
    std::vector<VermaVector> col_images;
    col_images.reserve(basis.size());
    for (const auto& m : basis) {
      VermaVector v(ctx, level);
      v.add(m, Rational(1));
      col_images.push_back(act_generator(n, v));
    }
    images.push_back(std::move(col_images));
  }

  std::vector<std::vector<Rational>> matrix;
  for (std::size_t block = 0; block < images.size(); ++block) {
    int target_level = images[block].front().level();
    for (const auto& target : partitions_of(target_level)) {
      std::vector<Rational> row;
      row.reserve(basis.size());
      for (const auto& image : images[block]) row.push_back(image.coord(target));
      matrix.push_back(std::move(row));
    }
  }
  return exact_kernel(matrix, basis.size());
}

inline Operator solve_singular(int p, int q, const Rational& t) {
  auto [c, h] = kac_weight(p, q, t);
  int level = p * q;
  auto kernel = annihilator_kernel(level, ModuleContext{c, h});
  if (kernel.size() != 1)
    throw KernelDimensionError(p, q, t, static_cast<int>(kernel.size()));

  auto basis = partitions_of(level);
  PBWMonomial all_ones(std::vector<int>(static_cast<std::size_t>(level), 1));
  std::size_t norm_col = basis.size();
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i] == all_ones) {
      norm_col = i;
      break;
    }
  const auto& vec = kernel.front();
  if (vec[norm_col].is_zero()) throw NormalizationError(p, q, t);
  Rational scale = Rational(1) / vec[norm_col];

  Operator op;
  for (std::size_t i = 0; i < basis.size(); ++i) op.add(basis[i], vec[i] * scale);
  return op;
}

}  // namespace detail

/// O_{p,q}(t): the level-pq operator whose image of the lowest-weight vector
/// of M(c(t), h_{p,q}(t)) is singular, normalized so the coefficient of
/// L(-1)^{pq} is 1. Throws KernelDimensionError when the parameters are
/// degenerate (joint kernel not a line) and NormalizationError when the
/// all-ones coefficient vanishes.
inline Operator singular_vector(int p, int q, const Rational& t, int level_cap = 12) {
  if (p < 1 || q < 1) throw std::invalid_argument("singular_vector: p, q must be positive");
  if (p * q > level_cap) throw LevelCapError(p * q, level_cap);
  return detail::solve_singular(p, q, t);
}

/// Memoizing front end for singular_vector with an optional disk cache.
/// Solves for distinct keys are independent; the in-process memo is
/// mutex-guarded and disk writes are atomic (temp file + rename), so
/// concurrent solvers sharing a cache directory stay consistent.
class SingularSolver {
public:
  explicit SingularSolver(int level_cap = 12, std::filesystem::path cache_dir = {})
      : level_cap_(level_cap), cache_dir_(std::move(cache_dir)) {}

  void set_cache_dir(std::filesystem::path dir) {
    std::lock_guard lock(mu_);
    cache_dir_ = std::move(dir);
  }

  int level_cap() const { return level_cap_; }

  Operator solve(int p, int q, const Rational& t) {
    if (p < 1 || q < 1) throw std::invalid_argument("singular_vector: p, q must be positive");
    if (p * q > level_cap_) throw LevelCapError(p * q, level_cap_);
    Key key{p, q, t.str()};
    std::filesystem::path dir;
    {
      std::lock_guard lock(mu_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
      dir = cache_dir_;
    }

    if (!dir.empty()) {
      if (auto cached = read_cache(dir, p, q, t)) {
        std::lock_guard lock(mu_);
        return memo_.try_emplace(key, std::move(*cached)).first->second;
      }
    }

    Operator op = detail::solve_singular(p, q, t);
    if (!dir.empty()) write_cache(dir, p, q, t, op);
    std::lock_guard lock(mu_);
    return memo_.try_emplace(key, std::move(op)).first->second;
  }

  static std::string cache_file_name(int p, int q, const Rational& t) {
    return "sv_p" + std::to_string(p) + "_q" + std::to_string(q) + "_t" + t.num_str() + "_" +
           t.den_str() + ".json";
  }

private:
  using Key = std::tuple<int, int, std::string>;

  static std::optional<Operator> read_cache(const std::filesystem::path& dir, int p, int q,
                                            const Rational& t) {
    std::filesystem::path file = dir / cache_file_name(p, q, t);
    std::ifstream in(file);
    if (!in) return std::nullopt;
    try {
      auto j = nlohmann::ordered_json::parse(in);
      if (j.at("p").get<int>() != p || j.at("q").get<int>() != q ||
          Rational::parse(j.at("t").get<std::string>()) != t)
        return std::nullopt;
      return j.at("terms").get<Operator>();
    } catch (const std::exception&) {
      return std::nullopt;  // unreadable entries are recomputed
    }
  }

  static void write_cache(const std::filesystem::path& dir, int p, int q, const Rational& t,
                          const Operator& op) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) return;  // cache is best-effort
    auto [c, h] = kac_weight(p, q, t);
    nlohmann::ordered_json j;
    j["p"] = p;
    j["q"] = q;
    j["t"] = t.str();
    j["c"] = c.str();
    j["h"] = h.str();
    j["terms"] = op;

    std::filesystem::path target = dir / cache_file_name(p, q, t);
    std::filesystem::path tmp =
        target.string() + ".tmp" + std::to_string(static_cast<long>(::getpid()));
    {
      std::ofstream out(tmp);
      if (!out) return;
      out << j.dump(2) << "\n";
    }
    std::filesystem::rename(tmp, target, ec);
    if (ec) std::filesystem::remove(tmp, ec);
  }

  int level_cap_;
  std::mutex mu_;
  std::filesystem::path cache_dir_;
  std::map<Key, Operator> memo_;
};

/// Process-wide shared solver (memo plus whatever cache directory the caller
/// configures); used by the higher-level pipelines.
inline SingularSolver& default_solver() {
  static SingularSolver solver;
  return solver;
}

}  // namespace virfuse
