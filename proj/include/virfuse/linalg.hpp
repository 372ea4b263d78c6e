#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "virfuse/rational.hpp"

namespace virfuse {

namespace detail {

inline mpz_class row_content(const std::vector<mpz_class>& row) {
  mpz_class g = 0;
  for (const auto& v : row) {
    g = gcd(g, v);
    if (g == 1) break;
  }
  return g;
}

// Scales a rational row to coprime integers.
inline std::vector<mpz_class> integer_row(const std::vector<Rational>& row) {
  mpz_class den_lcm = 1;
  for (const auto& r : row) den_lcm = lcm(den_lcm, r.raw().get_den());
  std::vector<mpz_class> out(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) {
    mpz_class scaled = row[i].raw().get_num() * (den_lcm / row[i].raw().get_den());
    out[i] = scaled;
  }
  mpz_class g = row_content(out);
  if (g > 1)
    for (auto& v : out) v /= g;
  return out;
}

}  // namespace detail

/// Basis of the right kernel of an exact rational matrix, one vector per free
/// column in column order. Elimination is fraction-free over the integers with
/// deterministic pivoting (first nonzero row per column, in row order), so the
/// result is reproducible bit for bit.
inline std::vector<std::vector<Rational>> exact_kernel(
    const std::vector<std::vector<Rational>>& matrix, std::size_t cols) {
  std::vector<std::vector<mpz_class>> rows;
  rows.reserve(matrix.size());
  for (const auto& row : matrix) {
    if (row.size() != cols) throw std::invalid_argument("exact_kernel: ragged matrix");
    auto irow = detail::integer_row(row);
    bool nonzero = false;
    for (const auto& v : irow)
      if (v != 0) {
        nonzero = true;
        break;
      }
    if (nonzero) rows.push_back(std::move(irow));
  }

  std::vector<std::size_t> pivot_col;  // per eliminated row, ascending
  std::size_t next_row = 0;
  for (std::size_t col = 0; col < cols && next_row < rows.size(); ++col) {
    std::size_t found = next_row;
    while (found < rows.size() && rows[found][col] == 0) ++found;
    if (found == rows.size()) continue;
    std::swap(rows[next_row], rows[found]);
    const auto& pivot = rows[next_row];
    for (std::size_t r = next_row + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      mpz_class factor = rows[r][col];
      for (std::size_t j = 0; j < cols; ++j)
        rows[r][j] = pivot[col] * rows[r][j] - factor * pivot[j];
      mpz_class g = detail::row_content(rows[r]);
      if (g > 1)
        for (auto& v : rows[r]) v /= g;
    }
    pivot_col.push_back(col);
    ++next_row;
  }
  rows.resize(next_row);

  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_col) is_pivot[c] = true;

  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = Rational(1);
    for (std::size_t i = pivot_col.size(); i-- > 0;) {
      std::size_t pc = pivot_col[i];
      Rational acc(0);
      for (std::size_t j = pc + 1; j < cols; ++j) {
        if (v[j].is_zero()) continue;
        acc += Rational(mpq_class(rows[i][j])) * v[j];
      }
      v[pc] = -acc / Rational(mpq_class(rows[i][pc]));
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace virfuse
