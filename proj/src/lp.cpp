#include "titskit/lp.hpp"

#include "titskit/errors.hpp"

#include <string>
#include <utility>

namespace titskit {

namespace {

using Row = std::vector<Rational>;

class Tableau {
 public:
  Tableau(std::vector<Row> rows, Row rhs, std::vector<std::size_t> basis, std::size_t columns)
      : rows_(std::move(rows)), rhs_(std::move(rhs)), basis_(std::move(basis)),
        active_(columns, true) {}

  void deactivate(std::size_t column) { active_[column] = false; }

  /// Maximizes cost·y over the current feasible basis. Returns false if unbounded.
  bool maximize(const Row& cost) {
    Row reduced = cost;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational& cb = cost[basis_[r]];
      if (cb.is_zero()) continue;
      for (std::size_t j = 0; j < reduced.size(); ++j) {
        if (!rows_[r][j].is_zero()) reduced[j] -= cb * rows_[r][j];
      }
    }
    for (;;) {
      std::size_t enter = reduced.size();
      for (std::size_t j = 0; j < reduced.size(); ++j) {
        if (active_[j] && reduced[j].sign() > 0) {
          enter = j;
          break;
        }
      }
      if (enter == reduced.size()) return true;

      std::size_t leave = rows_.size();
      Rational best_ratio;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r][enter].sign() <= 0) continue;
        const Rational ratio = rhs_[r] / rows_[r][enter];
        if (leave == rows_.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave == rows_.size()) return false;

      pivot(leave, enter);
      const Rational factor = reduced[enter];
      for (std::size_t j = 0; j < reduced.size(); ++j) {
        if (!rows_[leave][j].is_zero()) reduced[j] -= factor * rows_[leave][j];
      }
    }
  }

  Rational value(const Row& cost) const {
    Rational v = 0;
    for (std::size_t r = 0; r < rows_.size(); ++r) v += cost[basis_[r]] * rhs_[r];
    return v;
  }

  /// Pivots basic columns >= first_excluded out of the basis; rows where that
  /// is impossible are linearly dependent and get dropped.
  void expel_columns_from(std::size_t first_excluded) {
    for (std::size_t r = 0; r < rows_.size();) {
      if (basis_[r] < first_excluded) {
        ++r;
        continue;
      }
      std::size_t replacement = first_excluded;
      for (std::size_t j = 0; j < first_excluded; ++j) {
        if (!rows_[r][j].is_zero()) {
          replacement = j;
          break;
        }
      }
      if (replacement == first_excluded) {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
        rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        continue;
      }
      pivot(r, replacement);
      ++r;
    }
    for (std::size_t j = first_excluded; j < active_.size(); ++j) active_[j] = false;
  }

  Row solution(std::size_t columns) const {
    Row y(columns, Rational(0));
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (basis_[r] < columns) y[basis_[r]] = rhs_[r];
    }
    return y;
  }

 private:
  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / rows_[r][c];
    for (auto& x : rows_[r]) {
      if (!x.is_zero()) x *= inv;
    }
    rhs_[r] *= inv;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r || rows_[i][c].is_zero()) continue;
      const Rational factor = rows_[i][c];
      for (std::size_t j = 0; j < rows_[i].size(); ++j) {
        if (!rows_[r][j].is_zero()) rows_[i][j] -= factor * rows_[r][j];
      }
      rhs_[i] -= factor * rhs_[r];
    }
    basis_[r] = c;
  }

  std::vector<Row> rows_;
  Row rhs_;
  std::vector<std::size_t> basis_;
  std::vector<bool> active_;
};

void check_dimension(const std::vector<LinearConstraint>& rows, std::size_t dim) {
  for (const auto& row : rows) {
    if (row.normal.size() != dim) {
      throw DimensionMismatch("constraint of length " + std::to_string(row.normal.size()) +
                              " in dimension " + std::to_string(dim));
    }
  }
}

}  // namespace

std::optional<RationalVector> lp_feasible(const FeasibilityProblem& problem) {
  const std::size_t n = problem.dim;
  check_dimension(problem.equalities, n);
  check_dimension(problem.strict, n);
  check_dimension(problem.weak, n);

  const bool has_strict = !problem.strict.empty();
  // Column layout: x+ | x- | s | surplus per inequality | cap slack | artificials.
  const std::size_t s_col = 2 * n;
  const std::size_t surplus0 = s_col + (has_strict ? 1 : 0);
  const std::size_t inequalities = problem.strict.size() + problem.weak.size();
  const std::size_t cap_col = surplus0 + inequalities;
  const std::size_t real_columns = cap_col + (has_strict ? 1 : 0);
  const std::size_t row_count = problem.equalities.size() + inequalities + (has_strict ? 1 : 0);
  const std::size_t columns = real_columns + row_count;

  std::vector<Row> rows;
  Row rhs;
  rows.reserve(row_count);
  auto add_row = [&](const LinearConstraint& c, std::optional<std::size_t> surplus, bool slack) {
    Row row(columns, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
      row[i] = c.normal[i];
      row[n + i] = -c.normal[i];
    }
    if (slack) row[s_col] = -1;
    if (surplus) row[*surplus] = -1;
    Rational b = c.rhs;
    if (b.sign() < 0) {
      for (auto& x : row) x = -x;
      b = -b;
    }
    rows.push_back(std::move(row));
    rhs.push_back(std::move(b));
  };

  for (const auto& c : problem.equalities) add_row(c, std::nullopt, false);
  std::size_t surplus = surplus0;
  for (const auto& c : problem.strict) add_row(c, surplus++, true);
  for (const auto& c : problem.weak) add_row(c, surplus++, false);
  if (has_strict) {
    Row cap(columns, Rational(0));
    cap[s_col] = 1;
    cap[cap_col] = 1;
    rows.push_back(std::move(cap));
    rhs.emplace_back(1);
  }

  std::vector<std::size_t> basis;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    rows[r][real_columns + r] = 1;
    basis.push_back(real_columns + r);
  }

  Tableau tableau(std::move(rows), std::move(rhs), std::move(basis), columns);
  Row phase1(columns, Rational(0));
  for (std::size_t j = real_columns; j < columns; ++j) phase1[j] = -1;
  tableau.maximize(phase1);
  if (tableau.value(phase1).sign() < 0) return std::nullopt;
  tableau.expel_columns_from(real_columns);

  if (has_strict) {
    Row phase2(columns, Rational(0));
    phase2[s_col] = 1;
    tableau.maximize(phase2);
    if (tableau.value(phase2).sign() <= 0) return std::nullopt;
  }

  const Row y = tableau.solution(real_columns);
  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = y[i] - y[n + i];
  return x;
}

}  // namespace titskit
