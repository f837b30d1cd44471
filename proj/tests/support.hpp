#pragma once

#include "titskit/elements.hpp"
#include "titskit/geometry.hpp"
#include "titskit/polynomial.hpp"
#include "titskit/rational.hpp"

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace titskit::testing {

inline Hyperplane plane(std::vector<long> normal, long offset) {
  RationalVector n;
  for (long x : normal) n.emplace_back(x);
  return canonicalize(n, Rational(offset));
}

/// x = 0, y = 0, x + y = 1.
inline Arrangement three_generic_lines() {
  return Arrangement(2, {plane({1, 0}, 0), plane({0, 1}, 0), plane({1, 1}, 1)}, ArrangementKind::File);
}

/// x = 0, x = 1, y = 0.
inline Arrangement parallel_pair_and_transversal() {
  return Arrangement(2, {plane({1, 0}, 0), plane({1, 0}, 1), plane({0, 1}, 0)}, ArrangementKind::File);
}

/// x = 0, x = 1.
inline Arrangement parallel_pair() {
  return Arrangement(2, {plane({1, 0}, 0), plane({1, 0}, 1)}, ArrangementKind::File);
}

inline Arrangement empty_arrangement(std::size_t dim) { return Arrangement(dim, {}, ArrangementKind::File); }

struct Named {
  std::string name;
  Arrangement arr;
};

/// The arrangements every identity is checked on.
inline std::vector<Named> test_arrangements() {
  std::vector<Named> out;
  for (std::size_t n = 2; n <= 4; ++n) out.push_back({"braid " + std::to_string(n), braid_arrangement(n)});
  for (std::size_t n = 1; n <= 2; ++n) out.push_back({"signed braid " + std::to_string(n), signed_braid_arrangement(n)});
  for (std::size_t n = 1; n <= 3; ++n) out.push_back({"coordinate " + std::to_string(n), coordinate_arrangement(n)});
  out.push_back({"three generic lines", three_generic_lines()});
  out.push_back({"parallel pair and transversal", parallel_pair_and_transversal()});
  out.push_back({"parallel pair", parallel_pair()});
  out.push_back({"generic 3x4 seed 7", generic_arrangement(3, 4, 7)});
  out.push_back({"empty plane", empty_arrangement(2)});
  return out;
}

/// Rank by plain Gaussian elimination, kept separate from
/// the library's linear algebra.
inline std::size_t oracle_rank(std::vector<RationalVector> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// Fourier–Motzkin feasibility of { a·x + c > 0 } ∪ { a·x + c >= 0 } ∪ { a·x + c = 0 }.
struct FmRow {
  RationalVector a;
  Rational c;
  bool strict = false;
};

inline bool fm_feasible(std::size_t dim, std::vector<RationalVector> eq_a, std::vector<Rational> eq_c,
                        std::vector<FmRow> rows) {
  // Substitute equalities away.
  for (std::size_t e = 0; e < eq_a.size(); ++e) {
    std::size_t pivot = dim;
    for (std::size_t j = 0; j < dim; ++j) {
      if (eq_a[e][j] != 0) {
        pivot = j;
        break;
      }
    }
    if (pivot == dim) {
      if (eq_c[e] != 0) return false;
      continue;
    }
    auto eliminate = [&](RationalVector& a, Rational& c) {
      if (a[pivot] == 0) return;
      const Rational f = a[pivot] / eq_a[e][pivot];
      for (std::size_t j = 0; j < dim; ++j) a[j] -= f * eq_a[e][j];
      c -= f * eq_c[e];
    };
    for (std::size_t k = e + 1; k < eq_a.size(); ++k) eliminate(eq_a[k], eq_c[k]);
    for (auto& r : rows) eliminate(r.a, r.c);
  }
  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<FmRow> pos, neg, rest;
    for (auto& r : rows) {
      if (r.a[j] > 0) {
        pos.push_back(r);
      } else if (r.a[j] < 0) {
        neg.push_back(r);
      } else {
        rest.push_back(r);
      }
    }
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        const Rational wp = -q.a[j];
        const Rational wq = p.a[j];
        FmRow combined{RationalVector(dim), wp * p.c + wq * q.c, p.strict || q.strict};
        for (std::size_t k = 0; k < dim; ++k) combined.a[k] = wp * p.a[k] + wq * q.a[k];
        rest.push_back(std::move(combined));
      }
    }
    rows = std::move(rest);
  }
  for (const auto& r : rows) {
    if (r.strict ? !(r.c > 0) : !(r.c >= 0)) return false;
  }
  return true;
}

/// Whether the sign vector is realized by some point.
inline bool fm_realizable(const Arrangement& arr, const SignVector& sv) {
  std::vector<RationalVector> eq_a;
  std::vector<Rational> eq_c;
  std::vector<FmRow> rows;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& h = arr.hyperplane(i);
    const int s = static_cast<int>(sv[i]);
    if (s == 0) {
      eq_a.push_back(h.normal);
      eq_c.push_back(-h.offset);
      continue;
    }
    FmRow row{h.normal, -h.offset, true};
    if (s < 0) {
      for (auto& x : row.a) x = -x;
      row.c = -row.c;
    }
    rows.push_back(std::move(row));
  }
  return fm_feasible(arr.dim(), eq_a, eq_c, rows);
}

/// Whitney's subset expansion: Σ_{S, ∩S ≠ ∅} (-1)^|S| t^(n - rank S), divided by t^d.
inline Polynomial whitney_charpoly(const Arrangement& arr) {
  const std::size_t m = arr.size();
  const std::size_t n = arr.dim();
  std::vector<Rational> coeffs(n + 1, Rational(0));
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    std::vector<RationalVector> normals, augmented;
    for (std::size_t i = 0; i < m; ++i) {
      if (!(mask >> i & 1)) continue;
      const auto& h = arr.hyperplane(i);
      normals.push_back(h.normal);
      RationalVector row = h.normal;
      row.push_back(h.offset);
      augmented.push_back(row);
    }
    const std::size_t r = oracle_rank(normals);
    if (!augmented.empty() && oracle_rank(augmented) != r) continue;  // empty intersection
    coeffs[n - r] += (__builtin_popcountll(mask) % 2 == 0) ? 1 : -1;
  }
  std::vector<RationalVector> all;
  for (const auto& h : arr.hyperplanes()) all.push_back(h.normal);
  Polynomial full(coeffs);
  for (std::size_t d = n - oracle_rank(all); d > 0; --d) full = full.divide_by_variable();
  return full;
}

/// Seeded random small rational.
inline Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 7);
  return Rational(num(rng), den(rng));
}

}  // namespace titskit::testing
