#include "titskit/elements.hpp"

#include "titskit/errors.hpp"
#include "titskit/io.hpp"

#include <numeric>
#include <random>
#include <string>

namespace titskit {

namespace {

RationalVector unit_vector(std::size_t n, std::size_t i, long value = 1) {
  RationalVector v(n, Rational(0));
  v[i] = value;
  return v;
}

void require_family(const TitsAlgebra& alg, ArrangementKind kind, const char* what) {
  if (alg.arrangement().kind() != kind) {
    throw WrongFamily(std::string(what) + " is defined only for the " + std::string(to_string(kind)) +
                      " arrangement, got " + std::string(to_string(alg.arrangement().kind())));
  }
}

void require_n(std::size_t n) {
  if (n == 0) throw InvalidConfig("family size n must be at least 1");
}

/// Visits every k-subset of {0..m-1} until fn returns false.
template <typename Fn>
bool for_each_subset(std::size_t m, std::size_t k, Fn fn) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > m) return true;
  for (;;) {
    if (!fn(idx)) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

bool in_general_position(std::size_t n, const std::vector<Hyperplane>& hs) {
  const std::size_t m = hs.size();
  const std::size_t k = std::min(m, n);
  const bool independent = for_each_subset(m, k, [&](const std::vector<std::size_t>& idx) {
    linalg::Matrix rows;
    for (auto i : idx) rows.push_back(hs[i].normal);
    return linalg::rank(rows, n) == k;
  });
  if (!independent) return false;
  return for_each_subset(m, n + 1, [&](const std::vector<std::size_t>& idx) {
    linalg::Matrix rows;
    for (auto i : idx) {
      RationalVector row = hs[i].normal;
      row.push_back(hs[i].offset);
      rows.push_back(std::move(row));
    }
    return linalg::rank(rows, n + 1) == n + 1;
  });
}

}  // namespace

Arrangement braid_arrangement(std::size_t n) {
  require_n(n);
  std::vector<Hyperplane> hs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      RationalVector a(n, Rational(0));
      a[i] = 1;
      a[j] = -1;
      hs.push_back({std::move(a), Rational(0)});
    }
  }
  return Arrangement(n, std::move(hs), ArrangementKind::Braid);
}

Arrangement signed_braid_arrangement(std::size_t n) {
  require_n(n);
  std::vector<Hyperplane> hs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      RationalVector minus(n, Rational(0));
      minus[i] = 1;
      minus[j] = -1;
      RationalVector plus(n, Rational(0));
      plus[i] = 1;
      plus[j] = 1;
      hs.push_back({std::move(minus), Rational(0)});
      hs.push_back({std::move(plus), Rational(0)});
    }
  }
  for (std::size_t k = 0; k < n; ++k) hs.push_back({unit_vector(n, k), Rational(0)});
  return Arrangement(n, std::move(hs), ArrangementKind::SignedBraid);
}

Arrangement coordinate_arrangement(std::size_t n) {
  require_n(n);
  std::vector<Hyperplane> hs;
  for (std::size_t k = 0; k < n; ++k) hs.push_back({unit_vector(n, k), Rational(0)});
  return Arrangement(n, std::move(hs), ArrangementKind::Coordinate);
}

Arrangement generic_arrangement(std::size_t n, std::size_t m, std::uint64_t seed) {
  require_n(n);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Hyperplane> hs;
    bool zero_normal = false;
    for (std::size_t i = 0; i < m; ++i) {
      RationalVector a(n);
      bool nonzero = false;
      for (auto& x : a) {
        x = coeff(rng);
        nonzero = nonzero || !x.is_zero();
      }
      zero_normal = zero_normal || !nonzero;
      hs.push_back({std::move(a), Rational(coeff(rng))});
    }
    if (zero_normal) continue;
    for (auto& h : hs) h = canonicalize(h.normal, h.offset);
    if (!in_general_position(n, hs)) continue;
    return Arrangement(n, std::move(hs), ArrangementKind::Generic, seed);
  }
  throw GenericDegenerate("no generic arrangement of " + std::to_string(m) + " hyperplanes in dimension " +
                          std::to_string(n) + " after 1000 draws (seed " + std::to_string(seed) + ")");
}

Arrangement build(const BuilderSpec& spec) {
  switch (spec.family) {
    case Family::Braid: return braid_arrangement(spec.n);
    case Family::SignedBraid: return signed_braid_arrangement(spec.n);
    case Family::Coordinate: return coordinate_arrangement(spec.n);
    case Family::Generic: return generic_arrangement(spec.n, spec.m, spec.seed);
    case Family::File: return io::load_arrangement(spec.path);
  }
  throw InvalidConfig("unknown family");
}

TitsElement<Polynomial> adams_A(const TitsAlgebra& alg) {
  require_family(alg, ArrangementKind::Braid, "adams_A");
  TitsElement<Polynomial> w;
  for (std::size_t i = 0; i < alg.faces().size(); ++i) {
    const FaceId f{i};
    w.add(f, binomial_polynomial(static_cast<unsigned>(alg.faces()[f].dim)));
  }
  return w;
}

TitsElement<Polynomial> normalized_adams_A(const TitsAlgebra& alg) {
  // Every braid face contains the center line, so dim F >= 1 and t | binom(t, dim F).
  return adams_A(alg).transform([](const Polynomial& p) { return p.divide_by_variable(); });
}

TitsElement<Polynomial> adams_B(const TitsAlgebra& alg) {
  require_family(alg, ArrangementKind::SignedBraid, "adams_B");
  TitsElement<Polynomial> w;
  for (std::size_t i = 0; i < alg.faces().size(); ++i) {
    const FaceId f{i};
    w.add(f, binomial_polynomial(static_cast<unsigned>(alg.face_rank(f))));
  }
  return w;
}

Polynomial adams_B_parameter() { return Polynomial(std::vector<Rational>{Rational(1), Rational(2)}); }

TitsElement<Polynomial> coordinate_element(const TitsAlgebra& alg) {
  require_family(alg, ArrangementKind::Coordinate, "coordinate_element");
  const Polynomial t_minus_1(std::vector<Rational>{Rational(-1), Rational(1)});
  TitsElement<Polynomial> w;
  for (std::size_t i = 0; i < alg.faces().size(); ++i) {
    const FaceId f{i};
    const auto& signs = alg.faces()[f].signs.signs();
    const bool first_orthant = std::none_of(signs.begin(), signs.end(), [](Sign s) { return s == Sign::Minus; });
    if (first_orthant) w.add(f, t_minus_1.pow(static_cast<unsigned>(alg.face_rank(f))));
  }
  return w;
}

ZaslavskyCounts zaslavsky_counts(const TitsAlgebra& alg) {
  const Polynomial chi = charpoly(alg.lattice());
  const Rational sign = alg.rank() % 2 == 0 ? Rational(1) : Rational(-1);
  ZaslavskyCounts z;
  z.chi_at_minus1 = chi.evaluate(Rational(-1));
  z.chi_at_1 = chi.evaluate(Rational(1));
  z.chambers_from_chi = sign * z.chi_at_minus1;
  z.bounded_chambers_from_chi = sign * z.chi_at_1;
  for (const FaceId c : alg.faces().chambers()) {
    ++z.chambers;
    if (alg.faces()[c].essentially_bounded) ++z.essentially_bounded_chambers;
  }
  return z;
}

DeletionReport verify_deletion_restriction(const TitsAlgebra& alg, std::size_t hyperplane) {
  const Arrangement& arr = alg.arrangement();
  if (hyperplane >= arr.size()) {
    throw IndexOutOfRange("hyperplane index " + std::to_string(hyperplane) + " out of range (" +
                          std::to_string(arr.size()) + " hyperplanes)");
  }
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (i != hyperplane) kept.push_back(i);
  }
  FaceMap f = subarrangement_map(arr, alg.faces(), kept);
  const TitsAlgebra deleted(f.target, f.target_faces);

  DeletionReport r;
  r.hyperplane = hyperplane;
  r.rank_full = alg.rank();
  r.rank_deleted = deleted.rank();
  r.precondition_holds = r.rank_full == r.rank_deleted;
  r.chi_full = charpoly(alg.lattice());
  r.chi_deleted = charpoly(deleted.lattice());
  const auto h_flat = alg.lattice().find({hyperplane});
  r.chi_restricted = charpoly_under(alg.lattice(), *h_flat);
  r.identity_holds = r.chi_full == r.chi_deleted - r.chi_restricted;

  const TitsElement<Polynomial> w = flat_representative_element(alg);
  const TitsElement<Polynomial> pushed = pushforward(f, w);
  const Polynomial t = Polynomial::variable();
  r.pushforward_characteristic = is_characteristic(deleted, pushed, t).characteristic;
  r.pushed_chamber_sum = chamber_sum(deleted, pushed);
  r.pushforward_holds = r.pushed_chamber_sum == r.chi_deleted && r.pushed_chamber_sum == r.chi_full + r.chi_restricted;
  return r;
}

KungReport verify_kung(const FlatLattice& lattice, const Rational& s, const Rational& t) {
  KungReport r;
  r.s = s;
  r.t = t;
  r.lhs = charpoly(lattice).evaluate(Rational(s * t));
  std::vector<Rational> under_s;
  std::vector<Rational> under_t;
  for (std::size_t x = 0; x < lattice.size(); ++x) {
    const FlatId fx{x};
    const Polynomial under = charpoly_under(lattice, fx);
    under_s.push_back(under.evaluate(s));
    under_t.push_back(under.evaluate(t));
    r.single_sum += scalar_pow(t, lattice[fx].rank) * under_s.back() * charpoly_over(lattice, fx).evaluate(t);
  }
  for (std::size_t x = 0; x < lattice.size(); ++x) {
    for (std::size_t y = 0; y < lattice.size(); ++y) {
      if (lattice.join(FlatId{x}, FlatId{y}) == lattice.top()) r.pair_sum += under_s[x] * under_t[y];
    }
  }
  return r;
}

std::vector<Rational> sample_parameters(std::size_t count) {
  std::vector<Rational> out;
  for (std::size_t k = 0; k < count; ++k) {
    const long num = static_cast<long>(k) + 2;
    const long den = static_cast<long>(k) + 1;
    out.emplace_back(k % 2 == 0 ? num : -num, den);
  }
  return out;
}

bool AdamsProductReport::passed() const {
  return std::all_of(samples.begin(), samples.end(), [](const AdamsProductSample& s) {
    return s.product_matches && s.normalized_characteristic;
  });
}

AdamsProductReport verify_adams_product(const TitsAlgebra& alg) {
  const TitsElement<Polynomial> alpha = adams_A(alg);
  const std::vector<Rational> params = sample_parameters(alg.arrangement().dim() + 1);
  auto at = [&](const Rational& x) {
    return alpha.transform([&](const Polynomial& p) { return p.evaluate(x); });
  };
  AdamsProductReport report;
  for (const auto& s : params) {
    const auto alpha_s = at(s);
    for (const auto& t : params) {
      const auto alpha_t = at(t);
      const auto product = multiply(alg, alpha_s, alpha_t);
      AdamsProductSample sample;
      sample.s = s;
      sample.t = t;
      sample.product_matches = product == at(Rational(s * t));
      sample.normalized_characteristic =
          is_characteristic(alg, product.scaled(Rational(1 / (s * t))), Rational(s * t)).characteristic;
      report.samples.push_back(std::move(sample));
    }
  }
  return report;
}

}  // namespace titskit
