#pragma once

#include "titskit/geometry.hpp"
#include "titskit/lattice.hpp"
#include "titskit/polynomial.hpp"
#include "titskit/rational.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

namespace titskit {

// Scalars: Rational, Polynomial, double and RealPolynomial. All of them
// default-construct to zero and construct from 1.
inline bool scalar_is_zero(const Rational& x) { return x.is_zero(); }
inline bool scalar_is_zero(double x) { return x == 0.0; }
template <typename C>
bool scalar_is_zero(const BasicPolynomial<C>& p) { return p.is_zero(); }

template <typename Scalar>
Scalar scalar_pow(const Scalar& base, std::size_t exponent) {
  Scalar result(1);
  for (std::size_t i = 0; i < exponent; ++i) result = result * base;
  return result;
}

/// Sparse element Σ_F w^F H_F of the Tits algebra; absent faces have
/// coefficient zero and zero coefficients are never stored.
template <typename Scalar>
class TitsElement {
 public:
  using scalar_type = Scalar;
  using Terms = std::map<FaceId, Scalar>;

  TitsElement() = default;

  static TitsElement basis(FaceId f) {
    TitsElement e;
    e.add(f, Scalar(1));
    return e;
  }

  Scalar coefficient(FaceId f) const {
    const auto it = terms_.find(f);
    return it == terms_.end() ? Scalar() : it->second;
  }

  void add(FaceId f, const Scalar& c) {
    if (scalar_is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(f, c);
    if (inserted) return;
    it->second = it->second + c;
    if (scalar_is_zero(it->second)) terms_.erase(it);
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  TitsElement& operator+=(const TitsElement& o) {
    for (const auto& [f, c] : o.terms_) add(f, c);
    return *this;
  }
  TitsElement& operator-=(const TitsElement& o) {
    for (const auto& [f, c] : o.terms_) add(f, Scalar() - c);
    return *this;
  }
  friend TitsElement operator+(TitsElement a, const TitsElement& b) { return a += b; }
  friend TitsElement operator-(TitsElement a, const TitsElement& b) { return a -= b; }

  TitsElement scaled(const Scalar& factor) const {
    TitsElement out;
    for (const auto& [f, c] : terms_) out.add(f, c * factor);
    return out;
  }

  /// Applies fn to every coefficient, e.g. to evaluate polynomial coefficients.
  template <typename Fn>
  auto transform(Fn fn) const -> TitsElement<std::decay_t<std::invoke_result_t<Fn, const Scalar&>>> {
    TitsElement<std::decay_t<std::invoke_result_t<Fn, const Scalar&>>> out;
    for (const auto& [f, c] : terms_) out.add(f, fn(c));
    return out;
  }

  friend bool operator==(const TitsElement& a, const TitsElement& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

/// An arrangement together with its faces, flats and face product table.
/// Immutable after construction.
class TitsAlgebra {
 public:
  explicit TitsAlgebra(Arrangement arr);
  TitsAlgebra(Arrangement arr, FaceSet faces);

  const Arrangement& arrangement() const { return arr_; }
  const FaceSet& faces() const { return faces_; }
  const FlatLattice& lattice() const { return lattice_; }

  std::size_t rank() const { return lattice_.rank(); }
  /// Dimension of the minimal faces.
  std::size_t min_dim() const { return lattice_.min_dim(); }
  std::size_t face_rank(FaceId f) const { return faces_[f].dim - min_dim(); }
  FlatId support(FaceId f) const { return lattice_.support(f); }

  FaceId product(FaceId f, FaceId g) const { return FaceId{table_[f.value * faces_.size() + g.value]}; }

  /// Product of sign vectors; throws NotAFace on unrealizable input.
  SignVector tits_product(const SignVector& f, const SignVector& g) const;

 private:
  Arrangement arr_;
  FaceSet faces_;
  FlatLattice lattice_;
  std::vector<std::size_t> table_;
};

/// Bilinear extension of the face product.
template <typename Scalar>
TitsElement<Scalar> multiply(const TitsAlgebra& alg, const TitsElement<Scalar>& w, const TitsElement<Scalar>& v) {
  TitsElement<Scalar> out;
  for (const auto& [f, a] : w.terms()) {
    for (const auto& [g, b] : v.terms()) out.add(alg.product(f, g), a * b);
  }
  return out;
}

/// χ_X(w) = Σ_{supp(F) <= X} w^F.
template <typename Scalar>
Scalar character(const TitsAlgebra& alg, const TitsElement<Scalar>& w, FlatId x) {
  Scalar sum{};
  for (const auto& [f, c] : w.terms()) {
    if (alg.lattice().leq(alg.support(f), x)) sum = sum + c;
  }
  return sum;
}

/// Σ_{supp(F) = X} w^F.
template <typename Scalar>
Scalar support_sum(const TitsAlgebra& alg, const TitsElement<Scalar>& w, FlatId x) {
  Scalar sum{};
  for (const auto& [f, c] : w.terms()) {
    if (alg.support(f) == x) sum = sum + c;
  }
  return sum;
}

template <typename Scalar>
Scalar chamber_sum(const TitsAlgebra& alg, const TitsElement<Scalar>& w) {
  return support_sum(alg, w, alg.lattice().top());
}

template <typename Scalar>
struct FlatCheck {
  FlatId flat;
  Scalar character;  // χ_X(w)
  Scalar expected;   // t^rank(X)
  bool ok = false;
};

template <typename Scalar>
struct CharacteristicReport {
  bool characteristic = true;
  std::vector<FlatCheck<Scalar>> flats;

  std::vector<FlatCheck<Scalar>> violations() const {
    std::vector<FlatCheck<Scalar>> out;
    for (const auto& c : flats) {
      if (!c.ok) out.push_back(c);
    }
    return out;
  }
};

/// Checks χ_X(w) = t^rank(X) on every flat, comparing with `equal`.
template <typename Scalar, typename Equal>
CharacteristicReport<Scalar> is_characteristic(const TitsAlgebra& alg, const TitsElement<Scalar>& w,
                                               const Scalar& parameter, Equal equal) {
  CharacteristicReport<Scalar> report;
  const auto& lattice = alg.lattice();
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const FlatId x{i};
    FlatCheck<Scalar> row{x, character(alg, w, x), scalar_pow(parameter, lattice[x].rank)};
    row.ok = equal(row.character, row.expected, x);
    report.characteristic = report.characteristic && row.ok;
    report.flats.push_back(std::move(row));
  }
  return report;
}

/// Exact variant, for Rational and Polynomial scalars.
template <typename Scalar>
CharacteristicReport<Scalar> is_characteristic(const TitsAlgebra& alg, const TitsElement<Scalar>& w,
                                               const Scalar& parameter) {
  return is_characteristic(alg, w, parameter,
                           [](const Scalar& a, const Scalar& b, FlatId) { return a == b; });
}

/// υ = Σ (-1)^rank(F) H_F over the essentially bounded faces.
TitsElement<Rational> unit_element(const TitsAlgebra& alg);

/// τ = Σ (-1)^rank(F) H_F over all faces.
TitsElement<Rational> takeuchi_element(const TitsAlgebra& alg);

/// For each flat X, the first face F with supp(F) = X carries χ(A^X, t) and
/// every other coefficient is zero. Characteristic of parameter t for every
/// arrangement.
TitsElement<Polynomial> flat_representative_element(const TitsAlgebra& alg);

/// H_F - H_{rep(supp F)} for every face that is not its flat's representative:
/// #faces - #flats independent directions on which every character vanishes.
std::vector<TitsElement<Rational>> character_kernel_basis(const TitsAlgebra& alg);

/// f(w)^G = Σ_{f(F) = G} w^F.
template <typename Scalar>
TitsElement<Scalar> pushforward(const FaceMap& f, const TitsElement<Scalar>& w) {
  TitsElement<Scalar> out;
  for (const auto& [face, c] : w.terms()) out.add(f(face), c);
  return out;
}

/// Smallest k <= max_power with w^k = 0, if any.
std::optional<std::size_t> nilpotency_index(const TitsAlgebra& alg, const TitsElement<Rational>& w,
                                            std::size_t max_power);

/// Element of the flat algebra: flat -> coefficient.
using FlatElement = std::map<FlatId, Rational>;

/// Product H_X H_Y = H_{X v Y}, extended bilinearly.
FlatElement flat_multiply(const FlatLattice& lattice, const FlatElement& a, const FlatElement& b);

/// Q_X = Σ_{Y >= X} μ(X,Y) H_Y, indexed by FlatId.
std::vector<FlatElement> q_basis(const FlatLattice& lattice);

}  // namespace titskit
