#pragma once

#include "titskit/geometry.hpp"
#include "titskit/polynomial.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace titskit {

struct FlatId {
  std::size_t value = 0;
  friend auto operator<=>(const FlatId&, const FlatId&) = default;
};

/// A flat, keyed by its closure: every hyperplane containing it.
struct Flat {
  std::vector<std::size_t> closure;  // sorted
  std::size_t dim = 0;
  std::size_t rank = 0;  // dim - (dimension of the minimal flats)
};

/// Flats of an arrangement under inclusion, with the Möbius function cached.
/// Flats are ordered by rank, then closure, so the ambient space comes last.
class FlatLattice {
 public:
  /// Throws LatticeNotGraded if some cover relation skips a rank.
  FlatLattice(const Arrangement& arr, const FaceSet& faces);

  std::size_t size() const { return flats_.size(); }
  const Flat& operator[](FlatId x) const { return flats_[x.value]; }
  const std::vector<Flat>& all() const { return flats_; }

  FlatId top() const { return FlatId{flats_.size() - 1}; }
  std::size_t min_dim() const { return min_dim_; }
  std::size_t rank() const { return flats_.back().rank; }

  /// Y <= X, i.e. Y is contained in X.
  bool leq(FlatId y, FlatId x) const { return leq_[y.value][x.value]; }
  FlatId join(FlatId x, FlatId y) const;
  /// Throws NotComparable unless y <= x.
  std::int64_t mobius(FlatId y, FlatId x) const;

  FlatId support(FaceId face) const { return support_[face.value]; }
  std::optional<FlatId> find(const std::vector<std::size_t>& closure) const;

  std::vector<FlatId> minimal() const;

 private:
  std::vector<Flat> flats_;
  std::size_t min_dim_ = 0;
  std::vector<std::vector<bool>> leq_;
  std::vector<std::vector<std::int64_t>> mobius_;
  std::vector<FlatId> support_;
  std::map<std::vector<std::size_t>, FlatId> by_closure_;
};

inline FlatLattice build_lattice(const Arrangement& arr, const FaceSet& faces) {
  return FlatLattice(arr, faces);
}

using CharPolynomial = Polynomial;

/// χ(A,t) = Σ_Y μ(Y,⊤) t^rank(Y).
CharPolynomial charpoly(const FlatLattice& lattice);

/// Enumerates faces and flats first.
CharPolynomial charpoly(const Arrangement& arr);

/// Characteristic polynomial of the arrangement under X, read off [min, X].
CharPolynomial charpoly_under(const FlatLattice& lattice, FlatId x);

/// Characteristic polynomial of the arrangement over X:
/// Σ_{Y >= X} μ(Y,⊤) t^(rank Y - rank X).
CharPolynomial charpoly_over(const FlatLattice& lattice, FlatId x);

/// The face map to a subarrangement: each face goes to the face of the
/// subarrangement containing it, i.e. its sign vector restricted to `kept`.
struct FaceMap {
  std::vector<std::size_t> kept;
  Arrangement target;
  FaceSet target_faces;
  std::vector<FaceId> image;  // indexed by source FaceId

  FaceId operator()(FaceId f) const { return image[f.value]; }
};

/// Throws IndexOutOfRange.
FaceMap subarrangement_map(const Arrangement& arr, const FaceSet& faces, std::vector<std::size_t> kept);

}  // namespace titskit
