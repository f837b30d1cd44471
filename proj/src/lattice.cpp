#include "titskit/lattice.hpp"

#include "titskit/errors.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>
#include <string>

namespace titskit {

FlatLattice::FlatLattice(const Arrangement& arr, const FaceSet& faces) {
  std::map<std::vector<std::size_t>, std::size_t> dims;
  std::vector<std::vector<std::size_t>> face_closure;
  face_closure.reserve(faces.size());
  for (const auto& f : faces) {
    auto closure = f.signs.zero_set();
    // The affine hull of a face lies in exactly the hyperplanes where its sign
    // vanishes, so the zero set is already closed.
    dims.emplace(closure, f.dim);
    face_closure.push_back(std::move(closure));
  }
  min_dim_ = dims.begin()->second;
  for (const auto& [closure, dim] : dims) min_dim_ = std::min(min_dim_, dim);

  for (const auto& [closure, dim] : dims) flats_.push_back(Flat{closure, dim, dim - min_dim_});
  std::sort(flats_.begin(), flats_.end(), [](const Flat& a, const Flat& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.closure < b.closure;
  });
  for (std::size_t i = 0; i < flats_.size(); ++i) by_closure_.emplace(flats_[i].closure, FlatId{i});
  if (!flats_.back().closure.empty()) throw std::logic_error("ambient space missing from flats");

  const std::size_t n = flats_.size();
  leq_.assign(n, std::vector<bool>(n, false));
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t x = 0; x < n; ++x) {
      const auto& cy = flats_[y].closure;
      const auto& cx = flats_[x].closure;
      leq_[y][x] = std::includes(cy.begin(), cy.end(), cx.begin(), cx.end());
    }
  }

  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t x = 0; x < n; ++x) {
      if (x == y || !leq_[y][x]) continue;
      bool covers = true;
      for (std::size_t z = 0; z < n && covers; ++z) {
        if (z != x && z != y && leq_[y][z] && leq_[z][x]) covers = false;
      }
      if (covers && flats_[x].rank != flats_[y].rank + 1) {
        throw LatticeNotGraded("cover relation between flats of rank " + std::to_string(flats_[y].rank) +
                               " and " + std::to_string(flats_[x].rank));
      }
    }
  }

  // Flats are sorted by rank, so every z in [y, x) precedes x.
  mobius_.assign(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t y = 0; y < n; ++y) {
    mobius_[y][y] = 1;
    for (std::size_t x = y + 1; x < n; ++x) {
      if (!leq_[y][x]) continue;
      std::int64_t sum = 0;
      for (std::size_t z = y; z < x; ++z) {
        if (leq_[y][z] && leq_[z][x]) sum += mobius_[y][z];
      }
      mobius_[y][x] = -sum;
    }
  }

  support_.reserve(faces.size());
  for (const auto& c : face_closure) support_.push_back(by_closure_.at(c));
}

FlatId FlatLattice::join(FlatId x, FlatId y) const {
  const auto& cx = flats_[x.value].closure;
  const auto& cy = flats_[y.value].closure;
  std::vector<std::size_t> common;
  std::set_intersection(cx.begin(), cx.end(), cy.begin(), cy.end(), std::back_inserter(common));
  // Hyperplanes containing both X and Y cut out the smallest flat above them.
  const auto it = by_closure_.find(common);
  if (it == by_closure_.end()) throw std::logic_error("join is not a flat");
  return it->second;
}

std::int64_t FlatLattice::mobius(FlatId y, FlatId x) const {
  if (!leq(y, x)) throw NotComparable("mobius(Y, X) requires Y <= X");
  return mobius_[y.value][x.value];
}

std::optional<FlatId> FlatLattice::find(const std::vector<std::size_t>& closure) const {
  const auto it = by_closure_.find(closure);
  if (it == by_closure_.end()) return std::nullopt;
  return it->second;
}

std::vector<FlatId> FlatLattice::minimal() const {
  std::vector<FlatId> out;
  for (std::size_t i = 0; i < flats_.size(); ++i) {
    if (flats_[i].rank == 0) out.push_back(FlatId{i});
  }
  return out;
}

CharPolynomial charpoly(const FlatLattice& lattice) { return charpoly_under(lattice, lattice.top()); }

CharPolynomial charpoly(const Arrangement& arr) {
  const FaceSet faces = enumerate_faces(arr);
  return charpoly(FlatLattice(arr, faces));
}

CharPolynomial charpoly_under(const FlatLattice& lattice, FlatId x) {
  CharPolynomial result;
  for (std::size_t y = 0; y < lattice.size(); ++y) {
    const FlatId fy{y};
    if (!lattice.leq(fy, x)) continue;
    result += CharPolynomial::monomial(Rational(lattice.mobius(fy, x)), lattice[fy].rank);
  }
  return result;
}

CharPolynomial charpoly_over(const FlatLattice& lattice, FlatId x) {
  CharPolynomial result;
  for (std::size_t y = 0; y < lattice.size(); ++y) {
    const FlatId fy{y};
    if (!lattice.leq(x, fy)) continue;
    result += CharPolynomial::monomial(Rational(lattice.mobius(fy, lattice.top())), lattice[fy].rank - lattice[x].rank);
  }
  return result;
}

FaceMap subarrangement_map(const Arrangement& arr, const FaceSet& faces, std::vector<std::size_t> kept) {
  Arrangement target = arr.subarrangement(kept);
  FaceSet target_faces = enumerate_faces(target);
  std::vector<FaceId> image;
  image.reserve(faces.size());
  for (const auto& f : faces) image.push_back(target_faces.at(f.signs.restrict_to(kept)));
  return FaceMap{std::move(kept), std::move(target), std::move(target_faces), std::move(image)};
}

}  // namespace titskit
