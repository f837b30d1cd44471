#include "titskit/tits.hpp"

#include "titskit/errors.hpp"

#include <utility>

namespace titskit {

namespace {

Rational alternating(std::size_t k) { return k % 2 == 0 ? Rational(1) : Rational(-1); }

}  // namespace

TitsAlgebra::TitsAlgebra(Arrangement arr) : TitsAlgebra(arr, enumerate_faces(arr)) {}

TitsAlgebra::TitsAlgebra(Arrangement arr, FaceSet faces)
    : arr_(std::move(arr)), faces_(std::move(faces)), lattice_(arr_, faces_) {
  const std::size_t n = faces_.size();
  table_.resize(n * n);
  for (std::size_t f = 0; f < n; ++f) {
    const SignVector& sf = faces_[FaceId{f}].signs;
    for (std::size_t g = 0; g < n; ++g) {
      table_[f * n + g] = faces_.at(sf.compose(faces_[FaceId{g}].signs)).value;
    }
  }
}

SignVector TitsAlgebra::tits_product(const SignVector& f, const SignVector& g) const {
  return faces_[product(faces_.at(f), faces_.at(g))].signs;
}

TitsElement<Rational> unit_element(const TitsAlgebra& alg) {
  TitsElement<Rational> u;
  for (std::size_t i = 0; i < alg.faces().size(); ++i) {
    const FaceId f{i};
    if (alg.faces()[f].essentially_bounded) u.add(f, alternating(alg.face_rank(f)));
  }
  return u;
}

TitsElement<Rational> takeuchi_element(const TitsAlgebra& alg) {
  TitsElement<Rational> t;
  for (std::size_t i = 0; i < alg.faces().size(); ++i) {
    const FaceId f{i};
    t.add(f, alternating(alg.face_rank(f)));
  }
  return t;
}

namespace {

std::vector<std::optional<FaceId>> flat_representatives(const TitsAlgebra& alg) {
  std::vector<std::optional<FaceId>> rep(alg.lattice().size());
  for (std::size_t i = 0; i < alg.faces().size(); ++i) {
    auto& slot = rep[alg.support(FaceId{i}).value];
    if (!slot) slot = FaceId{i};
  }
  return rep;
}

}  // namespace

TitsElement<Polynomial> flat_representative_element(const TitsAlgebra& alg) {
  const auto rep = flat_representatives(alg);
  TitsElement<Polynomial> w;
  for (std::size_t x = 0; x < rep.size(); ++x) w.add(*rep[x], charpoly_under(alg.lattice(), FlatId{x}));
  return w;
}

std::vector<TitsElement<Rational>> character_kernel_basis(const TitsAlgebra& alg) {
  const auto rep = flat_representatives(alg);
  std::vector<TitsElement<Rational>> basis;
  for (std::size_t i = 0; i < alg.faces().size(); ++i) {
    const FaceId f{i};
    const FaceId r = *rep[alg.support(f).value];
    if (r == f) continue;
    basis.push_back(TitsElement<Rational>::basis(f) - TitsElement<Rational>::basis(r));
  }
  return basis;
}

std::optional<std::size_t> nilpotency_index(const TitsAlgebra& alg, const TitsElement<Rational>& w,
                                            std::size_t max_power) {
  if (w.is_zero()) return 1;
  TitsElement<Rational> power = w;
  for (std::size_t k = 2; k <= max_power; ++k) {
    power = multiply(alg, power, w);
    if (power.is_zero()) return k;
  }
  return std::nullopt;
}

FlatElement flat_multiply(const FlatLattice& lattice, const FlatElement& a, const FlatElement& b) {
  FlatElement out;
  for (const auto& [x, p] : a) {
    for (const auto& [y, q] : b) {
      auto& slot = out[lattice.join(x, y)];
      slot += p * q;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

std::vector<FlatElement> q_basis(const FlatLattice& lattice) {
  std::vector<FlatElement> q(lattice.size());
  for (std::size_t x = 0; x < lattice.size(); ++x) {
    for (std::size_t y = 0; y < lattice.size(); ++y) {
      if (!lattice.leq(FlatId{x}, FlatId{y})) continue;
      const auto mu = lattice.mobius(FlatId{x}, FlatId{y});
      if (mu != 0) q[x][FlatId{y}] = Rational(mu);
    }
  }
  return q;
}

}  // namespace titskit
