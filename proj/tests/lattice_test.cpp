#include "support.hpp"

#include "titskit/errors.hpp"
#include "titskit/lattice.hpp"

#include <doctest.h>

using namespace titskit;

namespace {

struct Built {
  Arrangement arr;
  FaceSet faces;
  FlatLattice lattice;
  explicit Built(Arrangement a) : arr(std::move(a)), faces(enumerate_faces(arr)), lattice(arr, faces) {}
};

FlatId flat_of(const FlatLattice& lattice, std::vector<std::size_t> closure) {
  const auto x = lattice.find(closure);
  REQUIRE(x.has_value());
  return *x;
}

Polynomial falling(std::size_t from, std::size_t to, long step_start, long step) {
  const Polynomial t = Polynomial::variable();
  Polynomial p(Rational(1));
  for (std::size_t k = from; k <= to; ++k) p *= t - Rational(step_start + step * static_cast<long>(k - from));
  return p;
}

}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("braid 3 flats") {
    const Built b(braid_arrangement(3));
    const auto& l = b.lattice;
    CHECK(l.size() == 5);
    CHECK(l.rank() == 2);
    CHECK(l[l.top()].closure.empty());
    const FlatId center = flat_of(l, {0, 1, 2});
    const FlatId h12 = flat_of(l, {0});
    CHECK(l[center].rank == 0);
    CHECK(l[center].dim == 1);
    CHECK(l[h12].rank == 1);
    CHECK(l.support(b.faces.at(SignVector::parse("000"))) == center);
    CHECK(l.support(b.faces.at(SignVector::parse("0--"))) == h12);
    CHECK(l.support(b.faces.at(SignVector::parse("+++"))) == l.top());
    CHECK(l.join(center, h12) == h12);
    CHECK(l.join(h12, h12) == h12);
    CHECK(l.join(h12, l.top()) == l.top());
    CHECK(l.join(h12, flat_of(l, {1})) == l.top());
    CHECK(l.mobius(center, l.top()) == 2);
    CHECK(l.mobius(h12, h12) == 1);
    CHECK(l.mobius(h12, l.top()) == -1);
    CHECK_THROWS_AS(l.mobius(l.top(), h12), NotComparable);
    CHECK(charpoly_under(l, h12) == Polynomial::variable() - 1);
    CHECK(charpoly_under(l, center) == Polynomial(Rational(1)));
    CHECK(charpoly_under(l, l.top()) == charpoly(l));
    CHECK(charpoly_over(l, h12) == Polynomial::variable() - 1);
    CHECK(charpoly_over(l, center) == charpoly(l));
    CHECK(charpoly_over(l, l.top()) == Polynomial(Rational(1)));
  }

  TEST_CASE("small lattices") {
    CHECK(Built(coordinate_arrangement(2)).lattice.size() == 4);
    const Built parallel(testing::parallel_pair());
    CHECK(parallel.lattice.size() == 3);
    CHECK(parallel.lattice.minimal().size() == 2);
    CHECK(parallel.lattice.rank() == 1);
    CHECK(charpoly(parallel.lattice) == Polynomial::variable() - 2);
    const Built empty(testing::empty_arrangement(2));
    CHECK(empty.lattice.size() == 1);
    CHECK(charpoly(empty.lattice) == Polynomial(Rational(1)));
  }

  TEST_CASE("charpoly examples") {
    const Polynomial t = Polynomial::variable();
    CHECK(charpoly(braid_arrangement(3)) == (t - 1) * (t - 2));
    CHECK(charpoly(signed_braid_arrangement(2)) == (t - 1) * (t - 3));
    CHECK(charpoly(coordinate_arrangement(2)) == (t - 1) * (t - 1));
    CHECK(charpoly(testing::three_generic_lines()) == t * t - 3 * t + 3);
    CHECK(charpoly(testing::parallel_pair_and_transversal()) == t * t - 3 * t + 2);
  }

  TEST_CASE("closed forms") {
    for (std::size_t n = 2; n <= 5; ++n) CHECK(charpoly(braid_arrangement(n)) == falling(1, n - 1, 1, 1));
    for (std::size_t n = 1; n <= 3; ++n) CHECK(charpoly(signed_braid_arrangement(n)) == falling(1, n, 1, 2));
    for (std::size_t n = 1; n <= 4; ++n) {
      CHECK(charpoly(coordinate_arrangement(n)) == scalar_pow(Polynomial::variable() - 1, n));
    }
  }

  TEST_CASE("charpoly matches the Whitney subset expansion") {
    for (const auto& [name, arr] : testing::test_arrangements()) {
      CAPTURE(name);
      const Built b(arr);
      const Polynomial chi = charpoly(b.lattice);
      CHECK(chi == testing::whitney_charpoly(arr));
      CHECK(chi.is_monic());
      CHECK(chi.degree() == static_cast<int>(b.lattice.rank()));
    }
  }

  TEST_CASE("lattice invariants") {
    for (const auto& [name, arr] : testing::test_arrangements()) {
      CAPTURE(name);
      const Built b(arr);
      const auto& l = b.lattice;
      CHECK(l.min_dim() == b.faces.min_dim());
      for (std::size_t y = 0; y < l.size(); ++y) {
        CHECK(l[FlatId{y}].rank == l[FlatId{y}].dim - l.min_dim());
        CHECK(l.leq(FlatId{y}, l.top()));
        for (std::size_t x = 0; x < l.size(); ++x) {
          const FlatId fy{y};
          const FlatId fx{x};
          const FlatId j = l.join(fx, fy);
          CHECK(l.leq(fx, j));
          CHECK(l.leq(fy, j));
          CHECK(j == l.join(fy, fx));
          if (!l.leq(fy, fx) || y == x) continue;
          std::int64_t sum = 0;
          for (std::size_t z = 0; z < l.size(); ++z) {
            if (l.leq(fy, FlatId{z}) && l.leq(FlatId{z}, fx)) sum += l.mobius(fy, FlatId{z});
          }
          CHECK(sum == 0);
        }
      }
    }
  }

  TEST_CASE("support is a semigroup morphism") {
    for (const auto& [name, arr] : testing::test_arrangements()) {
      CAPTURE(name);
      const Built b(arr);
      for (std::size_t i = 0; i < b.faces.size(); ++i) {
        for (std::size_t j = 0; j < b.faces.size(); ++j) {
          const FaceId f{i};
          const FaceId g{j};
          const FaceId fg = b.faces.at(b.faces[f].signs.compose(b.faces[g].signs));
          CHECK(b.lattice.support(fg) == b.lattice.join(b.lattice.support(f), b.lattice.support(g)));
        }
      }
    }
  }

  TEST_CASE("braid charpoly counts proper colorings") {
    // χ(A_n, k) is the number of injective maps [n] -> [k] divided by k.
    for (std::size_t n = 2; n <= 4; ++n) {
      const Polynomial chi = charpoly(braid_arrangement(n));
      for (long k = 1; k <= 7; ++k) {
        Rational injective = 1;
        for (long i = 0; i < static_cast<long>(n); ++i) injective *= Rational(k - i);
        CHECK(chi.evaluate(Rational(k)) * Rational(k) == injective);
      }
    }
  }

  TEST_CASE("subarrangement maps") {
    const Built b(braid_arrangement(3));
    const auto f = subarrangement_map(b.arr, b.faces, {0, 1});
    CHECK(f.target_faces[f(b.faces.at(SignVector::parse("+++")))].signs.str() == "++");
    CHECK(f.target_faces[f(b.faces.at(SignVector::parse("0--")))].signs.str() == "0-");
    const auto id = subarrangement_map(b.arr, b.faces, {0, 1, 2});
    for (std::size_t i = 0; i < b.faces.size(); ++i) {
      CHECK(id.target_faces[id(FaceId{i})].signs == b.faces[FaceId{i}].signs);
    }
    CHECK_THROWS_AS(subarrangement_map(b.arr, b.faces, {5}), IndexOutOfRange);

    for (const auto& [name, arr] : testing::test_arrangements()) {
      if (arr.size() < 2) continue;
      CAPTURE(name);
      const Built s(arr);
      std::vector<std::size_t> kept;
      for (std::size_t i = 1; i < arr.size(); ++i) kept.push_back(i);
      const auto g = subarrangement_map(s.arr, s.faces, kept);
      for (std::size_t i = 0; i < s.faces.size(); ++i) {
        for (std::size_t j = 0; j < s.faces.size(); ++j) {
          const FaceId fg = s.faces.at(s.faces[FaceId{i}].signs.compose(s.faces[FaceId{j}].signs));
          const auto lhs = g.target_faces[g(fg)].signs;
          const auto rhs = g.target_faces[g(FaceId{i})].signs.compose(g.target_faces[g(FaceId{j})].signs);
          CHECK(lhs == rhs);
        }
      }
    }
  }
}
