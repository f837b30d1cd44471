#include "support.hpp"

#include "titskit/errors.hpp"
#include "titskit/lattice.hpp"
#include "titskit/linalg.hpp"
#include "titskit/tits.hpp"

#include <doctest.h>

#include <random>

using namespace titskit;

namespace {

using Element = TitsElement<Rational>;

Element random_element(const TitsAlgebra& alg, std::mt19937_64& rng) {
  Element w;
  for (std::size_t i = 0; i < alg.faces().size(); ++i) w.add(FaceId{i}, testing::random_rational(rng));
  return w;
}

Element at(const TitsElement<Polynomial>& w, const Rational& t) {
  return w.transform([&](const Polynomial& p) { return p.evaluate(t); });
}

/// Characteristic of parameter t, perturbed by a random character-kernel vector.
Element random_characteristic(const TitsAlgebra& alg, const Rational& t, std::mt19937_64& rng) {
  Element w = at(flat_representative_element(alg), t);
  for (const auto& k : character_kernel_basis(alg)) w += k.scaled(testing::random_rational(rng));
  return w;
}

bool flat_equal(const FlatElement& a, const FlatElement& b) {
  auto strip = [](const FlatElement& e) {
    FlatElement out;
    for (const auto& [x, c] : e) {
      if (c != 0) out[x] = c;
    }
    return out;
  };
  return strip(a) == strip(b);
}

}  // namespace

TEST_SUITE("tits") {
  TEST_CASE("tits product examples") {
    const TitsAlgebra alg(braid_arrangement(3));
    CHECK(alg.tits_product(SignVector::parse("0--"), SignVector::parse("++-")).str() == "+--");
    for (const auto& f : alg.faces()) {
      CHECK(alg.tits_product(f.signs, f.signs) == f.signs);
      for (FaceId c : alg.faces().chambers()) CHECK(alg.tits_product(alg.faces()[c].signs, f.signs) == alg.faces()[c].signs);
    }
    CHECK_THROWS_AS(alg.tits_product(SignVector::parse("+-+"), SignVector::parse("000")), NotAFace);
  }

  TEST_CASE("tits product is associative") {
    for (const auto& [name, arr] : testing::test_arrangements()) {
      CAPTURE(name);
      const TitsAlgebra alg(arr);
      const std::size_t n = alg.faces().size();
      bool ok = true;
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          const FaceId ab = alg.product(FaceId{a}, FaceId{b});
          for (std::size_t c = 0; c < n; ++c) {
            ok = ok && alg.product(ab, FaceId{c}) == alg.product(FaceId{a}, alg.product(FaceId{b}, FaceId{c}));
          }
        }
      }
      CHECK(ok);
    }
  }

  TEST_CASE("multiply") {
    const TitsAlgebra alg(testing::three_generic_lines());
    const std::size_t n = alg.faces().size();
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        CHECK(multiply(alg, Element::basis(FaceId{a}), Element::basis(FaceId{b})) ==
              Element::basis(alg.product(FaceId{a}, FaceId{b})));
      }
      CHECK(multiply(alg, Element::basis(FaceId{a}), Element()).is_zero());
    }
  }

  TEST_CASE("characters") {
    const TitsAlgebra lines(testing::three_generic_lines());
    const auto& l = lines.lattice();
    CHECK(character(lines, takeuchi_element(lines), l.top()) == 1);
    std::mt19937_64 rng(5);
    const Element w = random_element(lines, rng);
    Rational total = 0;
    for (const auto& [f, c] : w.terms()) total += c;
    CHECK(character(lines, w, l.top()) == total);
    for (FaceId c : lines.faces().chambers()) {
      for (std::size_t x = 0; x + 1 < l.size(); ++x) CHECK(character(lines, Element::basis(c), FlatId{x}) == 0);
    }
  }

  TEST_CASE("characters are multiplicative") {
    std::mt19937_64 rng(17);
    for (const auto& [name, arr] : testing::test_arrangements()) {
      CAPTURE(name);
      const TitsAlgebra alg(arr);
      for (int trial = 0; trial < 3; ++trial) {
        const Element w = random_element(alg, rng);
        const Element v = random_element(alg, rng);
        const Element wv = multiply(alg, w, v);
        for (std::size_t x = 0; x < alg.lattice().size(); ++x) {
          const FlatId fx{x};
          CHECK(character(alg, wv, fx) == character(alg, w, fx) * character(alg, v, fx));
        }
      }
    }
  }

  TEST_CASE("Q basis") {
    for (const auto& [name, arr] : testing::test_arrangements()) {
      CAPTURE(name);
      const TitsAlgebra alg(arr);
      const auto& l = alg.lattice();
      const auto q = q_basis(l);
      REQUIRE(q.size() == l.size());
      FlatElement sum;
      for (std::size_t x = 0; x < l.size(); ++x) {
        for (const auto& [y, c] : q[x]) sum[y] += c;
        for (std::size_t y = 0; y < l.size(); ++y) {
          const FlatElement prod = flat_multiply(l, q[x], q[y]);
          CHECK(flat_equal(prod, x == y ? q[x] : FlatElement{}));
        }
      }
      for (std::size_t y = 0; y < l.size(); ++y) {
        const FlatElement h{{FlatId{y}, Rational(1)}};
        CHECK(flat_equal(flat_multiply(l, sum, h), h));
        FlatElement expansion;
        for (std::size_t x = 0; x < l.size(); ++x) {
          if (!l.leq(FlatId{y}, FlatId{x})) continue;
          for (const auto& [z, c] : q[x]) expansion[z] += c;
        }
        CHECK(flat_equal(expansion, h));
      }
    }
    const TitsAlgebra braid(braid_arrangement(3));
    FlatElement sum;
    for (const auto& qx : q_basis(braid.lattice())) {
      for (const auto& [y, c] : qx) sum[y] += c;
    }
    CHECK(flat_equal(sum, FlatElement{{braid.lattice().minimal().front(), Rational(1)}}));
    const TitsAlgebra empty(testing::empty_arrangement(2));
    CHECK(flat_equal(q_basis(empty.lattice())[0], FlatElement{{FlatId{0}, Rational(1)}}));
  }

  TEST_CASE("unit and Takeuchi elements") {
    for (const auto& [name, arr] : testing::test_arrangements()) {
      CAPTURE(name);
      const TitsAlgebra alg(arr);
      const Element unit = unit_element(alg);
      CHECK(is_characteristic(alg, unit, Rational(1)).characteristic);
      CHECK(is_characteristic(alg, takeuchi_element(alg), Rational(-1)).characteristic);
      for (std::size_t i = 0; i < alg.faces().size(); ++i) {
        const Element h = Element::basis(FaceId{i});
        CHECK(multiply(alg, unit, h) == h);
        CHECK(multiply(alg, h, unit) == h);
      }
      if (arr.is_linear()) CHECK(unit == Element::basis(FaceId{0}));
      const Rational chambers(static_cast<long>(alg.faces().chambers().size()));
      const Rational sign = alg.rank() % 2 == 0 ? 1 : -1;
      CHECK(chamber_sum(alg, takeuchi_element(alg)) == sign * chambers);
      for (std::size_t x = 0; x < alg.lattice().size(); ++x) {
        CHECK(support_sum(alg, unit, FlatId{x}) == charpoly_under(alg.lattice(), FlatId{x}).evaluate(Rational(1)));
      }
    }
    const TitsAlgebra lines(testing::three_generic_lines());
    const Element unit = unit_element(lines);
    CHECK(unit.terms().size() == 7);
    CHECK(character(lines, unit, lines.lattice().top()) == 1);

    const TitsAlgebra coord(coordinate_arrangement(1));
    const Element tau = takeuchi_element(coord);
    CHECK(tau.coefficient(coord.faces().at(SignVector::parse("0"))) == 1);
    CHECK(tau.coefficient(coord.faces().at(SignVector::parse("+"))) == -1);
    CHECK(tau.coefficient(coord.faces().at(SignVector::parse("-"))) == -1);

    const TitsAlgebra braid(braid_arrangement(3));
    CHECK(chamber_sum(braid, takeuchi_element(braid)) == charpoly(braid.lattice()).evaluate(Rational(-1)));

    const TitsAlgebra empty(testing::empty_arrangement(2));
    CHECK(unit_element(empty) == Element::basis(FaceId{0}));
  }

  TEST_CASE("a single chamber is not characteristic") {
    const TitsAlgebra alg(braid_arrangement(3));
    const auto report = is_characteristic(alg, Element::basis(alg.faces().chambers().front()), Rational(1));
    CHECK_FALSE(report.characteristic);
    CHECK(report.violations().size() == alg.lattice().size() - 1);
    const TitsAlgebra empty(testing::empty_arrangement(1));
    CHECK(is_characteristic(empty, Element::basis(FaceId{0}), Rational(1)).characteristic);
  }

  TEST_CASE("characteristic elements determine charpolys") {
    std::mt19937_64 rng(23);
    const Polynomial t = Polynomial::variable();
    for (const auto& [name, arr] : testing::test_arrangements()) {
      CAPTURE(name);
      const TitsAlgebra alg(arr);
      const auto& l = alg.lattice();
      const auto rep = flat_representative_element(alg);
      CHECK(is_characteristic(alg, rep, t).characteristic);
      CHECK(chamber_sum(alg, rep) == charpoly(l));
      for (const Rational s : {Rational(2), Rational(-3, 2)}) {
        const Element w = random_characteristic(alg, s, rng);
        CHECK(is_characteristic(alg, w, s).characteristic);
        CHECK(chamber_sum(alg, w) == charpoly(l).evaluate(s));
        for (std::size_t x = 0; x < l.size(); ++x) {
          CHECK(support_sum(alg, w, FlatId{x}) == charpoly_under(l, FlatId{x}).evaluate(s));
        }
      }
    }
  }

  TEST_CASE("products of characteristic elements") {
    std::mt19937_64 rng(29);
    for (const auto& [name, arr] : testing::test_arrangements()) {
      CAPTURE(name);
      const TitsAlgebra alg(arr);
      const Rational s(3, 2);
      const Rational t(-2);
      const Element u = random_characteristic(alg, s, rng);
      const Element v = random_characteristic(alg, t, rng);
      CHECK(is_characteristic(alg, multiply(alg, u, v), s * t).characteristic);
      const Element other = random_characteristic(alg, s, rng);
      for (std::size_t x = 0; x < alg.lattice().size(); ++x) {
        CHECK(character(alg, u - other, FlatId{x}) == 0);
      }
      const auto index = nilpotency_index(alg, u - other, alg.rank() + 1);
      if (index) {
        Element power = u - other;
        for (std::size_t k = 1; k < *index; ++k) power = multiply(alg, power, u - other);
        CHECK(power.is_zero());
      }
    }
  }

  TEST_CASE("character kernel") {
    for (const auto& [name, arr] : testing::test_arrangements()) {
      CAPTURE(name);
      const TitsAlgebra alg(arr);
      const auto basis = character_kernel_basis(alg);
      CHECK(basis.size() == alg.faces().size() - alg.lattice().size());
      linalg::Matrix rows;
      for (const auto& k : basis) {
        RationalVector row(alg.faces().size(), Rational(0));
        for (const auto& [f, c] : k.terms()) row[f.value] = c;
        rows.push_back(row);
        for (std::size_t x = 0; x < alg.lattice().size(); ++x) CHECK(character(alg, k, FlatId{x}) == 0);
        CHECK(is_characteristic(alg, unit_element(alg) + k, Rational(1)).characteristic);
      }
      CHECK(testing::oracle_rank(rows) == basis.size());
    }
  }

  TEST_CASE("pushforward along deletions") {
    const TitsAlgebra braid(braid_arrangement(3));
    const auto f = subarrangement_map(braid.arrangement(), braid.faces(), {0, 1});
    const auto pushed = pushforward(f, Element::basis(braid.faces().at(SignVector::parse("0--"))));
    CHECK(pushed == Element::basis(f.target_faces.at(SignVector::parse("0-"))));

    for (const auto& [name, arr] : testing::test_arrangements()) {
      CAPTURE(name);
      const TitsAlgebra alg(arr);
      std::vector<std::size_t> all(arr.size());
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
      const auto id = subarrangement_map(arr, alg.faces(), all);
      const Element unit = unit_element(alg);
      CHECK(pushforward(id, unit) == unit);
      for (std::size_t h = 0; h < arr.size(); ++h) {
        std::vector<std::size_t> kept;
        for (std::size_t i = 0; i < arr.size(); ++i) {
          if (i != h) kept.push_back(i);
        }
        const auto g = subarrangement_map(arr, alg.faces(), kept);
        const TitsAlgebra target(g.target, g.target_faces);
        if (target.rank() != alg.rank()) continue;
        CHECK(is_characteristic(target, pushforward(g, unit), Rational(1)).characteristic);
        CHECK(is_characteristic(target, pushforward(g, takeuchi_element(alg)), Rational(-1)).characteristic);
      }
    }
  }
}
