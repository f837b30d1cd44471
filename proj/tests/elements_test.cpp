#include "support.hpp"

#include "titskit/elements.hpp"
#include "titskit/errors.hpp"
#include "titskit/lattice.hpp"
#include "titskit/linalg.hpp"

#include <doctest.h>

#include <random>

using namespace titskit;

namespace {

const Polynomial t = Polynomial::variable();

Polynomial binom(const Polynomial& x, unsigned k) { return binomial_polynomial(k).compose(x); }

}  // namespace

TEST_SUITE("elements") {
  TEST_CASE("builders") {
    for (std::size_t n = 1; n <= 5; ++n) {
      const auto braid = braid_arrangement(n);
      CHECK(braid.size() == n * (n - 1) / 2);
      CHECK(braid.kind() == ArrangementKind::Braid);
      CHECK(signed_braid_arrangement(n).size() == n * n);
      CHECK(coordinate_arrangement(n).size() == n);
    }
    for (std::size_t n = 2; n <= 4; ++n) CHECK(TitsAlgebra(braid_arrangement(n)).rank() == n - 1);
    for (std::size_t n = 1; n <= 3; ++n) CHECK(TitsAlgebra(signed_braid_arrangement(n)).rank() == n);

    const auto sb = signed_braid_arrangement(2);
    CHECK(sb.hyperplane(0).normal == RationalVector{Rational(1), Rational(-1)});
    CHECK(sb.hyperplane(1).normal == RationalVector{Rational(1), Rational(1)});
    CHECK(sb.hyperplane(2).normal == RationalVector{Rational(1), Rational(0)});
    CHECK(sb.hyperplane(3).normal == RationalVector{Rational(0), Rational(1)});
    CHECK(braid_arrangement(3).dim() == 3);

    BuilderSpec spec;
    spec.family = Family::Coordinate;
    spec.n = 2;
    CHECK(build(spec).fingerprint() == coordinate_arrangement(2).fingerprint());
  }

  TEST_CASE("generic builder") {
    const auto a = generic_arrangement(3, 5, 42);
    CHECK(a.fingerprint() == generic_arrangement(3, 5, 42).fingerprint());
    CHECK(a.seed() == 42u);
    CHECK(a.kind() == ArrangementKind::Generic);
    CHECK(a.size() == 5);
    // General position: every n normals independent, no n+1 hyperplanes concurrent.
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = i + 1; j < 5; ++j) {
        for (std::size_t k = j + 1; k < 5; ++k) {
          CHECK(testing::oracle_rank({a.hyperplane(i).normal, a.hyperplane(j).normal, a.hyperplane(k).normal}) == 3);
        }
      }
    }
    const TitsAlgebra alg(a);
    for (const auto& flat : alg.lattice().all()) CHECK(flat.closure.size() + flat.dim == 3);
    CHECK_THROWS_AS(generic_arrangement(1, 40, 0), GenericDegenerate);
  }

  TEST_CASE("Adams elements of braid arrangements") {
    const TitsAlgebra two(braid_arrangement(2));
    const auto alpha = adams_A(two);
    CHECK(alpha.coefficient(two.faces().at(SignVector::parse("0"))) == t);
    CHECK(alpha.coefficient(two.faces().at(SignVector::parse("+"))) == binom(t, 2));
    CHECK(character(two, alpha, two.lattice().top()) == t * t);

    for (std::size_t n = 2; n <= 5; ++n) {
      CAPTURE(n);
      const TitsAlgebra alg(braid_arrangement(n));
      const auto normalized = normalized_adams_A(alg);
      CHECK(is_characteristic(alg, normalized, t).characteristic);
      CHECK(chamber_sum(alg, normalized) == charpoly(alg.lattice()));
    }
    CHECK_THROWS_AS(adams_A(TitsAlgebra(coordinate_arrangement(2))), WrongFamily);
  }

  TEST_CASE("Adams elements of signed braid arrangements") {
    const TitsAlgebra one(signed_braid_arrangement(1));
    const auto alpha = adams_B(one);
    CHECK(alpha.coefficient(one.faces().at(SignVector::parse("0"))) == Polynomial(Rational(1)));
    CHECK(alpha.coefficient(one.faces().at(SignVector::parse("-"))) == t);
    CHECK(character(one, alpha, one.lattice().top()) == 2 * t + 1);
    CHECK(adams_B_parameter() == 2 * t + 1);

    for (std::size_t n = 1; n <= 3; ++n) {
      CAPTURE(n);
      const TitsAlgebra alg(signed_braid_arrangement(n));
      CHECK(is_characteristic(alg, adams_B(alg), adams_B_parameter()).characteristic);
      CHECK(chamber_sum(alg, adams_B(alg)) == charpoly(alg.lattice()).compose(adams_B_parameter()));
    }
    const TitsAlgebra two(signed_braid_arrangement(2));
    CHECK(chamber_sum(two, adams_B(two)) == 8 * binom(t, 2));
    CHECK_THROWS_AS(adams_B(TitsAlgebra(braid_arrangement(2))), WrongFamily);
  }

  TEST_CASE("coordinate element") {
    const TitsAlgebra one(coordinate_arrangement(1));
    const auto gamma = coordinate_element(one);
    CHECK(gamma.coefficient(one.faces().at(SignVector::parse("0"))) == Polynomial(Rational(1)));
    CHECK(gamma.coefficient(one.faces().at(SignVector::parse("+"))) == t - 1);
    CHECK(gamma.coefficient(one.faces().at(SignVector::parse("-"))).is_zero());

    for (std::size_t n = 1; n <= 5; ++n) {
      CAPTURE(n);
      const TitsAlgebra alg(coordinate_arrangement(n));
      const auto g = coordinate_element(alg);
      CHECK(is_characteristic(alg, g, t).characteristic);
      CHECK(chamber_sum(alg, g) == scalar_pow(t - 1, n));
      std::size_t nonzero = 0;
      for (FaceId c : alg.faces().chambers()) nonzero += g.coefficient(c).is_zero() ? 0 : 1;
      CHECK(nonzero == 1);
    }
    const TitsAlgebra two(coordinate_arrangement(2));
    const auto axis = two.lattice().find({0});
    REQUIRE(axis);
    CHECK(character(two, coordinate_element(two), *axis) == t);
    CHECK_THROWS_AS(coordinate_element(TitsAlgebra(braid_arrangement(2))), WrongFamily);
  }

  TEST_CASE("Zaslavsky counts") {
    for (const auto& [name, arr] : testing::test_arrangements()) {
      CAPTURE(name);
      CHECK(zaslavsky_counts(TitsAlgebra(arr)).consistent());
    }
    CHECK(zaslavsky_counts(TitsAlgebra(braid_arrangement(4))).chambers == 24);
    const auto lines = zaslavsky_counts(TitsAlgebra(testing::three_generic_lines()));
    CHECK(lines.chambers == 7);
    CHECK(lines.essentially_bounded_chambers == 1);
    const auto parallel = zaslavsky_counts(TitsAlgebra(testing::parallel_pair_and_transversal()));
    CHECK(parallel.chambers == 6);
    CHECK(parallel.essentially_bounded_chambers == 0);
    CHECK(zaslavsky_counts(TitsAlgebra(braid_arrangement(3))).essentially_bounded_chambers == 0);
  }

  TEST_CASE("deletion and restriction") {
    const TitsAlgebra braid(braid_arrangement(3));
    for (std::size_t h = 0; h < 3; ++h) {
      const auto r = verify_deletion_restriction(braid, h);
      CHECK(r.precondition_holds);
      CHECK(r.chi_deleted == (t - 1) * (t - 1));
      CHECK(r.chi_restricted == t - 1);
      CHECK(r.passed());
    }
    const auto coord = verify_deletion_restriction(TitsAlgebra(coordinate_arrangement(2)), 0);
    // Removing a coordinate hyperplane of the plane drops the rank.
    CHECK_FALSE(coord.precondition_holds);
    CHECK(coord.rank_deleted == 1);
    CHECK(coord.chi_deleted == t - 1);
    CHECK(coord.chi_restricted == t - 1);

    const auto single = verify_deletion_restriction(TitsAlgebra(coordinate_arrangement(1)), 0);
    CHECK_FALSE(single.precondition_holds);

    for (const auto& [name, arr] : testing::test_arrangements()) {
      CAPTURE(name);
      const TitsAlgebra alg(arr);
      for (std::size_t h = 0; h < arr.size(); ++h) {
        const auto r = verify_deletion_restriction(alg, h);
        if (!r.precondition_holds) continue;
        CHECK(r.identity_holds);
        CHECK(r.pushforward_characteristic);
        CHECK(r.pushforward_holds);
      }
    }
  }

  TEST_CASE("Kung identity") {
    const auto braid = verify_kung(TitsAlgebra(braid_arrangement(3)).lattice(), Rational(2), Rational(3));
    CHECK(braid.lhs == 20);
    CHECK(braid.passed());
    const auto lines = verify_kung(TitsAlgebra(testing::three_generic_lines()).lattice(), Rational(-1), Rational(-1));
    CHECK(lines.lhs == 1);
    CHECK(lines.passed());

    std::mt19937_64 rng(31);
    for (const auto& [name, arr] : testing::test_arrangements()) {
      CAPTURE(name);
      const TitsAlgebra alg(arr);
      CHECK(verify_kung(alg.lattice(), Rational(5, 3), Rational(1)).passed());
      for (int k = 0; k < 5; ++k) {
        const auto r = verify_kung(alg.lattice(), testing::random_rational(rng), testing::random_rational(rng));
        CHECK(r.lhs == charpoly(alg.lattice()).evaluate(r.s * r.t));
        CHECK(r.passed());
      }
    }
  }

  TEST_CASE("Adams multiplicativity") {
    for (std::size_t n = 2; n <= 4; ++n) {
      CAPTURE(n);
      const auto r = verify_adams_product(TitsAlgebra(braid_arrangement(n)));
      CHECK(r.samples.size() == (n + 1) * (n + 1));
      CHECK(r.passed());
    }
    const auto params = sample_parameters(4);
    CHECK(params == std::vector<Rational>{Rational(2), Rational(-3, 2), Rational(4, 3), Rational(-5, 4)});
  }
}
