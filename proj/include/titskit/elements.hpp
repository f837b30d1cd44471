#pragma once

#include "titskit/geometry.hpp"
#include "titskit/polynomial.hpp"
#include "titskit/tits.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace titskit {

enum class Family { Braid, SignedBraid, Coordinate, Generic, File };

struct BuilderSpec {
  Family family = Family::Braid;
  std::size_t n = 0;
  std::size_t m = 0;          // generic only
  std::uint64_t seed = 0;     // generic only
  std::string path;           // file only
};

/// x_i = x_j for i < j.
Arrangement braid_arrangement(std::size_t n);
/// x_i = x_j, x_i = -x_j for i < j, then x_k = 0.
Arrangement signed_braid_arrangement(std::size_t n);
/// x_i = 0.
Arrangement coordinate_arrangement(std::size_t n);
/// m affine hyperplanes with integer coefficients in [-3, 3], redrawn until
/// every n of them meet in a point and no n+1 of them share one. Throws
/// GenericDegenerate after 1000 draws.
Arrangement generic_arrangement(std::size_t n, std::size_t m, std::uint64_t seed);

Arrangement build(const BuilderSpec& spec);

/// α_t = Σ_F binom(t, dim F) H_F on the braid arrangement.
TitsElement<Polynomial> adams_A(const TitsAlgebra& alg);
/// (1/t) α_t, characteristic of parameter t.
TitsElement<Polynomial> normalized_adams_A(const TitsAlgebra& alg);
/// α±_{2t+1} = Σ_F binom(t, rank F) H_F on the signed braid arrangement.
TitsElement<Polynomial> adams_B(const TitsAlgebra& alg);
/// γ_t: (t-1)^rank(F) on faces of the first orthant, 0 elsewhere.
TitsElement<Polynomial> coordinate_element(const TitsAlgebra& alg);

/// 2t + 1, the parameter of adams_B.
Polynomial adams_B_parameter();

struct ZaslavskyCounts {
  Rational chi_at_minus1;
  Rational chi_at_1;
  Rational chambers_from_chi;            // (-1)^rank χ(A,-1)
  Rational bounded_chambers_from_chi;    // (-1)^rank χ(A,1)
  std::size_t chambers = 0;              // face census
  std::size_t essentially_bounded_chambers = 0;

  bool consistent() const {
    return chambers_from_chi == Rational(chambers) &&
           bounded_chambers_from_chi == Rational(essentially_bounded_chambers);
  }
};

ZaslavskyCounts zaslavsky_counts(const TitsAlgebra& alg);

struct DeletionReport {
  std::size_t hyperplane = 0;
  std::size_t rank_full = 0;
  std::size_t rank_deleted = 0;
  bool precondition_holds = false;  // deletion keeps the rank
  Polynomial chi_full;
  Polynomial chi_deleted;
  Polynomial chi_restricted;        // arrangement under H
  bool identity_holds = false;      // χ(A) = χ(A \ H) - χ(A^H)
  // Pushing a characteristic element of parameter t forward to A \ H and
  // summing over its chambers must give χ(A) + χ(A^H) = χ(A \ H).
  Polynomial pushed_chamber_sum;
  bool pushforward_characteristic = false;
  bool pushforward_holds = false;

  bool passed() const { return !precondition_holds || (identity_holds && pushforward_holds && pushforward_characteristic); }
};

/// Throws IndexOutOfRange. A rank drop is reported, not thrown.
DeletionReport verify_deletion_restriction(const TitsAlgebra& alg, std::size_t hyperplane);

struct KungReport {
  Rational s;
  Rational t;
  Rational lhs;          // χ(A, st)
  Rational single_sum;   // Σ_X t^rank(X) χ(A^X, s) χ(A_X, t)
  Rational pair_sum;     // Σ_{X v Y = ⊤} χ(A^X, s) χ(A^Y, t)

  bool passed() const { return lhs == single_sum && lhs == pair_sum; }
};

KungReport verify_kung(const FlatLattice& lattice, const Rational& s, const Rational& t);

struct AdamsProductSample {
  Rational s;
  Rational t;
  bool product_matches = false;       // α_s α_t = α_{st}
  bool normalized_characteristic = false;  // (1/s)α_s (1/t)α_t has parameter st
};

struct AdamsProductReport {
  std::vector<AdamsProductSample> samples;
  bool passed() const;
};

/// Certifies α_s α_t = α_{st} at (n+1)^2 sample pairs (degree n in each
/// variable), plus the product rule for characteristic elements.
AdamsProductReport verify_adams_product(const TitsAlgebra& alg);

/// n+1 distinct nonzero rationals used as sample parameters.
std::vector<Rational> sample_parameters(std::size_t count);

}  // namespace titskit
