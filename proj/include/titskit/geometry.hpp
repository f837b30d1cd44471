#pragma once

#include "titskit/linalg.hpp"
#include "titskit/lp.hpp"
#include "titskit/rational.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace titskit {

/// {x : normal·x = offset}, kept in canonical form: integer coprime normal
/// entries with the first nonzero entry positive.
struct Hyperplane {
  RationalVector normal;
  Rational offset;

  friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
};

/// Throws ZeroNormal if every entry of `normal` vanishes.
Hyperplane canonicalize(RationalVector normal, Rational offset);

enum class ArrangementKind { Braid, SignedBraid, Coordinate, Generic, File, Custom };

std::string_view to_string(ArrangementKind kind);

enum class Sign : std::int8_t { Minus = -1, Zero = 0, Plus = 1 };

class SignVector {
 public:
  SignVector() = default;
  explicit SignVector(std::vector<Sign> signs) : signs_(std::move(signs)) {}

  /// Reads "+0-" notation.
  static SignVector parse(std::string_view text);

  std::size_t size() const { return signs_.size(); }
  Sign operator[](std::size_t i) const { return signs_[i]; }
  const std::vector<Sign>& signs() const { return signs_; }

  std::vector<std::size_t> zero_set() const;
  bool is_chamber() const;

  /// Covector composition: (FG)_i = F_i if F_i != 0 else G_i.
  SignVector compose(const SignVector& other) const;

  SignVector restrict_to(std::span<const std::size_t> indices) const;

  std::string str() const;

  friend auto operator<=>(const SignVector&, const SignVector&) = default;
  friend bool operator==(const SignVector&, const SignVector&) = default;

 private:
  std::vector<Sign> signs_;
};

struct SignVectorHash {
  std::size_t operator()(const SignVector& sv) const noexcept;
};

class Arrangement {
 public:
  /// Canonicalizes every hyperplane. Throws DimensionMismatch, ZeroNormal or
  /// DuplicateHyperplane.
  Arrangement(std::size_t dim, std::vector<Hyperplane> hyperplanes,
              ArrangementKind kind = ArrangementKind::Custom,
              std::optional<std::uint64_t> seed = std::nullopt);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return hyperplanes_.size(); }
  const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }
  const Hyperplane& hyperplane(std::size_t i) const { return hyperplanes_.at(i); }
  ArrangementKind kind() const { return kind_; }
  std::optional<std::uint64_t> seed() const { return seed_; }

  bool is_linear() const;

  /// Keeps the listed hyperplanes, in the listed order. Throws IndexOutOfRange.
  Arrangement subarrangement(std::span<const std::size_t> indices) const;

  /// sign(normal_i·x - offset_i)
  Sign side(std::size_t i, const RationalVector& point) const;
  SignVector signs_at(const RationalVector& point) const;

  /// 16 hex digits of FNV-1a over the canonical hyperplane list.
  std::string fingerprint() const;

 private:
  std::size_t dim_;
  std::vector<Hyperplane> hyperplanes_;
  ArrangementKind kind_;
  std::optional<std::uint64_t> seed_;
};

struct Face {
  SignVector signs;
  RationalVector witness;  // relative-interior point
  std::size_t dim = 0;
  bool essentially_bounded = false;
};

struct FaceId {
  std::size_t value = 0;
  friend auto operator<=>(const FaceId&, const FaceId&) = default;
};

/// Faces of an arrangement, ordered by dimension then sign vector.
class FaceSet {
 public:
  FaceSet() = default;
  explicit FaceSet(std::vector<Face> faces);

  std::size_t size() const { return faces_.size(); }
  const Face& operator[](FaceId id) const { return faces_[id.value]; }
  const std::vector<Face>& all() const { return faces_; }
  auto begin() const { return faces_.begin(); }
  auto end() const { return faces_.end(); }

  std::optional<FaceId> find(const SignVector& sv) const;
  /// Throws NotAFace.
  FaceId at(const SignVector& sv) const;

  std::vector<FaceId> chambers() const;
  std::size_t min_dim() const;

 private:
  std::vector<Face> faces_;
  std::unordered_map<SignVector, FaceId, SignVectorHash> index_;
};

/// {x : e·x = 0 for every equality row, g·x >= 0 for every inequality row}.
struct HomogeneousCone {
  std::size_t dim = 0;
  std::vector<RationalVector> equalities;
  std::vector<RationalVector> inequalities;
};

/// The relatively open polyhedron cut out by a sign vector, as an LP system.
FeasibilityProblem face_system(const Arrangement& arr, const SignVector& sv);

/// A relative-interior point of the face, or nullopt if the sign vector is
/// not realizable.
std::optional<RationalVector> realize(const Arrangement& arr, const SignVector& sv);

FaceSet enumerate_faces(const Arrangement& arr);

/// Throws NotAFace for unrealizable sign vectors.
std::size_t face_dimension(const Arrangement& arr, const SignVector& sv);

HomogeneousCone recession_cone(const Arrangement& arr, const SignVector& sv);

bool is_essentially_bounded(const Arrangement& arr, const SignVector& sv);

/// Basis of the intersection of the kernels of all normals.
linalg::Matrix lineality_space(const Arrangement& arr);

}  // namespace titskit
