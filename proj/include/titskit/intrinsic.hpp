#pragma once

#include "titskit/geometry.hpp"
#include "titskit/linalg.hpp"
#include "titskit/polynomial.hpp"
#include "titskit/tits.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace titskit {

struct ConeProjection {
  RationalVector point;
  std::size_t face_dim = 0;  // face of the cone whose relative interior holds `point`
};

/// Exact nearest-point projection onto a closed polyhedral cone.
///
/// Construction normalizes the cone (implicit equalities become equalities,
/// redundant inequalities are dropped), enumerates its faces as closed sets
/// of active facets, and precomputes for every face the orthogonal projector
/// onto its linear span. A point p projects to P_S p for the face S where
///   P_S p lies in the cone, and
///   p - P_S p lies in the polar cone (nonpositive on every extreme ray),
/// which together with orthogonality characterizes the projection uniquely.
class ConeProjector {
 public:
  explicit ConeProjector(const HomogeneousCone& cone);

  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return span_dim_; }
  std::size_t lineality_dim() const { return lineality_dim_; }
  std::size_t essential_dim() const { return span_dim_ - lineality_dim_; }
  bool is_subspace() const { return facets_.empty(); }

  const linalg::Matrix& equalities() const { return equalities_; }
  /// Irredundant inequality normals, g·x >= 0.
  const linalg::Matrix& facets() const { return facets_; }
  /// Generators of the cone modulo its lineality space, orthogonal to it.
  const linalg::Matrix& extreme_rays() const { return rays_; }
  const linalg::Matrix& lineality_basis() const { return lineality_; }
  std::size_t face_count() const { return faces_.size(); }

  ConeProjection project(const RationalVector& p) const;

  /// Face dimension hit by the projection of the integer point q, using only
  /// integer arithmetic. Scale invariance of the projection makes this exact
  /// for any dyadic point q / 2^k.
  std::size_t classify(std::span<const std::int64_t> q) const;

 private:
  struct Face {
    std::uint32_t active = 0;  // bitmask over facets_
    std::size_t dim = 0;
    linalg::Matrix projector;
    std::vector<std::int64_t> facet_test;  // facets * (D P), row-major k x n
    std::vector<std::int64_t> ray_test;    // rays * (D I - D P), row-major r x n
  };

  std::size_t dim_of_active(std::uint32_t mask) const;

  std::size_t n_ = 0;
  std::size_t span_dim_ = 0;
  std::size_t lineality_dim_ = 0;
  linalg::Matrix equalities_;
  linalg::Matrix facets_;
  linalg::Matrix rays_;
  linalg::Matrix lineality_;
  std::vector<Face> faces_;
  std::vector<std::size_t> dim_by_mask_;  // indexed by active mask; unused masks hold 0
};

ConeProjection project_to_cone(const HomogeneousCone& cone, const RationalVector& p);

enum class VolumeMethod { Exact, MonteCarlo, Unavailable };

std::string_view to_string(VolumeMethod method);

struct IntrinsicConfig {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  bool exact_only = false;         // never sample; cones of essential dim > 2 become Unavailable
  bool force_monte_carlo = false;  // sample even when a closed form exists
  unsigned workers = 0;            // 0 = hardware concurrency; never changes the result
};

/// v_0..v_n of a cone, in ambient indexing.
struct ConicVolumeProfile {
  std::vector<double> values;
  std::vector<double> half_width;  // 3-sigma, zero for exact entries
  VolumeMethod method = VolumeMethod::Exact;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t dim = 0;            // dimension of the cone's span
  std::size_t lineality_dim = 0;  // dimension of its minimal face

  bool available() const { return method != VolumeMethod::Unavailable; }
  bool is_subspace() const { return dim == lineality_dim; }
  double total() const;             // Σ v_k
  double alternating_sum() const;   // Σ (-1)^k v_k
  double total_half_width() const;  // Σ half-widths
};

/// Closed forms for essential dimension <= 2 (subspace, half-space, wedge of
/// angle a: v = 1/2 - a/2π, 1/2, a/2π), otherwise standard Gaussian samples
/// rounded to dyadic rationals and classified exactly. Throws InvalidConfig.
ConicVolumeProfile conic_intrinsic_volumes(const HomogeneousCone& cone, const IntrinsicConfig& config);
ConicVolumeProfile conic_intrinsic_volumes(const ConeProjector& cone, const IntrinsicConfig& config);

/// Profile of the face's recession cone.
ConicVolumeProfile face_intrinsic_volumes(const Arrangement& arr, const SignVector& face, const IntrinsicConfig& config);

/// Per-face Monte Carlo seed derived from the run seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// ν_t = Σ_F (-1)^dim F (Σ_{k=d}^{dim F} (-1)^k v_k(F) t^{k-d}) H_F, together
/// with the face profiles it came from.
struct IntrinsicElement {
  std::size_t min_dim = 0;
  TitsElement<RealPolynomial> element;
  std::vector<ConicVolumeProfile> profiles;  // indexed by FaceId

  bool available() const;
  TitsElement<double> at(double t) const;
  /// Σ_k half_width_k |t|^{k-d}: bound on the error of the coefficient at t.
  double tolerance(FaceId f, double t) const;
  /// Half-width of the coefficient of t^j.
  double coefficient_tolerance(FaceId f, std::size_t j) const;
};

IntrinsicElement intrinsic_element(const TitsAlgebra& alg, const IntrinsicConfig& config);

/// ν_t against the characteristic identity, coefficient-wise within the
/// summed half-widths of the contributing faces.
CharacteristicReport<RealPolynomial> check_intrinsic_characteristic(const TitsAlgebra& alg, const IntrinsicElement& nu);

struct KlivansSwartzReport {
  RealPolynomial reconstructed;
  Polynomial exact;
  std::vector<double> deviation;   // |reconstructed_j - exact_j|
  std::vector<double> half_width;  // Σ over chambers
  double max_deviation = 0;
};

/// Coefficient of t^j is (-1)^(rank - j) Σ_C v_{j+d}(C). Only chamber
/// profiles are computed.
KlivansSwartzReport klivans_swartz_charpoly(const TitsAlgebra& alg, const IntrinsicConfig& config);
KlivansSwartzReport klivans_swartz_charpoly(const TitsAlgebra& alg, const IntrinsicElement& nu);

struct IntrinsicProductReport {
  double s = 0;
  double t = 0;
  double max_deviation = 0;  // max_G |(ν_s ν_t)^G - ν_st^G|
  double max_excess = 0;     // max_G deviation - tolerance; <= 0 when passing
  bool passed = false;
};

/// Compares ν_s ν_t with ν_st, propagating profile half-widths linearly.
IntrinsicProductReport verify_intrinsic_product(const TitsAlgebra& alg, const IntrinsicElement& nu, double s, double t);

}  // namespace titskit
