#include "titskit/intrinsic.hpp"

#include "titskit/errors.hpp"
#include "titskit/lattice.hpp"
#include "titskit/lp.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <thread>

namespace titskit {

namespace {

constexpr std::size_t kMaxFacets = 20;
constexpr std::uint64_t kChunk = 1u << 16;
constexpr int kDyadicBits = 32;
constexpr std::int64_t kEntryLimit = std::int64_t{1} << 62;

RationalVector negated(const RationalVector& v) {
  RationalVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

std::vector<LinearConstraint> as_equalities(const linalg::Matrix& rows) {
  std::vector<LinearConstraint> out;
  for (const auto& r : rows) out.push_back({r, Rational(0)});
  return out;
}

/// Smallest positive integer multiple of v with coprime entries.
RationalVector primitive(const RationalVector& v) {
  Integer den = 1;
  for (const auto& x : v) den = lcm(den, Integer(denominator(x)));
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, Integer(numerator(x)) * (den / Integer(denominator(x))));
  if (g == 0) return v;
  const Rational factor(den, g);
  RationalVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * factor;
  return out;
}

std::int64_t to_int64(const Rational& x) {
  if (denominator(x) != 1) throw InvalidConfig("non-integral entry in integer cone data");
  const Integer v = numerator(x);
  if (v >= Integer(kEntryLimit) || v <= -Integer(kEntryLimit)) {
    throw InvalidConfig("cone coefficients too large for exact sampling");
  }
  return v.convert_to<std::int64_t>();
}

double to_double(const Rational& x) { return x.convert_to<double>(); }

}  // namespace

ConeProjector::ConeProjector(const HomogeneousCone& cone) : n_(cone.dim) {
  for (const auto& e : cone.equalities) {
    if (e.size() != n_) throw DimensionMismatch("cone equality has the wrong length");
  }
  for (const auto& g : cone.inequalities) {
    if (g.size() != n_) throw DimensionMismatch("cone inequality has the wrong length");
  }
  equalities_ = linalg::row_reduce(cone.equalities, n_).rows;

  // g is an implicit equality iff g·x = 1 is infeasible on the cone.
  linalg::Matrix remaining;
  for (const auto& g : cone.inequalities) {
    if (std::all_of(g.begin(), g.end(), [](const Rational& x) { return x.is_zero(); })) continue;
    FeasibilityProblem lp{n_, as_equalities(cone.equalities), {}, {}};
    for (const auto& h : cone.inequalities) lp.weak.push_back({h, Rational(0)});
    lp.equalities.push_back({g, Rational(1)});
    if (lp_feasible(lp)) {
      remaining.push_back(g);
    } else {
      equalities_.push_back(g);
    }
  }
  equalities_ = linalg::row_reduce(equalities_, n_).rows;

  // Drop inequalities implied by the others.
  std::vector<bool> kept(remaining.size(), true);
  for (std::size_t i = 0; i < remaining.size(); ++i) {
    FeasibilityProblem lp{n_, as_equalities(equalities_), {}, {}};
    for (std::size_t j = 0; j < remaining.size(); ++j) {
      if (j != i && kept[j]) lp.weak.push_back({remaining[j], Rational(0)});
    }
    lp.equalities.push_back({remaining[i], Rational(-1)});
    kept[i] = lp_feasible(lp).has_value();
  }
  for (std::size_t i = 0; i < remaining.size(); ++i) {
    if (kept[i]) facets_.push_back(primitive(remaining[i]));
  }
  if (facets_.size() > kMaxFacets) throw InvalidConfig("cone has too many facets to enumerate");

  span_dim_ = n_ - equalities_.size();
  linalg::Matrix all = equalities_;
  all.insert(all.end(), facets_.begin(), facets_.end());
  lineality_ = linalg::nullspace(all, n_);
  lineality_dim_ = lineality_.size();
  const linalg::Matrix lineality_projector = linalg::projector_onto(lineality_, n_);

  // Faces are the active sets S whose relative interior is nonempty.
  const std::size_t k = facets_.size();
  dim_by_mask_.assign(std::size_t{1} << k, 0);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << k); ++mask) {
    FeasibilityProblem lp{n_, as_equalities(equalities_), {}, {}};
    linalg::Matrix cut = equalities_;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (1u << i)) {
        lp.equalities.push_back({facets_[i], Rational(0)});
        cut.push_back(facets_[i]);
      } else {
        lp.strict.push_back({facets_[i], Rational(0)});
      }
    }
    if (!lp_feasible(lp)) continue;
    Face face;
    face.active = mask;
    const linalg::Matrix basis = linalg::nullspace(cut, n_);
    face.dim = basis.size();
    face.projector = linalg::projector_onto(basis, n_);
    dim_by_mask_[mask] = face.dim;

    if (face.dim == lineality_dim_ + 1) {
      for (const auto& v : basis) {
        RationalVector r = v;
        const RationalVector along = linalg::apply(lineality_projector, v);
        for (std::size_t i = 0; i < n_; ++i) r[i] -= along[i];
        if (std::all_of(r.begin(), r.end(), [](const Rational& x) { return x.is_zero(); })) continue;
        Rational total = 0;
        for (const auto& g : facets_) total += dot(g, r);
        rays_.push_back(primitive(total < 0 ? negated(r) : r));
        break;
      }
    }
    faces_.push_back(std::move(face));
  }

  // Integer tests: with D P_S integral, P_S q lies in the cone iff
  // facets·(D P_S) q >= 0, and q - P_S q is polar iff rays·(D I - D P_S) q <= 0.
  for (auto& face : faces_) {
    Integer den = 1;
    for (const auto& row : face.projector) {
      for (const auto& x : row) den = lcm(den, Integer(denominator(x)));
    }
    const Rational scale(den);
    linalg::Matrix scaled = face.projector;
    for (auto& row : scaled) {
      for (auto& x : row) x *= scale;
    }
    linalg::Matrix residual = scaled;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) residual[i][j] = (i == j ? scale : Rational(0)) - scaled[i][j];
    }
    for (const auto& row : linalg::multiply(facets_, scaled, n_)) {
      for (const auto& x : row) face.facet_test.push_back(to_int64(x));
    }
    for (const auto& row : linalg::multiply(rays_, residual, n_)) {
      for (const auto& x : row) face.ray_test.push_back(to_int64(x));
    }
  }
  // Interior faces first: they absorb most of the Gaussian mass.
  std::stable_sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) { return a.dim > b.dim; });
}

std::size_t ConeProjector::dim_of_active(std::uint32_t mask) const { return dim_by_mask_.at(mask); }

ConeProjection ConeProjector::project(const RationalVector& p) const {
  if (p.size() != n_) throw DimensionMismatch("point has the wrong length for this cone");
  for (const auto& face : faces_) {
    const RationalVector q = linalg::apply(face.projector, p);
    std::uint32_t active = 0;
    bool inside = true;
    for (std::size_t i = 0; i < facets_.size() && inside; ++i) {
      const int s = sign(dot(facets_[i], q));
      if (s < 0) inside = false;
      if (s == 0) active |= 1u << i;
    }
    if (!inside) continue;
    RationalVector y = p;
    for (std::size_t i = 0; i < n_; ++i) y[i] -= q[i];
    const bool polar = std::all_of(rays_.begin(), rays_.end(), [&](const RationalVector& r) { return sign(dot(r, y)) <= 0; });
    if (polar) return {q, dim_of_active(active)};
  }
  throw Error("cone projection found no face; cone data is inconsistent");
}

std::size_t ConeProjector::classify(std::span<const std::int64_t> q) const {
  if (q.size() != n_) throw DimensionMismatch("point has the wrong length for this cone");
  const std::size_t k = facets_.size();
  const std::size_t r = rays_.size();
  for (const auto& face : faces_) {
    std::uint32_t active = 0;
    bool ok = true;
    const std::int64_t* row = face.facet_test.data();
    for (std::size_t i = 0; i < k && ok; ++i, row += n_) {
      __int128 acc = 0;
      for (std::size_t j = 0; j < n_; ++j) acc += static_cast<__int128>(row[j]) * q[j];
      if (acc < 0) ok = false;
      if (acc == 0) active |= 1u << i;
    }
    if (!ok) continue;
    row = face.ray_test.data();
    for (std::size_t i = 0; i < r && ok; ++i, row += n_) {
      __int128 acc = 0;
      for (std::size_t j = 0; j < n_; ++j) acc += static_cast<__int128>(row[j]) * q[j];
      if (acc > 0) ok = false;
    }
    if (ok) return dim_of_active(active);
  }
  throw Error("cone projection found no face; cone data is inconsistent");
}

ConeProjection project_to_cone(const HomogeneousCone& cone, const RationalVector& p) {
  return ConeProjector(cone).project(p);
}

std::string_view to_string(VolumeMethod method) {
  switch (method) {
    case VolumeMethod::Exact: return "exact";
    case VolumeMethod::MonteCarlo: return "monte_carlo";
    case VolumeMethod::Unavailable: return "unavailable";
  }
  return "unknown";
}

double ConicVolumeProfile::total() const {
  double s = 0;
  for (double v : values) s += v;
  return s;
}

double ConicVolumeProfile::alternating_sum() const {
  double s = 0;
  for (std::size_t k = 0; k < values.size(); ++k) s += (k % 2 == 0 ? 1.0 : -1.0) * values[k];
  return s;
}

double ConicVolumeProfile::total_half_width() const {
  double s = 0;
  for (double h : half_width) s += h;
  return s;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the pair.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

ConicVolumeProfile exact_profile(const ConeProjector& cone) {
  ConicVolumeProfile out;
  out.values.assign(cone.ambient_dim() + 1, 0.0);
  out.half_width.assign(cone.ambient_dim() + 1, 0.0);
  out.method = VolumeMethod::Exact;
  out.dim = cone.dim();
  out.lineality_dim = cone.lineality_dim();
  const std::size_t lin = cone.lineality_dim();
  switch (cone.essential_dim()) {
    case 0:
      out.values[lin] = 1.0;
      break;
    case 1:
      out.values[lin] = 0.5;
      out.values[lin + 1] = 0.5;
      break;
    case 2: {
      const auto& rays = cone.extreme_rays();
      const double a = to_double(dot(rays[0], rays[0]));
      const double b = to_double(dot(rays[1], rays[1]));
      const double c = to_double(dot(rays[0], rays[1]));
      const double angle = std::acos(std::clamp(c / std::sqrt(a * b), -1.0, 1.0));
      const double part = angle / (2 * std::numbers::pi);
      out.values[lin] = 0.5 - part;
      out.values[lin + 1] = 0.5;
      out.values[lin + 2] = part;
      break;
    }
    default:
      throw Error("no closed form for cones of essential dimension above 2");
  }
  return out;
}

std::vector<std::uint64_t> sample_chunk(const ConeProjector& cone, std::uint64_t seed, std::uint64_t chunk,
                                        std::uint64_t count) {
  const std::size_t n = cone.ambient_dim();
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> gauss;
  std::vector<std::uint64_t> counts(n + 1, 0);
  std::vector<std::int64_t> q(n);
  for (std::uint64_t s = 0; s < count; ++s) {
    for (auto& x : q) x = std::llround(std::ldexp(gauss(rng), kDyadicBits));
    ++counts[cone.classify(q)];
  }
  return counts;
}

ConicVolumeProfile monte_carlo_profile(const ConeProjector& cone, const IntrinsicConfig& config) {
  if (config.samples == 0) throw InvalidConfig("Monte Carlo needs at least one sample");
  const std::size_t n = cone.ambient_dim();
  const std::uint64_t chunks = (config.samples + kChunk - 1) / kChunk;
  std::vector<std::vector<std::uint64_t>> results(chunks);
  auto run = [&](std::uint64_t c) {
    const std::uint64_t count = std::min<std::uint64_t>(kChunk, config.samples - c * kChunk);
    results[c] = sample_chunk(cone, config.seed, c, count);
  };

  unsigned workers = config.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.workers;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));
  if (workers <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run(c);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t c = next++; c < chunks; c = next++) run(c);
      });
    }
  }

  std::vector<std::uint64_t> counts(n + 1, 0);
  for (const auto& part : results) {
    for (std::size_t k = 0; k <= n; ++k) counts[k] += part[k];
  }
  ConicVolumeProfile out;
  out.method = VolumeMethod::MonteCarlo;
  out.samples = config.samples;
  out.seed = config.seed;
  out.dim = cone.dim();
  out.lineality_dim = cone.lineality_dim();
  out.values.assign(n + 1, 0.0);
  out.half_width.assign(n + 1, 0.0);
  const double width = 3.0 * 0.5 / std::sqrt(static_cast<double>(config.samples));
  for (std::size_t k = 0; k <= n; ++k) {
    out.values[k] = static_cast<double>(counts[k]) / static_cast<double>(config.samples);
    if (k >= out.lineality_dim && k <= out.dim) out.half_width[k] = width;
  }
  return out;
}

}  // namespace

ConicVolumeProfile conic_intrinsic_volumes(const ConeProjector& cone, const IntrinsicConfig& config) {
  if (config.exact_only && config.force_monte_carlo) {
    throw InvalidConfig("exact-only and forced Monte Carlo are mutually exclusive");
  }
  if (!config.force_monte_carlo && cone.essential_dim() <= 2) return exact_profile(cone);
  if (config.exact_only) {
    ConicVolumeProfile out;
    out.method = VolumeMethod::Unavailable;
    out.dim = cone.dim();
    out.lineality_dim = cone.lineality_dim();
    return out;
  }
  return monte_carlo_profile(cone, config);
}

ConicVolumeProfile conic_intrinsic_volumes(const HomogeneousCone& cone, const IntrinsicConfig& config) {
  return conic_intrinsic_volumes(ConeProjector(cone), config);
}

ConicVolumeProfile face_intrinsic_volumes(const Arrangement& arr, const SignVector& face, const IntrinsicConfig& config) {
  return conic_intrinsic_volumes(recession_cone(arr, face), config);
}

bool IntrinsicElement::available() const {
  return std::all_of(profiles.begin(), profiles.end(), [](const ConicVolumeProfile& p) { return p.available(); });
}

TitsElement<double> IntrinsicElement::at(double t) const {
  return element.transform([t](const RealPolynomial& p) { return p.evaluate(t); });
}

double IntrinsicElement::coefficient_tolerance(FaceId f, std::size_t j) const {
  const auto& hw = profiles.at(f.value).half_width;
  return j + min_dim < hw.size() ? hw[j + min_dim] : 0.0;
}

double IntrinsicElement::tolerance(FaceId f, double t) const {
  const auto& hw = profiles.at(f.value).half_width;
  double sum = 0;
  for (std::size_t k = min_dim; k < hw.size(); ++k) sum += hw[k] * std::pow(std::abs(t), static_cast<double>(k - min_dim));
  return sum;
}

IntrinsicElement intrinsic_element(const TitsAlgebra& alg, const IntrinsicConfig& config) {
  IntrinsicElement out;
  out.min_dim = alg.min_dim();
  const auto& faces = alg.faces();
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const Face& face = faces[FaceId{i}];
    IntrinsicConfig local = config;
    local.seed = derive_seed(config.seed, i);
    ConicVolumeProfile profile = face_intrinsic_volumes(alg.arrangement(), face.signs, local);
    if (profile.available()) {
      std::vector<double> coeffs;
      const double outer = face.dim % 2 == 0 ? 1.0 : -1.0;
      for (std::size_t k = out.min_dim; k <= face.dim; ++k) {
        coeffs.push_back(outer * (k % 2 == 0 ? 1.0 : -1.0) * profile.values[k]);
      }
      out.element.add(FaceId{i}, RealPolynomial(std::move(coeffs)));
    }
    out.profiles.push_back(std::move(profile));
  }
  return out;
}

CharacteristicReport<RealPolynomial> check_intrinsic_characteristic(const TitsAlgebra& alg, const IntrinsicElement& nu) {
  if (!nu.available()) throw InvalidConfig("intrinsic element has unavailable face profiles");
  const auto& lattice = alg.lattice();
  return is_characteristic(alg, nu.element, RealPolynomial::variable(),
                           [&](const RealPolynomial& got, const RealPolynomial& want, FlatId x) {
                             const int degree = std::max(got.degree(), want.degree());
                             for (int j = 0; j <= degree; ++j) {
                               double tol = 1e-9;
                               for (std::size_t f = 0; f < alg.faces().size(); ++f) {
                                 if (lattice.leq(alg.support(FaceId{f}), x)) {
                                   tol += nu.coefficient_tolerance(FaceId{f}, static_cast<std::size_t>(j));
                                 }
                               }
                               if (std::abs(got.coefficient(j) - want.coefficient(j)) > tol) return false;
                             }
                             return true;
                           });
}

namespace {

KlivansSwartzReport klivans_swartz_from(const TitsAlgebra& alg, const std::vector<const ConicVolumeProfile*>& chambers) {
  const std::size_t rank = alg.rank();
  const std::size_t d = alg.min_dim();
  KlivansSwartzReport out;
  out.exact = charpoly(alg.lattice());
  std::vector<double> coeffs(rank + 1, 0.0);
  out.half_width.assign(rank + 1, 0.0);
  for (const auto* p : chambers) {
    if (!p->available()) throw InvalidConfig("chamber profile unavailable");
    for (std::size_t j = 0; j <= rank; ++j) {
      coeffs[j] += p->values[j + d];
      out.half_width[j] += p->half_width[j + d];
    }
  }
  for (std::size_t j = 0; j <= rank; ++j) {
    if ((rank - j) % 2 == 1) coeffs[j] = -coeffs[j];
  }
  out.reconstructed = RealPolynomial(coeffs);
  for (std::size_t j = 0; j <= rank; ++j) {
    const double dev = std::abs(coeffs[j] - to_double(out.exact.coefficient(j)));
    out.deviation.push_back(dev);
    out.max_deviation = std::max(out.max_deviation, dev);
  }
  return out;
}

}  // namespace

KlivansSwartzReport klivans_swartz_charpoly(const TitsAlgebra& alg, const IntrinsicConfig& config) {
  std::vector<ConicVolumeProfile> profiles;
  for (FaceId c : alg.faces().chambers()) {
    IntrinsicConfig local = config;
    local.seed = derive_seed(config.seed, c.value);
    profiles.push_back(face_intrinsic_volumes(alg.arrangement(), alg.faces()[c].signs, local));
  }
  std::vector<const ConicVolumeProfile*> refs;
  for (const auto& p : profiles) refs.push_back(&p);
  return klivans_swartz_from(alg, refs);
}

KlivansSwartzReport klivans_swartz_charpoly(const TitsAlgebra& alg, const IntrinsicElement& nu) {
  std::vector<const ConicVolumeProfile*> refs;
  for (FaceId c : alg.faces().chambers()) refs.push_back(&nu.profiles.at(c.value));
  return klivans_swartz_from(alg, refs);
}

IntrinsicProductReport verify_intrinsic_product(const TitsAlgebra& alg, const IntrinsicElement& nu, double s, double t) {
  if (!nu.available()) throw InvalidConfig("intrinsic element has unavailable face profiles");
  const std::size_t count = alg.faces().size();
  std::vector<double> a(count), b(count), c(count), ta(count), tb(count), tc(count);
  for (std::size_t i = 0; i < count; ++i) {
    const FaceId f{i};
    const RealPolynomial p = nu.element.coefficient(f);
    a[i] = p.evaluate(s);
    b[i] = p.evaluate(t);
    c[i] = p.evaluate(s * t);
    ta[i] = nu.tolerance(f, s);
    tb[i] = nu.tolerance(f, t);
    tc[i] = nu.tolerance(f, s * t);
  }
  std::vector<double> product(count, 0.0), tolerance(count, 0.0), magnitude(count, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < count; ++j) {
      const std::size_t g = alg.product(FaceId{i}, FaceId{j}).value;
      product[g] += a[i] * b[j];
      magnitude[g] += std::abs(a[i] * b[j]);
      tolerance[g] += std::abs(a[i]) * tb[j] + ta[i] * std::abs(b[j]) + ta[i] * tb[j];
    }
  }
  IntrinsicProductReport out{s, t};
  out.max_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < count; ++g) {
    const double dev = std::abs(product[g] - c[g]);
    const double tol = tolerance[g] + tc[g] + 1e-9 * (1.0 + magnitude[g] + std::abs(c[g]));
    out.max_deviation = std::max(out.max_deviation, dev);
    out.max_excess = std::max(out.max_excess, dev - tol);
  }
  out.passed = out.max_excess <= 0;
  return out;
}

}  // namespace titskit
