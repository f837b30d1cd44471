#include "titskit/geometry.hpp"

#include "titskit/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <utility>

namespace titskit {

namespace {

using linalg::Matrix;

Rational evaluate(const Hyperplane& h, const RationalVector& x) { return dot(h.normal, x) - h.offset; }

Sign to_sign(int s) { return s > 0 ? Sign::Plus : (s < 0 ? Sign::Minus : Sign::Zero); }

int to_int(Sign s) { return static_cast<int>(s); }

Matrix zero_set_normals(const Arrangement& arr, const std::vector<Sign>& signs) {
  Matrix rows;
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] == Sign::Zero) rows.push_back(arr.hyperplane(i).normal);
  }
  return rows;
}

/// Feasibility system for the first signs.size() hyperplanes.
FeasibilityProblem prefix_system(const Arrangement& arr, const std::vector<Sign>& signs) {
  FeasibilityProblem p;
  p.dim = arr.dim();
  for (std::size_t i = 0; i < signs.size(); ++i) {
    const auto& h = arr.hyperplane(i);
    switch (signs[i]) {
      case Sign::Zero:
        p.equalities.push_back({h.normal, h.offset});
        break;
      case Sign::Plus:
        p.strict.push_back({h.normal, h.offset});
        break;
      case Sign::Minus: {
        RationalVector neg = h.normal;
        for (auto& x : neg) x = -x;
        p.strict.push_back({std::move(neg), -h.offset});
        break;
      }
    }
  }
  return p;
}

/// Moves from `start` (inside the open face) along `direction`, which must keep
/// the zero-set equalities, by a step small enough to stay inside the face.
RationalVector step_inside(const Arrangement& arr, const std::vector<Sign>& signs,
                           const RationalVector& start, const RationalVector& direction) {
  Rational step = 1;
  for (std::size_t j = 0; j < signs.size(); ++j) {
    if (signs[j] == Sign::Zero) continue;
    const auto& h = arr.hyperplane(j);
    const Rational slack = to_int(signs[j]) * evaluate(h, start);
    const Rational rate = to_int(signs[j]) * dot(h.normal, direction);
    if (rate.sign() < 0) step = std::min(step, slack / (-rate) / 2);
  }
  RationalVector p = start;
  for (std::size_t k = 0; k < p.size(); ++k) p[k] += step * direction[k];
  return p;
}

struct PartialFace {
  std::vector<Sign> signs;
  RationalVector witness;
};

bool essentially_bounded_signs(const Arrangement& arr, const SignVector& sv) {
  FeasibilityProblem p;
  p.dim = arr.dim();
  RationalVector total(arr.dim(), Rational(0));
  bool any_nonzero = false;
  for (std::size_t i = 0; i < sv.size(); ++i) {
    const auto& a = arr.hyperplane(i).normal;
    if (sv[i] == Sign::Zero) {
      p.equalities.push_back({a, Rational(0)});
      continue;
    }
    any_nonzero = true;
    RationalVector g = a;
    if (sv[i] == Sign::Minus) {
      for (auto& x : g) x = -x;
    }
    for (std::size_t k = 0; k < g.size(); ++k) total[k] += g[k];
    p.weak.push_back({std::move(g), Rational(0)});
  }
  if (!any_nonzero) return true;
  // Every term is >= 0 on the cone, so the sum can reach 1 iff one term is
  // not identically zero there.
  p.equalities.push_back({std::move(total), Rational(1)});
  return !lp_feasible(p).has_value();
}

}  // namespace

Hyperplane canonicalize(RationalVector normal, Rational offset) {
  const auto first = std::find_if(normal.begin(), normal.end(), [](const Rational& x) { return !x.is_zero(); });
  if (first == normal.end()) throw ZeroNormal();
  Integer den_lcm = 1;
  for (const auto& x : normal) den_lcm = lcm(den_lcm, Integer(denominator(x)));
  Integer num_gcd = 0;
  for (const auto& x : normal) {
    const Integer scaled = Integer(numerator(x)) * (den_lcm / Integer(denominator(x)));
    num_gcd = gcd(num_gcd, scaled);
  }
  Rational factor = Rational(den_lcm, num_gcd);
  if (first->sign() < 0) factor = -factor;
  for (auto& x : normal) x *= factor;
  offset *= factor;
  return Hyperplane{std::move(normal), std::move(offset)};
}

std::string_view to_string(ArrangementKind kind) {
  switch (kind) {
    case ArrangementKind::Braid: return "braid";
    case ArrangementKind::SignedBraid: return "signed-braid";
    case ArrangementKind::Coordinate: return "coordinate";
    case ArrangementKind::Generic: return "generic";
    case ArrangementKind::File: return "file";
    case ArrangementKind::Custom: return "custom";
  }
  return "custom";
}

SignVector SignVector::parse(std::string_view text) {
  std::vector<Sign> signs;
  signs.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '+': signs.push_back(Sign::Plus); break;
      case '-': signs.push_back(Sign::Minus); break;
      case '0': signs.push_back(Sign::Zero); break;
      default: throw ParseError("bad sign character '" + std::string(1, c) + "'");
    }
  }
  return SignVector(std::move(signs));
}

std::vector<std::size_t> SignVector::zero_set() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < signs_.size(); ++i) {
    if (signs_[i] == Sign::Zero) out.push_back(i);
  }
  return out;
}

bool SignVector::is_chamber() const {
  return std::none_of(signs_.begin(), signs_.end(), [](Sign s) { return s == Sign::Zero; });
}

SignVector SignVector::compose(const SignVector& other) const {
  std::vector<Sign> out(signs_);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] == Sign::Zero) out[i] = other.signs_[i];
  }
  return SignVector(std::move(out));
}

SignVector SignVector::restrict_to(std::span<const std::size_t> indices) const {
  std::vector<Sign> out;
  out.reserve(indices.size());
  for (auto i : indices) out.push_back(signs_.at(i));
  return SignVector(std::move(out));
}

std::string SignVector::str() const {
  std::string s;
  s.reserve(signs_.size());
  for (Sign x : signs_) s.push_back(x == Sign::Plus ? '+' : (x == Sign::Minus ? '-' : '0'));
  return s;
}

std::size_t SignVectorHash::operator()(const SignVector& sv) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (Sign s : sv.signs()) {
    h ^= static_cast<std::size_t>(static_cast<int>(s) + 1);
    h *= 1099511628211ULL;
  }
  return h;
}

Arrangement::Arrangement(std::size_t dim, std::vector<Hyperplane> hyperplanes,
                         ArrangementKind kind, std::optional<std::uint64_t> seed)
    : dim_(dim), kind_(kind), seed_(seed) {
  if (dim == 0) throw DimensionMismatch("ambient dimension must be positive");
  hyperplanes_.reserve(hyperplanes.size());
  for (auto& h : hyperplanes) {
    if (h.normal.size() != dim) {
      throw DimensionMismatch("hyperplane normal of length " + std::to_string(h.normal.size()) +
                              " in dimension " + std::to_string(dim));
    }
    Hyperplane c = canonicalize(std::move(h.normal), std::move(h.offset));
    if (std::find(hyperplanes_.begin(), hyperplanes_.end(), c) != hyperplanes_.end()) {
      std::string text;
      for (const auto& x : c.normal) text += to_string(x) + " ";
      throw DuplicateHyperplane("duplicate hyperplane: normal " + text + "offset " + to_string(c.offset));
    }
    hyperplanes_.push_back(std::move(c));
  }
}

bool Arrangement::is_linear() const {
  return std::all_of(hyperplanes_.begin(), hyperplanes_.end(),
                     [](const Hyperplane& h) { return h.offset.is_zero(); });
}

Arrangement Arrangement::subarrangement(std::span<const std::size_t> indices) const {
  std::vector<Hyperplane> kept;
  for (auto i : indices) {
    if (i >= hyperplanes_.size()) {
      throw IndexOutOfRange("hyperplane index " + std::to_string(i) + " out of range (" +
                            std::to_string(hyperplanes_.size()) + " hyperplanes)");
    }
    kept.push_back(hyperplanes_[i]);
  }
  return Arrangement(dim_, std::move(kept), ArrangementKind::Custom);
}

Sign Arrangement::side(std::size_t i, const RationalVector& point) const {
  return to_sign(evaluate(hyperplanes_.at(i), point).sign());
}

SignVector Arrangement::signs_at(const RationalVector& point) const {
  std::vector<Sign> s;
  s.reserve(hyperplanes_.size());
  for (std::size_t i = 0; i < hyperplanes_.size(); ++i) s.push_back(side(i, point));
  return SignVector(std::move(s));
}

std::string Arrangement::fingerprint() const {
  std::string canonical = "dim=" + std::to_string(dim_) + ";";
  for (const auto& h : hyperplanes_) {
    for (const auto& x : h.normal) canonical += to_string(x) + ",";
    canonical += "=" + to_string(h.offset) + ";";
  }
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : canonical) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

FaceSet::FaceSet(std::vector<Face> faces) : faces_(std::move(faces)) {
  for (std::size_t i = 0; i < faces_.size(); ++i) index_.emplace(faces_[i].signs, FaceId{i});
}

std::optional<FaceId> FaceSet::find(const SignVector& sv) const {
  const auto it = index_.find(sv);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FaceId FaceSet::at(const SignVector& sv) const {
  if (auto id = find(sv)) return *id;
  throw NotAFace("sign vector " + sv.str() + " is not a face");
}

std::vector<FaceId> FaceSet::chambers() const {
  std::vector<FaceId> out;
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    if (faces_[i].signs.is_chamber()) out.push_back(FaceId{i});
  }
  return out;
}

std::size_t FaceSet::min_dim() const {
  std::size_t d = faces_.empty() ? 0 : faces_.front().dim;
  for (const auto& f : faces_) d = std::min(d, f.dim);
  return d;
}

FeasibilityProblem face_system(const Arrangement& arr, const SignVector& sv) {
  if (sv.size() != arr.size()) {
    throw DimensionMismatch("sign vector of length " + std::to_string(sv.size()) + " for " +
                            std::to_string(arr.size()) + " hyperplanes");
  }
  return prefix_system(arr, sv.signs());
}

std::optional<RationalVector> realize(const Arrangement& arr, const SignVector& sv) {
  return lp_feasible(face_system(arr, sv));
}

FaceSet enumerate_faces(const Arrangement& arr) {
  std::vector<PartialFace> current{{{}, RationalVector(arr.dim(), Rational(0))}};
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const Hyperplane& h = arr.hyperplane(i);
    std::vector<PartialFace> next;
    next.reserve(current.size() * 2);
    for (auto& face : current) {
      const Matrix zero_rows = zero_set_normals(arr, face.signs);
      const Sign here = to_sign(evaluate(h, face.witness).sign());
      auto emit = [&](Sign s, RationalVector w) {
        auto signs = face.signs;
        signs.push_back(s);
        next.push_back({std::move(signs), std::move(w)});
      };

      if (linalg::in_row_space(zero_rows, h.normal)) {
        // h is constant on the affine hull of the face.
        emit(here, std::move(face.witness));
        continue;
      }
      if (here == Sign::Zero) {
        const Matrix null = linalg::nullspace(zero_rows, arr.dim());
        const auto dir = std::find_if(null.begin(), null.end(), [&](const RationalVector& v) {
          return !dot(h.normal, v).is_zero();
        });
        RationalVector forward = *dir;
        if (dot(h.normal, forward).sign() < 0) {
          for (auto& x : forward) x = -x;
        }
        RationalVector backward = forward;
        for (auto& x : backward) x = -x;
        emit(Sign::Minus, step_inside(arr, face.signs, face.witness, backward));
        emit(Sign::Zero, face.witness);
        emit(Sign::Plus, step_inside(arr, face.signs, face.witness, forward));
        continue;
      }
      FeasibilityProblem on_h = prefix_system(arr, face.signs);
      on_h.equalities.push_back({h.normal, h.offset});
      auto zero_point = lp_feasible(on_h);
      if (!zero_point) {
        emit(here, std::move(face.witness));
        continue;
      }
      // The face crosses h: extrapolate past the crossing point, away from the witness.
      RationalVector away(arr.dim());
      for (std::size_t k = 0; k < away.size(); ++k) away[k] = (*zero_point)[k] - face.witness[k];
      RationalVector other = step_inside(arr, face.signs, *zero_point, away);
      const Sign opposite = here == Sign::Plus ? Sign::Minus : Sign::Plus;
      emit(here, std::move(face.witness));
      emit(Sign::Zero, std::move(*zero_point));
      emit(opposite, std::move(other));
    }
    current = std::move(next);
  }

  std::vector<Face> faces;
  faces.reserve(current.size());
  for (auto& pf : current) {
    Face f;
    f.signs = SignVector(std::move(pf.signs));
    f.witness = std::move(pf.witness);
    f.dim = arr.dim() - linalg::rank(zero_set_normals(arr, f.signs.signs()), arr.dim());
    f.essentially_bounded = essentially_bounded_signs(arr, f.signs);
    faces.push_back(std::move(f));
  }
  std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.signs < b.signs;
  });
  return FaceSet(std::move(faces));
}

std::size_t face_dimension(const Arrangement& arr, const SignVector& sv) {
  if (!realize(arr, sv)) throw NotAFace("sign vector " + sv.str() + " is not realizable");
  return arr.dim() - linalg::rank(zero_set_normals(arr, sv.signs()), arr.dim());
}

HomogeneousCone recession_cone(const Arrangement& arr, const SignVector& sv) {
  HomogeneousCone cone;
  cone.dim = arr.dim();
  for (std::size_t i = 0; i < sv.size(); ++i) {
    RationalVector a = arr.hyperplane(i).normal;
    if (sv[i] == Sign::Zero) {
      cone.equalities.push_back(std::move(a));
      continue;
    }
    if (sv[i] == Sign::Minus) {
      for (auto& x : a) x = -x;
    }
    cone.inequalities.push_back(std::move(a));
  }
  return cone;
}

bool is_essentially_bounded(const Arrangement& arr, const SignVector& sv) {
  if (!realize(arr, sv)) throw NotAFace("sign vector " + sv.str() + " is not realizable");
  return essentially_bounded_signs(arr, sv);
}

linalg::Matrix lineality_space(const Arrangement& arr) {
  Matrix normals;
  for (const auto& h : arr.hyperplanes()) normals.push_back(h.normal);
  return linalg::nullspace(normals, arr.dim());
}

}  // namespace titskit
