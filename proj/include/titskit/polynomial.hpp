#pragma once

#include "titskit/rational.hpp"

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace titskit {

/// Univariate polynomial in the indeterminate t, stored densely by ascending
/// power with trailing zeros trimmed (the zero polynomial has no coefficients).
template <typename Coeff>
class BasicPolynomial {
 public:
  using coefficient_type = Coeff;

  BasicPolynomial() = default;
  BasicPolynomial(Coeff constant) { coeffs_.push_back(std::move(constant)); trim(); }
  template <std::integral I>
  BasicPolynomial(I constant) : BasicPolynomial(Coeff(constant)) {}
  explicit BasicPolynomial(std::vector<Coeff> ascending) : coeffs_(std::move(ascending)) { trim(); }

  static BasicPolynomial variable() { return monomial(Coeff(1), 1); }

  static BasicPolynomial monomial(Coeff c, std::size_t power) {
    std::vector<Coeff> v(power + 1, Coeff(0));
    v[power] = std::move(c);
    return BasicPolynomial(std::move(v));
  }

  /// Degree, or -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Coeff>& coefficients() const { return coeffs_; }

  Coeff coefficient(std::size_t power) const {
    return power < coeffs_.size() ? coeffs_[power] : Coeff(0);
  }
  Coeff leading() const { return coeffs_.empty() ? Coeff(0) : coeffs_.back(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == Coeff(1); }

  template <typename T>
  T evaluate(const T& x) const {
    T acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + T(*it);
    return acc;
  }

  /// Exact division by t; the constant term must vanish.
  BasicPolynomial divide_by_variable() const {
    if (coeffs_.empty()) return {};
    if (coeffs_.front() != Coeff(0)) throw std::domain_error("polynomial not divisible by t");
    return BasicPolynomial(std::vector<Coeff>(coeffs_.begin() + 1, coeffs_.end()));
  }

  /// p(q(t)).
  BasicPolynomial compose(const BasicPolynomial& inner) const {
    BasicPolynomial acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * inner + BasicPolynomial(*it);
    return acc;
  }

  BasicPolynomial pow(unsigned exponent) const {
    BasicPolynomial result(Coeff(1));
    BasicPolynomial base = *this;
    while (exponent != 0) {
      if (exponent & 1U) result *= base;
      base *= base;
      exponent >>= 1U;
    }
    return result;
  }

  BasicPolynomial& operator+=(const BasicPolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Coeff(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  BasicPolynomial& operator-=(const BasicPolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Coeff(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  BasicPolynomial& operator*=(const BasicPolynomial& o) {
    *this = *this * o;
    return *this;
  }

  friend BasicPolynomial operator+(BasicPolynomial a, const BasicPolynomial& b) { return a += b; }
  friend BasicPolynomial operator-(BasicPolynomial a, const BasicPolynomial& b) { return a -= b; }
  friend BasicPolynomial operator-(BasicPolynomial a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend BasicPolynomial operator*(const BasicPolynomial& a, const BasicPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Coeff> out(a.coeffs_.size() + b.coeffs_.size() - 1, Coeff(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == Coeff(0)) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return BasicPolynomial(std::move(out));
  }
  friend bool operator==(const BasicPolynomial& a, const BasicPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == Coeff(0)) coeffs_.pop_back();
  }

  std::vector<Coeff> coeffs_;
};

using Polynomial = BasicPolynomial<Rational>;
using RealPolynomial = BasicPolynomial<double>;

/// binom(t, k) = t(t-1)...(t-k+1)/k! as a polynomial in t.
Polynomial binomial_polynomial(unsigned k);

/// Renders in descending powers, e.g. "t^3 - 6t^2 + 11t - 6" or "(1/2)t^2 - (1/2)t".
std::string to_string(const Polynomial& p);

/// Same layout with coefficients at 6 significant digits.
std::string to_string(const RealPolynomial& p);

/// Inverse of to_string(const Polynomial&); also accepts plain rationals.
Polynomial parse_polynomial(std::string_view text);

RealPolynomial to_real(const Polynomial& p);

/// Largest coefficient-wise absolute difference.
double max_abs_difference(const RealPolynomial& a, const RealPolynomial& b);

}  // namespace titskit
