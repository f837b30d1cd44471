#include "titskit/polynomial.hpp"

#include "titskit/errors.hpp"

#include <cctype>

namespace titskit {

namespace {

std::string power_suffix(std::size_t power) {
  if (power == 0) return "";
  if (power == 1) return "t";
  return "t^" + std::to_string(power);
}

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

template <typename Coeff, typename Format>
std::string render(const BasicPolynomial<Coeff>& p, Format format_abs) {
  if (p.is_zero()) return "0";
  std::string out;
  const auto& c = p.coefficients();
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == Coeff(0)) continue;
    const bool negative = c[i] < Coeff(0);
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    const Coeff magnitude = negative ? Coeff(-c[i]) : c[i];
    if (i == 0 || magnitude != Coeff(1)) out += format_abs(magnitude, i > 0);
    out += power_suffix(i);
  }
  return out;
}

class PolynomialParser {
 public:
  explicit PolynomialParser(std::string_view text) : text_(text) {}

  Polynomial parse() {
    Polynomial result;
    skip_space();
    bool first = true;
    while (pos_ < text_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_space();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      result += Polynomial(Rational(sign)) * term();
      first = false;
      skip_space();
    }
    if (first) fail("empty polynomial");
    return result;
  }

 private:
  Polynomial term() {
    Rational coeff = 1;
    bool have_coeff = false;
    if (peek() == '(') {
      ++pos_;
      const auto close = text_.find(')', pos_);
      if (close == std::string_view::npos) fail("unbalanced '('");
      coeff = parse_rational(text_.substr(pos_, close - pos_));
      pos_ = close + 1;
      have_coeff = true;
    } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/')) {
        ++pos_;
      }
      coeff = parse_rational(text_.substr(start, pos_ - start));
      have_coeff = true;
    }
    skip_space();
    if (peek() == '*') {
      ++pos_;
      skip_space();
    }
    if (peek() != 't') {
      if (!have_coeff) fail("expected coefficient or 't'");
      return Polynomial(coeff);
    }
    ++pos_;
    std::size_t power = 1;
    if (peek() == '^') {
      ++pos_;
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      power = std::stoul(std::string(text_.substr(start, pos_ - start)));
    }
    return Polynomial::monomial(coeff, power);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial '" + std::string(text_) + "': " + what + " at offset " +
                     std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial binomial_polynomial(unsigned k) {
  Polynomial result(Rational(1));
  Rational factorial = 1;
  for (unsigned i = 0; i < k; ++i) {
    result *= Polynomial(std::vector<Rational>{Rational(-static_cast<long>(i)), Rational(1)});
    factorial *= i + 1;
  }
  return result * Polynomial(Rational(1) / factorial);
}

std::string to_string(const Polynomial& p) {
  return render(p, [](const Rational& c, bool has_power) {
    const std::string s = to_string(c);
    if (has_power && denominator(c) != 1) return "(" + s + ")";
    return s;
  });
}

std::string to_string(const RealPolynomial& p) {
  return render(p, [](double c, bool has_power) { return has_power ? format_real(c) + "*" : format_real(c); });
}

Polynomial parse_polynomial(std::string_view text) { return PolynomialParser(text).parse(); }

RealPolynomial to_real(const Polynomial& p) {
  std::vector<double> c;
  c.reserve(p.coefficients().size());
  for (const auto& x : p.coefficients()) c.push_back(x.convert_to<double>());
  return RealPolynomial(std::move(c));
}

double max_abs_difference(const RealPolynomial& a, const RealPolynomial& b) {
  const std::size_t n = std::max(a.coefficients().size(), b.coefficients().size());
  double worst = 0;
  for (std::size_t i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(a.coefficient(i) - b.coefficient(i)));
  }
  return worst;
}

}  // namespace titskit
