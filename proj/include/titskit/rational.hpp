#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace titskit {

/// Exact rational scalar. Expression templates are off so `auto` behaves.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

using RationalVector = std::vector<Rational>;

/// Parses "p", "-p" or "p/q". Throws ParseError on malformed text or q = 0.
Rational parse_rational(std::string_view text);

/// Formats as "p" when integral, "p/q" otherwise.
std::string to_string(const Rational& value);

Rational dot(const RationalVector& a, const RationalVector& b);

int sign(const Rational& value);

}  // namespace titskit
