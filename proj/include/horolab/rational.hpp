#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace horolab {

using Rational = boost::rational<std::int64_t>;

// Parses "3", "-1.305", "7/4" exactly. Throws Error(domain) on malformed input.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline double to_double(const Rational& q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

}  // namespace horolab
