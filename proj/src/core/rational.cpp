#include "horolab/rational.hpp"

#include "horolab/error.hpp"

#include <cctype>
#include <limits>

namespace horolab {

namespace {

std::int64_t parse_digits(std::string_view digits, std::string_view whole) {
  if (digits.empty()) raise(ErrorCode::domain, "malformed number '" + std::string(whole) + "'");
  std::int64_t v = 0;
  for (char ch : digits) {
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      raise(ErrorCode::domain, "malformed number '" + std::string(whole) + "'");
    if (v > (std::numeric_limits<std::int64_t>::max() - 9) / 10)
      raise(ErrorCode::capacity, "number too long for exact arithmetic: " + std::string(whole));
    v = v * 10 + (ch - '0');
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Rational parse_decimal(std::string_view text, std::string_view whole) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  const auto dot = text.find('.');
  std::string_view ip = text.substr(0, dot);
  std::string_view fp = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (ip.empty() && fp.empty())
    raise(ErrorCode::domain, "malformed number '" + std::string(whole) + "'");
  const std::int64_t i = ip.empty() ? 0 : parse_digits(ip, whole);
  Rational q(i);
  if (!fp.empty()) {
    if (fp.size() > 17) raise(ErrorCode::capacity, "too many decimals: " + std::string(whole));
    std::int64_t den = 1;
    for (std::size_t k = 0; k < fp.size(); ++k) den *= 10;
    q += Rational(parse_digits(fp, whole), den);
  }
  return negative ? -q : q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = trim(text);
  const auto slash = whole.find('/');
  if (slash == std::string_view::npos) return parse_decimal(whole, whole);
  const Rational num = parse_decimal(trim(whole.substr(0, slash)), whole);
  const Rational den = parse_decimal(trim(whole.substr(slash + 1)), whole);
  if (den.numerator() == 0) raise(ErrorCode::domain, "zero denominator in '" + std::string(whole) + "'");
  return num / den;
}

std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

}  // namespace horolab
