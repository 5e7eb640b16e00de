#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

#include "wdcond/error.hpp"

namespace wdcond {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline std::int64_t to_int64(const Rational& q) {
  require(is_integer(q), ErrorKind::non_rational, "expected an integer, got " + q.str());
  return numerator(q).convert_to<std::int64_t>();
}

/// Always "numerator/denominator", also for integers.
inline std::string to_fraction_string(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

/// Human form: "5/2", "-3", "0".
inline std::string to_display_string(const Rational& q) {
  if (is_integer(q)) return numerator(q).str();
  return to_fraction_string(q);
}

/// Accepts "n", "n/d" with optional sign on n; d must be nonzero.
inline Rational parse_rational(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!num.empty() && num.front() == '+') num.remove_prefix(1);
  require(is_int(num) && is_int(den) && den.front() != '-' && den.front() != '+',
          ErrorKind::input_error, "malformed rational '" + std::string(text) + "'");
  const BigInt n{std::string(num)};
  const BigInt d{std::string(den)};
  require(d != 0, ErrorKind::input_error, "zero denominator in '" + std::string(text) + "'");
  return Rational(n, d);
}

}  // namespace wdcond
