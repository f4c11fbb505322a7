#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace lassorank {

// Exact arbitrary-precision arithmetic. Rationals are kept canonical by the
// backend: coprime numerator/denominator, denominator > 0.
namespace mp = boost::multiprecision;
using BigInt = mp::number<mp::cpp_int_backend<>, mp::et_off>;
using Rational = mp::number<mp::rational_adaptor<mp::cpp_int_backend<>>, mp::et_off>;

// Builds num/den in canonical form; den may be negative. Throws on den == 0.
inline Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::overflow_error("rational with zero denominator");
  return Rational(num) / Rational(den);
}

// Always emits "p/q", q > 0, including integral values ("7/1").
inline std::string to_fraction_string(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

// Accepts "p" or "p/q" with optional sign on p; q must be a positive or
// negative nonzero integer literal (sign allowed).
inline Rational rational_from_string(const std::string& text) {
  auto parse_int = [](const std::string& s) -> BigInt {
    if (s.empty()) throw std::invalid_argument("empty integer in rational literal");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("sign without digits in rational literal");
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9')
        throw std::invalid_argument("bad character in rational literal: " + s);
    // cpp_int's string constructor rejects a leading '+'.
    return BigInt(s[0] == '+' ? s.substr(1) : s);
  };
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  return make_rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

// floor(a/b) for b > 0.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  if (b <= 0) throw std::invalid_argument("floor_div requires positive divisor");
  BigInt q = a / b;       // truncates toward zero
  if (a % b != 0 && a < 0) --q;
  return q;
}

inline BigInt floor_rational(const Rational& q) {
  return floor_div(numerator(q), denominator(q));
}

}  // namespace lassorank
