#pragma once

#include <stdexcept>

#include "lassorank/core.hpp"
#include "lassorank/rational.hpp"

namespace lassorank {

namespace detail {

// Positive integer multiplier that clears every denominator in the row,
// constant included.
inline BigInt integer_scale(const AffineTerm& t) {
  BigInt l = denominator(t.constant);
  for (const auto& [v, c] : t.coefficients) l = lcm(l, denominator(c));
  return l;
}

}  // namespace detail

// Over the integers t < 0 with integral t is t + 1 <= 0. Each row is scaled
// to integer coefficients first, so the output polyhedron has the same
// integer points and no strict rows.
inline Polyhedron strict_to_nonstrict_int(const Polyhedron& p) {
  Polyhedron out;
  out.variables = p.variables;
  for (const auto& con : p.constraints) {
    AffineTerm t = con.term.scaled(Rational(detail::integer_scale(con.term)));
    if (con.strict()) t.constant += 1;
    out.constraints.push_back(Constraint::make(std::move(t), Relation::LEQ));
  }
  return out;
}

// One rounding pass per row: with integer coefficients a and integer bound b,
// a.x <= b has the same integer points as (a/g).x <= floor(b/g) for
// g = gcd of the coefficients. Rows without variables are kept unchanged.
// Idempotent; requires a strict-free input.
inline Polyhedron gcd_tighten(const Polyhedron& p) {
  Polyhedron out;
  out.variables = p.variables;
  for (const auto& con : p.constraints) {
    if (con.strict())
      throw std::invalid_argument("gcd_tighten requires non-strict rows; run strict_to_nonstrict_int first");
    if (con.term.coefficients.empty()) {
      out.constraints.push_back(con);
      continue;
    }
    AffineTerm t = con.term.scaled(Rational(detail::integer_scale(con.term)));
    BigInt g = 0;
    for (const auto& [v, c] : t.coefficients) g = gcd(g, abs(numerator(c)));
    BigInt bound = -numerator(t.constant);  // t = a.x + k <= 0, so a.x <= -k
    AffineTerm tightened;
    for (const auto& [v, c] : t.coefficients) tightened.add(v, Rational(numerator(c) / g));
    tightened.constant = -Rational(floor_div(bound, g));
    out.constraints.push_back(Constraint::make(std::move(tightened), Relation::LEQ));
  }
  return out;
}

}  // namespace lassorank
