#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>

#include "lassorank/core.hpp"
#include "lassorank/linear_system.hpp"
#include "lassorank/rational.hpp"

namespace lassorank {

// Affine combination of template unknowns: sum weights[u] * u + constant.
struct UnknownComb {
  std::map<Unknown, Rational> weights;
  Rational constant{0};

  void add(const Unknown& u, const Rational& w) {
    if (w == 0) return;
    auto [it, fresh] = weights.try_emplace(u, w);
    if (!fresh) {
      it->second += w;
      if (it->second == 0) weights.erase(it);
    }
  }

  bool zero() const { return weights.empty() && constant == 0; }

  Rational instantiate(const std::map<Unknown, Rational>& assignment) const {
    Rational acc = constant;
    for (const auto& [u, w] : weights) {
      auto it = assignment.find(u);
      if (it == assignment.end())
        throw std::invalid_argument("assignment missing template unknown " + to_string(u));
      acc += w * it->second;
    }
    return acc;
  }

  bool operator==(const UnknownComb&) const = default;
};

// Affine form over program variables whose coefficients are themselves
// affine in the template unknowns.
struct SymbolicAffine {
  std::map<VarRef, UnknownComb> coefficients;
  UnknownComb constant;

  void add(const VarRef& v, const Unknown& u, const Rational& w) {
    auto& comb = coefficients[v];
    comb.add(u, w);
    if (comb.zero()) coefficients.erase(v);
  }

  bool operator==(const SymbolicAffine&) const = default;
};

enum class RhsBound { Zero, Delta };

// lhs(x, x') implies rhs >= bound. The lhs is a closed polyhedron: strict
// rows must be eliminated by preprocessing before templates are built.
struct TemplateImplication {
  Polyhedron lhs;
  SymbolicAffine rhs;
  RhsBound bound = RhsBound::Zero;
};

namespace detail {

inline void require_closed(const Polyhedron& p, const char* what) {
  for (const auto& c : p.constraints)
    if (c.strict())
      throw std::invalid_argument(std::string(what) + " contains a strict row; preprocess first");
}

}  // namespace detail

// The four or-to-plus constraints for ranking function r, r0 and supporting
// invariant s, s0 over the program's variables:
//   1. stem(x, x')            implies  s.x' + s0        >= 0
//   2. loop(x, x')            implies  s.x' - s.x       >= 0
//   3. loop(x, x')            implies  r.x - r.x' - s.x - s0 >= delta
//   4. loop(x, x')            implies  r.x + r0         >= 0
// The disjunctive premise of the underlying decrease/boundedness conditions
// is replaced by the sum in 3, which keeps every coefficient linear in the
// unknowns.
inline std::array<TemplateImplication, 4> build_or_to_plus(const LassoProgram& p) {
  detail::require_closed(p.stem, "stem");
  detail::require_closed(p.loop, "loop");
  std::array<TemplateImplication, 4> out;

  out[0].lhs = p.stem;
  out[0].bound = RhsBound::Zero;
  for (const auto& v : p.program_vars) out[0].rhs.add(primed(v), inv_coeff(v), Rational(1));
  out[0].rhs.constant.add(inv_const(), Rational(1));

  out[1].lhs = p.loop;
  out[1].bound = RhsBound::Zero;
  for (const auto& v : p.program_vars) {
    out[1].rhs.add(primed(v), inv_coeff(v), Rational(1));
    out[1].rhs.add(unprimed(v), inv_coeff(v), Rational(-1));
  }

  out[2].lhs = p.loop;
  out[2].bound = RhsBound::Delta;
  for (const auto& v : p.program_vars) {
    out[2].rhs.add(unprimed(v), rank_coeff(v), Rational(1));
    out[2].rhs.add(unprimed(v), inv_coeff(v), Rational(-1));
    out[2].rhs.add(primed(v), rank_coeff(v), Rational(-1));
  }
  out[2].rhs.constant.add(inv_const(), Rational(-1));

  out[3].lhs = p.loop;
  out[3].bound = RhsBound::Zero;
  for (const auto& v : p.program_vars) out[3].rhs.add(unprimed(v), rank_coeff(v), Rational(1));
  out[3].rhs.constant.add(rank_const(), Rational(1));

  return out;
}

// Ground implication lhs(x, x') implies rhs >= 0.
struct GroundImplication {
  Polyhedron lhs;
  AffineTerm rhs;
};

inline std::map<Unknown, Rational> template_assignment(const std::vector<std::string>& program_vars,
                                                       const RankingFunction& f,
                                                       const SupportingInvariant& inv) {
  std::map<Unknown, Rational> a;
  for (const auto& v : program_vars) {
    a.emplace(rank_coeff(v), f.coeff(v));
    a.emplace(inv_coeff(v), inv.coeff(v));
  }
  a.emplace(rank_const(), f.constant);
  a.emplace(inv_const(), inv.constant);
  return a;
}

inline AffineTerm instantiate(const SymbolicAffine& s, const std::map<Unknown, Rational>& assignment) {
  AffineTerm t;
  for (const auto& [v, comb] : s.coefficients) t.add(v, comb.instantiate(assignment));
  t.constant = s.constant.instantiate(assignment);
  return t;
}

// Grounds the four or-to-plus templates at a concrete candidate, folding the
// delta bound of constraint 3 into the rhs (rhs >= 0 form).
inline std::array<GroundImplication, 4> instantiate_or_to_plus(const LassoProgram& p,
                                                               const RankingFunction& f,
                                                               const SupportingInvariant& inv,
                                                               const Rational& delta) {
  if (delta <= 0) throw std::invalid_argument("delta must be positive");
  auto templates = build_or_to_plus(p);
  auto assignment = template_assignment(p.program_vars, f, inv);
  std::array<GroundImplication, 4> out;
  for (std::size_t i = 0; i < 4; ++i) {
    out[i].lhs = templates[i].lhs;
    out[i].rhs = instantiate(templates[i].rhs, assignment);
    if (templates[i].bound == RhsBound::Delta) out[i].rhs.constant -= delta;
  }
  return out;
}

// The four ranking conditions at a concrete candidate, with the invariant as
// an extra premise row on the loop:
//   1. stem(x, x')                     implies  s.x' + s0 >= 0
//   2. I(x) and loop(x, x')            implies  s.x' + s0 >= 0
//   3. I(x) and loop(x, x')            implies  f(x) - f(x') >= delta
//   4. I(x) and loop(x, x')            implies  f(x) >= 0
inline std::array<GroundImplication, 4> build_bms_ground(const LassoProgram& p,
                                                         const RankingFunction& f,
                                                         const SupportingInvariant& inv,
                                                         const Rational& delta) {
  if (delta <= 0) throw std::invalid_argument("delta must be positive");
  Polyhedron loop_inv = p.loop;
  loop_inv.constraints.push_back(inv.as_constraint());

  AffineTerm inv_next;  // s.x' + s0
  for (const auto& [name, c] : inv.coefficients) inv_next.add(primed(name), c);
  inv_next.constant = inv.constant;

  AffineTerm decrease;  // f(x) - f(x') - delta
  for (const auto& [name, c] : f.coefficients) {
    decrease.add(unprimed(name), c);
    decrease.add(primed(name), -c);
  }
  decrease.constant = -delta;

  AffineTerm bounded;  // f(x) + r0
  for (const auto& [name, c] : f.coefficients) bounded.add(unprimed(name), c);
  bounded.constant = f.constant;

  std::array<GroundImplication, 4> out;
  out[0] = {p.stem, inv_next};
  out[1] = {loop_inv, inv_next};
  out[2] = {loop_inv, decrease};
  out[3] = {loop_inv, bounded};
  return out;
}

}  // namespace lassorank
