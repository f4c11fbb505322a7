#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "lassorank/core.hpp"
#include "lassorank/linear_system.hpp"
#include "lassorank/lp.hpp"
#include "lassorank/rational.hpp"
#include "lassorank/transform.hpp"

namespace lassorank {

// Raised when an implication premise is unsatisfiable: the multiplier
// encoding of `A x <= b implies c.x <= d` is only equivalent to validity
// when A x <= b has a solution.
class FarkasPreconditionError : public std::runtime_error {
 public:
  explicit FarkasPreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

// FixedOne pins the decrease bound to 1; any solution with some positive
// delta scales to one with delta = 1, so this loses no completeness.
// FreeLowerBounded keeps delta as an unknown with delta >= delta_min.
enum class DeltaMode { FixedOne, FreeLowerBounded };

struct FarkasOptions {
  DeltaMode delta_mode = DeltaMode::FixedOne;
  Rational delta_min = make_rational(1, 1000);
};

namespace detail {

// Emits the multiplier encoding of one template implication into sys.
// For lhs rows A x <= b and rhs e(x) >= bound, validity over a nonempty lhs
// is equivalent to: exists lambda >= 0 with lambda^T A = -coeffs(e) and
// lambda^T b <= const(e) - bound, coefficientwise in the template unknowns.
inline void emit_farkas_block(LinearSystem& sys, const TemplateImplication& t, int block,
                              const FarkasOptions& opt) {
  require_closed(t.lhs, "implication lhs");
  MatrixForm m = to_matrix(t.lhs);

  for (const auto& [v, comb] : t.rhs.coefficients)
    for (const auto& [u, w] : comb.weights) sys.declare(u);
  for (const auto& [u, w] : t.rhs.constant.weights) sys.declare(u);
  for (std::size_t i = 0; i < m.rows(); ++i) sys.declare_nonnegative(multiplier(block, static_cast<int>(i)));

  for (std::size_t j = 0; j < t.lhs.variables.size(); ++j) {
    const VarRef& v = t.lhs.variables[j];
    LinearConstraint eq;
    eq.cmp = Cmp::EQ;
    for (std::size_t i = 0; i < m.rows(); ++i) eq.add(multiplier(block, static_cast<int>(i)), m.a[i][j]);
    auto it = t.rhs.coefficients.find(v);
    if (it != t.rhs.coefficients.end()) {
      for (const auto& [u, w] : it->second.weights) eq.add(u, w);
      eq.rhs = -it->second.constant;
    }
    sys.constraints.push_back(std::move(eq));
  }

  LinearConstraint bound;
  bound.cmp = Cmp::LEQ;
  for (std::size_t i = 0; i < m.rows(); ++i) bound.add(multiplier(block, static_cast<int>(i)), m.b[i]);
  for (const auto& [u, w] : t.rhs.constant.weights) bound.add(u, -w);
  bound.rhs = t.rhs.constant.constant;
  if (t.bound == RhsBound::Delta) {
    if (opt.delta_mode == DeltaMode::FixedOne) {
      bound.rhs -= 1;
    } else {
      sys.declare(delta_unknown());
      bound.add(delta_unknown(), Rational(1));
      LinearConstraint lower;  // delta >= delta_min
      lower.cmp = Cmp::LEQ;
      lower.add(delta_unknown(), Rational(-1));
      lower.rhs = -opt.delta_min;
      sys.constraints.push_back(std::move(lower));
    }
  }
  sys.constraints.push_back(std::move(bound));
}

}  // namespace detail

// Quantifier elimination for one implication. Throws FarkasPreconditionError
// when the premise is unsatisfiable.
inline LinearSystem apply_farkas(const TemplateImplication& t, int block,
                                 const FarkasOptions& opt = {}) {
  if (!polyhedron_feasible(t.lhs))
    throw FarkasPreconditionError("implication premise is unsatisfiable; Farkas encoding would be incomplete");
  LinearSystem sys;
  detail::emit_farkas_block(sys, t, block, opt);
  return sys;
}

// The full synthesis system for a preprocessed program: the four or-to-plus
// templates, each run through apply_farkas, sharing the template unknowns.
// Unknown order: r coefficients, r0, s coefficients, s0, [delta], then
// multipliers block by block.
inline LinearSystem assemble_system(const LassoProgram& p, const FarkasOptions& opt = {}) {
  if (!polyhedron_feasible(p.stem))
    throw FarkasPreconditionError("stem is unsatisfiable; Farkas encoding would be incomplete");
  if (!polyhedron_feasible(p.loop))
    throw FarkasPreconditionError("loop is unsatisfiable; Farkas encoding would be incomplete");

  LinearSystem sys;
  for (const auto& v : p.program_vars) sys.declare(rank_coeff(v));
  sys.declare(rank_const());
  for (const auto& v : p.program_vars) sys.declare(inv_coeff(v));
  sys.declare(inv_const());
  if (opt.delta_mode == DeltaMode::FreeLowerBounded) sys.declare(delta_unknown());

  auto templates = build_or_to_plus(p);
  for (std::size_t i = 0; i < 4; ++i)
    detail::emit_farkas_block(sys, templates[i], static_cast<int>(i) + 1, opt);
  return sys;
}

}  // namespace lassorank
