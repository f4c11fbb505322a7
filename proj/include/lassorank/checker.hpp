#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lassorank/core.hpp"
#include "lassorank/farkas.hpp"
#include "lassorank/linear_system.hpp"
#include "lassorank/lp.hpp"
#include "lassorank/rational.hpp"
#include "lassorank/transform.hpp"

namespace lassorank {

// Validity by refutation: lhs implies rhs >= 0 iff lhs and rhs < 0 has no
// solution over the rationals.
inline bool implication_valid(const Polyhedron& lhs, const AffineTerm& rhs) {
  LinearSystem sys = system_from_polyhedron(lhs);
  LinearConstraint neg;
  neg.cmp = Cmp::LT;
  for (const auto& [v, c] : rhs.coefficients) {
    sys.declare(var_unknown(v));
    neg.add(var_unknown(v), c);
  }
  neg.rhs = -rhs.constant;
  sys.constraints.push_back(std::move(neg));
  return !feasible(sys).satisfiable;
}

inline bool implication_valid(const GroundImplication& g) { return implication_valid(g.lhs, g.rhs); }

// The four ranking conditions at a concrete candidate.
inline std::array<bool, 4> verify_bms(const LassoProgram& p, const RankingFunction& f,
                                      const SupportingInvariant& inv, const Rational& delta) {
  auto ground = build_bms_ground(p, f, inv, delta);
  std::array<bool, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) out[i] = implication_valid(ground[i]);
  return out;
}

// Ground or-to-plus conditions; stronger than the BMS conditions.
inline std::array<bool, 4> verify_or_to_plus(const LassoProgram& p, const RankingFunction& f,
                                             const SupportingInvariant& inv, const Rational& delta) {
  auto ground = instantiate_or_to_plus(p, f, inv, delta);
  std::array<bool, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) out[i] = implication_valid(ground[i]);
  return out;
}

// loop(x, x') implies s.x' >= s.x: the invariant value never drops along the
// loop, independently of where it starts.
inline bool verify_nondecreasing(const LassoProgram& p, const SupportingInvariant& inv) {
  AffineTerm diff;
  for (const auto& [name, c] : inv.coefficients) {
    diff.add(primed(name), c);
    diff.add(unprimed(name), -c);
  }
  return implication_valid(p.loop, diff);
}

// Pure arithmetic check that lambda witnesses one implication: lambda >= 0,
// lambda^T A equals the negated rhs coefficients, lambda^T b is at most the
// rhs constant minus the bound. No solver involved.
inline bool verify_certificate(const TemplateImplication& t,
                               const std::map<Unknown, Rational>& assignment,
                               const Rational& delta, const FarkasCertificate& cert) {
  MatrixForm m = to_matrix(t.lhs);
  if (cert.lambda.size() != m.rows()) return false;
  for (const auto& l : cert.lambda)
    if (l < 0) return false;
  for (std::size_t j = 0; j < t.lhs.variables.size(); ++j) {
    Rational acc{0};
    for (std::size_t i = 0; i < m.rows(); ++i) acc += cert.lambda[i] * m.a[i][j];
    Rational target{0};
    auto it = t.rhs.coefficients.find(t.lhs.variables[j]);
    if (it != t.rhs.coefficients.end()) target = -it->second.instantiate(assignment);
    if (acc != target) return false;
  }
  Rational lhs_bound{0};
  for (std::size_t i = 0; i < m.rows(); ++i) lhs_bound += cert.lambda[i] * m.b[i];
  Rational rhs_bound = t.rhs.constant.instantiate(assignment);
  if (t.bound == RhsBound::Delta) rhs_bound -= delta;
  return lhs_bound <= rhs_bound;
}

// Checks all four certificates of a synthesis result against the program the
// result was computed for (after preprocessing).
inline std::array<bool, 4> verify_certificates(const LassoProgram& p, const Success& res) {
  auto templates = build_or_to_plus(p);
  auto assignment = template_assignment(p.program_vars, res.ranking, res.invariant);
  std::array<bool, 4> out{};
  for (std::size_t i = 0; i < 4; ++i)
    out[i] = verify_certificate(templates[i], assignment, res.delta, res.certificates[i]);
  return out;
}

struct CheckReport {
  std::array<bool, 4> bms{};
  bool nondecreasing = false;
  std::optional<std::array<bool, 4>> certificates;
  bool overall = false;  // conjunction of the four ranking-condition verdicts
};

inline CheckReport run_checks(const LassoProgram& p, const RankingFunction& f,
                              const SupportingInvariant& inv, const Rational& delta,
                              const std::optional<Success>& with_certificates = std::nullopt) {
  CheckReport r;
  r.bms = verify_bms(p, f, inv, delta);
  r.nondecreasing = verify_nondecreasing(p, inv);
  if (with_certificates) r.certificates = verify_certificates(p, *with_certificates);
  r.overall = r.bms[0] && r.bms[1] && r.bms[2] && r.bms[3];
  return r;
}

// One affine form over the columns of a matrix polyhedron.
struct LinearForm {
  std::vector<Rational> coeffs;
  Rational constant{0};
};

// Weighted-sum witness for replacing a disjunction by a sum: for a nonempty
// polyhedron A x <= b, some mu >= 0 makes
//   A x <= b  implies  g(x) + mu * h(x) >= 0
// valid iff mu, lambda >= 0 exist with mu h + lambda^T A = -g
// (coefficientwise) and lambda^T b - mu h0 <= g0; the lambda part is the
// certificate of the conclusion. Returns such a mu, or nothing when the
// multiplier system is unsatisfiable (equivalently, when the premise does
// not even imply the disjunction g(x) >= 0 or h(x) > 0).
inline std::optional<Rational> disjunction_mu_search(const MatrixForm& p, const LinearForm& g,
                                                     const LinearForm& h) {
  std::size_t cols = g.coeffs.size();
  if (h.coeffs.size() != cols) throw std::invalid_argument("disjunction_mu_search: column mismatch");
  for (const auto& row : p.a)
    if (row.size() != cols) throw std::invalid_argument("disjunction_mu_search: column mismatch");

  LinearSystem sys;
  Unknown mu = multiplier(0, 0);
  sys.declare_nonnegative(mu);
  for (std::size_t i = 0; i < p.rows(); ++i) sys.declare_nonnegative(multiplier(1, static_cast<int>(i)));

  for (std::size_t j = 0; j < cols; ++j) {
    LinearConstraint eq;
    eq.cmp = Cmp::EQ;
    eq.add(mu, h.coeffs[j]);
    for (std::size_t i = 0; i < p.rows(); ++i) eq.add(multiplier(1, static_cast<int>(i)), p.a[i][j]);
    eq.rhs = -g.coeffs[j];
    sys.constraints.push_back(std::move(eq));
  }
  LinearConstraint bound;
  bound.cmp = Cmp::LEQ;
  bound.add(mu, -h.constant);
  for (std::size_t i = 0; i < p.rows(); ++i) bound.add(multiplier(1, static_cast<int>(i)), p.b[i]);
  bound.rhs = g.constant;
  sys.constraints.push_back(std::move(bound));

  auto out = feasible(sys);
  if (!out.satisfiable) return std::nullopt;
  return out.witness.at(mu);
}

}  // namespace lassorank
