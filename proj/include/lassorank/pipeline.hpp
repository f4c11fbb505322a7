#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "lassorank/checker.hpp"
#include "lassorank/core.hpp"
#include "lassorank/farkas.hpp"
#include "lassorank/intprep.hpp"
#include "lassorank/linear_system.hpp"
#include "lassorank/lp.hpp"
#include "lassorank/rational.hpp"
#include "lassorank/transform.hpp"

namespace lassorank {

enum class TightenMode { Gcd, None };

struct AnalysisConfig {
  std::optional<Domain> domain_override;
  TightenMode int_tighten = TightenMode::Gcd;
  bool self_check = true;
  FarkasOptions farkas;
};

// raw keeps the parsed rows (strict rows intact) for the semantic queries;
// program carries the closed rows the synthesis and checker run on.
struct PreparedProgram {
  LassoProgram raw;
  LassoProgram program;
  Domain effective_domain = Domain::Real;
};

namespace detail {

inline Polyhedron relax_strict(const Polyhedron& p) {
  Polyhedron out;
  out.variables = p.variables;
  for (const auto& con : p.constraints)
    out.constraints.push_back(Constraint{con.term, Relation::LEQ});
  return out;
}

}  // namespace detail

inline PreparedProgram prepare(LassoProgram parsed, const AnalysisConfig& cfg = {}) {
  PreparedProgram out;
  out.effective_domain = cfg.domain_override.value_or(parsed.domain);
  parsed.domain = out.effective_domain;
  out.raw = parsed;
  out.program = std::move(parsed);
  if (out.effective_domain == Domain::Int) {
    out.program.stem = strict_to_nonstrict_int(out.program.stem);
    out.program.loop = strict_to_nonstrict_int(out.program.loop);
    if (cfg.int_tighten == TightenMode::Gcd) {
      out.program.stem = gcd_tighten(out.program.stem);
      out.program.loop = gcd_tighten(out.program.loop);
    }
    // The tightened rows are integer-equivalent to the parsed ones, so they
    // also replace the raw view for the semantic queries.
    out.raw = out.program;
  } else {
    out.program.stem = detail::relax_strict(out.program.stem);
    out.program.loop = detail::relax_strict(out.program.loop);
  }
  return out;
}

// stem(x, x') composed with loop(x', x''): some state reached by the stem
// can take a first loop step.
inline bool check_precondition(const LassoProgram& p) {
  LinearSystem sys;
  for (const auto& n : p.program_vars)
    for (int bank = 0; bank <= 2; ++bank) sys.declare(var_unknown(n, bank));

  auto emit = [&](const Polyhedron& poly, int unprimed_bank) {
    for (const auto& con : poly.constraints) {
      LinearConstraint lc;
      lc.cmp = con.strict() ? Cmp::LT : Cmp::LEQ;
      for (const auto& [v, c] : con.term.coefficients)
        lc.add(var_unknown(v.name, unprimed_bank + (v.primed ? 1 : 0)), c);
      lc.rhs = -con.term.constant;
      sys.constraints.push_back(std::move(lc));
    }
  };
  emit(p.stem, 0);
  emit(p.loop, 1);
  return feasible(sys).satisfiable;
}

namespace detail {

inline Success extract_success(const LassoProgram& p, const std::map<Unknown, Rational>& witness,
                               const FarkasOptions& opt) {
  Success s;
  auto value = [&](const Unknown& u) {
    auto it = witness.find(u);
    return it == witness.end() ? Rational(0) : it->second;
  };
  for (const auto& v : p.program_vars) {
    s.ranking.coefficients[v] = value(rank_coeff(v));
    s.invariant.coefficients[v] = value(inv_coeff(v));
  }
  s.ranking.constant = value(rank_const());
  s.invariant.constant = value(inv_const());
  s.delta = opt.delta_mode == DeltaMode::FixedOne ? Rational(1) : value(delta_unknown());
  std::size_t sizes[4] = {p.stem.constraints.size(), p.loop.constraints.size(),
                          p.loop.constraints.size(), p.loop.constraints.size()};
  for (int b = 0; b < 4; ++b)
    for (std::size_t i = 0; i < sizes[b]; ++i)
      s.certificates[static_cast<std::size_t>(b)].lambda.push_back(
          value(multiplier(b + 1, static_cast<int>(i))));
  return s;
}

}  // namespace detail

// The full synthesis pipeline. Returns, in order of precedence:
//   - vacuous Success when the stem or the loop alone has no solution,
//   - PreconditionViolated when both are solvable but cannot be chained,
//   - Infeasible when the multiplier system has no solution,
//   - Success with the extracted ranking function, supporting invariant,
//     and one multiplier certificate per template implication.
inline SynthesisResult analyze(const LassoProgram& parsed, const AnalysisConfig& cfg = {}) {
  PreparedProgram prep = prepare(parsed, cfg);

  bool stem_sat = polyhedron_feasible(prep.raw.stem);
  bool loop_sat = polyhedron_feasible(prep.raw.loop);
  if (!stem_sat || !loop_sat) {
    Success vac;
    for (const auto& v : prep.program.program_vars) {
      vac.ranking.coefficients[v] = 0;
      vac.invariant.coefficients[v] = 0;
    }
    vac.vacuous = true;
    return vac;
  }
  if (!check_precondition(prep.raw)) return PreconditionViolated{};

  LinearSystem sys = assemble_system(prep.program, cfg.farkas);
  FeasibilityOutcome out = feasible(sys);
  if (!out.satisfiable) return Infeasible{};

  Success s = detail::extract_success(prep.program, out.witness, cfg.farkas);
  if (cfg.self_check) {
    auto certs = verify_certificates(prep.program, s);
    auto bms = verify_bms(prep.program, s.ranking, s.invariant, s.delta);
    for (int i = 0; i < 4; ++i)
      if (!certs[static_cast<std::size_t>(i)] || !bms[static_cast<std::size_t>(i)])
        throw std::logic_error("self-check failed on synthesized argument");
  }
  return s;
}

}  // namespace lassorank
