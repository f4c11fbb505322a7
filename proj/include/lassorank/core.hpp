#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lassorank/rational.hpp"

namespace lassorank {

// A program variable occurrence: x (current state) or x' (next state).
struct VarRef {
  std::string name;
  bool primed = false;
  auto operator<=>(const VarRef&) const = default;
};

inline VarRef unprimed(std::string name) { return {std::move(name), false}; }
inline VarRef primed(std::string name) { return {std::move(name), true}; }

inline std::string to_string(const VarRef& v) { return v.primed ? v.name + "'" : v.name; }

// Sparse affine expression over program variables. Zero coefficients are
// never stored.
struct AffineTerm {
  std::map<VarRef, Rational> coefficients;
  Rational constant{0};

  void add(const VarRef& v, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = coefficients.try_emplace(v, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) coefficients.erase(it);
    }
  }

  Rational coeff(const VarRef& v) const {
    auto it = coefficients.find(v);
    return it == coefficients.end() ? Rational(0) : it->second;
  }

  AffineTerm& operator+=(const AffineTerm& o) {
    for (const auto& [v, c] : o.coefficients) add(v, c);
    constant += o.constant;
    return *this;
  }

  AffineTerm scaled(const Rational& k) const {
    AffineTerm r;
    if (k == 0) return r;
    for (const auto& [v, c] : coefficients) r.coefficients.emplace(v, c * k);
    r.constant = constant * k;
    return r;
  }

  AffineTerm operator-() const { return scaled(Rational(-1)); }

  Rational evaluate(const std::map<VarRef, Rational>& assignment) const {
    Rational acc = constant;
    for (const auto& [v, c] : coefficients) {
      auto it = assignment.find(v);
      if (it == assignment.end()) throw std::invalid_argument("unassigned variable " + to_string(v));
      acc += c * it->second;
    }
    return acc;
  }

  bool operator==(const AffineTerm&) const = default;
};

inline AffineTerm operator+(AffineTerm a, const AffineTerm& b) { return a += b; }
inline AffineTerm operator-(AffineTerm a, const AffineTerm& b) { return a += -b; }

enum class Relation { LEQ, LT };  // term <= 0, term < 0

// One constraint `term REL 0`, stored at a canonical scale: the variable
// coefficients are coprime integers (positive scaling only, so the relation
// and solution set are untouched). Rows without variables keep their
// constant as written.
struct Constraint {
  AffineTerm term;
  Relation relation = Relation::LEQ;

  static Constraint make(AffineTerm t, Relation rel) {
    if (!t.coefficients.empty()) {
      BigInt lcm_den = 1;
      for (const auto& [v, c] : t.coefficients) lcm_den = lcm(lcm_den, denominator(c));
      BigInt gcd_num = 0;
      for (const auto& [v, c] : t.coefficients) gcd_num = gcd(gcd_num, abs(numerator(c) * (lcm_den / denominator(c))));
      t = t.scaled(make_rational(lcm_den, gcd_num));
    }
    return Constraint{std::move(t), rel};
  }

  bool strict() const { return relation == Relation::LT; }
  bool operator==(const Constraint&) const = default;
};

// Conjunction of constraints over a fixed, ordered variable list.
struct Polyhedron {
  std::vector<VarRef> variables;
  std::vector<Constraint> constraints;

  bool operator==(const Polyhedron&) const = default;
};

// Dense row form A x <= b; strict[i] marks rows meaning A_i x < b_i.
struct MatrixForm {
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  std::vector<bool> strict;

  std::size_t rows() const { return a.size(); }
};

inline MatrixForm to_matrix(const Polyhedron& p) {
  MatrixForm m;
  for (const auto& con : p.constraints) {
    std::vector<Rational> row(p.variables.size(), Rational(0));
    for (const auto& [v, c] : con.term.coefficients) {
      auto it = std::find(p.variables.begin(), p.variables.end(), v);
      if (it == p.variables.end())
        throw std::invalid_argument("constraint mentions undeclared variable " + to_string(v));
      row[static_cast<std::size_t>(it - p.variables.begin())] = c;
    }
    m.a.push_back(std::move(row));
    m.b.push_back(-con.term.constant);
    m.strict.push_back(con.strict());
  }
  return m;
}

inline Polyhedron from_matrix(std::vector<VarRef> variables, const MatrixForm& m) {
  Polyhedron p;
  p.variables = std::move(variables);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m.a[i].size() != p.variables.size()) throw std::invalid_argument("matrix row width mismatch");
    AffineTerm t;
    for (std::size_t j = 0; j < p.variables.size(); ++j) t.add(p.variables[j], m.a[i][j]);
    t.constant = -m.b[i];
    p.constraints.push_back(Constraint::make(std::move(t), m.strict[i] ? Relation::LT : Relation::LEQ));
  }
  return p;
}

enum class Domain { Real, Int };

// Transition-system view of a lasso: stem relates x to x', loop relates x to
// x'. Both polyhedra range over the unprimed bank followed by the primed
// bank, in declaration order.
struct LassoProgram {
  std::vector<std::string> program_vars;
  Polyhedron stem;
  Polyhedron loop;
  Domain domain = Domain::Real;

  bool operator==(const LassoProgram&) const = default;
};

inline std::vector<VarRef> transition_vars(const std::vector<std::string>& program_vars) {
  std::vector<VarRef> vs;
  vs.reserve(program_vars.size() * 2);
  for (const auto& n : program_vars) vs.push_back(unprimed(n));
  for (const auto& n : program_vars) vs.push_back(primed(n));
  return vs;
}

// f(x) = sum coefficients[v] * v + constant.
struct RankingFunction {
  std::map<std::string, Rational> coefficients;
  Rational constant{0};

  Rational coeff(const std::string& name) const {
    auto it = coefficients.find(name);
    return it == coefficients.end() ? Rational(0) : it->second;
  }

  bool operator==(const RankingFunction&) const = default;
};

// Supporting invariant s . x + constant >= 0 over the unprimed bank.
struct SupportingInvariant {
  std::map<std::string, Rational> coefficients;
  Rational constant{0};

  Rational coeff(const std::string& name) const {
    auto it = coefficients.find(name);
    return it == coefficients.end() ? Rational(0) : it->second;
  }

  // The invariant as a constraint row over the given variable universe.
  Constraint as_constraint() const {
    AffineTerm t;
    for (const auto& [name, c] : coefficients) t.add(unprimed(name), -c);
    t.constant = -constant;
    return Constraint::make(std::move(t), Relation::LEQ);
  }

  bool operator==(const SupportingInvariant&) const = default;
};

// Nonnegative multipliers witnessing one implication, one entry per lhs row.
struct FarkasCertificate {
  std::vector<Rational> lambda;

  bool operator==(const FarkasCertificate&) const = default;
};

struct Success {
  RankingFunction ranking;
  SupportingInvariant invariant;
  Rational delta{1};
  std::array<FarkasCertificate, 4> certificates;
  bool vacuous = false;
};

struct Infeasible {};
struct PreconditionViolated {};

using SynthesisResult = std::variant<Success, Infeasible, PreconditionViolated>;

}  // namespace lassorank
