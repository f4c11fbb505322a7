#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lassorank/core.hpp"
#include "lassorank/rational.hpp"

namespace lassorank {

// Solver-level unknowns. Var covers program-state queries (bank 0 = x,
// 1 = x', 2 = x''); the template kinds are the ranking/invariant
// coefficients; Multiplier(block, row) is one Farkas multiplier.
struct Unknown {
  enum class Kind { Var, RankCoeff, RankConst, InvCoeff, InvConst, Delta, Multiplier };

  Kind kind = Kind::Var;
  std::string name;  // Var, RankCoeff, InvCoeff
  int bank = 0;      // Var only
  int block = 0;     // Multiplier only
  int row = 0;       // Multiplier only

  auto operator<=>(const Unknown&) const = default;
};

inline Unknown var_unknown(const VarRef& v) {
  return {Unknown::Kind::Var, v.name, v.primed ? 1 : 0, 0, 0};
}
inline Unknown var_unknown(std::string name, int bank) {
  return {Unknown::Kind::Var, std::move(name), bank, 0, 0};
}
inline Unknown rank_coeff(std::string name) { return {Unknown::Kind::RankCoeff, std::move(name), 0, 0, 0}; }
inline Unknown rank_const() { return {Unknown::Kind::RankConst, "", 0, 0, 0}; }
inline Unknown inv_coeff(std::string name) { return {Unknown::Kind::InvCoeff, std::move(name), 0, 0, 0}; }
inline Unknown inv_const() { return {Unknown::Kind::InvConst, "", 0, 0, 0}; }
inline Unknown delta_unknown() { return {Unknown::Kind::Delta, "", 0, 0, 0}; }
inline Unknown multiplier(int block, int row) { return {Unknown::Kind::Multiplier, "", 0, block, row}; }

inline std::string to_string(const Unknown& u) {
  switch (u.kind) {
    case Unknown::Kind::Var: {
      std::string s = u.name;
      for (int i = 0; i < u.bank; ++i) s += '\'';
      return s;
    }
    case Unknown::Kind::RankCoeff: return "r_" + u.name;
    case Unknown::Kind::RankConst: return "r0";
    case Unknown::Kind::InvCoeff: return "s_" + u.name;
    case Unknown::Kind::InvConst: return "s0";
    case Unknown::Kind::Delta: return "delta";
    case Unknown::Kind::Multiplier:
      return "lambda" + std::to_string(u.block) + "_" + std::to_string(u.row);
  }
  return "?";
}

enum class Cmp { EQ, LEQ, LT };

// sum_{u} coefficients[u] * u  CMP  rhs
struct LinearConstraint {
  std::map<Unknown, Rational> coefficients;
  Cmp cmp = Cmp::LEQ;
  Rational rhs{0};

  void add(const Unknown& u, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = coefficients.try_emplace(u, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) coefficients.erase(it);
    }
  }

  Rational coeff(const Unknown& u) const {
    auto it = coefficients.find(u);
    return it == coefficients.end() ? Rational(0) : it->second;
  }

  bool operator==(const LinearConstraint&) const = default;
};

// Constraint system over an ordered unknown list. Unknowns in `nonnegative`
// carry an implicit u >= 0; all others are free.
struct LinearSystem {
  std::vector<Unknown> unknowns;
  std::vector<LinearConstraint> constraints;
  std::set<Unknown> nonnegative;

  void declare(const Unknown& u) {
    if (!declared_.count(u)) {
      declared_.insert(u);
      unknowns.push_back(u);
    }
  }

  void declare_nonnegative(const Unknown& u) {
    declare(u);
    nonnegative.insert(u);
  }

  void append(const LinearSystem& o) {
    for (const auto& u : o.unknowns) declare(u);
    for (const auto& u : o.nonnegative) nonnegative.insert(u);
    for (const auto& c : o.constraints) constraints.push_back(c);
  }

 private:
  std::set<Unknown> declared_;
};

}  // namespace lassorank
