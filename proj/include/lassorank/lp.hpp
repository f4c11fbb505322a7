#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lassorank/core.hpp"
#include "lassorank/linear_system.hpp"
#include "lassorank/rational.hpp"

namespace lassorank {

struct FeasibilityOutcome {
  bool satisfiable = false;
  std::map<Unknown, Rational> witness;  // meaningful only when satisfiable (simplex route)
};

namespace detail {

// Exact phase-1 simplex over the rationals with Bland's rule. Strict rows
// share one slack unknown eps with 0 <= eps <= 1; each `t < rhs` becomes
// `t + eps <= rhs` and the system is satisfiable iff max eps > 0.
class Simplex {
 public:
  explicit Simplex(const LinearSystem& sys) : sys_(sys) { build(); }

  bool solve() {
    std::vector<Rational> cost(total_cols_, Rational(0));
    for (int j = first_artificial_; j < total_cols_; ++j) cost[static_cast<std::size_t>(j)] = Rational(-1);
    maximize(cost);
    for (std::size_t i = 0; i < rows(); ++i)
      if (basis_[i] >= first_artificial_ && d_[i] != 0) return false;
    drop_artificials();
    if (eps_col_ >= 0) {
      std::vector<Rational> eps_cost(total_cols_, Rational(0));
      eps_cost[static_cast<std::size_t>(eps_col_)] = Rational(1);
      Rational best = maximize(eps_cost);
      if (best <= 0) return false;
    }
    return true;
  }

  std::map<Unknown, Rational> witness() const {
    std::vector<Rational> value(static_cast<std::size_t>(total_cols_), Rational(0));
    for (std::size_t i = 0; i < rows(); ++i) value[static_cast<std::size_t>(basis_[i])] = d_[i];
    std::map<Unknown, Rational> w;
    for (const auto& [u, pair] : cols_) {
      Rational v = value[static_cast<std::size_t>(pair.first)];
      if (pair.second >= 0) v -= value[static_cast<std::size_t>(pair.second)];
      w.emplace(u, v);
    }
    return w;
  }

 private:
  std::size_t rows() const { return t_.size(); }

  void build() {
    for (const auto& u : sys_.unknowns) {
      int pos = ncols_++;
      int neg = sys_.nonnegative.count(u) ? -1 : ncols_++;
      cols_.emplace(u, std::pair<int, int>{pos, neg});
    }
    bool any_strict = false;
    for (const auto& c : sys_.constraints)
      if (c.cmp == Cmp::LT) any_strict = true;
    if (any_strict) eps_col_ = ncols_++;

    struct RawRow {
      std::vector<Rational> a;
      Rational rhs;
      bool is_eq;
    };
    std::vector<RawRow> raw;
    auto expand = [&](const LinearConstraint& c) {
      RawRow r{std::vector<Rational>(static_cast<std::size_t>(ncols_), Rational(0)), c.rhs,
               c.cmp == Cmp::EQ};
      for (const auto& [u, k] : c.coefficients) {
        auto it = cols_.find(u);
        if (it == cols_.end()) throw std::invalid_argument("constraint mentions undeclared unknown " + to_string(u));
        r.a[static_cast<std::size_t>(it->second.first)] += k;
        if (it->second.second >= 0) r.a[static_cast<std::size_t>(it->second.second)] -= k;
      }
      if (c.cmp == Cmp::LT) r.a[static_cast<std::size_t>(eps_col_)] += 1;
      raw.push_back(std::move(r));
    };
    for (const auto& c : sys_.constraints) expand(c);
    if (eps_col_ >= 0) {
      RawRow cap{std::vector<Rational>(static_cast<std::size_t>(ncols_), Rational(0)), Rational(1), false};
      cap.a[static_cast<std::size_t>(eps_col_)] = 1;
      raw.push_back(std::move(cap));
    }

    int nslack = 0;
    for (const auto& r : raw)
      if (!r.is_eq) ++nslack;
    first_artificial_ = ncols_ + nslack;
    total_cols_ = first_artificial_ + static_cast<int>(raw.size());

    int next_slack = ncols_;
    int next_artificial = first_artificial_;
    for (auto& r : raw) {
      std::vector<Rational> row(static_cast<std::size_t>(total_cols_), Rational(0));
      for (int j = 0; j < ncols_; ++j) row[static_cast<std::size_t>(j)] = r.a[static_cast<std::size_t>(j)];
      if (!r.is_eq) row[static_cast<std::size_t>(next_slack++)] = 1;
      Rational rhs = r.rhs;
      if (rhs < 0) {
        for (auto& x : row) x = -x;
        rhs = -rhs;
      }
      int art = next_artificial++;
      row[static_cast<std::size_t>(art)] = 1;
      t_.push_back(std::move(row));
      d_.push_back(rhs);
      basis_.push_back(art);
    }
  }

  // Gauss-Jordan pivot keeping t_ as the current dictionary.
  void pivot(std::size_t r, int jc) {
    std::size_t j = static_cast<std::size_t>(jc);
    Rational piv = t_[r][j];
    if (piv == 0) throw std::logic_error("pivot on zero entry");
    for (auto& x : t_[r]) x /= piv;
    d_[r] /= piv;
    t_[r][j] = 1;
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i == r) continue;
      Rational f = t_[i][j];
      if (f == 0) continue;
      for (std::size_t k = 0; k < t_[i].size(); ++k)
        if (t_[r][k] != 0) t_[i][k] -= f * t_[r][k];
      t_[i][j] = 0;
      d_[i] -= f * d_[r];
    }
    basis_[r] = jc;
  }

  // Bland's rule: lowest-index improving column, lowest-index leaving basis.
  Rational maximize(const std::vector<Rational>& cost) {
    for (;;) {
      int entering = -1;
      for (int j = 0; j < total_cols_ && entering < 0; ++j) {
        if (!enterable(j)) continue;
        Rational rc = cost[static_cast<std::size_t>(j)];
        for (std::size_t i = 0; i < rows(); ++i) {
          const Rational& cb = cost[static_cast<std::size_t>(basis_[i])];
          if (cb != 0 && t_[i][static_cast<std::size_t>(j)] != 0)
            rc -= cb * t_[i][static_cast<std::size_t>(j)];
        }
        if (rc > 0) entering = j;
      }
      if (entering < 0) break;
      std::size_t leave = rows();
      Rational best_ratio{0};
      for (std::size_t i = 0; i < rows(); ++i) {
        const Rational& a = t_[i][static_cast<std::size_t>(entering)];
        if (a <= 0) continue;
        Rational ratio = d_[i] / a;
        if (leave == rows() || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave]))
          leave = i, best_ratio = ratio;
      }
      if (leave == rows()) throw std::logic_error("unbounded objective in bounded program");
      pivot(leave, entering);
    }
    Rational value{0};
    for (std::size_t i = 0; i < rows(); ++i) value += cost[static_cast<std::size_t>(basis_[i])] * d_[i];
    return value;
  }

  // Artificial columns start basic and never re-enter once they leave.
  bool enterable(int j) const { return j < first_artificial_; }

  // After phase 1 every artificial is driven to value zero; pivot basic ones
  // out where possible and delete rows that are redundant.
  void drop_artificials() {
    for (std::size_t i = 0; i < rows();) {
      if (basis_[i] < first_artificial_) {
        ++i;
        continue;
      }
      int target = -1;
      for (int j = 0; j < first_artificial_ && target < 0; ++j)
        if (t_[i][static_cast<std::size_t>(j)] != 0) target = j;
      if (target >= 0) {
        pivot(i, target);
        ++i;
      } else {
        t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i));
        d_.erase(d_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  const LinearSystem& sys_;
  std::map<Unknown, std::pair<int, int>> cols_;  // pos col, neg col (-1 if nonnegative)
  int ncols_ = 0;
  int eps_col_ = -1;
  int first_artificial_ = 0;
  int total_cols_ = 0;
  std::vector<std::vector<Rational>> t_;
  std::vector<Rational> d_;
  std::vector<int> basis_;
};

}  // namespace detail

// Exact satisfiability over the rationals, with a witness on success.
inline FeasibilityOutcome feasible(const LinearSystem& sys) {
  detail::Simplex s(sys);
  if (!s.solve()) return {false, {}};
  return {true, s.witness()};
}

// Independent oracle: variable elimination. No witness, same verdict.
inline FeasibilityOutcome fourier_motzkin(const LinearSystem& sys) {
  struct Row {
    std::map<Unknown, Rational> c;
    Rational rhs;
    bool strict;
  };
  auto contradictory = [](const Row& r) {
    return r.c.empty() && (r.strict ? r.rhs <= 0 : r.rhs < 0);
  };
  auto tautology = [](const Row& r) {
    return r.c.empty() && (r.strict ? r.rhs > 0 : r.rhs >= 0);
  };
  auto normalized = [](Row r) {
    if (!r.c.empty()) {
      Rational lead = r.c.begin()->second;
      Rational scale = lead < 0 ? -lead : lead;
      for (auto& [u, k] : r.c) k /= scale;
      r.rhs /= scale;
    }
    return r;
  };

  std::vector<Row> rows;
  auto push = [&](Row r) {
    if (!tautology(r)) rows.push_back(std::move(r));
  };
  for (const auto& c : sys.constraints) {
    Row r{c.coefficients, c.rhs, c.cmp == Cmp::LT};
    if (c.cmp == Cmp::EQ) {
      Row neg{{}, -c.rhs, false};
      for (const auto& [u, k] : c.coefficients) neg.c.emplace(u, -k);
      r.strict = false;
      push(std::move(neg));
    }
    push(std::move(r));
  }
  for (const auto& u : sys.nonnegative) {
    Row r{{{u, Rational(-1)}}, Rational(0), false};
    rows.push_back(std::move(r));
  }

  for (const auto& r : rows)
    if (contradictory(r)) return {false, {}};

  for (auto it = sys.unknowns.rbegin(); it != sys.unknowns.rend(); ++it) {
    const Unknown& u = *it;
    std::vector<Row> pos, neg, rest;
    for (auto& r : rows) {
      auto f = r.c.find(u);
      if (f == r.c.end())
        rest.push_back(std::move(r));
      else if (f->second > 0)
        pos.push_back(std::move(r));
      else
        neg.push_back(std::move(r));
    }
    std::set<std::pair<std::vector<std::pair<Unknown, Rational>>, std::pair<bool, Rational>>> seen;
    auto add_unique = [&](Row r) {
      if (tautology(r)) return;
      Row n = normalized(r);
      std::vector<std::pair<Unknown, Rational>> key(n.c.begin(), n.c.end());
      if (seen.emplace(std::move(key), std::make_pair(n.strict, n.rhs)).second)
        rest.push_back(std::move(n));
    };
    std::vector<Row> kept;
    kept.swap(rest);
    rest.clear();
    for (auto& r : kept) add_unique(std::move(r));
    for (const auto& p : pos) {
      Rational pc = p.c.at(u);
      for (const auto& n : neg) {
        Rational nc = -n.c.at(u);
        Row combined{{}, p.rhs / pc + n.rhs / nc, p.strict || n.strict};
        for (const auto& [v, k] : p.c)
          if (!(v == u)) combined.c[v] += k / pc;
        for (const auto& [v, k] : n.c)
          if (!(v == u)) combined.c[v] += k / nc;
        for (auto cit = combined.c.begin(); cit != combined.c.end();)
          cit = cit->second == 0 ? combined.c.erase(cit) : std::next(cit);
        if (contradictory(combined)) return {false, {}};
        add_unique(std::move(combined));
      }
    }
    rows.swap(rest);
  }

  for (const auto& r : rows)
    if (contradictory(r)) return {false, {}};
  return {true, {}};
}

// Lifts a polyhedron into a solver system over free Var unknowns.
inline LinearSystem system_from_polyhedron(const Polyhedron& p) {
  LinearSystem sys;
  for (const auto& v : p.variables) sys.declare(var_unknown(v));
  for (const auto& con : p.constraints) {
    LinearConstraint lc;
    lc.cmp = con.strict() ? Cmp::LT : Cmp::LEQ;
    for (const auto& [v, c] : con.term.coefficients) lc.add(var_unknown(v), c);
    lc.rhs = -con.term.constant;
    sys.constraints.push_back(std::move(lc));
  }
  return sys;
}

inline bool polyhedron_feasible(const Polyhedron& p) {
  return feasible(system_from_polyhedron(p)).satisfiable;
}

}  // namespace lassorank
