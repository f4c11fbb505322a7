#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lassorank/core.hpp"
#include "lassorank/rational.hpp"

namespace lassorank {

enum class Outcome { Success, Infeasible, PreconditionViolated };

inline Outcome outcome_of(const SynthesisResult& r) {
  if (std::holds_alternative<Success>(r)) return Outcome::Success;
  if (std::holds_alternative<Infeasible>(r)) return Outcome::Infeasible;
  return Outcome::PreconditionViolated;
}

// A hand-checked termination argument for a corpus program. Such an argument
// can be valid while the synthesis still answers Infeasible: that happens
// exactly when the invariant is not non-decreasing along the loop.
struct KnownWitness {
  RankingFunction ranking;
  SupportingInvariant invariant;
  Rational delta{1};
  bool nondecreasing = true;
  Domain check_domain = Domain::Real;
};

struct CorpusEntry {
  std::string name;
  std::string source;  // byte-identical to corpus/<name>.lasso
  Outcome real_outcome = Outcome::Success;
  Outcome int_gcd_outcome = Outcome::Success;
  Outcome int_none_outcome = Outcome::Success;
  std::optional<KnownWitness> witness;
};

namespace detail {

inline KnownWitness witness(std::map<std::string, Rational> r, Rational r0,
                            std::map<std::string, Rational> s, Rational s0, bool nondecreasing,
                            Domain check_domain = Domain::Real) {
  KnownWitness w;
  w.ranking.coefficients = std::move(r);
  w.ranking.constant = std::move(r0);
  w.invariant.coefficients = std::move(s);
  w.invariant.constant = std::move(s0);
  w.nondecreasing = nondecreasing;
  w.check_domain = check_domain;
  return w;
}

}  // namespace detail

inline const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = [] {
    std::vector<CorpusEntry> v;

    v.push_back({"P_yPositive",
                 "# P_yPositive: terminating; f = x with supporting invariant y - 1 >= 0.\n"
                 "vars: x, y;\n"
                 "domain: real;\n"
                 "stem: y' == 23;\n"
                 "loop: x >= 0, x' == x - y, y' == y + 1;\n",
                 Outcome::Success, Outcome::Success, Outcome::Success,
                 detail::witness({{"x", 1}}, 0, {{"y", 1}}, -1, true)});

    v.push_back({"P_diff42",
                 "# P_diff42: terminating; f = x with supporting invariant x - y - 42 >= 0.\n"
                 "vars: x, y;\n"
                 "domain: real;\n"
                 "stem: x' == y + 42, y' == y;\n"
                 "loop: x >= 0, x' == y, y' == 2*y - x;\n",
                 Outcome::Success, Outcome::Success, Outcome::Success,
                 detail::witness({{"x", 1}}, 0, {{"x", 1}, {"y", -1}}, -42, true)});

    v.push_back({"P_bound",
                 "# P_bound: terminating; f = x with supporting invariant y - 23 >= 0\n"
                 "# validates, yet the plain boundedness template x + r0 >= 0 fails without\n"
                 "# the invariant premise.\n"
                 "vars: x, y;\n"
                 "domain: real;\n"
                 "stem: y' == 23;\n"
                 "loop: x >= y, x' == x - 1, y' == y;\n",
                 Outcome::Success, Outcome::Success, Outcome::Success,
                 detail::witness({{"x", 1}}, 0, {{"y", 1}}, -23, true)});

    v.push_back({"P_zeno",
                 "# P_zeno: terminating (y stays above 1, so x drops by more than 1), but\n"
                 "# y itself shrinks toward 1, so the valid invariant y - 1 >= 0 is not\n"
                 "# non-decreasing and the synthesis answers infeasible.\n"
                 "vars: x, y;\n"
                 "domain: real;\n"
                 "stem: y' == 2;\n"
                 "loop: x >= 0, x' == x - y, 2*y' == y + 1;\n",
                 Outcome::Infeasible, Outcome::Infeasible, Outcome::Infeasible,
                 detail::witness({{"x", 1}}, 0, {{"y", 1}}, -1, false)});

    v.push_back({"P_wild",
                 "# P_wild: terminating (y is reset to at least 1 every round), but y' is\n"
                 "# not bounded by y, so no non-decreasing supporting invariant exists and\n"
                 "# the synthesis answers infeasible.\n"
                 "vars: x, y;\n"
                 "domain: real;\n"
                 "stem: y' >= 1;\n"
                 "loop: x >= 0, x' == x - y, y' >= 1;\n",
                 Outcome::Infeasible, Outcome::Infeasible, Outcome::Infeasible,
                 detail::witness({{"x", 1}}, 0, {{"y", 1}}, -1, false)});

    v.push_back({"P_array",
                 "# P_array: terminating scan; f = aLength - i with supporting invariant\n"
                 "# offset - 1 >= 0.\n"
                 "vars: i, offset, aLength, curVal;\n"
                 "domain: real;\n"
                 "stem: offset' == 1, i' == 0, aLength' == aLength;\n"
                 "loop: i <= aLength, curVal' >= 0, i' == i + offset + curVal', offset' == offset, aLength' == aLength;\n",
                 Outcome::Success, Outcome::Success, Outcome::Success,
                 detail::witness({{"i", -1}, {"aLength", 1}}, 0, {{"offset", 1}}, -1, true)});

    v.push_back({"P_nonIntegral1",
                 "# P_nonIntegral1: terminating over the integers once 2*y >= 1 is rounded\n"
                 "# to y >= 1; real-domain analysis (and integer analysis without rounding)\n"
                 "# is infeasible.\n"
                 "vars: x, y;\n"
                 "domain: int;\n"
                 "stem: 2*y' >= 1, x' == x;\n"
                 "loop: x >= 0, x' == x - 2*y + 1, y' == y;\n",
                 Outcome::Infeasible, Outcome::Success, Outcome::Infeasible,
                 detail::witness({{"x", 1}}, 0, {{"y", 2}}, -2, true, Domain::Int)});

    v.push_back({"P_nonIntegral2",
                 "# P_nonIntegral2: terminating over the integers, but certifying it needs\n"
                 "# 2*y >= z and z == 1 combined across rows; per-row rounding cannot see\n"
                 "# that, so every mode is infeasible.\n"
                 "vars: x, y, z;\n"
                 "domain: int;\n"
                 "stem: 2*y' >= z', x' == x;\n"
                 "loop: x >= 0, z == 1, x' == x - 2*y + 1, y' == y, z' == z;\n",
                 Outcome::Infeasible, Outcome::Infeasible, Outcome::Infeasible, std::nullopt});

    return v;
  }();
  return entries;
}

// P_zeno written with rational coefficients; parses to rows identical to
// P_zeno because constraints are canonicalized to coprime integer
// coefficients.
inline const std::string& p_zeno_alt_source() {
  static const std::string src =
      "# P_zeno_alt: the P_zeno transition system written with rational\n"
      "# coefficients; the parser normalizes both spellings to identical rows.\n"
      "vars: x, y;\n"
      "domain: real;\n"
      "stem: y' == 2;\n"
      "loop: x >= 0, x' == x - y, y' == 1/2*y + 1/2;\n";
  return src;
}

namespace detail {

// Deterministic 64-bit generator (splitmix64), stable across platforms.
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  int range(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  bool chance(int percent) { return range(1, 100) <= percent; }

 private:
  std::uint64_t state_;
};

}  // namespace detail

// Deterministic random lasso program for property sweeps. Half the
// instances are fully random rows (biased toward being satisfied at the
// origin so most are non-vacuous); the other half are structured
// guard-plus-updates loops, which keeps synthesizable instances frequent.
inline LassoProgram random_lasso(std::uint64_t seed, int dims = 2, int max_rows = 4) {
  detail::SplitMix rng(seed);
  LassoProgram p;
  for (int i = 0; i < dims; ++i) p.program_vars.push_back("v" + std::to_string(i));
  p.domain = rng.chance(30) ? Domain::Int : Domain::Real;
  auto vars = transition_vars(p.program_vars);
  p.stem.variables = vars;
  p.loop.variables = vars;

  auto push_eq = [](std::vector<Constraint>& rows, AffineTerm t) {
    rows.push_back(Constraint::make(t, Relation::LEQ));
    rows.push_back(Constraint::make(-t, Relation::LEQ));
  };

  if (rng.chance(50)) {  // structured: guarded loop with affine updates
    for (int i = 0; i < dims; ++i) {
      if (!rng.chance(60)) continue;
      AffineTerm t;  // v' == v + c or v' == c
      t.add(primed(p.program_vars[static_cast<std::size_t>(i)]), Rational(1));
      if (rng.chance(50)) t.add(unprimed(p.program_vars[static_cast<std::size_t>(i)]), Rational(-1));
      t.constant = Rational(-rng.range(-2, 4));
      push_eq(p.stem.constraints, std::move(t));
    }
    int guard = rng.range(0, dims - 1);
    AffineTerm g;  // guard variable stays nonnegative
    g.add(unprimed(p.program_vars[static_cast<std::size_t>(guard)]), Rational(-1));
    p.loop.constraints.push_back(Constraint::make(std::move(g), Relation::LEQ));
    for (int i = 0; i < dims; ++i) {
      int kind = rng.range(1, 100);
      if (kind > 85) continue;  // havoc
      AffineTerm t;
      t.add(primed(p.program_vars[static_cast<std::size_t>(i)]), Rational(1));
      t.add(unprimed(p.program_vars[static_cast<std::size_t>(i)]), Rational(-1));
      int drift = i == guard && rng.chance(70) ? rng.range(-3, -1) : rng.range(-2, 2);
      t.constant = Rational(-drift);
      if (kind <= 70)
        push_eq(p.loop.constraints, std::move(t));  // v' == v + drift
      else
        p.loop.constraints.push_back(Constraint::make(std::move(t), Relation::LEQ));  // v' <= v + drift
    }
    return p;
  }

  auto random_rows = [&](int max_r) {
    std::vector<Constraint> rows;
    int n = rng.range(0, max_r);
    for (int k = 0; k < n; ++k) {
      AffineTerm t;
      for (const auto& v : vars) {
        if (!rng.chance(55)) continue;
        int num = rng.range(-3, 3);
        if (num == 0) continue;
        int den = rng.chance(20) ? 2 : 1;
        t.add(v, make_rational(num, den));
      }
      int c = rng.chance(70) ? rng.range(0, 4) : rng.range(-4, 4);
      t.constant = Rational(-c);
      if (t.coefficients.empty() && rng.chance(80)) continue;
      int kind = rng.range(1, 100);
      if (kind <= 20) {
        push_eq(rows, std::move(t));
      } else if (kind <= 28) {
        rows.push_back(Constraint::make(std::move(t), Relation::LT));
      } else {
        rows.push_back(Constraint::make(std::move(t), Relation::LEQ));
      }
    }
    return rows;
  };

  p.stem.constraints = random_rows(max_rows);
  p.loop.constraints = random_rows(max_rows);
  return p;
}

}  // namespace lassorank
