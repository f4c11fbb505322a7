#include <catch2/catch_amalgamated.hpp>

#include "lassorank/intprep.hpp"
#include "lassorank/lp.hpp"

#include <random>

using namespace lassorank;

namespace {

Constraint make_row(std::initializer_list<std::pair<VarRef, Rational>> coeffs, Rational c,
                    Relation rel) {
  AffineTerm t;
  for (const auto& [v, q] : coeffs) t.add(v, q);
  t.constant = c;
  return Constraint::make(std::move(t), rel);
}

Polyhedron poly(std::vector<Constraint> rows) {
  Polyhedron p;
  p.variables = {unprimed("x"), unprimed("y")};
  p.constraints = std::move(rows);
  return p;
}

// Brute-force membership of integer points in a small box; the yardstick
// for "same integer points".
std::set<std::pair<int, int>> integer_points(const Polyhedron& p, int radius) {
  std::set<std::pair<int, int>> pts;
  for (int x = -radius; x <= radius; ++x)
    for (int y = -radius; y <= radius; ++y) {
      bool in = true;
      for (const auto& con : p.constraints) {
        Rational v = con.term.coeff(unprimed("x")) * x + con.term.coeff(unprimed("y")) * y +
                     con.term.constant;
        if (con.strict() ? v >= 0 : v > 0) {
          in = false;
          break;
        }
      }
      if (in) pts.emplace(x, y);
    }
  return pts;
}

}  // namespace

TEST_CASE("strict rows round to closed integer rows", "[intprep]") {
  // x < 0 becomes x + 1 <= 0, i.e. x <= -1.
  Polyhedron p = poly({make_row({{unprimed("x"), 1}}, 0, Relation::LT)});
  Polyhedron q = strict_to_nonstrict_int(p);
  REQUIRE(q.constraints.size() == 1);
  CHECK(q.constraints[0] == make_row({{unprimed("x"), 1}}, 1, Relation::LEQ));

  // x/2 < 1/3 clears denominators before the shift: 3x - 2 < 0 over the
  // integers is 3x - 1 <= 0.
  Polyhedron r = poly({make_row({{unprimed("x"), make_rational(1, 2)}}, make_rational(-1, 3),
                                Relation::LT)});
  Polyhedron s = strict_to_nonstrict_int(r);
  CHECK(s.constraints[0] == make_row({{unprimed("x"), 3}}, -1, Relation::LEQ));

  // Non-strict rows pass through up to scaling.
  Polyhedron t = poly({make_row({{unprimed("x"), 1}}, -5, Relation::LEQ)});
  CHECK(strict_to_nonstrict_int(t).constraints[0] == t.constraints[0]);
}

TEST_CASE("gcd rounding tightens constants", "[intprep]") {
  // 3x <= 7 has the integer points of x <= 2.
  Polyhedron p = poly({make_row({{unprimed("x"), 3}}, -7, Relation::LEQ)});
  CHECK(gcd_tighten(p).constraints[0] == make_row({{unprimed("x"), 1}}, -2, Relation::LEQ));

  // 2y >= 1 rounds to y >= 1.
  Polyhedron q = poly({make_row({{unprimed("y"), -2}}, 1, Relation::LEQ)});
  CHECK(gcd_tighten(q).constraints[0] == make_row({{unprimed("y"), -1}}, 1, Relation::LEQ));

  // Rational bound: x <= 5/2 rounds to x <= 2.
  Polyhedron r = poly({make_row({{unprimed("x"), 1}}, make_rational(-5, 2), Relation::LEQ)});
  CHECK(gcd_tighten(r).constraints[0] == make_row({{unprimed("x"), 1}}, -2, Relation::LEQ));

  // Negative bound rounds toward minus infinity: 2x <= -3 gives x <= -2.
  Polyhedron s = poly({make_row({{unprimed("x"), 2}}, 3, Relation::LEQ)});
  CHECK(gcd_tighten(s).constraints[0] == make_row({{unprimed("x"), 1}}, 2, Relation::LEQ));
}

TEST_CASE("equations with no integer solution become contradictory", "[intprep]") {
  // x == 1/2 as two rows: 2x <= 1 and -2x <= -1. Rounding gives x <= 0 and
  // -x <= -1, which together are empty.
  Polyhedron p = poly({make_row({{unprimed("x"), 2}}, -1, Relation::LEQ),
                       make_row({{unprimed("x"), -2}}, 1, Relation::LEQ)});
  CHECK(polyhedron_feasible(p));  // real-relaxation is fine with 1/2
  Polyhedron q = gcd_tighten(p);
  CHECK_FALSE(polyhedron_feasible(q));
}

TEST_CASE("constant-only rows are kept", "[intprep]") {
  Polyhedron p = poly({make_row({}, -1, Relation::LEQ)});
  Polyhedron q = gcd_tighten(p);
  REQUIRE(q.constraints.size() == 1);
  CHECK(q.constraints[0] == p.constraints[0]);
}

TEST_CASE("rounding rejects strict input", "[intprep]") {
  Polyhedron p = poly({make_row({{unprimed("x"), 1}}, 0, Relation::LT)});
  CHECK_THROWS_AS(gcd_tighten(p), std::invalid_argument);
}

TEST_CASE("rounding is idempotent", "[intprep]") {
  std::mt19937_64 rng(42);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<Constraint> rows;
    int n = pick(1, 4);
    for (int i = 0; i < n; ++i) {
      AffineTerm t;
      if (pick(0, 1)) t.add(unprimed("x"), make_rational(pick(-4, 4), pick(1, 3)));
      if (pick(0, 1)) t.add(unprimed("y"), make_rational(pick(-4, 4), pick(1, 3)));
      t.constant = make_rational(pick(-8, 8), pick(1, 3));
      rows.push_back(Constraint::make(std::move(t), Relation::LEQ));
    }
    Polyhedron p = poly(rows);
    Polyhedron once = gcd_tighten(p);
    CHECK(gcd_tighten(once) == once);
  }
}

TEST_CASE("rounding preserves integer points", "[intprep]") {
  std::mt19937_64 rng(7);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<Constraint> rows;
    int n = pick(1, 4);
    for (int i = 0; i < n; ++i) {
      AffineTerm t;
      if (pick(0, 1)) t.add(unprimed("x"), make_rational(pick(-4, 4), pick(1, 3)));
      if (pick(0, 1)) t.add(unprimed("y"), make_rational(pick(-4, 4), pick(1, 3)));
      t.constant = make_rational(pick(-8, 8), pick(1, 3));
      rows.push_back(Constraint::make(std::move(t), pick(0, 4) == 0 ? Relation::LT : Relation::LEQ));
    }
    Polyhedron p = poly(rows);
    Polyhedron closed = strict_to_nonstrict_int(p);
    Polyhedron tightened = gcd_tighten(closed);
    INFO("iteration " << iter);
    auto before = integer_points(p, 6);
    REQUIRE(integer_points(closed, 6) == before);
    REQUIRE(integer_points(tightened, 6) == before);
  }
}
