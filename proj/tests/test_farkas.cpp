#include <catch2/catch_amalgamated.hpp>

#include "lassorank/corpus.hpp"
#include "lassorank/farkas.hpp"
#include "lassorank/lp.hpp"
#include "lassorank/parser.hpp"
#include "lassorank/pipeline.hpp"

using namespace lassorank;

namespace {

LinearConstraint row(std::initializer_list<std::pair<Unknown, Rational>> coeffs, Cmp cmp,
                     Rational rhs) {
  LinearConstraint c;
  for (const auto& [u, q] : coeffs) c.add(u, q);
  c.cmp = cmp;
  c.rhs = rhs;
  return c;
}

// Pins template unknowns to a candidate and asks whether multipliers exist.
bool multipliers_exist(LinearSystem sys,
                       std::initializer_list<std::pair<Unknown, Rational>> pins) {
  for (const auto& [u, q] : pins) sys.constraints.push_back(row({{u, 1}}, Cmp::EQ, q));
  return feasible(sys).satisfiable;
}

}  // namespace

TEST_CASE("multiplier encoding of a one-row premise", "[farkas]") {
  // Stem y' >= 1, template s.x' + s0 >= 0. One multiplier for the single
  // premise row; one equation per transition variable column.
  LassoProgram p = parse_lasso(
      "vars: x, y;\n"
      "domain: real;\n"
      "stem: y' >= 1;\n"
      "loop: x >= 0, x' == x - y, y' >= 1;\n");
  auto templates = build_or_to_plus(p);
  LinearSystem sys = apply_farkas(templates[0], 1);

  Unknown lam = multiplier(1, 0);
  REQUIRE(sys.constraints.size() == 5);
  // Columns x and y: nothing on either side.
  CHECK(sys.constraints[0] == row({}, Cmp::EQ, 0));
  CHECK(sys.constraints[1] == row({}, Cmp::EQ, 0));
  // Column x': s_x alone, so s_x is forced to zero.
  CHECK(sys.constraints[2] == row({{inv_coeff("x"), 1}}, Cmp::EQ, 0));
  // Column y': premise row carries -1, so s_y == lambda.
  CHECK(sys.constraints[3] == row({{lam, -1}, {inv_coeff("y"), 1}}, Cmp::EQ, 0));
  // Bound: lambda b - s0 <= 0 with b = -1.
  CHECK(sys.constraints[4] == row({{lam, -1}, {inv_const(), -1}}, Cmp::LEQ, 0));
  CHECK(sys.nonnegative == std::set<Unknown>{lam});

  // y' - 1 >= 0 follows from the premise: multipliers exist.
  CHECK(multipliers_exist(sys, {{inv_coeff("x"), 0}, {inv_coeff("y"), 1}, {inv_const(), -1}}));
  // s_y = 1, s0 = -2 claims y' - 2 >= 0, which y' >= 1 does not give.
  CHECK_FALSE(
      multipliers_exist(sys, {{inv_coeff("x"), 0}, {inv_coeff("y"), 1}, {inv_const(), -2}}));
  // Flipping the sign claims -y' + s0 >= 0; no s0 rescues that.
  CHECK_FALSE(
      multipliers_exist(sys, {{inv_coeff("x"), 0}, {inv_coeff("y"), -1}, {inv_const(), 100}}));
  // Weakening the constant keeps it derivable.
  CHECK(multipliers_exist(sys, {{inv_coeff("x"), 0}, {inv_coeff("y"), 1}, {inv_const(), 7}}));
}

TEST_CASE("unsatisfiable premise is refused", "[farkas]") {
  LassoProgram p = parse_lasso(
      "vars: x;\n"
      "domain: real;\n"
      "stem: x' <= 0, x' >= 1;\n"
      "loop: x >= 0;\n");
  auto templates = build_or_to_plus(p);
  CHECK_THROWS_AS(apply_farkas(templates[0], 1), FarkasPreconditionError);
  CHECK_THROWS_AS(assemble_system(p), FarkasPreconditionError);
}

TEST_CASE("assembled system shape", "[farkas]") {
  // Two program variables; stem of two rows, loop of five. Four blocks:
  // one over the stem, three over the loop.
  LassoProgram p = parse_lasso(
      "vars: x, y;\n"
      "domain: real;\n"
      "stem: y' == 23;\n"
      "loop: x >= 0, x' == x - y, y' == y + 1;\n");
  LinearSystem sys = assemble_system(p);

  // Unknowns lead with the template coefficients in a fixed order.
  REQUIRE(sys.unknowns.size() >= 6);
  CHECK(sys.unknowns[0] == rank_coeff("x"));
  CHECK(sys.unknowns[1] == rank_coeff("y"));
  CHECK(sys.unknowns[2] == rank_const());
  CHECK(sys.unknowns[3] == inv_coeff("x"));
  CHECK(sys.unknowns[4] == inv_coeff("y"));
  CHECK(sys.unknowns[5] == inv_const());
  CHECK(sys.unknowns.size() == 6 + 2 + 5 + 5 + 5);

  // Four equations plus one bound row per block.
  CHECK(sys.constraints.size() == 4 * 5);

  // Exactly the multipliers are sign-constrained.
  CHECK(sys.nonnegative.size() == 17);
  for (const auto& u : sys.nonnegative) CHECK(u.kind == Unknown::Kind::Multiplier);
  CHECK(feasible(sys).satisfiable);
}

TEST_CASE("free decrease bound adds one unknown and one row", "[farkas]") {
  LassoProgram p = parse_lasso(
      "vars: x, y;\n"
      "domain: real;\n"
      "stem: y' == 23;\n"
      "loop: x >= 0, x' == x - y, y' == y + 1;\n");
  FarkasOptions opt;
  opt.delta_mode = DeltaMode::FreeLowerBounded;
  LinearSystem sys = assemble_system(p, opt);
  CHECK(sys.unknowns.size() == 6 + 1 + 17);
  CHECK(sys.constraints.size() == 20 + 1);

  auto out = feasible(sys);
  REQUIRE(out.satisfiable);
  CHECK(out.witness.at(delta_unknown()) >= opt.delta_min);
}

// Fixing the decrease to 1 loses nothing: any solution scales by a positive
// factor, so satisfiability with a free lower-bounded decrease and with the
// constant 1 must coincide program by program.
TEST_CASE("fixed and free decrease bounds agree", "[farkas]") {
  FarkasOptions fixed;
  FarkasOptions free_bound;
  free_bound.delta_mode = DeltaMode::FreeLowerBounded;

  int solvable = 0, unsolvable = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    LassoProgram raw = random_lasso(seed);
    AnalysisConfig cfg;
    cfg.domain_override = Domain::Real;
    PreparedProgram prep = prepare(raw, cfg);
    LinearSystem a, b;
    try {
      a = assemble_system(prep.program, fixed);
      b = assemble_system(prep.program, free_bound);
    } catch (const FarkasPreconditionError&) {
      continue;
    }
    auto fixed_out = feasible(a);
    auto free_out = feasible(b);
    INFO("seed " << seed);
    REQUIRE(fixed_out.satisfiable == free_out.satisfiable);
    if (free_out.satisfiable) {
      ++solvable;
      CHECK(free_out.witness.at(delta_unknown()) >= free_bound.delta_min);
    } else {
      ++unsolvable;
    }
  }
  CHECK(solvable >= 15);
  CHECK(unsolvable >= 15);
}
