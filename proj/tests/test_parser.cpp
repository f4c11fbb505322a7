#include <catch2/catch_amalgamated.hpp>

#include "lassorank/corpus.hpp"
#include "lassorank/parser.hpp"

using namespace lassorank;

TEST_CASE("parse of a stem-guard-update program", "[parser]") {
  LassoProgram p = parse_lasso(
      "vars: x, y;\n"
      "domain: real;\n"
      "stem: y' == 23;\n"
      "loop: x >= 0, x' == x - y, y' == y + 1;\n");

  CHECK(p.program_vars == std::vector<std::string>{"x", "y"});
  CHECK(p.domain == Domain::Real);
  CHECK(p.stem.variables == transition_vars(p.program_vars));
  CHECK(p.loop.variables == transition_vars(p.program_vars));

  // y' == 23 splits into y' - 23 <= 0 and -y' + 23 <= 0, in that order.
  REQUIRE(p.stem.constraints.size() == 2);
  CHECK(p.stem.constraints[0].term.coeff(primed("y")) == Rational(1));
  CHECK(p.stem.constraints[0].term.constant == Rational(-23));
  CHECK(p.stem.constraints[1].term.coeff(primed("y")) == Rational(-1));
  CHECK(p.stem.constraints[1].term.constant == Rational(23));

  REQUIRE(p.loop.constraints.size() == 5);
  const Constraint& guard = p.loop.constraints[0];  // x >= 0 enters as -x <= 0
  CHECK(guard.term.coeff(unprimed("x")) == Rational(-1));
  CHECK(guard.term.constant == Rational(0));
  CHECK(guard.relation == Relation::LEQ);
  const Constraint& update = p.loop.constraints[1];  // x' - x + y <= 0
  CHECK(update.term.coeff(primed("x")) == Rational(1));
  CHECK(update.term.coeff(unprimed("x")) == Rational(-1));
  CHECK(update.term.coeff(unprimed("y")) == Rational(1));
}

TEST_CASE("relation directions", "[parser]") {
  auto single = [](const std::string& rel_row) {
    LassoProgram p = parse_lasso("vars: x;\ndomain: real;\nstem: ;\nloop: " + rel_row + ";\n");
    REQUIRE(p.loop.constraints.size() == 1);
    return p.loop.constraints[0];
  };

  Constraint le = single("x <= 5");
  CHECK(le.term.coeff(unprimed("x")) == Rational(1));
  CHECK(le.term.constant == Rational(-5));
  CHECK(le.relation == Relation::LEQ);

  Constraint lt = single("x < 5");
  CHECK(lt.relation == Relation::LT);

  Constraint ge = single("x >= 5");  // flips to -x + 5 <= 0
  CHECK(ge.term.coeff(unprimed("x")) == Rational(-1));
  CHECK(ge.term.constant == Rational(5));
  CHECK(ge.relation == Relation::LEQ);

  Constraint gt = single("x > 5");
  CHECK(gt.term.coeff(unprimed("x")) == Rational(-1));
  CHECK(gt.relation == Relation::LT);
}

TEST_CASE("empty sections and havoc", "[parser]") {
  LassoProgram p = parse_lasso("vars: x;\ndomain: int;\nstem: ;\nloop: x' <= x - 1;\n");
  CHECK(p.stem.constraints.empty());
  CHECK(p.domain == Domain::Int);
  // x' is otherwise unconstrained in the stem: havoc is just absence.
  REQUIRE(p.loop.constraints.size() == 1);
}

TEST_CASE("sections in any order", "[parser]") {
  LassoProgram a = parse_lasso("vars: x;\ndomain: real;\nstem: x' == 0;\nloop: x >= 0;\n");
  LassoProgram b = parse_lasso("vars: x;\nloop: x >= 0;\nstem: x' == 0;\ndomain: real;\n");
  CHECK(a == b);
}

TEST_CASE("domain defaults to real when omitted", "[parser]") {
  LassoProgram p = parse_lasso("vars: x;\nstem: ;\nloop: x >= 0;\n");
  CHECK(p.domain == Domain::Real);
}

TEST_CASE("equivalent spellings normalize to identical rows", "[parser]") {
  // One transition written three ways: integer-scaled, rational
  // coefficients, and a parenthesized quotient.
  std::string prefix = "vars: x, y;\ndomain: real;\nstem: y' == 2;\nloop: x >= 0, x' == x - y, ";
  LassoProgram scaled = parse_lasso(prefix + "2*y' == y + 1;\n");
  LassoProgram fractional = parse_lasso(prefix + "y' == 1/2*y + 1/2;\n");
  LassoProgram quotient = parse_lasso(prefix + "y' == (y + 1)/2;\n");
  CHECK(scaled == fractional);
  CHECK(scaled == quotient);
}

TEST_CASE("comments and whitespace are ignored", "[parser]") {
  LassoProgram a = parse_lasso(
      "# header comment\nvars: x;  # trailing\ndomain: real;\nstem: ;\nloop: x >= 0;\n");
  LassoProgram b = parse_lasso("vars: x;\ndomain: real;\nstem: ;\nloop: x >= 0;\n");
  CHECK(a == b);
}

TEST_CASE("error positions and messages", "[parser]") {
  auto check_error = [](const std::string& source, int line, const std::string& needle) {
    try {
      parse_lasso(source);
      FAIL("expected ParseError for: " << needle);
    } catch (const ParseError& e) {
      CHECK(e.line == line);
      CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring(needle));
    }
  };

  check_error("vars: x;\ndomain: real;\nstem: ;\nloop: y >= 0;\n", 4, "unknown variable 'y'");
  check_error("vars: x;\ndomain: real;\nstem: ;\nloop: x*x >= 0;\n", 4, "nonlinear term");
  check_error("vars: x;\ndomain: real;\nstem: ;\nloop: x/(1-1) >= 0;\n", 4, "division by zero");
  check_error("vars: x;\ndomain: real;\nstem: ;\nloop: 1/x >= 0;\n", 4, "division by a variable");
  check_error("vars: x;\nvars: y;\nstem: ;\nloop: x >= 0;\n", 2, "duplicate section: vars");
  check_error("vars: x, x;\ndomain: real;\nstem: ;\nloop: x >= 0;\n", 1, "duplicate variable 'x'");
  check_error("vars: x;\ndomain: real;\nstem: ;\nloop: x = 0;\n", 4, "single '='");
  check_error("vars: x;\ndomain: real;\nstem: ;\nloop: x @ 0;\n", 4, "unexpected character");
  check_error("vars: x;\ndomain: float;\nstem: ;\nloop: x >= 0;\n", 2, "unknown domain");
  check_error("vars: x;\ndomain: real;\nstem: x >= ;\nloop: x >= 0;\n", 3, "expected a number");

  // Missing sections surface at end of input; the position there is less
  // interesting than the message.
  CHECK_THROWS_WITH(parse_lasso("vars: x;\ndomain: real;\nstem: ;"),
                    Catch::Matchers::ContainsSubstring("missing section: loop"));
  CHECK_THROWS_WITH(parse_lasso("domain: real;\nstem: ;\nloop: 1 >= 0;\n"),
                    Catch::Matchers::ContainsSubstring("missing section: vars"));
  CHECK_THROWS_WITH(parse_lasso(""), Catch::Matchers::ContainsSubstring("missing section"));

  // Positions are 1-based line:column and appear in what().
  try {
    parse_lasso("vars: x;\ndomain: real;\nstem: ;\nloop: y >= 0;\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 4);
    CHECK(e.column == 7);
    CHECK_THAT(e.what(), Catch::Matchers::StartsWith("4:7:"));
  }
}

TEST_CASE("printer output reparses to the same program", "[parser]") {
  for (const auto& entry : corpus()) {
    INFO(entry.name);
    LassoProgram p = parse_lasso(entry.source);
    std::string printed = pretty_print(p);
    LassoProgram q = parse_lasso(printed);
    CHECK(p == q);
    // A second round must be a fixed point of printing.
    CHECK(pretty_print(q) == printed);
  }
}

TEST_CASE("round trip holds on random programs", "[parser]") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    LassoProgram p = random_lasso(seed);
    INFO("seed " << seed << "\n" << pretty_print(p));
    LassoProgram q = parse_lasso(pretty_print(p));
    REQUIRE(p == q);
  }
}
