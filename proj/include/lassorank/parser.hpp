#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lassorank/core.hpp"
#include "lassorank/rational.hpp"

namespace lassorank {

class ParseError : public std::runtime_error {
 public:
  int line;
  int column;
  ParseError(int line_, int column_, const std::string& msg)
      : std::runtime_error(std::to_string(line_) + ":" + std::to_string(column_) + ": " + msg),
        line(line_),
        column(column_) {}
};

namespace detail {

struct Token {
  enum class Kind { Ident, Number, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  bool primed = false;  // Ident only
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blank();
      Token t;
      t.line = line_;
      t.column = column_;
      if (eof()) {
        out.push_back(t);
        return out;
      }
      char c = peek();
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Token::Kind::Ident;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
          t.text += get();
        if (!eof() && peek() == '\'') {
          get();
          t.primed = true;
        }
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = Token::Kind::Number;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) t.text += get();
      } else {
        t.kind = Token::Kind::Punct;
        char first = get();
        t.text = std::string(1, first);
        if ((first == '<' || first == '>' || first == '=') && !eof() && peek() == '=')
          t.text += get();
        if (t.text == "=")
          throw ParseError(t.line, t.column, "single '=' is not a relation; use '=='");
        static const std::set<std::string> allowed = {":", ",", ";", "+", "-", "*", "/",
                                                      "(", ")", "<=", "<", ">=", ">", "=="};
        if (!allowed.count(t.text))
          throw ParseError(t.line, t.column, "unexpected character '" + t.text + "'");
      }
      out.push_back(std::move(t));
    }
  }

 private:
  bool eof() const { return pos_ >= src_.size(); }
  char peek() const { return src_[pos_]; }
  char get() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }
  void skip_blank() {
    while (!eof()) {
      char c = peek();
      if (c == '#') {
        while (!eof() && peek() != '\n') get();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        get();
      } else {
        return;
      }
    }
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

// Affine expression under construction, kept linear by every operation.
struct Affine {
  std::map<VarRef, Rational> coeffs;
  Rational constant{0};

  bool is_constant() const { return coeffs.empty(); }
};

class Parser {
 public:
  explicit Parser(const std::string& src) : tokens_(Lexer(src).run()) {}

  LassoProgram run() {
    while (!at_end()) section();
    const Token& end = cur();
    if (!saw_vars_) throw ParseError(end.line, end.column, "missing section: vars");
    if (!stem_rows_) throw ParseError(end.line, end.column, "missing section: stem");
    if (!loop_rows_) throw ParseError(end.line, end.column, "missing section: loop");
    LassoProgram p;
    p.program_vars = vars_;
    p.domain = domain_.value_or(Domain::Real);
    p.stem.variables = transition_vars(vars_);
    p.stem.constraints = *stem_rows_;
    p.loop.variables = transition_vars(vars_);
    p.loop.constraints = *loop_rows_;
    return p;
  }

 private:
  const Token& cur() const { return tokens_[pos_]; }
  bool at_end() const { return cur().kind == Token::Kind::End; }
  const Token& advance() { return tokens_[pos_++]; }

  bool is_punct(const std::string& s) const {
    return cur().kind == Token::Kind::Punct && cur().text == s;
  }

  void expect_punct(const std::string& s, const std::string& what) {
    if (!is_punct(s))
      throw ParseError(cur().line, cur().column, "expected '" + s + "' " + what);
    advance();
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(cur().line, cur().column, msg);
  }

  void section() {
    if (cur().kind != Token::Kind::Ident || cur().primed)
      fail("expected a section name (vars, domain, stem, loop)");
    Token head = advance();
    expect_punct(":", "after section name '" + head.text + "'");
    if (head.text == "vars") {
      if (saw_vars_) throw ParseError(head.line, head.column, "duplicate section: vars");
      saw_vars_ = true;
      vars_section();
    } else if (head.text == "domain") {
      if (domain_) throw ParseError(head.line, head.column, "duplicate section: domain");
      domain_section();
    } else if (head.text == "stem") {
      if (stem_rows_) throw ParseError(head.line, head.column, "duplicate section: stem");
      stem_rows_ = relation_list();
    } else if (head.text == "loop") {
      if (loop_rows_) throw ParseError(head.line, head.column, "duplicate section: loop");
      loop_rows_ = relation_list();
    } else {
      throw ParseError(head.line, head.column, "unknown section '" + head.text + "'");
    }
  }

  void vars_section() {
    for (;;) {
      if (cur().kind != Token::Kind::Ident || cur().primed) fail("expected a variable name");
      Token name = advance();
      if (declared_.count(name.text))
        throw ParseError(name.line, name.column, "duplicate variable '" + name.text + "'");
      declared_.insert(name.text);
      vars_.push_back(name.text);
      if (is_punct(",")) {
        advance();
        continue;
      }
      expect_punct(";", "after variable list");
      return;
    }
  }

  void domain_section() {
    if (cur().kind != Token::Kind::Ident) fail("expected 'real' or 'int'");
    Token d = advance();
    if (d.text == "real" && !d.primed)
      domain_ = Domain::Real;
    else if (d.text == "int" && !d.primed)
      domain_ = Domain::Int;
    else
      throw ParseError(d.line, d.column, "unknown domain '" + d.text + "'");
    expect_punct(";", "after domain");
  }

  std::vector<Constraint> relation_list() {
    std::vector<Constraint> rows;
    if (is_punct(";")) {  // empty section
      advance();
      return rows;
    }
    for (;;) {
      relation(rows);
      if (is_punct(",")) {
        advance();
        continue;
      }
      expect_punct(";", "after constraint list");
      return rows;
    }
  }

  void relation(std::vector<Constraint>& rows) {
    Affine lhs = expr();
    if (cur().kind != Token::Kind::Punct) fail("expected a relation (<=, <, >=, >, ==)");
    std::string rel = cur().text;
    if (rel != "<=" && rel != "<" && rel != ">=" && rel != ">" && rel != "==")
      fail("expected a relation (<=, <, >=, >, ==)");
    advance();
    Affine rhs = expr();
    AffineTerm t;
    for (const auto& [v, c] : lhs.coeffs) t.add(v, c);
    for (const auto& [v, c] : rhs.coeffs) t.add(v, -c);
    t.constant = lhs.constant - rhs.constant;
    if (rel == "<=") {
      rows.push_back(Constraint::make(std::move(t), Relation::LEQ));
    } else if (rel == "<") {
      rows.push_back(Constraint::make(std::move(t), Relation::LT));
    } else if (rel == ">=") {
      rows.push_back(Constraint::make(-t, Relation::LEQ));
    } else if (rel == ">") {
      rows.push_back(Constraint::make(-t, Relation::LT));
    } else {  // == splits into two complementary rows
      rows.push_back(Constraint::make(t, Relation::LEQ));
      rows.push_back(Constraint::make(-t, Relation::LEQ));
    }
  }

  Affine expr() {
    bool negate = false;
    if (is_punct("+") || is_punct("-")) negate = advance().text == "-";
    Affine acc = term();
    if (negate) acc = scale(acc, Rational(-1));
    while (is_punct("+") || is_punct("-")) {
      bool minus = advance().text == "-";
      Affine t = term();
      if (minus) t = scale(t, Rational(-1));
      for (const auto& [v, c] : t.coeffs) add_coeff(acc, v, c);
      acc.constant += t.constant;
    }
    return acc;
  }

  Affine term() {
    Affine acc = factor();
    while (is_punct("*") || is_punct("/")) {
      Token op = advance();
      Affine rhs = factor();
      if (op.text == "*") {
        if (!acc.is_constant() && !rhs.is_constant())
          throw ParseError(op.line, op.column, "nonlinear term: product of two variable expressions");
        if (rhs.is_constant())
          acc = scale(acc, rhs.constant);
        else
          acc = scale(rhs, acc.constant);
      } else {
        if (!rhs.is_constant())
          throw ParseError(op.line, op.column, "nonlinear term: division by a variable expression");
        if (rhs.constant == 0) throw ParseError(op.line, op.column, "division by zero");
        acc = scale(acc, Rational(1) / rhs.constant);
      }
    }
    return acc;
  }

  Affine factor() {
    if (cur().kind == Token::Kind::Number) {
      Affine a;
      a.constant = Rational(BigInt(advance().text));
      return a;
    }
    if (cur().kind == Token::Kind::Ident) {
      Token v = advance();
      if (!declared_.count(v.text))
        throw ParseError(v.line, v.column, "unknown variable '" + v.text + "'");
      Affine a;
      a.coeffs.emplace(VarRef{v.text, v.primed}, Rational(1));
      return a;
    }
    if (is_punct("(")) {
      advance();
      Affine a = expr();
      expect_punct(")", "to close parenthesized expression");
      return a;
    }
    fail("expected a number, variable, or parenthesized expression");
  }

  static Affine scale(Affine a, const Rational& k) {
    if (k == 0) return Affine{{}, Rational(0)};
    for (auto& [v, c] : a.coeffs) c *= k;
    a.constant *= k;
    return a;
  }

  static void add_coeff(Affine& a, const VarRef& v, const Rational& c) {
    auto [it, fresh] = a.coeffs.try_emplace(v, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) a.coeffs.erase(it);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  bool saw_vars_ = false;
  std::vector<std::string> vars_;
  std::set<std::string> declared_;
  std::optional<Domain> domain_;
  std::optional<std::vector<Constraint>> stem_rows_;
  std::optional<std::vector<Constraint>> loop_rows_;
};

inline std::string print_rational(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline std::string print_magnitude_times(const Rational& c, const VarRef& v) {
  Rational a = c < 0 ? -c : c;
  if (a == 1) return to_string(v);
  return print_rational(a) + "*" + to_string(v);
}

inline std::string print_var_part(const AffineTerm& t) {
  std::string out;
  bool first = true;
  for (const auto& [v, c] : t.coefficients) {
    if (first) {
      if (c < 0) out += "-";
      out += print_magnitude_times(c, v);
      first = false;
    } else {
      out += c < 0 ? " - " : " + ";
      out += print_magnitude_times(c, v);
    }
  }
  return out;
}

// Same term, but led by a positive-coefficient summand when one exists. Used
// for equality rows, whose sign may not be flipped without reordering the
// two rows they parse back into.
inline std::string print_var_part_lead_positive(const AffineTerm& t) {
  auto lead = t.coefficients.end();
  for (auto it = t.coefficients.begin(); it != t.coefficients.end(); ++it)
    if (it->second > 0) {
      lead = it;
      break;
    }
  std::string out;
  bool first = true;
  auto emit = [&](const VarRef& v, const Rational& c) {
    if (first) {
      if (c < 0) out += "-";
      out += print_magnitude_times(c, v);
      first = false;
    } else {
      out += c < 0 ? " - " : " + ";
      out += print_magnitude_times(c, v);
    }
  };
  if (lead != t.coefficients.end()) emit(lead->first, lead->second);
  for (auto it = t.coefficients.begin(); it != t.coefficients.end(); ++it)
    if (it != lead) emit(it->first, it->second);
  return out;
}

}  // namespace detail

inline LassoProgram parse_lasso(const std::string& source) { return detail::Parser(source).run(); }

// Compact textual form; parse(pretty_print(p)) == p for every parsed p.
inline std::string pretty_print(const LassoProgram& p) {
  auto row_list = [](const Polyhedron& poly) {
    std::string out;
    const auto& rows = poly.constraints;
    bool first = true;
    auto append = [&](const std::string& s) {
      if (!first) out += ", ";
      out += s;
      first = false;
    };
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const AffineTerm& t = rows[i].term;
      AffineTerm vp = t;
      vp.constant = 0;
      // Complementary adjacent <= rows print as one equality.
      if (!rows[i].strict() && i + 1 < rows.size() && !rows[i + 1].strict() &&
          rows[i + 1].term == -t && !vp.coefficients.empty()) {
        append(detail::print_var_part_lead_positive(vp) + " == " +
               detail::print_rational(-t.constant));
        ++i;
        continue;
      }
      if (vp.coefficients.empty()) {
        append("0 " + std::string(rows[i].strict() ? "<" : "<=") + " " +
               detail::print_rational(-t.constant));
        continue;
      }
      bool flip = vp.coefficients.begin()->second < 0;
      std::string rel = flip ? (rows[i].strict() ? ">" : ">=") : (rows[i].strict() ? "<" : "<=");
      append(detail::print_var_part(flip ? -vp : vp) + " " + rel + " " +
             detail::print_rational(flip ? t.constant : -t.constant));
    }
    return out.empty() ? ";" : out + ";";
  };

  std::string out = "vars: ";
  for (std::size_t i = 0; i < p.program_vars.size(); ++i) {
    if (i) out += ", ";
    out += p.program_vars[i];
  }
  out += ";\n";
  out += "domain: ";
  out += p.domain == Domain::Int ? "int" : "real";
  out += ";\n";
  out += "stem: " + row_list(p.stem) + "\n";
  out += "loop: " + row_list(p.loop) + "\n";
  return out;
}

}  // namespace lassorank
