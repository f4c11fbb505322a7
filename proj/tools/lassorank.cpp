// Command-line driver: synthesize or check termination arguments for linear
// lasso programs.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lassorank/lassorank.hpp"

namespace {

using nlohmann::json;
using namespace lassorank;

constexpr int kExitSuccess = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitInputError = 2;  // parse errors, unreadable files, bad argument documents
constexpr int kExitPrecondition = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string print_affine(const AffineTerm& t) {
  std::string vars = detail::print_var_part(t);
  if (vars.empty()) return detail::print_rational(t.constant);
  if (t.constant == 0) return vars;
  return vars + (t.constant < 0 ? " - " : " + ") +
         detail::print_rational(t.constant < 0 ? -t.constant : t.constant);
}

std::string print_row(const Constraint& c) {
  AffineTerm vp = c.term;
  vp.constant = 0;
  std::string lhs = vp.coefficients.empty() ? "0" : detail::print_var_part(vp);
  return lhs + (c.strict() ? " < " : " <= ") + detail::print_rational(-c.term.constant);
}

std::string print_comb(const UnknownComb& comb) {
  std::string out;
  bool first = true;
  for (const auto& [u, w] : comb.weights) {
    std::string mag = w == 1 || w == -1 ? to_string(u) : detail::print_rational(w < 0 ? -w : w) + "*" + to_string(u);
    if (first) {
      out += (w < 0 ? "-" : "") + mag;
      first = false;
    } else {
      out += (w < 0 ? " - " : " + ") + mag;
    }
  }
  if (comb.constant != 0 || out.empty()) {
    std::string mag = detail::print_rational(comb.constant < 0 ? -comb.constant : comb.constant);
    if (out.empty())
      out = (comb.constant < 0 ? "-" : "") + mag;
    else
      out += (comb.constant < 0 ? " - " : " + ") + mag;
  }
  return out;
}

std::string print_symbolic(const SymbolicAffine& s) {
  std::string out;
  for (const auto& [v, comb] : s.coefficients) {
    if (!out.empty()) out += " + ";
    out += "(" + print_comb(comb) + ")*" + to_string(v);
  }
  if (!(s.constant == UnknownComb{}) || out.empty()) {
    if (!out.empty()) out += " + ";
    out += "(" + print_comb(s.constant) + ")";
  }
  return out;
}

std::string print_linear_constraint(const LinearConstraint& c) {
  std::string out;
  bool first = true;
  for (const auto& [u, w] : c.coefficients) {
    std::string mag = w == 1 || w == -1 ? to_string(u) : detail::print_rational(w < 0 ? -w : w) + "*" + to_string(u);
    if (first) {
      out += (w < 0 ? "-" : "") + mag;
      first = false;
    } else {
      out += (w < 0 ? " - " : " + ") + mag;
    }
  }
  if (out.empty()) out = "0";
  out += c.cmp == Cmp::EQ ? " == " : (c.cmp == Cmp::LT ? " < " : " <= ");
  out += detail::print_rational(c.rhs);
  return out;
}

json rational_json(const Rational& r) { return to_fraction_string(r); }

json coeffs_json(const std::map<std::string, Rational>& m, const std::vector<std::string>& vars) {
  json out = json::object();
  for (const auto& v : vars) {
    auto it = m.find(v);
    out[v] = rational_json(it == m.end() ? Rational(0) : it->second);
  }
  return out;
}

struct CommonOpts {
  std::string file;
  std::string domain;       // "", "real", "int"
  std::string tighten = "gcd";
  std::string emit = "text";
};

AnalysisConfig config_from(const CommonOpts& opts) {
  AnalysisConfig cfg;
  if (opts.domain == "real") cfg.domain_override = Domain::Real;
  if (opts.domain == "int") cfg.domain_override = Domain::Int;
  cfg.int_tighten = opts.tighten == "none" ? TightenMode::None : TightenMode::Gcd;
  return cfg;
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("file", opts.file, "input .lasso program")->required();
  cmd->add_option("--domain", opts.domain, "override the program's domain")
      ->check(CLI::IsMember({"real", "int"}));
  cmd->add_option("--int-tighten", opts.tighten, "integer rounding mode (default gcd)")
      ->check(CLI::IsMember({"gcd", "none"}));
  cmd->add_option("--emit", opts.emit, "output format (default text)")
      ->check(CLI::IsMember({"text", "json"}));
}

json constraints_json(const LassoProgram& prepared, const FarkasOptions& fopts) {
  json out;
  auto templates = build_or_to_plus(prepared);
  json tpl = json::array();
  for (std::size_t i = 0; i < 4; ++i) {
    json t;
    t["lhs"] = json::array();
    for (const auto& row : templates[i].lhs.constraints) t["lhs"].push_back(print_row(row));
    t["rhs"] = print_symbolic(templates[i].rhs) + " >= " +
               (templates[i].bound == RhsBound::Delta ? "delta" : "0");
    tpl.push_back(std::move(t));
  }
  out["templates"] = std::move(tpl);
  LinearSystem sys = assemble_system(prepared, fopts);
  json rows = json::array();
  for (const auto& c : sys.constraints) rows.push_back(print_linear_constraint(c));
  json names = json::array();
  for (const auto& u : sys.unknowns) names.push_back(to_string(u));
  json nonneg = json::array();
  for (const auto& u : sys.nonnegative) nonneg.push_back(to_string(u));
  out["system"] = {{"unknowns", std::move(names)},
                   {"nonnegative", std::move(nonneg)},
                   {"constraints", std::move(rows)}};
  return out;
}

void print_constraints_text(std::ostream& os, const LassoProgram& prepared,
                            const FarkasOptions& fopts) {
  auto templates = build_or_to_plus(prepared);
  os << "templates:\n";
  for (std::size_t i = 0; i < 4; ++i) {
    os << "  " << i + 1 << ": lhs(" << (i == 0 ? "stem" : "loop") << "):";
    if (templates[i].lhs.constraints.empty()) os << " (empty)";
    os << "\n";
    for (const auto& row : templates[i].lhs.constraints) os << "       " << print_row(row) << "\n";
    os << "     rhs: " << print_symbolic(templates[i].rhs) << " >= "
       << (templates[i].bound == RhsBound::Delta ? "delta" : "0") << "\n";
  }
  LinearSystem sys = assemble_system(prepared, fopts);
  os << "system:\n  unknowns:";
  for (const auto& u : sys.unknowns) os << " " << to_string(u);
  os << "\n  nonnegative:";
  for (const auto& u : sys.nonnegative) os << " " << to_string(u);
  os << "\n";
  for (const auto& c : sys.constraints) os << "  " << print_linear_constraint(c) << "\n";
}

int run_analyze(const CommonOpts& opts, bool print_constraints, bool no_self_check) {
  AnalysisConfig cfg = config_from(opts);
  cfg.self_check = !no_self_check;
  LassoProgram program = parse_lasso(read_file(opts.file));
  PreparedProgram prep = prepare(program, cfg);
  SynthesisResult result = analyze(program, cfg);

  bool reached_assembly = std::holds_alternative<Infeasible>(result) ||
                          (std::holds_alternative<Success>(result) &&
                           !std::get<Success>(result).vacuous);

  if (opts.emit == "json") {
    json out;
    if (const Success* s = std::get_if<Success>(&result)) {
      out["status"] = "success";
      out["ranking"] = {{"coeffs", coeffs_json(s->ranking.coefficients, program.program_vars)},
                        {"const", rational_json(s->ranking.constant)}};
      out["invariant"] = {{"coeffs", coeffs_json(s->invariant.coefficients, program.program_vars)},
                          {"const", rational_json(s->invariant.constant)}};
      out["delta"] = rational_json(s->delta);
      json certs = json::array();
      for (const auto& cert : s->certificates) {
        json lam = json::array();
        for (const auto& l : cert.lambda) lam.push_back(rational_json(l));
        certs.push_back(std::move(lam));
      }
      out["certificates"] = std::move(certs);
      out["vacuous"] = s->vacuous;
    } else if (std::holds_alternative<Infeasible>(result)) {
      out["status"] = "infeasible";
    } else {
      out["status"] = "precondition_violated";
    }
    if (print_constraints && reached_assembly)
      out["constraints"] = constraints_json(prep.program, cfg.farkas);
    std::cout << out.dump(2) << "\n";
  } else {
    if (print_constraints && reached_assembly)
      print_constraints_text(std::cout, prep.program, cfg.farkas);
    if (const Success* s = std::get_if<Success>(&result)) {
      std::cout << "status: success\n";
      AffineTerm f;
      for (const auto& [v, c] : s->ranking.coefficients) f.add(unprimed(v), c);
      f.constant = s->ranking.constant;
      AffineTerm inv;
      for (const auto& [v, c] : s->invariant.coefficients) inv.add(unprimed(v), c);
      inv.constant = s->invariant.constant;
      std::cout << "ranking: f = " << print_affine(f) << "\n";
      std::cout << "invariant: " << print_affine(inv) << " >= 0\n";
      std::cout << "delta: " << detail::print_rational(s->delta) << "\n";
      std::cout << "vacuous: " << (s->vacuous ? "true" : "false") << "\n";
      std::cout << "certificates:\n";
      for (std::size_t i = 0; i < 4; ++i) {
        std::cout << "  " << i + 1 << ":";
        for (const auto& l : s->certificates[i].lambda) std::cout << " " << detail::print_rational(l);
        if (s->certificates[i].lambda.empty()) std::cout << " (empty)";
        std::cout << "\n";
      }
    } else if (std::holds_alternative<Infeasible>(result)) {
      std::cout << "status: infeasible\n";
      std::cout << "no ranking function with a non-decreasing linear supporting invariant\n";
      std::cout << "exists for this program in the or-to-plus constraint system.\n";
    } else {
      std::cout << "status: precondition_violated\n";
      std::cout << "the stem cannot be chained with a first loop iteration.\n";
    }
  }

  if (std::holds_alternative<Infeasible>(result)) return kExitInfeasible;
  if (std::holds_alternative<PreconditionViolated>(result)) return kExitPrecondition;
  return kExitSuccess;
}

Rational rational_field(const json& j, const std::string& what) {
  if (!j.is_string()) throw std::runtime_error("argument document: " + what + " must be a \"p/q\" string");
  try {
    return rational_from_string(j.get<std::string>());
  } catch (const std::exception& e) {
    throw std::runtime_error("argument document: bad rational in " + what + ": " + e.what());
  }
}

int run_check(const CommonOpts& opts, const std::string& argument_path) {
  AnalysisConfig cfg = config_from(opts);
  LassoProgram program = parse_lasso(read_file(opts.file));
  PreparedProgram prep = prepare(program, cfg);

  json doc;
  try {
    doc = json::parse(read_file(argument_path));
  } catch (const json::exception& e) {
    throw std::runtime_error("argument document: " + std::string(e.what()));
  }
  if (!doc.is_object() || !doc.contains("ranking") || !doc.contains("invariant") ||
      !doc.contains("delta"))
    throw std::runtime_error("argument document: need ranking, invariant, and delta fields");

  auto read_template = [&](const json& j, const std::string& what, std::map<std::string, Rational>& coeffs,
                           Rational& constant) {
    if (!j.is_object() || !j.contains("coeffs") || !j.contains("const"))
      throw std::runtime_error("argument document: " + what + " needs coeffs and const");
    for (const auto& [key, value] : j.at("coeffs").items()) {
      bool known = false;
      for (const auto& v : program.program_vars) known = known || v == key;
      if (!known) throw std::runtime_error("argument document: " + what + " names unknown variable '" + key + "'");
      coeffs[key] = rational_field(value, what + ".coeffs." + key);
    }
    constant = rational_field(j.at("const"), what + ".const");
  };

  RankingFunction f;
  SupportingInvariant inv;
  read_template(doc.at("ranking"), "ranking", f.coefficients, f.constant);
  read_template(doc.at("invariant"), "invariant", inv.coefficients, inv.constant);
  Rational delta = rational_field(doc.at("delta"), "delta");
  if (delta <= 0) throw std::runtime_error("argument document: delta must be positive");

  std::optional<Success> with_certs;
  bool vacuous_doc = doc.value("vacuous", false);
  if (doc.contains("certificates") && !vacuous_doc) {
    const json& certs = doc.at("certificates");
    if (!certs.is_array() || certs.size() != 4)
      throw std::runtime_error("argument document: certificates must be an array of 4 multiplier lists");
    Success s;
    s.ranking = f;
    s.invariant = inv;
    s.delta = delta;
    for (std::size_t i = 0; i < 4; ++i) {
      if (!certs[i].is_array())
        throw std::runtime_error("argument document: certificates must be an array of 4 multiplier lists");
      for (const auto& l : certs[i])
        s.certificates[i].lambda.push_back(rational_field(l, "certificates"));
    }
    with_certs = std::move(s);
  }

  CheckReport report = run_checks(prep.program, f, inv, delta, with_certs);

  if (opts.emit == "json") {
    json out;
    out["bms"] = report.bms;
    out["nondecreasing"] = report.nondecreasing;
    if (report.certificates) out["certificates"] = *report.certificates;
    out["overall"] = report.overall;
    std::cout << out.dump(2) << "\n";
  } else {
    auto row = [](const std::array<bool, 4>& a) {
      std::string s;
      for (std::size_t i = 0; i < 4; ++i)
        s += std::string(i ? " " : "") + std::to_string(i + 1) + "=" + (a[i] ? "true" : "false");
      return s;
    };
    std::cout << "bms: " << row(report.bms) << "\n";
    std::cout << "nondecreasing: " << (report.nondecreasing ? "true" : "false") << "\n";
    if (report.certificates) std::cout << "certificates: " << row(*report.certificates) << "\n";
    std::cout << "overall: " << (report.overall ? "true" : "false") << "\n";
  }
  return report.overall ? kExitSuccess : kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"termination argument synthesis for linear lasso programs"};
  app.require_subcommand(1);

  CommonOpts analyze_opts;
  bool print_constraints = false;
  bool no_self_check = false;
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "synthesize a ranking function");
  add_common(analyze_cmd, analyze_opts);
  analyze_cmd->add_flag("--print-constraints", print_constraints,
                        "dump template implications and the multiplier system");
  analyze_cmd->add_flag("--no-self-check", no_self_check, "skip post-synthesis verification");

  CommonOpts check_opts;
  std::string argument_path;
  CLI::App* check_cmd = app.add_subcommand("check", "verify a termination argument document");
  add_common(check_cmd, check_opts);
  check_cmd->add_option("--argument", argument_path, "argument JSON produced by analyze")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInputError;  // --help exits 0; usage errors are input errors
  }

  try {
    if (analyze_cmd->parsed()) return run_analyze(analyze_opts, print_constraints, no_self_check);
    return run_check(check_opts, argument_path);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}
