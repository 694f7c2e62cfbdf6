#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "opstat/bundle.hpp"
#include "opstat/problem.hpp"
#include "opstat/runner.hpp"

using namespace opstat;

TEST_CASE("minimal problem parses and renders") {
  ProblemFile p = parse_problem("obj u;\nconst c : u -> u;\nclaim c = c;\n");
  CHECK(p.sig.object_count() == 1);
  REQUIRE(!p.claim.null());
  CHECK(render_formula(p.sig, p.claim) == "c = c");
  // parse-render round trip is the identity on the canonical rendering
  std::string canon = render_problem(p);
  CHECK(render_problem(parse_problem(canon)) == canon);
}

TEST_CASE("full statement variety round-trips") {
  const char* text = R"(
# a small involution problem
obj u v;
const c : u -> v;
const e : u -> u;
fun star : (u,v) -> (v,u);
fun star : (v,u) -> (u,v);
rule star(star(T)) => T;
option adjoint star;
assume forall y:(u,v) . y = c -> star(y) = star(c);
claim exists x:(u,v) . x = c & (e = e | c != x);
hint x -> c;
)";
  ProblemFile p = parse_problem(text);
  CHECK(p.sig.object_count() == 2);
  CHECK(p.rules.size() == 1);
  CHECK(p.hints.size() == 1);
  CHECK(p.assumptions.size() == 1);
  REQUIRE(p.options.size() == 1);
  CHECK(p.options[0] == std::make_pair(std::string("adjoint"), std::string("star")));
  std::string canon = render_problem(p);
  CHECK(render_problem(parse_problem(canon)) == canon);
}

TEST_CASE("operator precedence in terms and formulas") {
  ProblemFile p = parse_problem(
      "obj u;\nconst a : u -> u;\nconst b : u -> u;\n"
      "claim a * b + -a * b = 0 -> a = b | a = a & b = b;\n");
  // * binds over unary -, which binds over +; & over |, | over ->; a sum of
  // a negation renders with binary '-'
  CHECK(render_formula(p.sig, p.claim) == "a * b - a * b = 0 -> a = b | a = a & b = b");
}

TEST_CASE("zero constants") {
  SUBCASE("sort inferred from the other equation side") {
    ProblemFile p = parse_problem("obj u v;\nconst c : u -> v;\nclaim c = 0;\n");
    CHECK(p.claim.rhs().is_const());
    CHECK(p.sig.constant(p.claim.rhs().constant()).is_zero);
    CHECK(p.sig.constant(p.claim.rhs().constant()).sort == p.claim.lhs().sort());
  }
  SUBCASE("sort inferred inside a sum") {
    ProblemFile p = parse_problem("obj u;\nconst a : u -> u;\nclaim a + 0 = a;\n");
    CHECK(render_formula(p.sig, p.claim) == "a + 0 = a");
  }
  SUBCASE("annotated zero parses anywhere") {
    ProblemFile p = parse_problem("obj u v;\nconst c : u -> v;\nclaim c * 0[u,u] = 0[u,v];\n");
    CHECK(!p.claim.null());
  }
  SUBCASE("ambiguous zero is a parse error") {
    CHECK_THROWS_AS(parse_problem("obj u v;\nconst c : u -> v;\nclaim c * 0 = 0;\n"), ParseError);
  }
}

TEST_CASE("parse errors carry positions and causes") {
  CHECK_THROWS_AS(parse_problem("const x : u -> w;"), ParseError);
  CHECK_THROWS_AS(parse_problem("obj u;\nconst c : u -> u;\nclaim c = c;\nclaim c = c;\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_problem("obj u;\nconst $c : u -> u;"), ParseError);
  CHECK_THROWS_AS(parse_problem("obj u;\nconst c : u -> u;\nclaim c = d;\n"), ParseError);
  CHECK_THROWS_AS(parse_problem("obj u;\nconst c : u -> u;\nclaim c = c\n"), ParseError);
  // variable reuse at a different sort
  CHECK_THROWS_AS(parse_problem("obj u v;\nclaim (forall x:(u,u) . x = x) & "
                                "(forall x:(u,v) . x = x);\n"),
                  ParseError);
}

TEST_CASE("function overloads resolve by argument sorts") {
  ProblemFile p = parse_problem(
      "obj u v;\nconst c : u -> v;\nconst e : u -> u;\n"
      "fun star : (u,v) -> (v,u);\nfun star : (u,u) -> (u,u);\n"
      "claim star(c) = star(c) & star(e) = star(e);\n");
  CHECK(!p.claim.null());
  CHECK_THROWS_AS(parse_problem("obj u v;\nconst c : u -> v;\n"
                                "fun star : (u,u) -> (u,u);\nclaim star(c) = star(c);\n"),
                  ParseError);
}

namespace {

std::string temp_path(const std::string& name) {
  return std::string("/tmp/opstat_test_") + name;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

int run_cli(const RunOptions& opts, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  int code = run(opts, out, err);
  if (out_text) *out_text = out.str() + err.str();
  return code;
}

}  // namespace

TEST_CASE("runner: prove, certificates, and exit codes") {
  // reflexivity proves with an empty certificate
  std::string problem = temp_path("refl.op");
  write_text(problem,
             "obj u;\nconst c : u -> u;\nclaim forall x:(u,u) . x = x;\n");
  std::string cert = temp_path("refl.cert");
  std::string trace = temp_path("refl.trace");

  RunOptions opts;
  opts.command = "prove";
  opts.file = problem;
  opts.cert_out = cert;
  opts.trace_out = trace;
  std::string output;
  CHECK(run_cli(opts, &output) == 0);
  CHECK(output.find("status: proved") != std::string::npos);

  SUBCASE("produced bundle verifies") {
    RunOptions check;
    check.command = "check-cert";
    check.file = cert;
    CHECK(run_cli(check) == 0);
  }
  SUBCASE("tampered bundle is rejected with a distinct code") {
    std::ifstream in(cert);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    // perturb a coefficient in some summand line if present; otherwise
    // corrupt a generator polynomial
    ProblemFile dummy;
    Bundle b = parse_bundle(text);
    if (!b.clauses.empty() && !b.clauses[0].cert.summands.empty()) {
      b.clauses[0].cert.summands[0].coeff += 1;
    } else if (!b.clauses.empty()) {
      b.clauses[0].cert.target = NCPolynomial::monomial({}, 1);
    }
    std::string tampered_path = temp_path("refl_tampered.cert");
    write_text(tampered_path, write_bundle(b));
    RunOptions check;
    check.command = "check-cert";
    check.file = tampered_path;
    CHECK(run_cli(check) == 1);
  }
  SUBCASE("garbage input gives exit 3") {
    std::string bad = temp_path("bad.op");
    write_text(bad, "obj u;\nclaim ???;\n");
    RunOptions pr;
    pr.command = "prove";
    pr.file = bad;
    CHECK(run_cli(pr) == 3);
    RunOptions check;
    check.command = "check-cert";
    check.file = bad;
    CHECK(run_cli(check) == 3);
  }
}

TEST_CASE("runner: disproof and timeout exit codes") {
  SUBCASE("ground disproof exits 1") {
    std::string problem = temp_path("disproof.op");
    write_text(problem,
               "obj u;\nconst x : u -> u;\nconst y : u -> u;\n"
               "assume x * y = 0;\nclaim y * x = 0;\n");
    RunOptions opts;
    opts.command = "prove";
    opts.file = problem;
    std::string output;
    CHECK(run_cli(opts, &output) == 1);
    CHECK(output.find("status: not provable") != std::string::npos);
  }
  SUBCASE("round limit exits 2") {
    std::string problem = temp_path("undecided.op");
    write_text(problem,
               "obj u;\nconst c : u -> u;\nconst d : u -> u;\n"
               "option max_rounds 3;\n"
               "claim exists x:(u,u) . x * c = d;\n");
    RunOptions opts;
    opts.command = "prove";
    opts.file = problem;
    CHECK(run_cli(opts) == 2);
  }
}

TEST_CASE("bundle round trip") {
  Bundle b;
  b.indet_names = {"x", "iu"};
  NCPolynomial g;
  g.add_term({0, 1}, 1);
  g.add_term({0}, -1);
  b.generators.push_back(g);
  BundleClause c;
  c.text = "x * iu != x | x = x";
  c.gen_refs = {0};
  c.cert.target = g;
  c.cert.summands.push_back(CertSummand{1, {}, 0, {}});
  b.clauses.push_back(c);
  std::string text = write_bundle(b);
  Bundle back = parse_bundle(text);
  CHECK(back.indet_names == b.indet_names);
  REQUIRE(back.generators.size() == 1);
  CHECK(back.generators[0] == g);
  REQUIRE(back.clauses.size() == 1);
  CHECK(back.clauses[0].cert.target == g);
  CHECK(check_bundle(back));
  CHECK(write_bundle(back) == text);
}
