#include "opstat/runner.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "opstat/bundle.hpp"

namespace opstat {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << content;
}

bool parse_bool(const std::string& v) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw InputError("expected on/off, got '" + v + "'");
}

uint64_t parse_num(const std::string& v) {
  for (char c : v) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw InputError("expected a number, got '" + v + "'");
    }
  }
  return std::stoull(v);
}

ProverConfig build_config(const ProblemFile& p, const RunOptions& opts) {
  ProverConfig cfg;
  cfg.rules = p.rules;
  cfg.hints = p.hints;
  for (const auto& [key, value] : p.options) {
    if (key == "max_rounds") {
      cfg.max_rounds = parse_num(value);
    } else if (key == "node_timeout_ms") {
      cfg.node_timeout_ms = static_cast<int>(parse_num(value));
    } else if (key == "incremental") {
      cfg.incremental = parse_bool(value);
    } else if (key == "witness_search") {
      cfg.witness_search = parse_bool(value);
    } else if (key == "max_degree") {
      cfg.max_degree = static_cast<uint32_t>(parse_num(value));
    } else if (key == "ops_per_round") {
      cfg.ops_scale = parse_num(value);
    } else if (key == "adjoint") {
      cfg.adjoint_symbols.push_back(value);
    } else if (key == "fc_simplify") {
      cfg.fc_simplify = parse_bool(value);
    } else if (key == "threads") {
      cfg.threads = static_cast<unsigned>(parse_num(value));
    } else {
      throw InputError("unknown option '" + key + "'");
    }
  }
  if (opts.max_rounds) cfg.max_rounds = *opts.max_rounds;
  if (opts.node_timeout_ms) cfg.node_timeout_ms = *opts.node_timeout_ms;
  if (opts.incremental) cfg.incremental = *opts.incremental;
  if (opts.witness_search) cfg.witness_search = *opts.witness_search;
  if (opts.max_degree) cfg.max_degree = *opts.max_degree;
  if (opts.ops_scale) cfg.ops_scale = *opts.ops_scale;
  if (opts.fc_simplify) cfg.fc_simplify = *opts.fc_simplify;
  if (opts.threads) cfg.threads = *opts.threads;

  if (cfg.threads == 0) cfg.threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("OPSTAT_THREADS")) {
    unsigned cap = static_cast<unsigned>(parse_num(env));
    cfg.threads = std::max(1u, std::min(cfg.threads, cap));
  }
  return cfg;
}

void write_trace(std::ostream& out, const ProveResult& res, const Signature& sig) {
  const ProofTrace& t = res.trace;
  out << "opstat proof trace\n";
  switch (res.status) {
    case ProveStatus::Proved: out << "status: proved\n"; break;
    case ProveStatus::NotProvable: out << "status: not provable\n"; break;
    case ProveStatus::Timeout: out << "status: timeout\n"; break;
  }
  for (const IntroducedSymbol& i : t.herbrand_introduced) {
    out << "herbrand: " << i.name << " replaces universal " << sig.variable(i.replaced).name
        << (i.is_function ? " (function)" : " (constant)") << "\n";
  }
  out << "ground fast path: " << (t.ground_fast_path ? "yes" : "no") << "\n";
  if (t.used_witness_search) {
    for (const std::string& w : t.witness_bindings) out << "witness: " << w << "\n";
  }
  for (const std::string& line : t.instantiations) out << line << "\n";
  for (const std::string& line : t.ackermann_entries) out << "ackermann: " << line << "\n";
  out << "deciding instance: " << t.deciding_instance << "\n";
  out << "rounds: " << t.rounds << "\n";
  out << "ackermann reductions: " << t.ackermann_runs << "\n";
  out << "membership tests: " << t.membership_tests << "\n";
  for (size_t k = 0; k < t.task_ops.size(); ++k) {
    out << "ops granted to instance set " << (k + 1) << ": " << t.task_ops[k] << "\n";
  }
  out << "base clauses: " << t.result.base_clauses.size() << "\n";
  for (const Clause& c : t.result.base_clauses) {
    out << "base clause: " << render_clause(sig, c) << "\n";
  }
  out << "clause records: " << t.result.clauses.size() << "\n";
  for (const ClauseIdealisation& rec : t.result.clauses) {
    out << "clause: " << render_clause(sig, rec.clause) << "\n";
    out << "  verdict: " << verdict_name(rec.verdict);
    if (rec.verdict == Verdict3::True) out << " (candidate " << rec.winning_candidate << ")";
    out << "\n";
    if (rec.certificate) {
      out << "  certificate: " << render_certificate(*rec.certificate, t.indet_names) << "\n";
    }
    if (rec.verdict == Verdict3::False) {
      out << "  complete basis of " << rec.complete_basis.size() << " elements\n";
    }
  }
  out << "wall ms: " << t.wall_ms << "\n";
}

int run_prove(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  ProblemFile pf;
  try {
    pf = parse_problem(read_file(opts.file));
    if (pf.claim.null()) throw InputError("problem file declares no claim");
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  ProveResult res;
  Problem problem{pf.sig, pf.assumptions, pf.claim};
  try {
    ProverConfig cfg = build_config(pf, opts);
    res = prove(problem, cfg);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  std::ostringstream trace_text;
  write_trace(trace_text, res, res.sig);
  out << trace_text.str();
  if (!opts.trace_out.empty()) write_file(opts.trace_out, trace_text.str());
  if (res.status == ProveStatus::Proved && !opts.cert_out.empty()) {
    Bundle b = make_bundle(res.trace, res.sig);
    write_file(opts.cert_out, write_bundle(b));
  }
  switch (res.status) {
    case ProveStatus::Proved: return 0;
    case ProveStatus::NotProvable: return 1;
    case ProveStatus::Timeout: return 2;
  }
  return 2;
}

int run_check_cert(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    Bundle b = parse_bundle(read_file(opts.file));
    if (check_bundle(b)) {
      out << "certificate bundle verified: " << b.clauses.size() << " clause(s)\n";
      return 0;
    }
    err << "certificate bundle rejected\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace

int run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.command == "prove") return run_prove(opts, out, err);
  if (opts.command == "check-cert") return run_check_cert(opts, out, err);
  err << "error: unknown command '" << opts.command << "'\n";
  return 3;
}

}  // namespace opstat
