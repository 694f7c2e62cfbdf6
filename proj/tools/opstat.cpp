#include <CLI11.hpp>
#include <iostream>

#include "opstat/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"opstat - prover for universal statements about linear operators"};
  app.require_subcommand(1);

  opstat::RunOptions opts;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("file", opts.file, "input file")->required();
  };

  CLI::App* prove = app.add_subcommand("prove", "prove the claim of a problem file");
  add_common(prove);
  uint64_t max_rounds = 0;
  int node_timeout = 0;
  uint32_t max_degree = 0;
  uint64_t ops_scale = 0;
  unsigned threads = 0;
  prove->add_option("--max-rounds", max_rounds, "round limit, 0 = unbounded")
      ->each([&](const std::string&) { opts.max_rounds = max_rounds; });
  prove->add_option("--node-timeout-ms", node_timeout, "incremental node time slice (default 1000)")
      ->each([&](const std::string&) { opts.node_timeout_ms = node_timeout; });
  prove->add_flag_callback("--incremental", [&]() { opts.incremental = true; },
                           "incremental idealisation (default on)");
  prove->add_flag_callback("--no-incremental", [&]() { opts.incremental = false; },
                           "materialise the full CNF instead");
  prove->add_flag_callback("--witness-search", [&]() { opts.witness_search = true; },
                           "complete partial hints by elimination (default on)");
  prove->add_flag_callback("--no-witness-search", [&]() { opts.witness_search = false; },
                           "disable witness search");
  prove->add_option("--max-degree", max_degree, "bounded completion mode (default off)")
      ->each([&](const std::string&) { opts.max_degree = max_degree; });
  prove->add_option("--ops-per-round", ops_scale, "scale of the per-round operation schedule")
      ->each([&](const std::string&) { opts.ops_scale = ops_scale; });
  prove->add_flag_callback("--no-fc-simplify", [&]() { opts.fc_simplify = false; },
                           "keep reflexive functional-consistency hypotheses");
  prove->add_option("--threads", threads, "worker threads (capped by OPSTAT_THREADS)")
      ->each([&](const std::string&) { opts.threads = threads; });
  prove->add_option("--cert-out", opts.cert_out, "write the certificate bundle here");
  prove->add_option("--trace-out", opts.trace_out, "write the proof trace here");

  CLI::App* check = app.add_subcommand("check-cert", "replay a certificate bundle");
  add_common(check);

  CLI11_PARSE(app, argc, argv);

  opts.command = prove->parsed() ? "prove" : "check-cert";
  return opstat::run(opts, std::cout, std::cerr);
}
