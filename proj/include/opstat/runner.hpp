#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace opstat {

/// Exit codes: 0 proved / certificate verified, 1 not provable / certificate
/// rejected, 2 timeout or undecided, 3 input error.
struct RunOptions {
  std::string command;  // "prove" or "check-cert"
  std::string file;
  std::optional<uint64_t> max_rounds;
  std::optional<int> node_timeout_ms;
  std::optional<bool> incremental;
  std::optional<bool> witness_search;
  std::optional<uint32_t> max_degree;
  std::optional<uint64_t> ops_scale;
  std::optional<bool> fc_simplify;
  std::optional<unsigned> threads;
  std::string cert_out;
  std::string trace_out;
};

int run(const RunOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace opstat
