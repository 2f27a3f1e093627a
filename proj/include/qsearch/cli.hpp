#pragma once

// Command-line front end. Each subcommand is a plain function over an
// options struct and output streams so tests can drive it without a
// process boundary. Exit codes: 0 success, 1 a checked inequality failed,
// 2 bad configuration, 3 the run needs more query steps than the
// algorithm has.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace qsearch {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRegime = 3;

struct ParamsOptions {
  double q = 0.0;
  int t = 0;
  int u = 0;
};

int cmd_params(const ParamsOptions& opt, std::ostream& out,
               std::ostream& err);

struct AttackOptions {
  std::size_t n = 0;
  std::string algorithm;  // lifted-bs | truncated-bs:<c> | zero-query | random:...
  std::optional<double> q;
  std::optional<int> t;
  std::optional<int> u;
  std::optional<int> v_override;
  double success_threshold = 0.75;
  std::uint64_t seed = 1;
  std::string out_path;        // empty writes to `out`
  std::string format = "json"; // json | csv
};

// With q, t, u set: builds the adversary trace, profiles the surviving
// pair and reports the verdict; checked inequalities that fail give exit
// 1. With none of them set: tests every adjacent pair directly.
int cmd_attack(const AttackOptions& opt, std::ostream& out,
               std::ostream& err);

struct VerifyOptions {
  std::size_t n = 512;
  double q = 18.3;
  int t = 8;
  int u = 4;
  int v_override = 0;  // 0 = auto
  int num_algorithms = 20;
  int algorithm_queries = 3;
  std::uint64_t seed = 1;
  int bv_pairs = 1000;
  std::size_t bv_n = 16;
  double bv_constant = 4.0;
  std::size_t lifted_n = 64;
  double tol = 1e-9;
};

int cmd_verify(const VerifyOptions& opt, std::ostream& out,
               std::ostream& err);

struct SweepOptions {
  std::vector<double> qs;
  std::vector<int> ts;
  std::vector<int> us;
  std::string out_path;
  std::string format = "csv";  // csv | json
};

int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err);

// Parses argv and dispatches; never throws.
int run_cli(int argc, const char* const* argv);

}  // namespace qsearch
