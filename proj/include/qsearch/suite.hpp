#pragma once

// Batch verification over seeded random algorithms: every inequality the
// adversary and verifier rely on, exercised across many subdivisions, plus
// measurement-gap sampling and the geometric tail.

#include <cstdint>
#include <string>
#include <vector>

#include "qsearch/adversary.hpp"
#include "qsearch/verifier.hpp"

namespace qsearch {

struct IneqStat {
  std::string name;
  long checked = 0;
  long violations = 0;
  // Minimum of bound - value over all checks; negative means a violation.
  double worst_slack = 1e300;

  void add(double value, double bound, double tol);
};

struct SuiteConfig {
  std::size_t n = 512;
  double q = 18.3;
  int t = 8;
  int u = 4;
  // Stopping depth for the traces; 0 = auto (u + nesting levels, capped
  // at what n supports and at 3).
  int v_override = 0;
  int num_algorithms = 20;
  int algorithm_queries = 3;
  std::uint64_t seed = 1;
  double tol = 1e-9;

  // Measurement-gap sampling.
  int bv_pairs = 1000;
  std::size_t bv_n = 16;
  double bv_constant = 4.0;  // asserted; the tighter factor 2 is monitored

  // Adjacent-pair hybrid walk of the exact search at this size.
  std::size_t lifted_n = 64;
};

struct SuiteResult {
  std::vector<IneqStat> stats;
  long subdivide_invocations = 0;
  int algorithms_used = 0;
  double bv_max_ratio = 0.0;
  long bv_over_tight_constant = 0;  // pairs with variational > 2 * l2
  bool passed = false;

  const IneqStat* find(const std::string& name) const;
  std::string text_report() const;
};

SuiteResult run_inequality_suite(const SuiteConfig& cfg);

// Trace-level regime checks for one algorithm: builds the trace, checks
// the step invariants, and when the small-norm bounds hold checks the
// hybrid drift bounds and the soundness of the hard pair.
struct TraceRegimeResult {
  AdversaryTrace trace;
  StepInvariantReport invariants;
  HybridReport hybrid;
  bool e2_ok = false;        // per-step drift within bounds
  bool total_ok = false;     // total drift <= 1/5
  bool soundness_ok = false; // not both successes >= 3/4
};

TraceRegimeResult run_trace_regime(const QueryAlgorithm& alg,
                                   const AdversaryParams& params,
                                   std::size_t n, int v_override,
                                   double success_threshold = 0.75,
                                   double tol = 1e-9);

}  // namespace qsearch
