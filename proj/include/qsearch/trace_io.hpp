#pragma once

// Deterministic serialization of traces and verdicts. Writers are hand
// rolled so that field order and float formatting are fixed: the same
// trace always produces byte-identical output. Reals are %.16e in JSON
// and %.14e in CSV.

#include <cstddef>
#include <string>
#include <vector>

#include "qsearch/adversary.hpp"
#include "qsearch/verifier.hpp"

namespace qsearch {

std::string format_real_json(double x);  // %.16e
std::string format_real_csv(double x);   // %.14e
std::string json_escape(const std::string& s);

// Full attack document: the subdivision trace plus the hybrid profile and
// verdict for the surviving pair.
std::string trace_json(const AdversaryTrace& trace, const HybridReport& hybrid,
                       const Verdict& verdict);

// One row per subdivision step.
std::string trace_csv(const AdversaryTrace& trace);

// Outcome of testing one adjacent pair directly.
struct PairOutcome {
  std::size_t k_lo = 0;
  std::size_t k_hi = 0;
  double total_distance = 0.0;
  double success_lo = 0.0;
  double success_hi = 0.0;
  double variational = 0.0;
  Verdict verdict;
};

// Direct mode: every adjacent pair tested, no adversary involved.
std::string direct_attack_json(std::size_t n, const std::string& algorithm,
                               double success_threshold,
                               const std::vector<PairOutcome>& pairs);

std::string direct_attack_csv(const std::vector<PairOutcome>& pairs);

// One parameter combination in a sweep; rejected rows keep the reason and
// leave the derived columns empty.
struct SweepRow {
  double q = 0.0;
  int t = 0;
  int u = 0;
  bool accepted = false;
  std::string reject_reason;
  double q_prime = 0.0;
  int v = 0;
  double coefficient = 0.0;            // 1/(u log2 t)
  std::string coefficient_fraction;    // e.g. "1/12"
};

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_json(const std::vector<SweepRow>& rows);

}  // namespace qsearch
