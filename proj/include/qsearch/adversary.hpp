#pragma once

// The weighted-subdivision adversary. Starting from the whole list it
// repeatedly splits the current interval into t equal parts and descends
// into the part carrying the least q-weighted query mass, so that after
// every split the remaining mass shrinks by the contraction factor
// q' = 1/sqrt(t) + 2/(q-1). The surviving interval pins down a pair of
// adjacent inputs the algorithm has barely looked at.

#include <cstddef>
#include <optional>
#include <vector>

#include "qsearch/query_model.hpp"

namespace qsearch {

struct AdversaryParams {
  double q = 0.0;
  int t = 0;
  int u = 0;
  double q_prime = 0.0;  // 1/sqrt(t) + 2/(q-1)
  int v = 0;             // smallest v with q_prime^v <= (1/10)(1-q q'^u)(1-1/q)
};

// Validates q > 1, t a power of two >= 2, u >= 1, q*q_prime^u < 1 and
// v >= u; any failure names the violated inequality.
AdversaryParams derive_params(double q, int t, int u);

// Smallest integer v with q_prime^v <= (1/10)(1 - q*q_prime^u)(1 - 1/q).
// Evaluated by the smallest-integer characterization itself, not a bare
// ceil, so a ratio landing near an integer cannot round the wrong way.
int compute_v(double q, int t, int u);

// Queries saved per adversary round relative to n: 1/(u * log2 t).
double query_count_coefficient(int t, int u);

// sum_i q^{s-i} * norms[i-1] for i = 1..s (norms[0] belongs to step 1).
double weighted_sum(const std::vector<double>& norms, double q);

// The l-th of n/m blocks of length m: list positions [(l-1)m + 1, lm].
struct Interval {
  std::size_t l = 1;
  std::size_t m = 0;
  std::size_t n = 0;

  std::size_t lo() const { return (l - 1) * m + 1; }
  std::size_t hi() const { return l * m; }
  // The r-th (1-based) of t equal subintervals.
  Interval sub(int r, int t) const {
    return Interval{(l - 1) * t + std::size_t(r), m / std::size_t(t), n};
  }
  bool operator==(const Interval&) const = default;
};

struct SubdivideRecord {
  Interval parent;
  Interval child;
  int s = 0;  // weighted sums run over prefix states before queries 1..s
  // S_values[r-1] = sum_i q^{s-i} ||psi_{i,r}||, the weighted mass of
  // subinterval r under the parent-interval oracle.
  std::vector<double> S_values;
  int chosen_r = 0;  // 1-based; smallest index on ties
  double S_before = 0.0;  // weighted mass of the parent interval
  double S_after = 0.0;   // same sum recomputed under the child's oracle
  // psi_norms[i-1][r-1] = ||psi_{i,r}|| (parent oracle).
  std::vector<std::vector<double>> psi_norms;
  // ||psi_i|| over the whole parent interval; S_before is their weighted sum.
  std::vector<double> psi_parent_norms;
  // ||psi'_i|| over the child interval under the child oracle; S_after is
  // their weighted sum.
  std::vector<double> psi_child_norms;
};

// One subdivision step. Simulates the s-step prefix under the oracle with
// threshold parent.hi(), weighs each of the t subintervals, descends into
// the lightest (ties to the smallest index) and re-simulates under the
// child's oracle for S_after. Requires t | parent.m and 1 <= s <= T+1
// (the state before query s exists as long as s-1 <= T).
SubdivideRecord subdivide(const QueryAlgorithm& alg, const Interval& parent,
                          int s, const AdversaryParams& params);

struct AdversaryTrace {
  AdversaryParams params;
  std::size_t n = 0;
  int v_used = 0;  // stopping depth actually applied (override or params.v)
  std::vector<SubdivideRecord> records;
  int outer_iterations = 0;
  Interval final_interval;
  double final_S = 0.0;
  int final_s = 0;  // s of the last subdivision
};

// The full schedule: while m >= t^v do u subdivisions then advance s;
// afterwards v-u more subdivisions. v_override replaces params.v as the
// stopping depth for desk-scale runs. Errors: n not a power of both 2 and
// t (config), v_override < u (config), n too small for the schedule
// (config), or a schedule step needing s > T+1 (regime).
AdversaryTrace construct_hard_input(const QueryAlgorithm& alg,
                                    const AdversaryParams& params,
                                    std::size_t n,
                                    std::optional<int> v_override = {});

struct IterationBounds {
  double S_begin = 0.0;
  double S_end = 0.0;
  double bound_begin = 0.0;  // 1/(1 - q q'^u)
  double bound_end = 0.0;    // q'^u/(1 - q q'^u)
  bool ok_begin = false;
  bool ok_end = false;
};

struct StepInvariantReport {
  // Always-true family: these hold for every trace regardless of the
  // stopping depth.
  bool base_ok = false;          // first subdivision at s = 1 has S_before <= 1
  bool contraction_ok = false;   // S_after <= q' * S_before per record
  bool advance_ok = false;       // S grows to at most 1 + q*S across s-advances
  bool chain_ok = false;         // consecutive same-s records agree on S
  std::vector<IterationBounds> iterations;
  bool iterations_ok = false;
  // Stopping-depth family: guaranteed only when the schedule subdivides
  // often enough after the last s-advance; always reported.
  std::vector<double> final_psi_norms;    // child norms of the last record
  std::vector<double> final_psi_bounds;   // (1 - 1/q)/(10 q^{s-i})
  bool small_norms_ok = false;
  double final_S = 0.0;
  double final_S_bound = 0.0;             // (1/10)(1 - 1/q)
  bool final_S_ok = false;

  bool always_ok() const {
    return base_ok && contraction_ok && advance_ok && chain_ok &&
           iterations_ok;
  }
};

StepInvariantReport check_step_invariant(const AdversaryTrace& trace,
                                         double tol = kIneqTol);

}  // namespace qsearch
