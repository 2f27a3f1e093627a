#pragma once

// Hybrid-walk verification: measures how far an algorithm's runs on two
// adjacent inputs actually drift apart, step by step, and compares against
// the bounds the adversary's trace promises.

#include <string>
#include <vector>

#include "qsearch/adversary.hpp"
#include "qsearch/query_model.hpp"

namespace qsearch {

struct HybridReport {
  std::size_t k_early = 0;  // larger threshold of the adjacent pair
  std::size_t k_late = 0;   // k_early - 1
  // Hybrid i answers the first i queries with k_early, the rest with
  // k_late; entry i-1 is the distance between hybrids i and i-1.
  std::vector<double> per_step_distance;
  // (1 - 1/q)/(5 q^{s-i}) with s the adversary's final step count; entries
  // with i > s exceed 2 and are vacuous.
  std::vector<double> per_step_bound;
  double total_distance = 0.0;  // distance between the two full runs
  double triangle_sum = 0.0;    // sum of per-step distances
  double success_lo = 0.0;      // success probability on k_late
  double success_hi = 0.0;      // success probability on k_early
  double variational = 0.0;     // distance between final index distributions
};

// Profile for an arbitrary adjacent pair (k_late = k_early - 1).
HybridReport hybrid_profile_pair(const QueryAlgorithm& alg,
                                 std::size_t k_early, int final_s, double q);

// Profile for the pair an adversary interval pins down: k = hi() and
// k = hi() - 1.
HybridReport hybrid_profile(const QueryAlgorithm& alg,
                            const Interval& interval, int final_s, double q);

struct BvGap {
  double l2 = 0.0;
  double variational = 0.0;
};

// Distance pair for two unit states; rejects non-unit inputs and checks
// the measurement bound variational <= 4 * l2 internally.
BvGap bv_gap(const StateVector& psi, const StateVector& phi);

struct Verdict {
  bool distinguishable = false;
  std::string reason;
};

// distinguishable iff the final states are >= 1/4 apart AND both success
// probabilities reach the threshold; otherwise the reason names the first
// violated inequality. Requires an adjacent pair.
Verdict make_verdict(const QueryAlgorithm& alg, std::size_t k_lo,
                     std::size_t k_hi, double success_threshold);

// Same decision from metrics already in hand (distance between the final
// states and the two success probabilities).
Verdict verdict_from_metrics(double distance, double success_lo,
                             double success_hi, double success_threshold,
                             std::size_t k_lo, std::size_t k_hi);

// Per-step data for one subdivision, recomputed from scratch:
//   phi_dist[i-1]      = || phi_i - phi'_i ||   (parent vs child oracle)
//   proj_dist[i-1]     = || psi_{i,r} - psi'_i || on the child interval
//   drift_bound[i-1]   = 2 (||psi_1|| + ... + ||psi_{i-1}||)
//   oracle_gap[i-1]    = || O_parent phi_i - O_child phi_i ||
//   oracle_bound[i-1]  = 2 ||psi_i||
struct SubdivideClaims {
  std::vector<double> phi_dist;
  std::vector<double> proj_dist;
  std::vector<double> drift_bound;
  std::vector<double> oracle_gap;
  std::vector<double> oracle_bound;

  bool ok(double tol = kIneqTol) const;
};

SubdivideClaims check_subdivide_claims(const QueryAlgorithm& alg,
                                       const SubdivideRecord& rec);

// Per-step drift of an adjacent-pair hybrid walk against twice the queried
// mass at the differing position: value[i-1] = ||hybrid_i - hybrid_{i-1}||,
// bound[i-1] = 2 ||project(prefix_i under k_early, onto position k_early)||.
struct HybridPerturbation {
  std::vector<double> value;
  std::vector<double> bound;

  bool ok(double tol = kIneqTol) const;
};

HybridPerturbation check_hybrid_perturbation(const QueryAlgorithm& alg,
                                             std::size_t k_early);

}  // namespace qsearch
