#include "qsearch/verifier.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "qsearch/errors.hpp"

namespace qsearch {

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

HybridReport hybrid_profile_pair(const QueryAlgorithm& alg,
                                 std::size_t k_early, int final_s, double q) {
  if (k_early < 1 || k_early > alg.layout.n) {
    throw config_error("hybrid profile: k_early = " +
                       std::to_string(k_early) + " out of range [1, n]");
  }
  const ThresholdInput early(k_early, alg.layout.n);
  const ThresholdInput late(k_early - 1, alg.layout.n);
  const int T = alg.num_queries();

  HybridReport rep;
  rep.k_early = k_early;
  rep.k_late = k_early - 1;

  const StateVector full_late = run_hybrid(alg, 0, early, late);
  const IndexDistribution dist_late = measure_index_distribution(full_late);
  StateVector prev = full_late;
  for (int i = 1; i <= T; ++i) {
    StateVector cur = run_hybrid(alg, i, early, late);
    rep.per_step_distance.push_back(l2_distance(cur, prev));
    rep.per_step_bound.push_back((1.0 - 1.0 / q) /
                                 (5.0 * std::pow(q, double(final_s - i))));
    prev = std::move(cur);
  }
  // prev is now the full run on k_early.
  rep.total_distance = l2_distance(prev, full_late);
  rep.triangle_sum = 0.0;
  for (double d : rep.per_step_distance) rep.triangle_sum += d;
  const IndexDistribution dist_early = measure_index_distribution(prev);
  rep.variational = variational_distance(dist_early, dist_late);
  rep.success_lo = dist_late.probabilities[rep.k_late];
  rep.success_hi = rep.k_early < alg.layout.n
                       ? dist_early.probabilities[rep.k_early]
                       : 0.0;  // the all-zeros input has no answer value
  return rep;
}

HybridReport hybrid_profile(const QueryAlgorithm& alg,
                            const Interval& interval, int final_s, double q) {
  return hybrid_profile_pair(alg, interval.hi(), final_s, q);
}

BvGap bv_gap(const StateVector& psi, const StateVector& phi) {
  if (std::abs(norm(psi) - 1.0) > kIneqTol ||
      std::abs(norm(phi) - 1.0) > kIneqTol) {
    throw std::invalid_argument("bv_gap: inputs must be unit states");
  }
  BvGap gap;
  gap.l2 = l2_distance(psi, phi);
  gap.variational = variational_distance(measure_index_distribution(psi),
                                         measure_index_distribution(phi));
  if (gap.variational > 4.0 * gap.l2 + kIneqTol) {
    throw std::logic_error("bv_gap: variational " + fmt(gap.variational) +
                           " exceeds 4 * l2 = " + fmt(4.0 * gap.l2));
  }
  return gap;
}

Verdict make_verdict(const QueryAlgorithm& alg, std::size_t k_lo,
                     std::size_t k_hi, double success_threshold) {
  if (k_hi != k_lo + 1) {
    throw config_error("verdict: (" + std::to_string(k_lo) + ", " +
                       std::to_string(k_hi) + ") is not an adjacent pair");
  }
  const ThresholdInput lo(k_lo, alg.layout.n);
  const ThresholdInput hi(k_hi, alg.layout.n);
  const double dist = l2_distance(run_full(alg, hi), run_full(alg, lo));
  const double succ_lo = success_probability(alg, lo);
  const double succ_hi = success_probability(alg, hi);
  return verdict_from_metrics(dist, succ_lo, succ_hi, success_threshold,
                              k_lo, k_hi);
}

Verdict verdict_from_metrics(double dist, double succ_lo, double succ_hi,
                             double success_threshold, std::size_t k_lo,
                             std::size_t k_hi) {
  Verdict verdict;
  if (dist >= 0.25 && succ_lo >= success_threshold &&
      succ_hi >= success_threshold) {
    verdict.distinguishable = true;
    verdict.reason = "final-state distance " + fmt(dist) +
                     " >= 1/4 and both success probabilities (" +
                     fmt(succ_lo) + ", " + fmt(succ_hi) + ") >= " +
                     fmt(success_threshold);
    return verdict;
  }
  verdict.distinguishable = false;
  if (dist < 0.25) {
    verdict.reason = "final-state distance " + fmt(dist) + " < 1/4";
    if (dist <= 0.2) {
      verdict.reason +=
          "; at distance <= 1/5 no algorithm answering both inputs with "
          "probability 3/4 exists for this pair";
    }
  } else if (succ_lo < success_threshold) {
    verdict.reason = "success probability on k = " + std::to_string(k_lo) +
                     " is " + fmt(succ_lo) + " < " + fmt(success_threshold);
  } else {
    verdict.reason = "success probability on k = " + std::to_string(k_hi) +
                     " is " + fmt(succ_hi) + " < " + fmt(success_threshold);
  }
  return verdict;
}

bool SubdivideClaims::ok(double tol) const {
  for (std::size_t i = 0; i < phi_dist.size(); ++i) {
    if (phi_dist[i] > drift_bound[i] + tol) return false;
    if (proj_dist[i] > drift_bound[i] + tol) return false;
    if (oracle_gap[i] > oracle_bound[i] + tol) return false;
  }
  return true;
}

SubdivideClaims check_subdivide_claims(const QueryAlgorithm& alg,
                                       const SubdivideRecord& rec) {
  const int s = rec.s;
  const ThresholdInput parent_input(rec.parent.hi(), rec.parent.n);
  const ThresholdInput child_input(rec.child.hi(), rec.child.n);

  SubdivideClaims claims;
  claims.phi_dist.resize(s);
  claims.proj_dist.resize(s);
  claims.drift_bound.resize(s);
  claims.oracle_gap.resize(s);
  claims.oracle_bound.resize(s);

  double drift = 0.0;  // 2 * sum of parent-interval norms up to i-1
  for (int i = 1; i <= s; ++i) {
    StateVector phi = run_prefix(alg, parent_input, i);
    StateVector phi_child = run_prefix(alg, child_input, i);
    claims.phi_dist[i - 1] = l2_distance(phi, phi_child);
    claims.proj_dist[i - 1] = l2_distance(
        project_query_range(phi, rec.child.lo(), rec.child.hi()),
        project_query_range(phi_child, rec.child.lo(), rec.child.hi()));
    claims.drift_bound[i - 1] = drift;
    const StateVector under_parent = apply_oracle(phi, parent_input);
    const StateVector under_child = apply_oracle(std::move(phi), child_input);
    claims.oracle_gap[i - 1] = l2_distance(under_parent, under_child);
    claims.oracle_bound[i - 1] = 2.0 * rec.psi_parent_norms[i - 1];
    drift += 2.0 * rec.psi_parent_norms[i - 1];
  }
  return claims;
}

bool HybridPerturbation::ok(double tol) const {
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (value[i] > bound[i] + tol) return false;
  }
  return true;
}

HybridPerturbation check_hybrid_perturbation(const QueryAlgorithm& alg,
                                             std::size_t k_early) {
  const ThresholdInput early(k_early, alg.layout.n);
  const ThresholdInput late(k_early - 1, alg.layout.n);
  const int T = alg.num_queries();

  HybridPerturbation pert;
  StateVector prev = run_hybrid(alg, 0, early, late);
  for (int i = 1; i <= T; ++i) {
    StateVector cur = run_hybrid(alg, i, early, late);
    pert.value.push_back(l2_distance(cur, prev));
    // The two oracles differ only at position k_early; twice the prefix
    // mass there caps the step.
    const StateVector prefix = run_prefix(alg, early, i);
    pert.bound.push_back(2.0 * projected_norm(prefix, k_early, k_early));
    prev = std::move(cur);
  }
  return pert;
}

}  // namespace qsearch
