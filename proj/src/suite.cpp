#include "qsearch/suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qsearch/algorithms.hpp"

namespace qsearch {

void IneqStat::add(double value, double bound, double tol) {
  ++checked;
  const double slack = bound - value;
  worst_slack = std::min(worst_slack, slack);
  if (value > bound + tol) ++violations;
}

const IneqStat* SuiteResult::find(const std::string& name) const {
  for (const auto& s : stats)
    if (s.name == name) return &s;
  return nullptr;
}

std::string SuiteResult::text_report() const {
  std::ostringstream out;
  out << "inequality suite: " << subdivide_invocations
      << " subdivisions across " << algorithms_used << " algorithms\n";
  for (const auto& s : stats) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3e", s.worst_slack);
    out << "  " << s.name << ": " << s.checked << " checked, "
        << s.violations << " violations, worst slack " << buf << "\n";
  }
  {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", bv_max_ratio);
    out << "  measurement gap: max variational/l2 ratio " << buf << " ("
        << bv_over_tight_constant << " pairs above factor 2)\n";
  }
  out << (passed ? "  all inequalities hold\n" : "  VIOLATIONS PRESENT\n");
  return out.str();
}

namespace {

IneqStat& stat(std::vector<IneqStat>& stats, const std::string& name) {
  for (auto& s : stats)
    if (s.name == name) return s;
  stats.push_back(IneqStat{name, 0, 0, 1e300});
  return stats.back();
}

// Runs subdivide on every nesting level reachable from the root for one
// state preparation depth, checking the contraction and column bounds.
void check_direct_subdivides(const QueryAlgorithm& alg,
                             const AdversaryParams& params, std::size_t n,
                             int s, int levels, SuiteResult& res,
                             double tol) {
  Interval cur{1, n, n};
  for (int level = 0; level < levels; ++level) {
    const SubdivideRecord rec = subdivide(alg, cur, s, params);
    ++res.subdivide_invocations;

    // Contraction of the weighted sum under the refined oracle.
    stat(res.stats, "subdivide contraction S' <= q' S")
        .add(rec.S_after, params.q_prime * rec.S_before, tol);

    // Column bounds: the best column is small, the total is bounded.
    double sum_S = 0.0;
    double min_S = 1e300;
    for (double sv : rec.S_values) {
      sum_S += sv;
      min_S = std::min(min_S, sv);
    }
    const double sqrt_t = std::sqrt(static_cast<double>(params.t));
    stat(res.stats, "column minimum min_r S_r <= S/sqrt(t)")
        .add(min_S, rec.S_before / sqrt_t, tol);
    stat(res.stats, "column total sum_r S_r <= sqrt(t) S")
        .add(sum_S, sqrt_t * rec.S_before, tol);

    // At preparation depth 1 only the first query contributes and the
    // projected norm is at most the full norm.
    if (s == 1)
      stat(res.stats, "initial weighted sum S <= 1")
          .add(rec.S_before, 1.0, tol);

    // Drift of the prefix states when the oracle is refined, and the gap
    // produced by one oracle application.
    const SubdivideClaims claims = check_subdivide_claims(alg, rec);
    for (std::size_t i = 0; i < claims.phi_dist.size(); ++i) {
      stat(res.stats, "prefix drift ||phi - phi'|| <= 2 sum ||psi_j||")
          .add(claims.phi_dist[i], claims.drift_bound[i], tol);
      stat(res.stats, "projected drift <= 2 sum ||psi_j||")
          .add(claims.proj_dist[i], claims.drift_bound[i], tol);
      stat(res.stats, "oracle gap <= 2 ||psi_i||")
          .add(claims.oracle_gap[i], claims.oracle_bound[i], tol);
    }

    cur = rec.child;
  }
}

}  // namespace

TraceRegimeResult run_trace_regime(const QueryAlgorithm& alg,
                                   const AdversaryParams& params,
                                   std::size_t n, int v_override,
                                   double success_threshold, double tol) {
  TraceRegimeResult r;
  r.trace = construct_hard_input(alg, params, n,
                                 v_override > 0
                                     ? std::optional<int>(v_override)
                                     : std::nullopt);
  r.invariants = check_step_invariant(r.trace, tol);
  r.hybrid =
      hybrid_profile(alg, r.trace.final_interval, r.trace.final_s, params.q);

  r.e2_ok = true;
  for (std::size_t i = 0; i < r.hybrid.per_step_distance.size(); ++i) {
    if (r.hybrid.per_step_distance[i] > r.hybrid.per_step_bound[i] + tol)
      r.e2_ok = false;
  }
  r.total_ok = r.hybrid.total_distance <= 0.2 + tol;
  r.soundness_ok = !(r.hybrid.success_lo >= success_threshold &&
                     r.hybrid.success_hi >= success_threshold);
  return r;
}

SuiteResult run_inequality_suite(const SuiteConfig& cfg) {
  SuiteResult res;
  const AdversaryParams params = derive_params(cfg.q, cfg.t, cfg.u);

  // Nesting depth available at this n, capped to keep runtime bounded.
  int levels = 0;
  {
    std::size_t m = cfg.n;
    while (m >= static_cast<std::size_t>(cfg.t) &&
           m % static_cast<std::size_t>(cfg.t) == 0 && levels < 3) {
      m /= static_cast<std::size_t>(cfg.t);
      ++levels;
    }
    if (levels < 1)
      throw std::invalid_argument("suite: n does not allow subdivision");
  }
  const int v_used = cfg.v_override > 0 ? cfg.v_override : cfg.u + levels;

  for (int a = 0; a < cfg.num_algorithms; ++a) {
    const QueryAlgorithm alg =
        random_algorithm(cfg.n, cfg.algorithm_queries, a % 3,
                         cfg.seed + static_cast<std::uint64_t>(a));
    ++res.algorithms_used;

    for (int s = 1; s <= cfg.algorithm_queries + 1; ++s)
      check_direct_subdivides(alg, params, cfg.n, s, levels, res, cfg.tol);

    // Full trace through the schedule with the per-iteration invariants.
    const TraceRegimeResult tr =
        run_trace_regime(alg, params, cfg.n, v_used, 0.75, cfg.tol);
    res.subdivide_invocations += static_cast<long>(tr.trace.records.size());

    stat(res.stats, "trace base S <= 1 at the first step")
        .add(tr.invariants.base_ok ? 0.0 : 1.0, 0.0, cfg.tol);
    stat(res.stats, "trace contraction at every step")
        .add(tr.invariants.contraction_ok ? 0.0 : 1.0, 0.0, cfg.tol);
    stat(res.stats, "trace advance S_new <= 1 + q S_old")
        .add(tr.invariants.advance_ok ? 0.0 : 1.0, 0.0, cfg.tol);
    stat(res.stats, "trace chain S carried between steps")
        .add(tr.invariants.chain_ok ? 0.0 : 1.0, 0.0, cfg.tol);
    stat(res.stats, "trace per-iteration S bounds")
        .add(tr.invariants.iterations_ok ? 0.0 : 1.0, 0.0, cfg.tol);

    // The per-step drift bounds are only promised once the small-norm
    // bounds come out of the schedule, which needs the full stopping
    // depth; unconditionally the total is within the triangle sum.
    stat(res.stats, "hybrid total <= sum of per-step drifts")
        .add(tr.hybrid.total_distance, tr.hybrid.triangle_sum, cfg.tol);
    if (tr.invariants.small_norms_ok) {
      stat(res.stats, "hybrid per-step drift within bound")
          .add(tr.e2_ok ? 0.0 : 1.0, 0.0, cfg.tol);
      stat(res.stats, "hybrid total <= 1/5")
          .add(tr.hybrid.total_distance, 0.2, cfg.tol);
    }
  }

  // Adjacent-pair perturbation bound for the exact search algorithm.
  {
    const QueryAlgorithm bs = lifted_binary_search(cfg.lifted_n);
    for (std::size_t k_early = 1; k_early < cfg.lifted_n; ++k_early) {
      const HybridPerturbation hp = check_hybrid_perturbation(bs, k_early);
      for (std::size_t i = 0; i < hp.value.size(); ++i)
        stat(res.stats, "adjacent oracle swap <= 2 ||projection||")
            .add(hp.value[i], hp.bound[i], cfg.tol);
    }
  }

  // Measurement gap: variational distance against l2 on random pairs.
  {
    std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);
    const BasisLayout layout(cfg.bv_n, 0);
    auto& gap = stat(res.stats, "variational <= 4 l2");
    for (int i = 0; i < cfg.bv_pairs; ++i) {
      const StateVector a = random_unit_state(layout, rng);
      const StateVector b = random_unit_state(layout, rng);
      const BvGap g = bv_gap(a, b);
      gap.add(g.variational, cfg.bv_constant * g.l2, cfg.tol);
      if (g.l2 > 1e-12) {
        const double ratio = g.variational / g.l2;
        res.bv_max_ratio = std::max(res.bv_max_ratio, ratio);
        if (ratio > 2.0 + cfg.tol) ++res.bv_over_tight_constant;
      }
    }
  }

  // Geometric tail used when the per-step drifts are summed.
  {
    auto& tail = stat(res.stats, "geometric tail sum q^-i < 1/(q-1)");
    for (int s = 1; s <= 12; ++s) {
      double sum = 0.0;
      for (int i = 1; i <= s; ++i) sum += std::pow(cfg.q, -i);
      tail.add(sum, 1.0 / (cfg.q - 1.0), cfg.tol);
    }
  }

  res.passed = true;
  for (const auto& s : res.stats)
    if (s.violations > 0) res.passed = false;
  return res;
}

}  // namespace qsearch
