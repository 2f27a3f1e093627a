#include "qsearch/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qsearch/errors.hpp"

namespace qsearch {

namespace {

bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

double threshold(double q, double q_prime, int u) {
  return 0.1 * (1.0 - q * std::pow(q_prime, u)) * (1.0 - 1.0 / q);
}

}  // namespace

int compute_v(double q, int t, int u) {
  const double q_prime = 1.0 / std::sqrt(double(t)) + 2.0 / (q - 1.0);
  const double theta = threshold(q, q_prime, u);
  if (!(theta > 0.0)) {
    throw config_error("compute_v: threshold not positive; q*q'^u = " +
                       std::to_string(q * std::pow(q_prime, u)) + " >= 1");
  }
  int v = int(std::ceil(std::log(theta) / std::log(q_prime)));
  if (v < 1) v = 1;
  // Settle boundary cases by the defining property rather than the ceil.
  while (v > 1 && std::pow(q_prime, v - 1) <= theta) --v;
  while (std::pow(q_prime, v) > theta) ++v;
  return v;
}

double query_count_coefficient(int t, int u) {
  return 1.0 / (double(u) * std::log2(double(t)));
}

AdversaryParams derive_params(double q, int t, int u) {
  if (!(q > 1.0)) {
    throw config_error("parameters rejected: need q > 1, got q = " +
                       std::to_string(q));
  }
  if (t < 2 || !is_power_of_two(std::size_t(t))) {
    throw config_error("parameters rejected: t must be a power of two >= 2, "
                       "got t = " + std::to_string(t));
  }
  if (u < 1) {
    throw config_error("parameters rejected: need u >= 1, got u = " +
                       std::to_string(u));
  }
  AdversaryParams p;
  p.q = q;
  p.t = t;
  p.u = u;
  p.q_prime = 1.0 / std::sqrt(double(t)) + 2.0 / (q - 1.0);
  const double check = q * std::pow(p.q_prime, u);
  if (!(check < 1.0)) {
    throw config_error(
        "parameters rejected: q*(q')^u = " + std::to_string(check) +
        " >= 1 (q' = " + std::to_string(p.q_prime) + ")");
  }
  p.v = compute_v(q, t, u);
  if (p.v < u) {
    throw config_error("parameters rejected: v = " + std::to_string(p.v) +
                       " < u = " + std::to_string(u) +
                       " leaves the tail of the schedule negative");
  }
  return p;
}

double weighted_sum(const std::vector<double>& norms, double q) {
  if (norms.empty()) {
    throw std::invalid_argument("weighted_sum: empty input");
  }
  const int s = int(norms.size());
  double sum = 0.0;
  for (int i = 1; i <= s; ++i) {
    sum += std::pow(q, double(s - i)) * norms[i - 1];
  }
  return sum;
}

namespace {

// Walks the s-step prefix under `input`, handing each state before query i
// (i = 1..s) to `visit`. Needs only s-1 oracle calls, so s may be T+1.
template <typename Visit>
void walk_prefix(const QueryAlgorithm& alg, const ThresholdInput& input,
                 int s, Visit&& visit) {
  StateVector state = zero_state(alg.layout);
  alg.unitaries[0](state);
  for (int i = 1; i <= s; ++i) {
    visit(i, state);
    if (i < s) {
      apply_oracle_inplace(state, input);
      alg.unitaries[i](state);
    }
  }
}

}  // namespace

SubdivideRecord subdivide(const QueryAlgorithm& alg, const Interval& parent,
                          int s, const AdversaryParams& params) {
  const int t = params.t;
  if (parent.m == 0 || parent.m % std::size_t(t) != 0) {
    throw config_error("subdivide: interval length " +
                       std::to_string(parent.m) +
                       " not divisible by t = " + std::to_string(t));
  }
  if (parent.hi() > parent.n || alg.layout.n != parent.n) {
    throw config_error("subdivide: interval does not fit the list");
  }
  const int T = alg.num_queries();
  if (s < 1 || s > T + 1) {
    throw regime_error("subdivide: step " + std::to_string(s) +
                       " out of range [1, " + std::to_string(T + 1) + "]");
  }

  SubdivideRecord rec;
  rec.parent = parent;
  rec.s = s;
  rec.psi_norms.assign(s, std::vector<double>(t, 0.0));
  rec.psi_parent_norms.assign(s, 0.0);

  const ThresholdInput parent_input(parent.hi(), parent.n);

  walk_prefix(alg, parent_input, s, [&](int i, const StateVector& state) {
    double parent_sq = 0.0;
    for (int r = 1; r <= t; ++r) {
      const Interval sub = parent.sub(r, t);
      const double nr = projected_norm(state, sub.lo(), sub.hi());
      rec.psi_norms[i - 1][r - 1] = nr;
      parent_sq += nr * nr;
    }
    rec.psi_parent_norms[i - 1] = std::sqrt(parent_sq);
  });

  rec.S_values.assign(t, 0.0);
  for (int r = 1; r <= t; ++r) {
    std::vector<double> column(s);
    for (int i = 1; i <= s; ++i) column[i - 1] = rec.psi_norms[i - 1][r - 1];
    rec.S_values[r - 1] = weighted_sum(column, params.q);
  }
  rec.S_before = weighted_sum(rec.psi_parent_norms, params.q);

  rec.chosen_r = 1;
  for (int r = 2; r <= t; ++r) {
    if (rec.S_values[r - 1] < rec.S_values[rec.chosen_r - 1]) rec.chosen_r = r;
  }
  rec.child = parent.sub(rec.chosen_r, t);

  // Weighted mass of the child interval with the child's own oracle, from
  // a fresh prefix simulation.
  rec.psi_child_norms.assign(s, 0.0);
  const ThresholdInput child_input(rec.child.hi(), rec.child.n);
  walk_prefix(alg, child_input, s, [&](int i, const StateVector& state) {
    rec.psi_child_norms[i - 1] =
        projected_norm(state, rec.child.lo(), rec.child.hi());
  });
  rec.S_after = weighted_sum(rec.psi_child_norms, params.q);

  return rec;
}

namespace {

struct Schedule {
  int outer_iterations = 0;
  int step3_count = 0;
  int max_s = 0;
  long total_subdivides = 0;
};

Schedule plan_schedule(std::size_t n, int t, int u, int v) {
  Schedule sched;
  const double tv = std::pow(double(t), double(v));
  double m = double(n);
  int s = 1;
  while (m >= tv) {
    ++sched.outer_iterations;
    sched.max_s = s;
    sched.total_subdivides += u;
    m /= std::pow(double(t), double(u));
    ++s;
  }
  sched.step3_count = v - u;
  if (sched.step3_count > 0) {
    sched.max_s = s;
    sched.total_subdivides += sched.step3_count;
  }
  if (sched.max_s == 0) sched.max_s = 1;  // step 3 runs at the initial s
  return sched;
}

int log2_of(std::size_t n) {
  int bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  return bits;
}

}  // namespace

AdversaryTrace construct_hard_input(const QueryAlgorithm& alg,
                                    const AdversaryParams& params,
                                    std::size_t n,
                                    std::optional<int> v_override) {
  if (!is_power_of_two(n)) {
    throw config_error("construct_hard_input: n = " + std::to_string(n) +
                       " is not a power of two");
  }
  // n must also be a power of t so every subdivision is exact.
  {
    std::size_t m = n;
    while (m % std::size_t(params.t) == 0) m /= std::size_t(params.t);
    if (m != 1) {
      throw config_error("construct_hard_input: n = " + std::to_string(n) +
                         " is not a power of t = " +
                         std::to_string(params.t));
    }
  }
  if (alg.layout.n != n) {
    throw config_error("construct_hard_input: algorithm is built for n = " +
                       std::to_string(alg.layout.n) + ", not " +
                       std::to_string(n));
  }
  const int v = v_override.value_or(params.v);
  if (v < params.u) {
    throw config_error("construct_hard_input: stopping depth v = " +
                       std::to_string(v) + " below u = " +
                       std::to_string(params.u));
  }

  const Schedule sched = plan_schedule(n, params.t, params.u, v);
  const int levels_available = log2_of(n) / log2_of(std::size_t(params.t));
  if (sched.total_subdivides > levels_available) {
    throw config_error(
        "construct_hard_input: schedule needs " +
        std::to_string(sched.total_subdivides) + " subdivisions but n = " +
        std::to_string(n) + " supports only " +
        std::to_string(levels_available));
  }
  if (sched.total_subdivides == 0) {
    throw config_error("construct_hard_input: schedule is empty (v = u and "
                       "n < t^v); nothing to subdivide");
  }
  if (sched.max_s > alg.num_queries() + 1) {
    throw regime_error(
        "algorithm exceeds the regime of Theorem 1's contradiction: the "
        "schedule needs the state before query " +
        std::to_string(sched.max_s) + " but the algorithm has only " +
        std::to_string(alg.num_queries()) + " queries");
  }

  AdversaryTrace trace;
  trace.params = params;
  trace.n = n;
  trace.v_used = v;

  Interval current{1, n, n};
  int s = 1;
  const double tv = std::pow(double(params.t), double(v));
  while (double(current.m) >= tv) {
    ++trace.outer_iterations;
    for (int j = 0; j < params.u; ++j) {
      SubdivideRecord rec = subdivide(alg, current, s, params);
      current = rec.child;
      trace.records.push_back(std::move(rec));
    }
    ++s;
  }
  for (int j = 0; j < v - params.u; ++j) {
    SubdivideRecord rec = subdivide(alg, current, s, params);
    current = rec.child;
    trace.records.push_back(std::move(rec));
  }

  trace.final_interval = current;
  trace.final_S = trace.records.back().S_after;
  trace.final_s = trace.records.back().s;
  return trace;
}

StepInvariantReport check_step_invariant(const AdversaryTrace& trace,
                                         double tol) {
  const double q = trace.params.q;
  const double qp = trace.params.q_prime;
  const int u = trace.params.u;
  const double denom = 1.0 - q * std::pow(qp, u);

  StepInvariantReport rep;
  const auto& recs = trace.records;
  if (recs.empty()) return rep;

  rep.base_ok = recs.front().s == 1 && recs.front().S_before <= 1.0 + tol;

  rep.contraction_ok = true;
  for (const auto& rec : recs) {
    if (rec.S_after > qp * rec.S_before + tol) rep.contraction_ok = false;
  }

  rep.advance_ok = true;
  rep.chain_ok = true;
  for (std::size_t i = 1; i < recs.size(); ++i) {
    const auto& prev = recs[i - 1];
    const auto& cur = recs[i];
    if (cur.s == prev.s) {
      // Same quantity recomputed from the same oracle and interval.
      if (std::abs(cur.S_before - prev.S_after) > kExactTol) {
        rep.chain_ok = false;
      }
    } else {
      // s advanced: one extra term of norm <= 1, everything else scaled by q.
      if (cur.S_before > 1.0 + q * prev.S_after + tol) rep.advance_ok = false;
    }
  }

  // Outer iterations occupy the first u*outer_iterations records, u apiece.
  rep.iterations_ok = true;
  for (int it = 0; it < trace.outer_iterations; ++it) {
    const auto& first = recs[std::size_t(it) * u];
    const auto& last = recs[std::size_t(it) * u + u - 1];
    IterationBounds b;
    b.S_begin = first.S_before;
    b.S_end = last.S_after;
    b.bound_begin = 1.0 / denom;
    b.bound_end = std::pow(qp, u) / denom;
    b.ok_begin = b.S_begin <= b.bound_begin + tol;
    b.ok_end = b.S_end <= b.bound_end + tol;
    if (!b.ok_begin || !b.ok_end) rep.iterations_ok = false;
    rep.iterations.push_back(b);
  }

  const auto& last = recs.back();
  const int s = last.s;
  rep.final_psi_norms = last.psi_child_norms;
  rep.final_psi_bounds.resize(rep.final_psi_norms.size());
  rep.small_norms_ok = true;
  for (int i = 1; i <= s; ++i) {
    const double bound =
        (1.0 - 1.0 / q) / (10.0 * std::pow(q, double(s - i)));
    rep.final_psi_bounds[i - 1] = bound;
    if (rep.final_psi_norms[i - 1] > bound + tol) rep.small_norms_ok = false;
  }
  rep.final_S = trace.final_S;
  rep.final_S_bound = 0.1 * (1.0 - 1.0 / q);
  rep.final_S_ok = rep.final_S <= rep.final_S_bound + tol;

  return rep;
}

}  // namespace qsearch
