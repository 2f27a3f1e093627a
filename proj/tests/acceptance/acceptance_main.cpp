// Acceptance checks for the workbench: one line per criterion, nonzero
// exit when any of them fails. Inequalities allow 1e-9 slack; identities
// that hold by algebra alone are held to 1e-12.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qsearch/algorithms.hpp"
#include "qsearch/cli.hpp"
#include "qsearch/suite.hpp"
#include "qsearch/trace_io.hpp"

using namespace qsearch;

namespace {

int failures = 0;

void report(int num, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", num,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

bool stat_clean(const SuiteResult& suite, const std::string& name,
                std::ostringstream& detail) {
  const IneqStat* st = suite.find(name);
  if (st == nullptr || st->checked == 0) {
    detail << " [missing stat: " << name << "]";
    return false;
  }
  detail << " " << name << ": " << st->checked << " checks, "
         << st->violations << " violations;";
  return st->violations == 0;
}

}  // namespace

int main() {
  // 1. State core: the oracle is an exact involution, projections are
  // contractions and a partition of the positions recovers the norm.
  {
    const auto start = std::chrono::steady_clock::now();
    const BasisLayout layout(64, 3);
    std::mt19937_64 rng(2024);
    bool involution_ok = true;
    bool pythagoras_ok = true;
    bool contraction_ok = true;
    double worst_partition = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      const StateVector s = random_unit_state(layout, rng);
      const ThresholdInput input(std::size_t(trial) % 65, 64);

      StateVector once = apply_oracle(s, input);
      const StateVector twice = apply_oracle(std::move(once), input);
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (twice[i] != s[i]) involution_ok = false;
      }

      const double full = norm(s);
      double sq = 0.0;
      for (std::size_t lo = 1; lo <= 64; lo += 8) {
        const double p = projected_norm(s, lo, lo + 7);
        if (p > full + 1e-12) contraction_ok = false;
        sq += p * p;
      }
      worst_partition = std::max(worst_partition,
                                 std::abs(sq - full * full));
      if (worst_partition > 1e-12) pythagoras_ok = false;
    }
    const double elapsed = seconds_since(start);
    report(1,
           involution_ok && pythagoras_ok && contraction_ok && elapsed < 10.0,
           "oracle involution exact, projection partition defect " +
               fmt(worst_partition) + " <= 1e-12 over 1000 states, " +
               fmt(elapsed) + " s");
  }

  // 2 through 4 and 7 share one run of the inequality suite at the
  // default configuration.
  SuiteConfig cfg;
  const auto suite_start = std::chrono::steady_clock::now();
  const SuiteResult suite = run_inequality_suite(cfg);
  const double suite_elapsed = seconds_since(suite_start);

  // 2. Contraction under subdivision across a broad corpus.
  {
    std::ostringstream detail;
    bool ok = suite.subdivide_invocations >= 200 &&
              suite.algorithms_used >= 20;
    detail << suite.subdivide_invocations << " subdivisions across "
           << suite.algorithms_used << " algorithms;";
    ok = stat_clean(suite, "subdivide contraction S' <= q' S", detail) && ok;
    ok = stat_clean(suite, "trace contraction at every step", detail) && ok;
    detail << " " << fmt(suite_elapsed) << " s";
    report(2, ok && suite_elapsed < 120.0, detail.str());
  }

  // 3. Column bounds: the lightest part is below S/sqrt(t) and the column
  // total below sqrt(t) S, on the same corpus.
  {
    std::ostringstream detail;
    bool ok = true;
    ok = stat_clean(suite, "column minimum min_r S_r <= S/sqrt(t)", detail) &&
         ok;
    ok = stat_clean(suite, "column total sum_r S_r <= sqrt(t) S", detail) &&
         ok;
    report(3, ok, detail.str());
  }

  // 4. Prefix drift and oracle-swap bounds, including every adjacent pair
  // of the exact search at n = 64.
  {
    std::ostringstream detail;
    bool ok = true;
    ok = stat_clean(suite, "prefix drift ||phi - phi'|| <= 2 sum ||psi_j||",
                    detail) &&
         ok;
    ok = stat_clean(suite, "oracle gap <= 2 ||psi_i||", detail) && ok;
    const QueryAlgorithm bs = lifted_binary_search(64);
    long pert_checks = 0;
    bool pert_ok = true;
    for (std::size_t k_early = 1; k_early < 64; ++k_early) {
      const HybridPerturbation pert = check_hybrid_perturbation(bs, k_early);
      pert_checks += long(pert.value.size());
      if (!pert.ok(1e-9)) pert_ok = false;
    }
    detail << " adjacent pairs of the n=64 search: 63 walks, " << pert_checks
           << " step bounds" << (pert_ok ? " all hold" : " VIOLATED");
    report(4, ok && pert_ok, detail.str());
  }

  // 5. Per-step invariants of full traces on the trace corpus.
  std::vector<TraceRegimeResult> corpus;
  std::vector<std::string> corpus_names;
  {
    const AdversaryParams params = derive_params(18.3, 8, 4);
    corpus.push_back(run_trace_regime(zero_query(4096), params, 4096, 4));
    corpus_names.push_back("zero-query");
    for (int cut = 1; cut <= 3; ++cut) {
      corpus.push_back(run_trace_regime(truncated_binary_search(4096, cut),
                                        params, 4096, 4));
      corpus_names.push_back("truncated-bs:" + std::to_string(cut));
    }

    std::ostringstream detail;
    bool ok = true;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const StepInvariantReport& rep = corpus[i].invariants;
      const bool this_ok =
          rep.always_ok() && rep.small_norms_ok && rep.final_S_ok;
      if (!this_ok) ok = false;
      detail << corpus_names[i] << " final interval {"
             << corpus[i].trace.final_interval.lo() << "} S_final "
             << fmt(corpus[i].trace.final_S)
             << (this_ok ? " ok; " : " VIOLATED; ");
    }
    report(5, ok, detail.str());
  }

  // 6. Hybrid drift bounds and soundness of the surviving pair on the
  // same corpus.
  {
    std::ostringstream detail;
    bool ok = true;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const TraceRegimeResult& r = corpus[i];
      const bool this_ok = r.e2_ok && r.total_ok && r.soundness_ok;
      if (!this_ok) ok = false;
      detail << corpus_names[i] << " pair (" << r.hybrid.k_late << ", "
             << r.hybrid.k_early << ") total " << fmt(r.hybrid.total_distance)
             << " successes (" << fmt(r.hybrid.success_lo) << ", "
             << fmt(r.hybrid.success_hi) << ")"
             << (this_ok ? " ok; " : " VIOLATED; ");
    }
    report(6, ok, detail.str());
  }

  // 7. Measurement gap between l2 and variational distance on random
  // state pairs.
  {
    std::ostringstream detail;
    bool ok = true;
    const IneqStat* st = suite.find("variational <= 4 l2");
    if (st == nullptr || st->checked < 1000 || st->violations > 0) ok = false;
    if (st != nullptr) {
      detail << st->checked << " pairs, " << st->violations
             << " violations, max ratio " << fmt(suite.bv_max_ratio);
    } else {
      detail << "stat missing";
    }
    report(7, ok, detail.str());
  }

  // 8. The lifted search is exact: every input answered with certainty in
  // exactly log2(n) queries.
  {
    bool ok = true;
    double worst = 1.0;
    for (std::size_t n = 2; n <= 256; n *= 2) {
      const QueryAlgorithm alg = lifted_binary_search(n);
      if (alg.num_queries() != int(std::lround(std::log2(double(n))))) {
        ok = false;
      }
      for (std::size_t k = 0; k < n; ++k) {
        const double succ = success_probability(alg, ThresholdInput(k, n));
        worst = std::min(worst, succ);
        if (std::abs(succ - 1.0) > 1e-9) ok = false;
      }
    }
    report(8, ok,
           "n = 2..256, success on every input >= " + fmt(worst) +
               ", query counts exactly log2(n)");
  }

  // 9. Parameter gate: the reference configuration is accepted with the
  // expected derived values, a contracting failure is rejected.
  {
    std::ostringstream out, err;
    const int rc_ok = cmd_params(ParamsOptions{18.3, 8, 4}, out, err);
    const bool accept_ok = rc_ok == kExitOk &&
                           out.str().find("v = 6") != std::string::npos &&
                           out.str().find("1/12") != std::string::npos;
    const AdversaryParams p = derive_params(18.3, 8, 4);
    const bool contracting = p.q * std::pow(p.q_prime, p.u) < 1.0;

    std::ostringstream out2, err2;
    const int rc_bad = cmd_params(ParamsOptions{3.0, 4, 1}, out2, err2);
    const bool reject_ok = rc_bad != kExitOk;

    report(9, accept_ok && contracting && reject_ok,
           "(18.3, 8, 4) accepted with v = 6, coefficient 1/12, q(q')^u = " +
               fmt(p.q * std::pow(p.q_prime, p.u)) +
               " < 1; (3, 4, 1) rejected with exit code " +
               std::to_string(rc_bad));
  }

  if (failures == 0) {
    std::printf("all 9 criteria passed\n");
  } else {
    std::printf("%d criteria FAILED\n", failures);
  }
  return failures;
}
