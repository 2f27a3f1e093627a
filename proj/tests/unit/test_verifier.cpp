#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "qsearch/algorithms.hpp"
#include "qsearch/errors.hpp"
#include "qsearch/verifier.hpp"

using namespace qsearch;

TEST_CASE("hybrid profile of a single-probe search") {
  // One probe at position 2048 answers 1 for both k = 0 and k = 1, so the
  // two runs coincide and every distance is zero.
  const QueryAlgorithm alg = truncated_binary_search(4096, 1);
  const HybridReport rep = hybrid_profile_pair(alg, 1, 1, 18.3);

  CHECK(rep.k_early == 1);
  CHECK(rep.k_late == 0);
  REQUIRE(rep.per_step_distance.size() == 1);
  CHECK(rep.per_step_distance[0] == 0.0);
  CHECK(rep.total_distance == 0.0);
  CHECK(rep.triangle_sum == 0.0);
  CHECK(rep.variational == 0.0);
  // The guess is the smallest consistent threshold, 0: right for k = 0,
  // wrong for k = 1.
  CHECK(rep.success_lo == 1.0);
  CHECK(rep.success_hi == 0.0);
}

TEST_CASE("hybrid profile distinguishing pair") {
  // The full search on n = 8 separates adjacent inputs completely: the
  // final basis states are orthogonal.
  const QueryAlgorithm alg = lifted_binary_search(8);
  const HybridReport rep = hybrid_profile_pair(alg, 5, 1, 18.3);
  CHECK(rep.total_distance == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(rep.success_lo == 1.0);
  CHECK(rep.success_hi == 1.0);
  CHECK(rep.variational == doctest::Approx(2.0).epsilon(1e-12));
  // The triangle inequality over the hybrid walk.
  CHECK(rep.total_distance <= rep.triangle_sum + 1e-12);

  CHECK_THROWS_AS(hybrid_profile_pair(alg, 0, 1, 18.3), config_error);
  CHECK_THROWS_AS(hybrid_profile_pair(alg, 9, 1, 18.3), config_error);
}

TEST_CASE("hybrid profile via an interval") {
  const QueryAlgorithm alg = truncated_binary_search(4096, 1);
  const Interval iv{1, 1, 4096};  // the single position 1
  const HybridReport rep = hybrid_profile(alg, iv, 1, 18.3);
  CHECK(rep.k_early == 1);
  CHECK(rep.k_late == 0);
}

TEST_CASE("measurement gap on orthogonal basis states") {
  const BasisLayout layout(2, 0);
  std::vector<Complex> a(4, Complex{0.0, 0.0});
  std::vector<Complex> b(4, Complex{0.0, 0.0});
  a[0] = Complex{1.0, 0.0};  // position 1
  b[2] = Complex{1.0, 0.0};  // position 2
  const BvGap gap = bv_gap(StateVector(layout, std::move(a)),
                           StateVector(layout, std::move(b)));
  CHECK(gap.l2 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(gap.variational == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("measurement gap rejects non-unit states") {
  const BasisLayout layout(2, 0);
  std::vector<Complex> short_amps(4, Complex{0.0, 0.0});
  short_amps[0] = Complex{0.5, 0.0};
  const StateVector sub(layout, std::move(short_amps));
  const StateVector unit = zero_state(layout);
  CHECK_THROWS_AS(bv_gap(sub, unit), std::invalid_argument);
  CHECK_THROWS_AS(bv_gap(unit, sub), std::invalid_argument);
}

TEST_CASE("measurement gap stays within the factor-4 bound") {
  const BasisLayout layout(8, 1);
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    const StateVector a = random_unit_state(layout, rng);
    const StateVector b = random_unit_state(layout, rng);
    const BvGap gap = bv_gap(a, b);  // throws internally if the bound breaks
    CHECK(gap.variational <= 4.0 * gap.l2 + 1e-9);
  }
}

TEST_CASE("verdicts") {
  // Indistinguishable: a zero-query algorithm cannot separate anything.
  const Verdict flat = make_verdict(zero_query(8), 0, 1, 0.75);
  CHECK_FALSE(flat.distinguishable);
  CHECK(flat.reason.find("< 1/4") != std::string::npos);
  // Distance 0 also triggers the stronger remark about 1/5.
  CHECK(flat.reason.find("1/5") != std::string::npos);

  // Distinguishable: the exact search succeeds on both and the states are
  // orthogonal.
  const Verdict sharp = make_verdict(lifted_binary_search(8), 4, 5, 0.75);
  CHECK(sharp.distinguishable);
  CHECK(sharp.reason.find(">= 1/4") != std::string::npos);

  CHECK_THROWS_AS(make_verdict(zero_query(8), 0, 2, 0.75), config_error);
}

TEST_CASE("verdict decision from raw metrics") {
  // Far apart but one side misses the threshold.
  const Verdict lo_low = verdict_from_metrics(0.3, 0.5, 0.9, 0.75, 3, 4);
  CHECK_FALSE(lo_low.distinguishable);
  CHECK(lo_low.reason.find("k = 3") != std::string::npos);

  const Verdict hi_low = verdict_from_metrics(0.3, 0.9, 0.5, 0.75, 3, 4);
  CHECK_FALSE(hi_low.distinguishable);
  CHECK(hi_low.reason.find("k = 4") != std::string::npos);

  const Verdict both = verdict_from_metrics(0.3, 0.8, 0.8, 0.75, 3, 4);
  CHECK(both.distinguishable);

  // Close states: distance dominates everything else.
  const Verdict close = verdict_from_metrics(0.1, 0.9, 0.9, 0.75, 3, 4);
  CHECK_FALSE(close.distinguishable);
  CHECK(close.reason.find("1/5") != std::string::npos);
  // Between 1/5 and 1/4 the stronger remark is withheld.
  const Verdict near = verdict_from_metrics(0.22, 0.9, 0.9, 0.75, 3, 4);
  CHECK_FALSE(near.distinguishable);
  CHECK(near.reason.find("1/5") == std::string::npos);
}

TEST_CASE("subdivision claims hold on a random algorithm") {
  const AdversaryParams p = derive_params(18.3, 8, 4);
  const QueryAlgorithm alg = random_algorithm(64, 2, 1, 5);
  const SubdivideRecord rec = subdivide(alg, Interval{1, 64, 64}, 3, p);
  const SubdivideClaims claims = check_subdivide_claims(alg, rec);
  REQUIRE(claims.phi_dist.size() == 3);
  CHECK(claims.ok(1e-9));
  // Before the first query the two prefixes are the same state, so both
  // the distance and its bound are zero.
  CHECK(claims.phi_dist[0] == 0.0);
  CHECK(claims.drift_bound[0] == 0.0);
}

TEST_CASE("per-step perturbation of the lifted search") {
  const QueryAlgorithm alg = lifted_binary_search(8);
  const HybridPerturbation pert = check_hybrid_perturbation(alg, 5);
  REQUIRE(pert.value.size() == 3);
  CHECK(pert.ok(1e-9));
  // Probes for k = 5 visit positions 4, 6, 5; only the last one touches
  // the differing position, where the answers diverge completely.
  CHECK(pert.value[0] == 0.0);
  CHECK(pert.value[1] == 0.0);
  CHECK(pert.value[2] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(pert.bound[0] == 0.0);
  CHECK(pert.bound[1] == 0.0);
  CHECK(pert.bound[2] == doctest::Approx(2.0).epsilon(1e-12));
}
