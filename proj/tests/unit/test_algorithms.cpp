#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "doctest.h"
#include "qsearch/algorithms.hpp"
#include "qsearch/errors.hpp"

using namespace qsearch;

namespace {

// Independent reference: classical binary search over thresholds. Returns
// the probe positions asked and the answer determined after `rounds`
// probes (the smallest threshold still consistent).
struct ClassicalRun {
  std::vector<std::size_t> probes;
  std::size_t answer;
};

ClassicalRun classical_search(std::size_t n, std::size_t k, int rounds) {
  ClassicalRun run;
  std::size_t lo = 0;
  std::size_t width = n;
  for (int j = 1; j <= rounds; ++j) {
    const std::size_t probe = lo + width / 2;  // 1-based list position
    run.probes.push_back(probe);
    const int x = probe > k ? 1 : 0;
    if (x == 0) lo += width / 2;  // k >= probe: answer in the upper half
    width /= 2;
  }
  run.answer = lo;
  return run;
}

// For an algorithm whose unitaries are all basis permutations, the state
// is a single basis vector throughout; returns its index.
std::size_t single_basis_index(const StateVector& s) {
  std::size_t found = s.size();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != Complex{0.0, 0.0}) {
      REQUIRE(found == s.size());  // only one nonzero entry
      REQUIRE(std::abs(s[i] - Complex{1.0, 0.0}) <= 1e-15);
      found = i;
    }
  }
  REQUIRE(found < s.size());
  return found;
}

}  // namespace

TEST_CASE("classical reference at n = 8, k = 5") {
  const ClassicalRun run = classical_search(8, 5, 3);
  CHECK(run.probes == std::vector<std::size_t>{4, 6, 5});
  CHECK(run.answer == 5);
}

TEST_CASE("lifted search probes match the classical search") {
  const std::size_t n = 16;
  const QueryAlgorithm alg = lifted_binary_search(n);
  CHECK(alg.num_queries() == 4);

  for (std::size_t k = 0; k < n; ++k) {
    const ThresholdInput input(k, n);
    const ClassicalRun ref = classical_search(n, k, 4);
    for (int j = 1; j <= 4; ++j) {
      const StateVector before = run_prefix(alg, input, j);
      const std::size_t idx = single_basis_index(before);
      // The state before query j sits on the classical probe position.
      CHECK(alg.layout.i_field(idx) + 1 == ref.probes[j - 1]);
    }
    const StateVector final_state = run_full(alg, input);
    CHECK(alg.layout.i_field(single_basis_index(final_state)) == ref.answer);
    CHECK(ref.answer == k);
  }
}

TEST_CASE("lifted search is exact on every input") {
  for (std::size_t n : {2, 4, 8, 32}) {
    const QueryAlgorithm alg = lifted_binary_search(n);
    CHECK(alg.num_queries() ==
          int(std::lround(std::log2(double(n)))));
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(success_probability(alg, ThresholdInput(k, n)) == 1.0);
    }
  }
}

TEST_CASE("truncated search guesses the smallest consistent threshold") {
  const std::size_t n = 8;
  const QueryAlgorithm alg = truncated_binary_search(n, 2);
  CHECK(alg.num_queries() == 2);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t guess = classical_search(n, k, 2).answer;
    const double succ = success_probability(alg, ThresholdInput(k, n));
    CHECK(succ == (guess == k ? 1.0 : 0.0));
  }
  // After 2 of 3 rounds the reachable guesses are the even thresholds.
  for (std::size_t k : {0, 2, 4, 6}) {
    CHECK(success_probability(alg, ThresholdInput(k, n)) == 1.0);
  }
  for (std::size_t k : {1, 3, 5, 7}) {
    CHECK(success_probability(alg, ThresholdInput(k, n)) == 0.0);
  }
}

TEST_CASE("truncation at zero asks nothing and answers zero") {
  const QueryAlgorithm alg = truncated_binary_search(8, 0);
  CHECK(alg.num_queries() == 0);
  CHECK(success_probability(alg, ThresholdInput(0, 8)) == 1.0);
  CHECK(success_probability(alg, ThresholdInput(5, 8)) == 0.0);
}

TEST_CASE("truncation bounds") {
  CHECK_THROWS_AS(truncated_binary_search(8, -1), config_error);
  CHECK_THROWS_AS(truncated_binary_search(8, 3), config_error);
  CHECK_THROWS_AS(truncated_binary_search(8, 7), config_error);
}

TEST_CASE("random algorithms are deterministic in the seed") {
  const QueryAlgorithm a = random_algorithm(8, 2, 1, 42);
  const QueryAlgorithm b = random_algorithm(8, 2, 1, 42);
  const QueryAlgorithm c = random_algorithm(8, 2, 1, 43);
  const ThresholdInput input(3, 8);
  const StateVector ra = run_full(a, input);
  const StateVector rb = run_full(b, input);
  const StateVector rc = run_full(c, input);
  for (std::size_t i = 0; i < ra.size(); ++i) CHECK(ra[i] == rb[i]);
  CHECK(l2_distance(ra, rc) > 1e-6);  // different seed, different circuit
}

TEST_CASE("random algorithm unitaries preserve the norm") {
  const QueryAlgorithm alg = random_algorithm(8, 3, 2, 7);
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 100; ++trial) {
    StateVector s = random_unit_state(alg.layout, rng);
    alg.unitaries[std::size_t(trial) % alg.unitaries.size()](s);
    CHECK(std::abs(norm(s) - 1.0) <= 1e-12);
  }
}

TEST_CASE("random algorithm dimension cap") {
  // 4096 * 2 * 4 = 32768 > 2^14
  CHECK_THROWS_AS(random_algorithm(4096, 1, 2, 1), config_error);
  CHECK_THROWS_AS(random_algorithm(8, -1, 0, 1), config_error);
}

TEST_CASE("algorithm spec parsing") {
  const AlgorithmSpec bs = parse_algorithm_spec("lifted-bs", 64, 5);
  CHECK(bs.kind == AlgorithmSpec::Kind::LiftedBs);
  CHECK(bs.n == 64);

  const AlgorithmSpec tr = parse_algorithm_spec("truncated-bs:2", 64, 5);
  CHECK(tr.kind == AlgorithmSpec::Kind::TruncatedBs);
  CHECK(tr.t_cut == 2);

  const AlgorithmSpec zq = parse_algorithm_spec("zero-query", 64, 5);
  CHECK(zq.kind == AlgorithmSpec::Kind::ZeroQuery);

  const AlgorithmSpec rd =
      parse_algorithm_spec("random:T=5,w=1,seed=42", 64, 5);
  CHECK(rd.kind == AlgorithmSpec::Kind::Random);
  CHECK(rd.T == 5);
  CHECK(rd.workspace_bits == 1);
  CHECK(rd.seed == 42);

  // Defaults: T = 3, w = 2, seed from the CLI.
  const AlgorithmSpec rd2 = parse_algorithm_spec("random", 64, 5);
  CHECK(rd2.T == 3);
  CHECK(rd2.workspace_bits == 2);
  CHECK(rd2.seed == 5);

  CHECK_THROWS_AS(parse_algorithm_spec("foo", 64, 5), config_error);
  CHECK_THROWS_AS(parse_algorithm_spec("lifted-bs:3", 64, 5), config_error);
  CHECK_THROWS_AS(parse_algorithm_spec("truncated-bs", 64, 5), config_error);
  CHECK_THROWS_AS(parse_algorithm_spec("random:x=1", 64, 5), config_error);
  CHECK_THROWS_AS(parse_algorithm_spec("random:T=abc", 64, 5), config_error);
}

TEST_CASE("make_algorithm dispatches on the spec") {
  AlgorithmSpec spec = parse_algorithm_spec("truncated-bs:1", 16, 1);
  const QueryAlgorithm alg = make_algorithm(spec);
  CHECK(alg.num_queries() == 1);
  CHECK(alg.layout.n == 16);
}
