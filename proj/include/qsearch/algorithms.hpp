#pragma once

// The algorithm zoo: a correct classical binary search lifted to the query
// model, its truncated variants, the trivial zero-query algorithm, and
// seeded random circuits for property testing.

#include <cstdint>
#include <random>
#include <string>

#include "qsearch/query_model.hpp"

namespace qsearch {

// Reversible binary search over thresholds k in [0, n-1]: log2(n) queries,
// one workspace bit per round to hold the answer, every unitary a basis
// permutation. Finds k with certainty on every input.
QueryAlgorithm lifted_binary_search(std::size_t n);

// Same rounds, stopped after t_cut queries (0 <= t_cut < log2 n); the
// final unitary writes the smallest threshold still consistent with the
// answers seen. t_cut = 0 degenerates to a constant-output algorithm.
QueryAlgorithm truncated_binary_search(std::size_t n, int t_cut);

// T = 0, U_0 = identity: outputs i-field 0 regardless of the input.
QueryAlgorithm zero_query(std::size_t n);

// T+1 unitaries, each a product of `dimension` seeded two-level rotations.
// Deterministic in (n, T, workspace_bits, seed). Requires dimension <= 2^14.
QueryAlgorithm random_algorithm(std::size_t n, int T, int workspace_bits,
                                std::uint64_t seed);

// Haar-ish random unit state: i.i.d. Gaussian amplitudes, normalized.
StateVector random_unit_state(const BasisLayout& layout, std::mt19937_64& rng);

// Parsed form of the CLI algorithm spec strings:
//   "lifted-bs" | "truncated-bs:<t_cut>" | "zero-query"
//   | "random:T=<T>,w=<w>,seed=<seed>"  (each key optional)
struct AlgorithmSpec {
  enum class Kind { LiftedBs, TruncatedBs, ZeroQuery, Random };
  Kind kind = Kind::ZeroQuery;
  std::size_t n = 0;
  int t_cut = 0;             // TruncatedBs
  int T = 3;                 // Random
  int workspace_bits = 2;    // Random
  std::uint64_t seed = 1;    // Random
};

AlgorithmSpec parse_algorithm_spec(const std::string& text, std::size_t n,
                                   std::uint64_t default_seed);

QueryAlgorithm make_algorithm(const AlgorithmSpec& spec);

}  // namespace qsearch
