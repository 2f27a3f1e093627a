#pragma once

// The query model: threshold inputs, the bit-flip oracle and algorithm
// execution (full runs, prefixes, hybrids).

#include <functional>
#include <optional>
#include <vector>

#include "qsearch/state.hpp"

namespace qsearch {

// The monotone 0-1 input with threshold k: x_i = 0 for i <= k and x_i = 1
// for i > k (positions are 1-based). k may equal n, the all-zeros input,
// which every oracle-side operation accepts; only the designated answer is
// restricted to k <= n-1, since the answer register holds values 0..n-1.
struct ThresholdInput {
  std::size_t k = 0;
  std::size_t n = 0;

  ThresholdInput(std::size_t k, std::size_t n);

  int x(std::size_t i) const { return i > k ? 1 : 0; }
};

// A unitary step, applied in place. Opaque on purpose: algorithms supply
// whatever callable they like (permutations, rotation products, ...), and
// unitarity is enforced by property tests, not by the type.
using UnitaryFn = std::function<void(StateVector&)>;

// U_T O U_{T-1} ... U_1 O U_0 applied to |0>: unitaries holds U_0..U_T,
// so num_queries() = T = unitaries.size() - 1.
struct QueryAlgorithm {
  BasisLayout layout;
  std::vector<UnitaryFn> unitaries;

  int num_queries() const { return int(unitaries.size()) - 1; }
};

// |i, b, z> -> |i, b xor x_i, z>. A permutation of basis states, so the
// norm is preserved exactly and applying it twice is the exact identity.
void apply_oracle_inplace(StateVector& s, const ThresholdInput& input);
StateVector apply_oracle(StateVector s, const ThresholdInput& input);

StateVector run_full(const QueryAlgorithm& alg, const ThresholdInput& input);

// State before the step-th query: U_{step-1} O ... O U_0 |0>, using step-1
// oracle calls. Valid for 1 <= step <= T+1; step = T+1 is the final state.
StateVector run_prefix(const QueryAlgorithm& alg, const ThresholdInput& input,
                       int step);

// First i queries answered by `early`, the remaining T-i by `late`.
StateVector run_hybrid(const QueryAlgorithm& alg, int i,
                       const ThresholdInput& early,
                       const ThresholdInput& late);

// The i-field value designating the answer for input k; empty for k = n.
std::optional<std::size_t> designated_answer(const ThresholdInput& input);

// Probability that measuring the i-field of the final state yields the
// designated answer; 0 for the k = n input.
double success_probability(const QueryAlgorithm& alg,
                           const ThresholdInput& input);

}  // namespace qsearch
