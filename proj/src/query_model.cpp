#include "qsearch/query_model.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace qsearch {

ThresholdInput::ThresholdInput(std::size_t k_, std::size_t n_) : k(k_), n(n_) {
  if (k > n) {
    throw std::invalid_argument("ThresholdInput: k = " + std::to_string(k) +
                                " out of range [0, " + std::to_string(n) + "]");
  }
}

void apply_oracle_inplace(StateVector& s, const ThresholdInput& input) {
  if (s.layout().n != input.n) {
    throw std::invalid_argument("apply_oracle: input length " +
                                std::to_string(input.n) +
                                " does not match layout n = " +
                                std::to_string(s.layout().n));
  }
  // x_i = 1 exactly for list positions i > k, i.e. i-field values >= k.
  // For those, swap the b = 0 and b = 1 halves of the block.
  const std::size_t block = s.layout().block_size();
  const std::size_t half = block / 2;
  auto& amps = s.amplitudes();
  for (std::size_t i = input.k; i < s.layout().n; ++i) {
    const std::size_t base = i * block;
    for (std::size_t z = 0; z < half; ++z) {
      std::swap(amps[base + z], amps[base + half + z]);
    }
  }
}

StateVector apply_oracle(StateVector s, const ThresholdInput& input) {
  apply_oracle_inplace(s, input);
  return s;
}

namespace {

void check_alg_input(const QueryAlgorithm& alg, const ThresholdInput& input) {
  if (alg.unitaries.empty()) {
    throw std::invalid_argument("QueryAlgorithm: needs at least U_0");
  }
  if (alg.layout.n != input.n) {
    throw std::invalid_argument("algorithm layout n = " +
                                std::to_string(alg.layout.n) +
                                " does not match input n = " +
                                std::to_string(input.n));
  }
}

}  // namespace

StateVector run_full(const QueryAlgorithm& alg, const ThresholdInput& input) {
  check_alg_input(alg, input);
  StateVector s = zero_state(alg.layout);
  alg.unitaries[0](s);
  for (int j = 1; j <= alg.num_queries(); ++j) {
    apply_oracle_inplace(s, input);
    alg.unitaries[j](s);
  }
  return s;
}

StateVector run_prefix(const QueryAlgorithm& alg, const ThresholdInput& input,
                       int step) {
  check_alg_input(alg, input);
  const int T = alg.num_queries();
  if (step < 1 || step > T + 1) {
    throw std::invalid_argument("run_prefix: step " + std::to_string(step) +
                                " out of range [1, " + std::to_string(T + 1) +
                                "]");
  }
  StateVector s = zero_state(alg.layout);
  alg.unitaries[0](s);
  for (int j = 1; j < step; ++j) {
    apply_oracle_inplace(s, input);
    alg.unitaries[j](s);
  }
  return s;
}

StateVector run_hybrid(const QueryAlgorithm& alg, int i,
                       const ThresholdInput& early,
                       const ThresholdInput& late) {
  check_alg_input(alg, early);
  check_alg_input(alg, late);
  const int T = alg.num_queries();
  if (i < 0 || i > T) {
    throw std::invalid_argument("run_hybrid: switch point " +
                                std::to_string(i) + " out of range [0, " +
                                std::to_string(T) + "]");
  }
  StateVector s = zero_state(alg.layout);
  alg.unitaries[0](s);
  for (int j = 1; j <= T; ++j) {
    apply_oracle_inplace(s, j <= i ? early : late);
    alg.unitaries[j](s);
  }
  return s;
}

std::optional<std::size_t> designated_answer(const ThresholdInput& input) {
  if (input.k >= input.n) return std::nullopt;
  return input.k;
}

double success_probability(const QueryAlgorithm& alg,
                           const ThresholdInput& input) {
  const auto answer = designated_answer(input);
  if (!answer) return 0.0;  // the all-zeros input has no representable answer
  const StateVector final_state = run_full(alg, input);
  const IndexDistribution dist = measure_index_distribution(final_state);
  return dist.probabilities[*answer];
}

}  // namespace qsearch
