#include "qsearch/algorithms.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <utility>
#include <vector>

#include "qsearch/errors.hpp"

namespace qsearch {

namespace {

// Applies a basis permutation: out[f(x)] = in[x].
template <typename F>
void apply_permutation(StateVector& s, F&& f) {
  const auto& in = s.amplitudes();
  std::vector<Complex> out(in.size(), Complex{0.0, 0.0});
  for (std::size_t x = 0; x < in.size(); ++x) {
    out[f(x)] = in[x];
  }
  s.amplitudes() = std::move(out);
}

// Classical decision data for binary search over thresholds k in [0, n-1].
// After answers a_1..a_j (a_m = value of x at the m-th probe) the candidate
// set is [lo_j(a), lo_j(a) + n/2^j). Answer bits live in z with a_m at bit
// m-1.
std::size_t range_lo(std::size_t n, int answers, std::size_t z) {
  std::size_t lo = 0;
  for (int m = 1; m <= answers; ++m) {
    const int a = int((z >> (m - 1)) & 1u);
    if (a == 0) lo += n >> m;  // x at the probe was 0: keep the upper half
  }
  return lo;
}

// Probe for round j (1-based list position): asking x at position p tells
// whether k >= p (x = 0) or k < p (x = 1).
std::size_t probe_position(std::size_t n, int j, std::size_t z) {
  return range_lo(n, j - 1, z) + (n >> j);
}

// Swap the oracle-answer bit b with workspace bit `slot` (0-based).
std::size_t swap_b_with_z_bit(const BasisLayout& layout, std::size_t idx,
                              int slot) {
  const std::size_t b_mask = std::size_t{1} << layout.workspace_bits;
  const std::size_t z_mask = std::size_t{1} << slot;
  const bool b = (idx & b_mask) != 0;
  const bool zb = (idx & z_mask) != 0;
  if (b != zb) idx ^= (b_mask | z_mask);
  return idx;
}

// Rounds 1..T-1 of the lifted search: stash the answer bit in workspace
// slot j-1, then retarget the i-field from probe j to probe j+1. The
// retarget constant depends only on workspace bits, so the map is a
// controlled XOR and hence a permutation.
UnitaryFn make_round_unitary(const BasisLayout& layout, std::size_t n, int j) {
  const int zbits = j;  // answer bits a_1..a_j available after the swap
  auto table = std::make_shared<std::vector<std::size_t>>();
  table->resize(std::size_t{1} << zbits);
  for (std::size_t z = 0; z < table->size(); ++z) {
    const std::size_t from = probe_position(n, j, z) - 1;
    const std::size_t to = probe_position(n, j + 1, z) - 1;
    (*table)[z] = from ^ to;
  }
  const std::size_t zmask = (std::size_t{1} << zbits) - 1;
  const int shift = layout.workspace_bits + 1;
  return [layout, table, zmask, shift, j](StateVector& s) {
    apply_permutation(s, [&](std::size_t idx) {
      idx = swap_b_with_z_bit(layout, idx, j - 1);
      const std::size_t c = (*table)[idx & zmask];
      return idx ^ (c << shift);
    });
  };
}

// Final round: stash the last answer bit, then rewrite the i-field from
// the last probe to the output value given by `target`.
UnitaryFn make_final_unitary(const BasisLayout& layout, std::size_t n,
                             int last_round,
                             std::size_t (*target)(std::size_t, int,
                                                   std::size_t)) {
  const int zbits = last_round;
  auto table = std::make_shared<std::vector<std::size_t>>();
  table->resize(std::size_t{1} << zbits);
  for (std::size_t z = 0; z < table->size(); ++z) {
    const std::size_t from = probe_position(n, last_round, z) - 1;
    const std::size_t to = target(n, last_round, z);
    (*table)[z] = from ^ to;
  }
  const std::size_t zmask = (std::size_t{1} << zbits) - 1;
  const int shift = layout.workspace_bits + 1;
  return [layout, table, zmask, shift, last_round](StateVector& s) {
    apply_permutation(s, [&](std::size_t idx) {
      idx = swap_b_with_z_bit(layout, idx, last_round - 1);
      const std::size_t c = (*table)[idx & zmask];
      return idx ^ (c << shift);
    });
  };
}

// Output of the full search: the unique threshold consistent with all
// log2(n) answers.
std::size_t full_search_answer(std::size_t n, int rounds, std::size_t z) {
  return range_lo(n, rounds, z);
}

// Output of a truncated search: the smallest still-consistent threshold.
std::size_t truncated_guess(std::size_t n, int rounds, std::size_t z) {
  return range_lo(n, rounds, z);
}

UnitaryFn make_identity() {
  return [](StateVector&) {};
}

UnitaryFn make_first_probe_unitary(const BasisLayout& layout, std::size_t n) {
  const std::size_t c = (n / 2) - 1;  // probe position n/2, i-field n/2 - 1
  const int shift = layout.workspace_bits + 1;
  if (c == 0) return make_identity();
  return [c, shift](StateVector& s) {
    apply_permutation(s, [&](std::size_t idx) { return idx ^ (c << shift); });
  };
}

QueryAlgorithm build_search(std::size_t n, int rounds,
                            std::size_t (*target)(std::size_t, int,
                                                  std::size_t)) {
  const BasisLayout layout(n, rounds);
  QueryAlgorithm alg;
  alg.layout = layout;
  alg.unitaries.push_back(make_first_probe_unitary(layout, n));
  for (int j = 1; j < rounds; ++j) {
    alg.unitaries.push_back(make_round_unitary(layout, n, j));
  }
  alg.unitaries.push_back(make_final_unitary(layout, n, rounds, target));
  return alg;
}

int log2_of_power(std::size_t n) {
  int bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  return bits;
}

}  // namespace

QueryAlgorithm lifted_binary_search(std::size_t n) {
  const int rounds = log2_of_power(n);
  // build_search's BasisLayout rejects any n that is not a power of two.
  return build_search(n, rounds, &full_search_answer);
}

QueryAlgorithm truncated_binary_search(std::size_t n, int t_cut) {
  const int rounds_full = log2_of_power(BasisLayout(n, 0).n);  // validates n
  if (t_cut < 0 || t_cut >= rounds_full) {
    throw config_error("truncated-bs: t_cut = " + std::to_string(t_cut) +
                       " out of range [0, " + std::to_string(rounds_full - 1) +
                       "] for n = " + std::to_string(n));
  }
  if (t_cut == 0) {
    QueryAlgorithm alg;
    alg.layout = BasisLayout(n, 0);
    alg.unitaries.push_back(make_identity());
    return alg;
  }
  return build_search(n, t_cut, &truncated_guess);
}

QueryAlgorithm zero_query(std::size_t n) {
  QueryAlgorithm alg;
  alg.layout = BasisLayout(n, 0);
  alg.unitaries.push_back(make_identity());
  return alg;
}

namespace {

struct Rotation {
  std::uint32_t a;
  std::uint32_t b;
  double c;        // cos(theta)
  Complex s;       // sin(theta) * e^{i phi}
};

void apply_rotations(StateVector& state, const std::vector<Rotation>& rots) {
  auto& amps = state.amplitudes();
  for (const Rotation& r : rots) {
    const Complex xa = amps[r.a];
    const Complex xb = amps[r.b];
    amps[r.a] = r.c * xa + r.s * xb;
    amps[r.b] = -std::conj(r.s) * xa + r.c * xb;
  }
}

}  // namespace

QueryAlgorithm random_algorithm(std::size_t n, int T, int workspace_bits,
                                std::uint64_t seed) {
  if (T < 0) {
    throw config_error("random algorithm: T must be >= 0");
  }
  const BasisLayout layout(n, workspace_bits);
  if (layout.dimension > (std::size_t{1} << 14)) {
    throw config_error("random algorithm: dimension " +
                       std::to_string(layout.dimension) +
                       " exceeds 2^14; reduce n or workspace");
  }
  constexpr double kTwoPi = 6.283185307179586;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(
      0, std::uint32_t(layout.dimension - 1));
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);

  QueryAlgorithm alg;
  alg.layout = layout;
  for (int j = 0; j <= T; ++j) {
    auto rots = std::make_shared<std::vector<Rotation>>();
    rots->reserve(layout.dimension);
    for (std::size_t r = 0; r < layout.dimension; ++r) {
      std::uint32_t a = pick(rng);
      std::uint32_t b = pick(rng);
      while (b == a) b = pick(rng);
      const double theta = angle(rng);
      const double phi = angle(rng);
      rots->push_back(Rotation{
          a, b, std::cos(theta),
          std::sin(theta) * Complex{std::cos(phi), std::sin(phi)}});
    }
    alg.unitaries.push_back(
        [rots](StateVector& s) { apply_rotations(s, *rots); });
  }
  return alg;
}

StateVector random_unit_state(const BasisLayout& layout,
                              std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Complex> amps(layout.dimension);
  double sq = 0.0;
  for (auto& a : amps) {
    a = Complex{gauss(rng), gauss(rng)};
    sq += std::norm(a);
  }
  const double inv = 1.0 / std::sqrt(sq);
  for (auto& a : amps) a *= inv;
  return StateVector(layout, std::move(amps));
}

namespace {

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw config_error("algorithm spec: bad " + what + " value '" + text +
                       "'");
  }
}

}  // namespace

AlgorithmSpec parse_algorithm_spec(const std::string& text, std::size_t n,
                                   std::uint64_t default_seed) {
  AlgorithmSpec spec;
  spec.n = n;
  spec.seed = default_seed;

  const std::size_t colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string rest =
      colon == std::string::npos ? "" : text.substr(colon + 1);

  if (kind == "lifted-bs") {
    spec.kind = AlgorithmSpec::Kind::LiftedBs;
    if (!rest.empty()) throw config_error("lifted-bs takes no parameters");
  } else if (kind == "zero-query") {
    spec.kind = AlgorithmSpec::Kind::ZeroQuery;
    if (!rest.empty()) throw config_error("zero-query takes no parameters");
  } else if (kind == "truncated-bs") {
    spec.kind = AlgorithmSpec::Kind::TruncatedBs;
    if (rest.empty()) {
      throw config_error("truncated-bs needs a cut, e.g. truncated-bs:2");
    }
    spec.t_cut = int(parse_u64(rest, "t_cut"));
  } else if (kind == "random") {
    spec.kind = AlgorithmSpec::Kind::Random;
    std::size_t pos = 0;
    while (pos < rest.size()) {
      std::size_t comma = rest.find(',', pos);
      if (comma == std::string::npos) comma = rest.size();
      const std::string item = rest.substr(pos, comma - pos);
      const std::size_t eq = item.find('=');
      if (eq == std::string::npos) {
        throw config_error("random spec: expected key=value, got '" + item +
                           "'");
      }
      const std::string key = item.substr(0, eq);
      const std::string value = item.substr(eq + 1);
      if (key == "T") {
        spec.T = int(parse_u64(value, "T"));
      } else if (key == "w") {
        spec.workspace_bits = int(parse_u64(value, "w"));
      } else if (key == "seed") {
        spec.seed = parse_u64(value, "seed");
      } else {
        throw config_error("random spec: unknown key '" + key + "'");
      }
      pos = comma + 1;
    }
  } else {
    throw config_error("unknown algorithm '" + kind +
                       "' (expected lifted-bs, truncated-bs:<cut>, "
                       "zero-query or random:...)");
  }
  return spec;
}

QueryAlgorithm make_algorithm(const AlgorithmSpec& spec) {
  switch (spec.kind) {
    case AlgorithmSpec::Kind::LiftedBs:
      return lifted_binary_search(spec.n);
    case AlgorithmSpec::Kind::TruncatedBs:
      return truncated_binary_search(spec.n, spec.t_cut);
    case AlgorithmSpec::Kind::ZeroQuery:
      return zero_query(spec.n);
    case AlgorithmSpec::Kind::Random:
      return random_algorithm(spec.n, spec.T, spec.workspace_bits, spec.seed);
  }
  throw config_error("unreachable algorithm kind");
}

}  // namespace qsearch
