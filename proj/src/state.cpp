#include "qsearch/state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qsearch {

namespace {

bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

int log2_exact(std::size_t x) {
  int bits = 0;
  while ((std::size_t{1} << bits) < x) ++bits;
  return bits;
}

// Soft cap so a mistyped CLI value fails fast instead of allocating
// gigabytes. 2^26 complex doubles = 1 GiB.
constexpr std::size_t kMaxDimension = std::size_t{1} << 26;

}  // namespace

BasisLayout::BasisLayout(std::size_t n_, int workspace_bits_) {
  if (!is_power_of_two(n_)) {
    throw std::invalid_argument("BasisLayout: n must be a power of two, got " +
                                std::to_string(n_));
  }
  if (n_ < 2) {
    throw std::invalid_argument("BasisLayout: n must be at least 2");
  }
  if (workspace_bits_ < 0) {
    throw std::invalid_argument("BasisLayout: workspace_bits must be >= 0");
  }
  n = n_;
  index_bits = log2_exact(n_);
  workspace_bits = workspace_bits_;
  if (index_bits + 1 + workspace_bits >= 63) {
    throw std::invalid_argument("BasisLayout: register too wide");
  }
  dimension = n << (1 + workspace_bits);
  if (dimension > kMaxDimension) {
    throw std::invalid_argument(
        "BasisLayout: dimension " + std::to_string(dimension) +
        " exceeds the supported maximum 2^26");
  }
}

StateVector::StateVector(const BasisLayout& layout)
    : layout_(layout), amps_(layout.dimension, Complex{0.0, 0.0}) {}

StateVector::StateVector(const BasisLayout& layout,
                         std::vector<Complex> amplitudes)
    : layout_(layout), amps_(std::move(amplitudes)) {
  if (amps_.size() != layout_.dimension) {
    throw std::invalid_argument(
        "StateVector: amplitude count " + std::to_string(amps_.size()) +
        " does not match layout dimension " +
        std::to_string(layout_.dimension));
  }
  double sq = 0.0;
  for (const Complex& a : amps_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("StateVector: non-finite amplitude");
    }
    sq += std::norm(a);
  }
  if (std::sqrt(sq) > 1.0 + kIneqTol) {
    throw std::invalid_argument("StateVector: norm " +
                                std::to_string(std::sqrt(sq)) +
                                " exceeds 1 + 1e-9");
  }
}

StateVector zero_state(const BasisLayout& layout) {
  StateVector s(layout);
  s[0] = Complex{1.0, 0.0};
  return s;
}

double norm(const StateVector& s) {
  double sq = 0.0;
  for (const Complex& a : s.amplitudes()) sq += std::norm(a);
  return std::sqrt(sq);
}

double l2_distance(const StateVector& a, const StateVector& b) {
  if (!(a.layout() == b.layout())) {
    throw std::invalid_argument("l2_distance: layouts differ");
  }
  double sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sq += std::norm(a[i] - b[i]);
  return std::sqrt(sq);
}

namespace {

void check_range(const BasisLayout& layout, std::size_t lo, std::size_t hi) {
  if (lo < 1 || hi > layout.n || lo > hi) {
    throw std::invalid_argument(
        "query range [" + std::to_string(lo) + ", " + std::to_string(hi) +
        "] invalid for n = " + std::to_string(layout.n));
  }
}

}  // namespace

StateVector project_query_range(const StateVector& s, std::size_t lo,
                                std::size_t hi) {
  check_range(s.layout(), lo, hi);
  const std::size_t block = s.layout().block_size();
  StateVector out = s;
  auto& amps = out.amplitudes();
  // List positions [lo, hi] occupy the contiguous index block
  // [(lo-1)*block, hi*block).
  const std::size_t begin = (lo - 1) * block;
  const std::size_t end = hi * block;
  for (std::size_t i = 0; i < begin; ++i) amps[i] = Complex{0.0, 0.0};
  for (std::size_t i = end; i < amps.size(); ++i) amps[i] = Complex{0.0, 0.0};
  return out;
}

double projected_norm(const StateVector& s, std::size_t lo, std::size_t hi) {
  check_range(s.layout(), lo, hi);
  const std::size_t block = s.layout().block_size();
  const std::size_t begin = (lo - 1) * block;
  const std::size_t end = hi * block;
  double sq = 0.0;
  const auto& amps = s.amplitudes();
  for (std::size_t i = begin; i < end; ++i) sq += std::norm(amps[i]);
  return std::sqrt(sq);
}

IndexDistribution measure_index_distribution(const StateVector& s) {
  const std::size_t block = s.layout().block_size();
  IndexDistribution dist;
  dist.probabilities.assign(s.layout().n, 0.0);
  const auto& amps = s.amplitudes();
  for (std::size_t i = 0; i < s.layout().n; ++i) {
    double p = 0.0;
    const std::size_t base = i * block;
    for (std::size_t j = 0; j < block; ++j) p += std::norm(amps[base + j]);
    dist.probabilities[i] = p;
  }
  return dist;
}

double variational_distance(const IndexDistribution& p,
                            const IndexDistribution& q) {
  if (p.probabilities.size() != q.probabilities.size()) {
    throw std::invalid_argument("variational_distance: sizes differ");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < p.probabilities.size(); ++i) {
    d += std::abs(p.probabilities[i] - q.probabilities[i]);
  }
  return d;
}

}  // namespace qsearch
