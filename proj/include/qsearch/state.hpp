#pragma once

// Basis layout and state vectors for the query register model.
//
// A basis state |i, b, z> packs into one array index as
//   index = (i_field << (1 + workspace_bits)) | (b << workspace_bits) | z
// where i_field = i - 1 for list position i in [1, n], b is the single
// oracle-answer bit and z is the workspace. The i-field occupies the top
// bits so that a range of list positions maps to one contiguous block of
// amplitudes.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace qsearch {

using Complex = std::complex<double>;

// Shared tolerances: inequality checks allow 1e-9 slack, identities that
// hold by algebra alone are held to 1e-12.
inline constexpr double kIneqTol = 1e-9;
inline constexpr double kExactTol = 1e-12;

struct BasisLayout {
  std::size_t n = 0;        // list length, must be a power of two
  int index_bits = 0;       // log2(n)
  int workspace_bits = 0;
  std::size_t dimension = 0;  // n * 2 * 2^workspace_bits

  BasisLayout() = default;
  BasisLayout(std::size_t n, int workspace_bits);

  bool operator==(const BasisLayout&) const = default;

  std::size_t block_size() const { return std::size_t{1} << (workspace_bits + 1); }

  std::size_t basis_index(std::size_t i_field, int b, std::size_t z) const {
    return (i_field << (workspace_bits + 1)) |
           (std::size_t(b) << workspace_bits) | z;
  }
  std::size_t i_field(std::size_t index) const {
    return index >> (workspace_bits + 1);
  }
  int b_field(std::size_t index) const {
    return int((index >> workspace_bits) & 1u);
  }
  std::size_t z_field(std::size_t index) const {
    return index & ((std::size_t{1} << workspace_bits) - 1);
  }
};

class StateVector {
 public:
  // All-zero amplitudes (not a unit state; useful as a buffer).
  explicit StateVector(const BasisLayout& layout);
  // Takes ownership of the amplitudes; validates size, finiteness and the
  // norm cap (norm <= 1 + 1e-9; sub-normalized states are first-class).
  StateVector(const BasisLayout& layout, std::vector<Complex> amplitudes);

  const BasisLayout& layout() const { return layout_; }
  std::size_t size() const { return amps_.size(); }

  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  Complex& operator[](std::size_t i) { return amps_[i]; }

  const std::vector<Complex>& amplitudes() const { return amps_; }
  std::vector<Complex>& amplitudes() { return amps_; }

 private:
  BasisLayout layout_;
  std::vector<Complex> amps_;
};

struct IndexDistribution {
  std::vector<double> probabilities;  // entry i = mass on i-field value i
};

// |0>: unit amplitude on basis index 0 (list position 1, b = 0, z = 0).
StateVector zero_state(const BasisLayout& layout);

double norm(const StateVector& s);

double l2_distance(const StateVector& a, const StateVector& b);

// Zeroes every amplitude whose list position lies outside [lo, hi]
// (1-based, inclusive). Idempotent; never renormalizes.
StateVector project_query_range(const StateVector& s, std::size_t lo,
                                std::size_t hi);

// Norm of project_query_range(s, lo, hi) without materializing it.
double projected_norm(const StateVector& s, std::size_t lo, std::size_t hi);

// Marginal distribution of the i-field: sums |amplitude|^2 over b and z.
IndexDistribution measure_index_distribution(const StateVector& s);

// Total variation distance in summed form: sum_i |p_i - p'_i|, range [0, 2].
double variational_distance(const IndexDistribution& p,
                            const IndexDistribution& q);

}  // namespace qsearch
