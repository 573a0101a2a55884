#ifndef HOLOCOMP_SPIN_STATE_HPP
#define HOLOCOMP_SPIN_STATE_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "holocomp/lattice.hpp"

namespace holocomp {

using Complex = std::complex<double>;
using VectorXc = Eigen::VectorXcd;
using MatrixXc = Eigen::MatrixXcd;

/// Normalized amplitude vector over d^|Λ| configurations. Site 0 is the most
/// significant digit of the configuration index (row-major over site index).
class PureState {
public:
  PureState(Lattice lattice, int local_dim, VectorXc amplitudes);

  static PureState basis_state(const Lattice& lattice, int local_dim,
                               const std::vector<int>& config);
  /// (|0...0> + |q-1,...,q-1>)/sqrt(2) for local dimension q.
  static PureState ghz(const Lattice& lattice, int local_dim = 2);
  static PureState random(const Lattice& lattice, int local_dim, std::mt19937_64& rng);

  const Lattice& lattice() const { return lattice_; }
  int local_dim() const { return local_dim_; }
  long long dim() const { return amplitudes_.size(); }
  const VectorXc& amplitudes() const { return amplitudes_; }

  Complex overlap(const PureState& other) const;  // <this|other>

private:
  Lattice lattice_;
  int local_dim_;
  VectorXc amplitudes_;
};

long long hilbert_dim(int local_dim, int sites);

/// Splits a configuration index over an ordered site universe into the index
/// over a subset and the index over the rest, and recombines them. Digits of
/// every partial index follow the same convention: lowest-numbered site is
/// the most significant digit. Because different sites occupy disjoint digit
/// positions, global = subset_stride[a] + rest_stride[r].
class SubsetIndexer {
public:
  SubsetIndexer(const std::vector<int>& universe_sites, const std::vector<int>& subset_sites,
                int local_dim);
  /// Whole-lattice convenience: universe = 0..|Λ|-1.
  SubsetIndexer(const Lattice& lattice, const std::vector<int>& subset_sites, int local_dim);

  long long subset_dim() const { return subset_dim_; }
  long long rest_dim() const { return rest_dim_; }
  long long combine(long long subset_index, long long rest_index) const {
    return subset_base_[subset_index] + rest_base_[rest_index];
  }
  const std::vector<long long>& subset_bases() const { return subset_base_; }
  const std::vector<long long>& rest_bases() const { return rest_base_; }

private:
  long long subset_dim_, rest_dim_;
  std::vector<long long> subset_base_;
  std::vector<long long> rest_base_;
};

/// Applies a dense operator supported on `sites` to an amplitude vector over
/// the universe, without materializing the global operator.
VectorXc apply_on_sites(const MatrixXc& op, const std::vector<int>& universe_sites,
                        const std::vector<int>& sites, int local_dim, const VectorXc& amps);

}  // namespace holocomp

#endif
