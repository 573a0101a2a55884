#ifndef HOLOCOMP_SCHMIDT_HPP
#define HOLOCOMP_SCHMIDT_HPP

#include "holocomp/lattice.hpp"
#include "holocomp/probability.hpp"
#include "holocomp/spin_state.hpp"

namespace holocomp {

/// Schmidt decomposition across a region: |ψ> = Σ_j sqrt(p_j) |j>_A |j>_A^c.
/// The spectrum is the reduced-state spectrum, non-increasing and summing to
/// one; the bases are orthonormal columns. Entanglement entropy in base d.
struct SchmidtData {
  Region region;               // A
  int local_dim;
  ProbabilityVector spectrum;  // length min(d^|A|, d^|A^c|), zeros kept
  MatrixXc left_basis;         // d^|A|   x rank
  MatrixXc right_basis;        // d^|A^c| x rank
  double entanglement_entropy; // H(spectrum) in base d

  long long rank() const { return static_cast<long long>(spectrum.size()); }
  /// Number of Schmidt values above the numerical floor.
  long long positive_rank(double floor = 1e-24) const;
};

/// SVD of the amplitude matrix reshaped to (A configurations) x (A^c
/// configurations). Requires A nonempty and A != Λ.
SchmidtData schmidt_decompose(const PureState& state, const Region& A);

struct TruncatedState {
  PureState state;   // |ψ_M>
  double overlap;    // |<ψ|ψ_M>|^2 = Σ_{j<=M} p_j
};

/// Keeps the M largest Schmidt values and renormalizes. 1 <= M <= rank.
TruncatedState truncate_state(const SchmidtData& sd, long long M);

/// Rebuilds the state from the decomposition (reconstruction invariant).
PureState reconstruct(const SchmidtData& sd, const Lattice& lattice);

}  // namespace holocomp

#endif
