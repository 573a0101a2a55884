#ifndef HOLOCOMP_SPIN_HAMILTONIAN_HPP
#define HOLOCOMP_SPIN_HAMILTONIAN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "holocomp/lattice.hpp"
#include "holocomp/spin_state.hpp"

namespace holocomp {

struct HamiltonianTerm {
  std::vector<int> support;  // sorted site indices
  MatrixXc op;               // Hermitian, dimension d^|support|
};

/// Sum of uniformly bounded local terms on a lattice. Term operators are
/// validated Hermitian at construction; the interaction range and the largest
/// term norm are recorded.
class LocalHamiltonian {
public:
  LocalHamiltonian(Lattice lattice, int local_dim, std::vector<HamiltonianTerm> terms,
                   int range = 1);

  const Lattice& lattice() const { return lattice_; }
  int local_dim() const { return local_dim_; }
  int range() const { return range_; }
  const std::vector<HamiltonianTerm>& terms() const { return terms_; }

  double max_term_norm() const { return max_term_norm_; }
  /// Sum of term operator norms; an upper bound on ‖H‖.
  double term_norm_sum() const { return term_norm_sum_; }

  long long dim() const;
  VectorXc apply(const VectorXc& v) const;
  /// Dense matrix build; guarded to dim <= 1<<14.
  MatrixXc dense() const;

private:
  Lattice lattice_;
  int local_dim_;
  int range_;
  std::vector<HamiltonianTerm> terms_;
  double max_term_norm_ = 0.0;
  double term_norm_sum_ = 0.0;
};

/// Transverse-field Ising chain, H = -coupling Σ Z_i Z_{i+1} - field Σ X_i.
/// Gapped paramagnet for |field| > |coupling|. Length capped at 24.
LocalHamiltonian build_tfim(int length, double field, double coupling,
                            BoundaryCondition bc = BoundaryCondition::open);

/// Spin-1/2 Heisenberg chain, H = coupling Σ S_i·S_{i+1} (S = σ/2); the
/// two-site ground state is the singlet at energy -3/4 coupling.
LocalHamiltonian build_heisenberg(int length, double coupling,
                                  BoundaryCondition bc = BoundaryCondition::open);

/// Nearest-neighbor TFIM on an open/periodic 2D grid.
LocalHamiltonian build_tfim_grid(int lx, int ly, double field, double coupling,
                                 BoundaryCondition bc = BoundaryCondition::open);

struct GroundStateResult {
  PureState state;
  double energy = 0.0;
  double gap_estimate = 0.0;  // difference of the two lowest (Ritz) values
  int iterations = 0;
  double residual = 0.0;      // ‖H|ψ⟩ - E|ψ⟩‖
  bool degenerate = false;    // gap below resolution
  std::string method;         // "dense" or "lanczos"
};

/// Lowest eigenpair. Dense path for small dimensions, seeded Lanczos with
/// full reorthogonalization above. Residual contract: ‖Hψ - Eψ‖ <= 1e-8 ‖H‖
/// (with ‖H‖ bounded by the term-norm sum); throws on non-convergence.
GroundStateResult ground_state(const LocalHamiltonian& H, std::uint64_t seed = 12345);

/// Dense-diagonalization path, usable as an independent oracle for dim <= 4096.
GroundStateResult ground_state_dense(const LocalHamiltonian& H);

struct SplitHamiltonian {
  std::vector<HamiltonianTerm> interior;  // supports ⊆ A
  std::vector<HamiltonianTerm> crossing;  // supports meeting both A and A^c
  std::vector<HamiltonianTerm> exterior;  // supports ⊆ A^c
  double boundary_norm = 0.0;   // ‖Σ crossing terms‖
  bool boundary_norm_exact = false;  // dense norm vs term-norm-sum fallback
  double h_constant = 0.0;      // boundary_norm / |∂_1 A|
  int crossing_count = 0;
};

/// Splits H = H_A + H_∂A + H_A^c by term support and reports the boundary
/// strength h = ‖H_∂A‖/|∂_1 A|. The crossing-term norm is computed exactly on
/// the joint support when it is small enough, otherwise bounded by the term
/// norm sum (still valid for the energy bound).
SplitHamiltonian split_hamiltonian(const LocalHamiltonian& H, const Region& A);

}  // namespace holocomp

#endif
