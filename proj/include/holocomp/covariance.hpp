#ifndef HOLOCOMP_COVARIANCE_HPP
#define HOLOCOMP_COVARIANCE_HPP

#include <vector>

#include "holocomp/lattice.hpp"
#include "holocomp/symplectic.hpp"

namespace holocomp {

/// Second moments γ_jk = tr(ρ {R_j, R_k}) of a Gaussian state in the
/// interleaved ordering, one mode per lattice site. Vacuum normalization:
/// γ = identity. Carries the originating sites of its modes so that mode
/// deletions and region partitions stay traceable.
class CovarianceMatrix {
public:
  /// psd_tolerance bounds how far γ + iσ may dip below zero. Truncated
  /// matrices (which shave off exponentially small correlations) pass a
  /// correspondingly loosened tolerance.
  CovarianceMatrix(MatrixXd gamma, std::vector<int> mode_sites,
                   double psd_tolerance = 1e-8);

  int modes() const { return static_cast<int>(mode_sites_.size()); }
  const MatrixXd& matrix() const { return gamma_; }
  const std::vector<int>& mode_sites() const { return mode_sites_; }

  /// Mode positions (0-based within this matrix) whose site lies in A.
  std::vector<int> region_modes(const Region& A) const;

  /// 2x2 quadrature block between two modes.
  Eigen::Block<const MatrixXd, 2, 2> block(int mode_row, int mode_col) const {
    return gamma_.block<2, 2>(2 * mode_row, 2 * mode_col);
  }

private:
  MatrixXd gamma_;
  std::vector<int> mode_sites_;
};

/// H = P Pᵀ/2 + X V Xᵀ with a symmetric positive definite, finite-ranged V.
/// Gaplessness (a non-positive eigenvalue of V) is rejected at construction.
class HarmonicModel {
public:
  HarmonicModel(Lattice lattice, MatrixXd V, int range);

  /// V = (m² + 2κ) I - κ (shift + shiftᵀ) on a chain.
  static HarmonicModel chain(int length, double mass, double kappa,
                             BoundaryCondition bc = BoundaryCondition::open);
  /// 2D analogue with the graph Laplacian coupling.
  static HarmonicModel grid(int lx, int ly, double mass, double kappa,
                            BoundaryCondition bc = BoundaryCondition::open);

  const Lattice& lattice() const { return lattice_; }
  const MatrixXd& coupling() const { return V_; }
  int range() const { return range_; }
  double min_coupling_eigenvalue() const { return min_eig_; }

private:
  Lattice lattice_;
  MatrixXd V_;
  int range_;
  double min_eig_;
};

/// Ground-state covariance of the harmonic model: X block (2V)^{-1/2},
/// P block (2V)^{1/2}, no X-P correlations, re-interleaved. Pure by
/// construction (all symplectic eigenvalues one).
CovarianceMatrix ground_covariance(const HarmonicModel& model);

}  // namespace holocomp

#endif
