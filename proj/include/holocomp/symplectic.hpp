#ifndef HOLOCOMP_SYMPLECTIC_HPP
#define HOLOCOMP_SYMPLECTIC_HPP

#include <Eigen/Dense>
#include <vector>

namespace holocomp {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Symplectic form in the interleaved convention (X_1, P_1, ..., X_m, P_m):
/// direct sum of [[0, 1], [-1, 0]] blocks. This is the canonical ordering
/// throughout the library.
MatrixXd symplectic_form(int modes);

/// Symplectic form in the block convention (X_1..X_m, P_1..P_m).
MatrixXd symplectic_form_block(int modes);

/// Conversions between the two mode orderings (congruence by the permutation
/// that regroups quadratures).
MatrixXd interleaved_to_block(const MatrixXd& m);
MatrixXd block_to_interleaved(const MatrixXd& m);

/// Inverse of a symplectic matrix without solving: S^{-1} = σ Sᵀ σᵀ.
MatrixXd symplectic_inverse(const MatrixXd& S);

struct SymplecticSpectrum {
  std::vector<double> descending;
  std::vector<double> ascending;
  double purity_deviation = 0.0;  // Σ (d_j - 1)
};

/// Symplectic eigenvalues of a positive definite matrix: the moduli of the
/// eigenvalues of iσγ, computed as the paired singular values of the
/// antisymmetric matrix γ^{1/2} σ γ^{1/2}.
SymplecticSpectrum symplectic_spectrum(const MatrixXd& gamma);

struct WilliamsonResult {
  MatrixXd S;          // S γ Sᵀ = diag(d_1, d_1, ..., d_m, d_m), S σ Sᵀ = σ
  VectorXd d;          // per-mode symplectic eigenvalues, non-increasing
  double residual_diagonal = 0.0;    // ‖SγSᵀ - D‖ / ‖γ‖
  double residual_symplectic = 0.0;  // ‖SσSᵀ - σ‖
};

/// Williamson normal form via the real Schur form of γ^{1/2} σ γ^{1/2}.
/// Modes come out sorted by non-increasing symplectic eigenvalue. Any valid S
/// is accepted near degeneracies; the contract is on the residuals.
WilliamsonResult williamson(const MatrixXd& gamma);

/// s-principal submatrix: removes the two quadrature rows/columns of each
/// listed mode (tracing out those modes).
MatrixXd delete_modes(const MatrixXd& gamma, const std::vector<int>& modes);

struct InterlacingReport {
  bool pass = false;
  double worst_margin = 0.0;  // most negative slack observed
  int deleted_modes = 0;
};

/// Checks d_j^↑(full) <= d_j^↑(sub) <= d_{j+2r}^↑(full) for a submatrix
/// obtained by deleting r modes, with the convention that indices beyond the
/// full spectrum read +infinity.
InterlacingReport interlacing_check(const MatrixXd& gamma_full, const MatrixXd& gamma_sub,
                                    double tol = 1e-8);

struct PerturbationReport {
  double max_shift = 0.0;
  double bound = 0.0;  // (‖γ1‖^{1/2} + ‖γ2‖^{1/2}) ‖γ1-γ2‖^{1/2}
  bool pass = false;
};

PerturbationReport perturbation_gap(const MatrixXd& gamma1, const MatrixXd& gamma2,
                                    double tol = 1e-8);

/// Largest eigenvalue magnitude of a symmetric matrix.
double symmetric_operator_norm(const MatrixXd& m);

/// Principal square root of a symmetric positive definite matrix.
MatrixXd spd_sqrt(const MatrixXd& m);

}  // namespace holocomp

#endif
