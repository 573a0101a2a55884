#ifndef HOLOCOMP_GAUSSIAN_COMPRESSION_HPP
#define HOLOCOMP_GAUSSIAN_COMPRESSION_HPP

#include <utility>
#include <vector>

#include "holocomp/covariance.hpp"

namespace holocomp {

struct XiTruncation {
  CovarianceMatrix kept;     // γ_{<=l}: cross-block entries beyond distance l zeroed
  CovarianceMatrix trimmed;  // additionally drops the A^c modes within distance l
  std::vector<int> deleted_sites;
};

/// Splits the A-to-A^c correlation block by lattice distance. Both
/// quadratures of a site are kept or zeroed together. `trimmed` realizes the
/// s-principal submatrix step: every A^c mode within distance l of A is
/// traced out, leaving an exact γ_A ⊕ γ̃_{A^c} block structure.
XiTruncation xi_truncate(const CovarianceMatrix& gamma, const Region& A, int l);

struct DecayFit {
  double c1 = 0.0;        // envelope prefactor: |Ξ| <= c1 exp(-c2 r) on the fit range
  double c2 = 0.0;        // decay rate from the least-squares fit
  double r_squared = 0.0;
  bool accepted = false;  // rejected for non-decaying (gapless) data
  std::vector<std::pair<int, double>> samples;  // (distance, max |Ξ| there)
};

/// Least-squares fit of log max|Ξ| against cross-cut distance. The returned
/// c1 is raised to the envelope over the usable range so that the pair
/// (c1, c2) genuinely dominates every sampled entry.
DecayFit decay_fit(const CovarianceMatrix& gamma, const Region& A);

struct OffdiagonalBound {
  double actual = 0.0;  // ‖γ - γ_{<=l}‖
  double bound = 0.0;   // k2 exp(-c2 l) |A|^{1/2}
  double k2 = 0.0;      // shell-sum constant derived from c1, c2 and the lattice
  bool pass = false;
};

OffdiagonalBound offdiagonal_norm_bound(const CovarianceMatrix& gamma, const Region& A,
                                        int l, double c1, double c2);

/// Product normal form of a pure Gaussian state across the cut (A, A^c):
/// local symplectics bring γ to two-mode-squeezed blocks
///   [[D_A, E], [Eᵀ, D_B]],  E = [F 0],  F = diag(μ_1, -μ_1, ...),
/// with μ_j = sqrt(d_j^2 - 1) as the construct-then-recover oracle dictates
/// for pure pairs. Mode j of each side carries the j-th largest symplectic
/// eigenvalue; the nonunit spectra of the two sides coincide.
struct NormalFormData {
  MatrixXd S_A, S_B;            // local symplectic transforms (sorted modes)
  VectorXd d_A, d_B;            // per-side symplectic eigenvalues, non-increasing
  int pairs = 0;                // min(n_A, n_B): paired normal modes
  std::vector<int> mode_order;  // A modes then A^c modes, original positions
  double residual = 0.0;        // ‖(S_A ⊕ S_B) γ (·)ᵀ - target‖ / ‖γ‖

  double mu(int j) const;       // sqrt(d_A[j]^2 - 1), clamped at zero
};

/// Throws std::runtime_error with diagnostics when the residual exceeds
/// 1e-6 ‖γ‖ (typically caused by unresolvable near-degenerate d_j).
NormalFormData gaussian_schmidt_normal_form(const CovarianceMatrix& gamma,
                                            const Region& A);

/// Squared overlap |<ψ1|ψ2>|^2 = 2^n / sqrt(det(γ1 + γ2)) of two pure,
/// zero-mean Gaussian states.
double gaussian_overlap(const MatrixXd& gamma1, const MatrixXd& gamma2);

struct GaussianTruncation {
  CovarianceMatrix gamma_M;          // truncated pure state, original mode order
  double fidelity_oracle = 0.0;      // determinant formula on (γ, γ_M)
  double fidelity_product = 0.0;     // Π_{j>M} 2/(d_j + 1)
  double fidelity_product_squared = 0.0;
  double lemma4_bound = 0.0;         // exp(-Σ_{j>M} (d_j - 1))
};

/// Replaces all but the M largest symplectic eigenvalues by one in the
/// normal-mode coordinates and transforms back.
GaussianTruncation truncate_normal_form(const CovarianceMatrix& gamma,
                                        const NormalFormData& nf, int M);

struct Theorem3Report {
  int l_used = 0;        // integer boundary width actually used
  double L_real = 0.0;   // fractional width M*/(2 k1 |∂A|), for scaling fits
  int M_used = 0;        // retained normal modes
  double fidelity = 0.0;
  double epsilon = 0.0;
  double c1 = 0.0, c2 = 0.0, r_squared = 0.0;
  double k1 = 0.0;               // boundary-shell geometry constant
  double tail_sum = 0.0;         // Σ_{j>M_used} (d_j - 1)
  double lemma4_bound = 0.0;
  double fidelity_product = 0.0;
  double fidelity_product_squared = 0.0;
  int boundary_sites = 0;        // |∂_1 A|
  int region_sites = 0;          // |A|
};

/// End-to-end Gaussian compression: covariance, decay fit, normal form,
/// geometric mode budget M(L) = ceil(2 k1 L |∂A|), smallest width whose
/// budget drives the spectral tail below epsilon, truncation, fidelity check.
Theorem3Report theorem3_pipeline(const HarmonicModel& model, const Region& A,
                                 double epsilon);

}  // namespace holocomp

#endif
