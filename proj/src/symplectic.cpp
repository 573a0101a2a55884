#include "holocomp/symplectic.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace holocomp {

namespace {

void check_even(const MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0)
    throw std::domain_error("covariance matrices have even square dimension");
}

}  // namespace

MatrixXd symplectic_form(int modes) {
  MatrixXd sigma = MatrixXd::Zero(2 * modes, 2 * modes);
  for (int j = 0; j < modes; ++j) {
    sigma(2 * j, 2 * j + 1) = 1.0;
    sigma(2 * j + 1, 2 * j) = -1.0;
  }
  return sigma;
}

MatrixXd symplectic_form_block(int modes) {
  MatrixXd sigma = MatrixXd::Zero(2 * modes, 2 * modes);
  for (int j = 0; j < modes; ++j) {
    sigma(j, modes + j) = 1.0;
    sigma(modes + j, j) = -1.0;
  }
  return sigma;
}

namespace {

// Permutation sending interleaved row 2j -> block row j, 2j+1 -> m+j.
Eigen::PermutationMatrix<Eigen::Dynamic> interleave_permutation(int modes) {
  Eigen::VectorXi idx(2 * modes);
  for (int j = 0; j < modes; ++j) {
    idx[2 * j] = j;
    idx[2 * j + 1] = modes + j;
  }
  return Eigen::PermutationMatrix<Eigen::Dynamic>(idx);
}

}  // namespace

MatrixXd interleaved_to_block(const MatrixXd& m) {
  check_even(m);
  const int modes = static_cast<int>(m.rows()) / 2;
  auto P = interleave_permutation(modes);
  // Row 2j of the interleaved matrix becomes row j of the block matrix.
  MatrixXd out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      out(P.indices()[r], P.indices()[c]) = m(r, c);
  return out;
}

MatrixXd block_to_interleaved(const MatrixXd& m) {
  check_even(m);
  const int modes = static_cast<int>(m.rows()) / 2;
  auto P = interleave_permutation(modes);
  MatrixXd out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      out(r, c) = m(P.indices()[r], P.indices()[c]);
  return out;
}

MatrixXd symplectic_inverse(const MatrixXd& S) {
  check_even(S);
  const MatrixXd sigma = symplectic_form(static_cast<int>(S.rows()) / 2);
  return sigma * S.transpose() * sigma.transpose();
}

double symmetric_operator_norm(const MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

MatrixXd spd_sqrt(const MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(m);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::domain_error("matrix is not positive definite");
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() *
         es.eigenvectors().transpose();
}

SymplecticSpectrum symplectic_spectrum(const MatrixXd& gamma) {
  check_even(gamma);
  const int modes = static_cast<int>(gamma.rows()) / 2;
  const MatrixXd root = spd_sqrt(gamma);
  const MatrixXd K = root * symplectic_form(modes) * root;  // antisymmetric
  Eigen::JacobiSVD<MatrixXd> svd(K);
  const VectorXd sv = svd.singularValues();  // pairs (d_1, d_1, d_2, d_2, ...)
  SymplecticSpectrum out;
  out.descending.reserve(modes);
  for (int j = 0; j < modes; ++j) out.descending.push_back(sv[2 * j]);
  out.ascending.assign(out.descending.rbegin(), out.descending.rend());
  for (double d : out.descending) out.purity_deviation += d - 1.0;
  return out;
}

WilliamsonResult williamson(const MatrixXd& gamma) {
  check_even(gamma);
  const int modes = static_cast<int>(gamma.rows()) / 2;
  const MatrixXd sigma = symplectic_form(modes);
  const MatrixXd root = spd_sqrt(gamma);
  const MatrixXd K = root * sigma * root;

  // Real Schur form of an antisymmetric matrix: orthogonal Q with QᵀKQ block
  // diagonal, 2x2 blocks [[0, d_j], [-d_j, 0]] up to sign and order.
  Eigen::RealSchur<MatrixXd> schur(K);
  MatrixXd Q = schur.matrixU();
  MatrixXd T = schur.matrixT();

  struct ModeBlock {
    double d;
    int col;      // first column of the 2x2 block in Q
    bool flip;    // columns must be swapped to fix the sign convention
  };
  std::vector<ModeBlock> blocks;
  blocks.reserve(modes);
  for (int b = 0; b < modes; ++b) {
    const int c = 2 * b;
    const double upper = T(c, c + 1);
    const double lower = T(c + 1, c);
    // Clean Schur output: the block is [[~0, u], [-u, ~0]] with |u| = d_j.
    const double d = 0.5 * (std::abs(upper) + std::abs(lower));
    blocks.push_back({d, c, upper < 0.0});
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const ModeBlock& a, const ModeBlock& b) { return a.d > b.d; });

  MatrixXd Qs(2 * modes, 2 * modes);
  VectorXd d(modes);
  for (int j = 0; j < modes; ++j) {
    const auto& blk = blocks[j];
    d[j] = blk.d;
    // Swapping the two basis vectors maps [[0, -d], [d, 0]] to [[0, d], [-d, 0]].
    Qs.col(2 * j) = Q.col(blk.col + (blk.flip ? 1 : 0));
    Qs.col(2 * j + 1) = Q.col(blk.col + (blk.flip ? 0 : 1));
  }

  VectorXd dpair(2 * modes);
  for (int j = 0; j < modes; ++j) dpair[2 * j] = dpair[2 * j + 1] = d[j];

  WilliamsonResult out;
  out.d = d;
  // S = D^{1/2} Qᵀ γ^{-1/2}: then SγSᵀ = D and SσSᵀ = σ.
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(gamma);
  const MatrixXd inv_root = es.eigenvectors() *
                            es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                            es.eigenvectors().transpose();
  out.S = dpair.cwiseSqrt().asDiagonal() * Qs.transpose() * inv_root;

  const MatrixXd D = dpair.asDiagonal();
  const double scale = symmetric_operator_norm(gamma);
  out.residual_diagonal = (out.S * gamma * out.S.transpose() - D).norm() / scale;
  out.residual_symplectic = (out.S * sigma * out.S.transpose() - sigma).norm();
  return out;
}

MatrixXd delete_modes(const MatrixXd& gamma, const std::vector<int>& modes) {
  check_even(gamma);
  const int m = static_cast<int>(gamma.rows()) / 2;
  std::vector<char> remove(m, 0);
  for (int mode : modes) {
    if (mode < 0 || mode >= m) throw std::domain_error("mode index out of range");
    remove[mode] = 1;
  }
  std::vector<int> keep;
  for (int j = 0; j < m; ++j)
    if (!remove[j]) keep.push_back(j);
  MatrixXd out(2 * keep.size(), 2 * keep.size());
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t b = 0; b < keep.size(); ++b)
      out.block<2, 2>(2 * a, 2 * b) = gamma.block<2, 2>(2 * keep[a], 2 * keep[b]);
  return out;
}

InterlacingReport interlacing_check(const MatrixXd& gamma_full, const MatrixXd& gamma_sub,
                                    double tol) {
  check_even(gamma_full);
  check_even(gamma_sub);
  const int n = static_cast<int>(gamma_full.rows()) / 2;
  const int k = static_cast<int>(gamma_sub.rows()) / 2;
  if (k > n) throw std::domain_error("submatrix larger than the full matrix");
  const int r = n - k;

  const auto full = symplectic_spectrum(gamma_full).ascending;
  const auto sub = symplectic_spectrum(gamma_sub).ascending;

  InterlacingReport out;
  out.deleted_modes = r;
  out.worst_margin = std::numeric_limits<double>::infinity();
  for (int j = 0; j < k; ++j) {
    const double lower_margin = sub[j] - full[j];
    out.worst_margin = std::min(out.worst_margin, lower_margin);
    const std::size_t upper_idx = static_cast<std::size_t>(j) + 2 * r;
    if (upper_idx < full.size()) {
      const double upper_margin = full[upper_idx] - sub[j];
      out.worst_margin = std::min(out.worst_margin, upper_margin);
    }
  }
  out.pass = out.worst_margin >= -tol;
  return out;
}

PerturbationReport perturbation_gap(const MatrixXd& gamma1, const MatrixXd& gamma2,
                                    double tol) {
  if (gamma1.rows() != gamma2.rows())
    throw std::domain_error("perturbation bound needs equal shapes");
  const auto d1 = symplectic_spectrum(gamma1).descending;
  const auto d2 = symplectic_spectrum(gamma2).descending;
  PerturbationReport out;
  for (std::size_t j = 0; j < d1.size(); ++j)
    out.max_shift = std::max(out.max_shift, std::abs(d1[j] - d2[j]));
  out.bound = (std::sqrt(symmetric_operator_norm(gamma1)) +
               std::sqrt(symmetric_operator_norm(gamma2))) *
              std::sqrt(symmetric_operator_norm(gamma1 - gamma2));
  out.pass = out.max_shift <= out.bound + tol;
  return out;
}

}  // namespace holocomp
