#include "holocomp/covariance.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace holocomp {

CovarianceMatrix::CovarianceMatrix(MatrixXd gamma, std::vector<int> mode_sites,
                                   double psd_tolerance)
    : gamma_(std::move(gamma)), mode_sites_(std::move(mode_sites)) {
  if (gamma_.rows() != gamma_.cols() ||
      gamma_.rows() != 2 * static_cast<long>(mode_sites_.size()))
    throw std::invalid_argument("covariance dimension does not match the mode list");
  const double scale = std::max(1.0, gamma_.norm());
  if ((gamma_ - gamma_.transpose()).norm() > 1e-12 * scale)
    throw std::invalid_argument("covariance matrix is not symmetric");
  // Uncertainty relation: γ + iσ ⪰ 0.
  const int m = modes();
  Eigen::MatrixXcd test = gamma_.cast<std::complex<double>>();
  const MatrixXd sigma = symplectic_form(m);
  test += std::complex<double>(0.0, 1.0) * sigma.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(test, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -psd_tolerance * scale)
    throw std::invalid_argument("covariance matrix violates the uncertainty relation");
}

std::vector<int> CovarianceMatrix::region_modes(const Region& A) const {
  std::vector<int> modes;
  for (int j = 0; j < static_cast<int>(mode_sites_.size()); ++j)
    if (A.contains(mode_sites_[j])) modes.push_back(j);
  return modes;
}

HarmonicModel::HarmonicModel(Lattice lattice, MatrixXd V, int range)
    : lattice_(std::move(lattice)), V_(std::move(V)), range_(range) {
  if (V_.rows() != V_.cols() || V_.rows() != lattice_.size())
    throw std::invalid_argument("coupling matrix must be |Λ| x |Λ|");
  if ((V_ - V_.transpose()).norm() > 1e-12 * std::max(1.0, V_.norm()))
    throw std::invalid_argument("coupling matrix is not symmetric");
  for (int i = 0; i < V_.rows(); ++i)
    for (int j = 0; j < V_.cols(); ++j)
      if (V_(i, j) != 0.0 && lattice_.distance(i, j) > range_)
        throw std::invalid_argument("coupling exceeds the stated interaction range");
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(V_, Eigen::EigenvaluesOnly);
  min_eig_ = es.eigenvalues().minCoeff();
  if (min_eig_ <= 0.0)
    throw std::domain_error("gapless model rejected: V is not positive definite");
}

HarmonicModel HarmonicModel::chain(int length, double mass, double kappa,
                                   BoundaryCondition bc) {
  Lattice lat = Lattice::chain(length, bc);
  MatrixXd V = MatrixXd::Zero(length, length);
  for (int i = 0; i < length; ++i) V(i, i) = mass * mass + 2.0 * kappa;
  for (int i = 0; i + 1 < length; ++i) V(i, i + 1) = V(i + 1, i) = -kappa;
  if (bc == BoundaryCondition::periodic && length > 2)
    V(0, length - 1) = V(length - 1, 0) = -kappa;
  return HarmonicModel(std::move(lat), std::move(V), 1);
}

HarmonicModel HarmonicModel::grid(int lx, int ly, double mass, double kappa,
                                  BoundaryCondition bc) {
  Lattice lat = Lattice::grid(lx, ly, bc);
  const int n = lat.size();
  MatrixXd V = MatrixXd::Zero(n, n);
  for (int s = 0; s < n; ++s) {
    auto nbrs = lat.neighbors(s);
    V(s, s) = mass * mass + kappa * static_cast<double>(nbrs.size());
    for (int t : nbrs) V(s, t) -= kappa;
  }
  return HarmonicModel(std::move(lat), std::move(V), 1);
}

CovarianceMatrix ground_covariance(const HarmonicModel& model) {
  const MatrixXd& V = model.coupling();
  const int n = static_cast<int>(V.rows());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(2.0 * V);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::domain_error("gapless model rejected: V is not positive definite");
  const VectorXd omega = es.eigenvalues().cwiseSqrt();  // normal-mode frequencies
  const MatrixXd x_block = es.eigenvectors() * omega.cwiseInverse().asDiagonal() *
                           es.eigenvectors().transpose();
  const MatrixXd p_block =
      es.eigenvectors() * omega.asDiagonal() * es.eigenvectors().transpose();

  MatrixXd gamma = MatrixXd::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      gamma(2 * i, 2 * j) = x_block(i, j);
      gamma(2 * i + 1, 2 * j + 1) = p_block(i, j);
    }
  std::vector<int> sites(n);
  std::iota(sites.begin(), sites.end(), 0);
  return CovarianceMatrix(std::move(gamma), std::move(sites));
}

}  // namespace holocomp
