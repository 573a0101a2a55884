#include "holocomp/gaussian_compression.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace holocomp {

namespace {

struct Partition {
  std::vector<int> modes_A;
  std::vector<int> modes_B;
};

Partition partition_modes(const CovarianceMatrix& gamma, const Region& A) {
  Partition p;
  p.modes_A = gamma.region_modes(A);
  std::vector<char> in_a(gamma.modes(), 0);
  for (int m : p.modes_A) in_a[m] = 1;
  for (int m = 0; m < gamma.modes(); ++m)
    if (!in_a[m]) p.modes_B.push_back(m);
  if (p.modes_A.empty() || p.modes_B.empty())
    throw std::domain_error("Gaussian cut needs modes on both sides");
  return p;
}

MatrixXd permute_to_cut(const MatrixXd& gamma, const std::vector<int>& order) {
  const int m = static_cast<int>(order.size());
  MatrixXd out(2 * m, 2 * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      out.block<2, 2>(2 * a, 2 * b) = gamma.block<2, 2>(2 * order[a], 2 * order[b]);
  return out;
}

MatrixXd unpermute_from_cut(const MatrixXd& gamma, const std::vector<int>& order) {
  const int m = static_cast<int>(order.size());
  MatrixXd out(2 * m, 2 * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      out.block<2, 2>(2 * order[a], 2 * order[b]) = gamma.block<2, 2>(2 * a, 2 * b);
  return out;
}

}  // namespace

XiTruncation xi_truncate(const CovarianceMatrix& gamma, const Region& A, int l) {
  if (l < 0) throw std::domain_error("distance cutoff must be non-negative");
  Partition part = partition_modes(gamma, A);
  const Lattice& lat = A.lattice();
  MatrixXd kept = gamma.matrix();
  double removed_norm_bound = 0.0;
  for (int ma : part.modes_A)
    for (int mb : part.modes_B) {
      const int dist =
          lat.distance(gamma.mode_sites()[ma], gamma.mode_sites()[mb]);
      if (dist > l) {
        removed_norm_bound =
            std::max(removed_norm_bound, gamma.block(ma, mb).cwiseAbs().maxCoeff());
        kept.block<2, 2>(2 * ma, 2 * mb).setZero();
        kept.block<2, 2>(2 * mb, 2 * ma).setZero();
      }
    }

  // Modes of A^c within distance l of A carry the surviving coupling; tracing
  // them out leaves γ_A ⊕ γ̃_{A^c} exactly.
  std::vector<int> doomed_modes;
  std::vector<int> deleted_sites;
  for (int mb : part.modes_B) {
    int min_dist = lat.size() + 1;
    for (int ma : part.modes_A)
      min_dist = std::min(min_dist, lat.distance(gamma.mode_sites()[ma],
                                                 gamma.mode_sites()[mb]));
    if (min_dist <= l) {
      doomed_modes.push_back(mb);
      deleted_sites.push_back(gamma.mode_sites()[mb]);
    }
  }
  MatrixXd trimmed = delete_modes(kept, doomed_modes);
  std::vector<int> surviving_sites;
  {
    std::vector<char> doomed(gamma.modes(), 0);
    for (int m : doomed_modes) doomed[m] = 1;
    for (int m = 0; m < gamma.modes(); ++m)
      if (!doomed[m]) surviving_sites.push_back(gamma.mode_sites()[m]);
  }

  // Zeroing exponentially small couplings can push γ + iσ slightly below
  // zero; loosen the admissibility check by the size of what was removed.
  const double slack = 1e-8 + 4.0 * removed_norm_bound * gamma.modes();
  XiTruncation out{CovarianceMatrix(std::move(kept), gamma.mode_sites(), slack),
                   CovarianceMatrix(std::move(trimmed), std::move(surviving_sites), slack),
                   std::move(deleted_sites)};
  return out;
}

DecayFit decay_fit(const CovarianceMatrix& gamma, const Region& A) {
  Partition part = partition_modes(gamma, A);
  const Lattice& lat = A.lattice();
  std::vector<double> max_by_dist;
  for (int ma : part.modes_A)
    for (int mb : part.modes_B) {
      const int dist =
          lat.distance(gamma.mode_sites()[ma], gamma.mode_sites()[mb]);
      if (dist >= static_cast<int>(max_by_dist.size()))
        max_by_dist.resize(dist + 1, 0.0);
      max_by_dist[dist] =
          std::max(max_by_dist[dist], gamma.block(ma, mb).cwiseAbs().maxCoeff());
    }

  DecayFit fit;
  for (int r = 1; r < static_cast<int>(max_by_dist.size()); ++r)
    if (max_by_dist[r] > 0.0) fit.samples.emplace_back(r, max_by_dist[r]);

  // Usable range: above the numerical noise floor.
  std::vector<double> xs, ys;
  for (auto [r, y] : fit.samples) {
    if (y < 1e-13) continue;
    xs.push_back(static_cast<double>(r));
    ys.push_back(std::log(y));
  }
  if (xs.size() < 3) return fit;  // not enough structure to fit; rejected

  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double mean_y = sy / n;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double pred = intercept + slope * xs[i];
    ss_res += (ys[i] - pred) * (ys[i] - pred);
    ss_tot += (ys[i] - mean_y) * (ys[i] - mean_y);
  }
  fit.c2 = -slope;
  fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 0.0;

  // Raise the prefactor to the envelope so c1 e^{-c2 r} dominates the data.
  double log_c1 = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < xs.size(); ++i)
    log_c1 = std::max(log_c1, ys[i] + fit.c2 * xs[i]);
  fit.c1 = std::exp(log_c1);

  const double correlation_length = fit.c2 > 0 ? 1.0 / fit.c2 : 1e300;
  fit.accepted = fit.c2 > 1e-3 && fit.r_squared >= 0.9 &&
                 correlation_length <= 0.5 * lat.diameter();
  return fit;
}

OffdiagonalBound offdiagonal_norm_bound(const CovarianceMatrix& gamma, const Region& A,
                                        int l, double c1, double c2) {
  if (!(c2 > 0.0)) throw std::domain_error("decay rate c2 must be positive");
  XiTruncation trunc = xi_truncate(gamma, A, l);
  const MatrixXd diff = gamma.matrix() - trunc.kept.matrix();
  OffdiagonalBound out;
  out.actual = symmetric_operator_norm(diff);

  // Shell-sum constant: Frobenius majorization of the removed entries,
  //   ‖Ξ_{>l}‖² <= 2 Σ_{u>=1} |A| S_max c1² e^{-2 c2 (l+u)} per quadrature pair,
  // with S_max the largest shell of the lattice. Quadrature blocks are 2x2,
  // contributing a factor 4 per site pair.
  const Lattice& lat = A.lattice();
  int s_max = 0;
  for (int x = 0; x < lat.size(); ++x) {
    std::vector<int> count(lat.diameter() + 1, 0);
    for (int y = 0; y < lat.size(); ++y)
      if (y != x) count[lat.distance(x, y)] += 1;
    for (int c : count) s_max = std::max(s_max, c);
  }
  const double q = std::exp(-2.0 * c2);
  const double shell_sum = q / (1.0 - q);
  const double k2 = c1 * std::sqrt(8.0 * s_max * shell_sum);
  out.k2 = k2;
  out.bound = k2 * std::exp(-c2 * l) * std::sqrt(static_cast<double>(A.size()));
  out.pass = out.actual <= out.bound + 1e-12;
  return out;
}

double NormalFormData::mu(int j) const {
  const double d = d_A[j];
  return d > 1.0 ? std::sqrt(d * d - 1.0) : 0.0;
}

namespace {

// Orthogonal polar factor. For a block of the true normal form this equals
// K_A Z K_Bᵀ exactly, independent of the μ values inside the block.
MatrixXd polar_orthogonal_dyn(const MatrixXd& g) {
  Eigen::JacobiSVD<MatrixXd> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

// diag(1, -1, 1, -1, ...) on g modes.
MatrixXd z_pattern(int modes) {
  MatrixXd z = MatrixXd::Zero(2 * modes, 2 * modes);
  for (int j = 0; j < modes; ++j) {
    z(2 * j, 2 * j) = 1.0;
    z(2 * j + 1, 2 * j + 1) = -1.0;
  }
  return z;
}

}  // namespace

NormalFormData gaussian_schmidt_normal_form(const CovarianceMatrix& gamma,
                                            const Region& A) {
  const SymplecticSpectrum global = symplectic_spectrum(gamma.matrix());
  double impurity = 0.0;
  for (double d : global.descending) impurity = std::max(impurity, std::abs(d - 1.0));
  if (impurity > 1e-6)
    throw std::domain_error("normal form requires a pure state (max |d-1| = " +
                            std::to_string(impurity) + ")");

  Partition part = partition_modes(gamma, A);
  NormalFormData nf;
  nf.mode_order = part.modes_A;
  nf.mode_order.insert(nf.mode_order.end(), part.modes_B.begin(), part.modes_B.end());
  const MatrixXd gp = permute_to_cut(gamma.matrix(), nf.mode_order);

  const int nA = static_cast<int>(part.modes_A.size());
  const int nB = static_cast<int>(part.modes_B.size());
  const MatrixXd gamma_A = gp.topLeftCorner(2 * nA, 2 * nA);
  const MatrixXd gamma_B = gp.bottomRightCorner(2 * nB, 2 * nB);
  const MatrixXd xi = gp.topRightCorner(2 * nA, 2 * nB);

  WilliamsonResult wA = williamson(gamma_A);
  WilliamsonResult wB = williamson(gamma_B);
  nf.d_A = wA.d;
  nf.d_B = wB.d;
  nf.pairs = std::min(nA, nB);

  MatrixXd G = wA.S * xi * wB.S.transpose();

  // Within groups of (near-)degenerate symplectic eigenvalues the two
  // independent Williamson bases are related by an arbitrary orthogonal
  // symplectic rotation; realign the A^c side so each cross block becomes
  // diag(μ, -μ). The polar factor recovers the rotation exactly for equal
  // eigenvalues inside a group.
  MatrixXd L = MatrixXd::Identity(2 * nB, 2 * nB);
  const double mu_floor = 1e-7;
  int j = 0;
  while (j < nf.pairs) {
    int k = j + 1;
    while (k < nf.pairs) {
      const double gap = std::abs(nf.d_A[k - 1] - nf.d_A[k]);
      const double scale = std::max(nf.mu(k - 1), nf.mu(k));
      if (gap > std::max(1e-11, 1e-6 * scale)) break;
      ++k;
    }
    const int g = k - j;
    double mu_max = 0.0;
    for (int t = j; t < k; ++t) mu_max = std::max(mu_max, nf.mu(t));
    if (mu_max >= mu_floor) {
      const MatrixXd g_block = G.block(2 * j, 2 * j, 2 * g, 2 * g);
      const MatrixXd t_orth = polar_orthogonal_dyn(g_block);
      // L = Z W sends the cross block G = μW to G Lᵀ = μ W Wᵀ Z = μZ, and is
      // orthogonal symplectic because W conjugates σ to -σ.
      L.block(2 * j, 2 * j, 2 * g, 2 * g) = z_pattern(g) * t_orth;
    }
    j = k;
  }

  nf.S_A = wA.S;
  nf.S_B = L.transpose() * wB.S;

  // Residual against the exact target form.
  const int n = nA + nB;
  MatrixXd target = MatrixXd::Zero(2 * n, 2 * n);
  for (int t = 0; t < nA; ++t) {
    target(2 * t, 2 * t) = nf.d_A[t];
    target(2 * t + 1, 2 * t + 1) = nf.d_A[t];
  }
  for (int t = 0; t < nB; ++t) {
    target(2 * nA + 2 * t, 2 * nA + 2 * t) = nf.d_B[t];
    target(2 * nA + 2 * t + 1, 2 * nA + 2 * t + 1) = nf.d_B[t];
  }
  for (int t = 0; t < nf.pairs; ++t) {
    const double mu = nf.mu(t);
    target(2 * t, 2 * nA + 2 * t) = mu;
    target(2 * t + 1, 2 * nA + 2 * t + 1) = -mu;
    target(2 * nA + 2 * t, 2 * t) = mu;
    target(2 * nA + 2 * t + 1, 2 * t + 1) = -mu;
  }
  MatrixXd S_full = MatrixXd::Zero(2 * n, 2 * n);
  S_full.topLeftCorner(2 * nA, 2 * nA) = nf.S_A;
  S_full.bottomRightCorner(2 * nB, 2 * nB) = nf.S_B;
  const MatrixXd transformed = S_full * gp * S_full.transpose();
  const double scale = symmetric_operator_norm(gamma.matrix());
  nf.residual = symmetric_operator_norm(transformed - target) / scale;
  if (nf.residual > 1e-6) {
    std::ostringstream msg;
    msg << "normal form residual " << nf.residual
        << " exceeds 1e-6 of the matrix norm; spectra may be too degenerate"
        << " (largest d_A = " << (nA > 0 ? nf.d_A[0] : 0.0) << ")";
    throw std::runtime_error(msg.str());
  }
  return nf;
}

double gaussian_overlap(const MatrixXd& gamma1, const MatrixXd& gamma2) {
  if (gamma1.rows() != gamma2.rows() || gamma1.cols() != gamma2.cols())
    throw std::domain_error("overlap needs equal mode counts");
  for (const MatrixXd* g : {&gamma1, &gamma2}) {
    const SymplecticSpectrum spec = symplectic_spectrum(*g);
    for (double d : spec.descending)
      if (std::abs(d - 1.0) > 1e-6)
        throw std::domain_error("overlap formula only applies to pure states");
  }
  const int n = static_cast<int>(gamma1.rows()) / 2;
  Eigen::LLT<MatrixXd> llt(gamma1 + gamma2);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("overlap determinant factorization failed");
  double log_det = 0.0;
  for (int i = 0; i < 2 * n; ++i) log_det += 2.0 * std::log(llt.matrixL()(i, i));
  return std::exp(n * std::log(2.0) - 0.5 * log_det);
}

GaussianTruncation truncate_normal_form(const CovarianceMatrix& gamma,
                                        const NormalFormData& nf, int M) {
  const int nA = static_cast<int>(nf.d_A.size());
  const int nB = static_cast<int>(nf.d_B.size());
  if (M < 0 || M > nA) throw std::domain_error("retained mode count out of range");
  const int n = nA + nB;

  MatrixXd target = MatrixXd::Zero(2 * n, 2 * n);
  for (int t = 0; t < nA; ++t) {
    const double d = t < M ? nf.d_A[t] : 1.0;
    target(2 * t, 2 * t) = d;
    target(2 * t + 1, 2 * t + 1) = d;
  }
  for (int t = 0; t < nB; ++t) {
    const double d = (t < M && t < nf.pairs) ? nf.d_A[t] : 1.0;
    target(2 * nA + 2 * t, 2 * nA + 2 * t) = d;
    target(2 * nA + 2 * t + 1, 2 * nA + 2 * t + 1) = d;
  }
  for (int t = 0; t < std::min(M, nf.pairs); ++t) {
    const double mu = nf.mu(t);
    target(2 * t, 2 * nA + 2 * t) = mu;
    target(2 * t + 1, 2 * nA + 2 * t + 1) = -mu;
    target(2 * nA + 2 * t, 2 * t) = mu;
    target(2 * nA + 2 * t + 1, 2 * t + 1) = -mu;
  }

  MatrixXd S_full = MatrixXd::Zero(2 * n, 2 * n);
  S_full.topLeftCorner(2 * nA, 2 * nA) = nf.S_A;
  S_full.bottomRightCorner(2 * nB, 2 * nB) = nf.S_B;
  const MatrixXd S_inv = symplectic_inverse(S_full);
  const MatrixXd gamma_m_perm = S_inv * target * S_inv.transpose();
  const MatrixXd gamma_perm = permute_to_cut(gamma.matrix(), nf.mode_order);

  GaussianTruncation out{
      CovarianceMatrix(unpermute_from_cut(gamma_m_perm, nf.mode_order),
                       gamma.mode_sites(), 1e-6),
      0.0, 0.0, 0.0, 0.0};
  out.fidelity_oracle = gaussian_overlap(gamma_perm, gamma_m_perm);
  double product = 1.0;
  double tail = 0.0;
  for (int t = M; t < nA; ++t) {
    product *= 2.0 / (nf.d_A[t] + 1.0);
    tail += std::max(0.0, nf.d_A[t] - 1.0);
  }
  out.fidelity_product = product;
  out.fidelity_product_squared = product * product;
  out.lemma4_bound = std::exp(-tail);
  return out;
}

Theorem3Report theorem3_pipeline(const HarmonicModel& model, const Region& A,
                                 double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw std::domain_error("epsilon must lie in (0, 1)");
  CovarianceMatrix gamma = ground_covariance(model);
  NormalFormData nf = gaussian_schmidt_normal_form(gamma, A);
  DecayFit fit = decay_fit(gamma, A);

  Theorem3Report report;
  report.epsilon = epsilon;
  report.c1 = fit.c1;
  report.c2 = fit.c2;
  report.r_squared = fit.r_squared;
  report.region_sites = A.size();
  report.boundary_sites = thickened_boundary(A, 1).size();

  // Geometry constant k1: the number of A^c sites within distance l of A is
  // at most k1 l |∂A|.
  const Lattice& lat = A.lattice();
  Region Ac = A.complement();
  auto dist_to_A = distance_to_complement(Ac);  // distance of A^c sites to A
  double k1 = 0.0;
  for (int l = 1; l <= lat.diameter(); ++l) {
    int ext = 0;
    for (int s : Ac.sites())
      if (dist_to_A[s] <= l) ++ext;
    k1 = std::max(k1, static_cast<double>(ext) /
                          (static_cast<double>(l) * report.boundary_sites));
  }
  report.k1 = k1;

  const int nA = static_cast<int>(nf.d_A.size());
  auto tail_from = [&](int M) {
    double t = 0.0;
    for (int j = M; j < nA; ++j) t += std::max(0.0, nf.d_A[j] - 1.0);
    return t;
  };
  int m_star = nA;
  for (int M = 0; M <= nA; ++M) {
    if (tail_from(M) <= epsilon) {
      m_star = M;
      break;
    }
  }

  const double budget_per_width = 2.0 * k1 * report.boundary_sites;
  report.L_real = m_star > 0 ? static_cast<double>(m_star) / budget_per_width : 0.0;
  report.l_used = std::max(1, static_cast<int>(std::ceil(report.L_real - 1e-9)));

  const auto dist_in_A = distance_to_complement(A);
  int depth = 0;
  for (int s : A.sites()) depth = std::max(depth, dist_in_A[s]);
  if (report.l_used > depth) {
    if (m_star < nA)
      throw std::domain_error("region too small for target epsilon: required width " +
                              std::to_string(report.l_used) +
                              " exceeds the region depth " + std::to_string(depth));
    report.l_used = depth;  // whole region retained; compression is trivial
  }

  const int m_used = std::min(
      nA, std::max(m_star, static_cast<int>(std::ceil(budget_per_width * report.l_used))));
  report.M_used = m_used;
  report.tail_sum = tail_from(m_used);

  GaussianTruncation trunc = truncate_normal_form(gamma, nf, m_used);
  report.fidelity = trunc.fidelity_oracle;
  report.lemma4_bound = trunc.lemma4_bound;
  report.fidelity_product = trunc.fidelity_product;
  report.fidelity_product_squared = trunc.fidelity_product_squared;
  return report;
}

}  // namespace holocomp
