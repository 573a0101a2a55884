#include "holocomp/spin_compression.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace holocomp {

namespace {

double operator_norm(const MatrixXc& m) {
  return m.jacobiSvd().singularValues()(0);
}

MatrixXc dense_on_sites(const std::vector<HamiltonianTerm>& terms,
                        const std::vector<int>& universe, int local_dim) {
  const long long dim = hilbert_dim(local_dim, static_cast<int>(universe.size()));
  if (dim > 4096) throw std::domain_error("dense build on subregion capped at 4096");
  MatrixXc out = MatrixXc::Zero(dim, dim);
  VectorXc e = VectorXc::Zero(dim);
  for (long long col = 0; col < dim; ++col) {
    e[col] = 1.0;
    for (const auto& t : terms)
      out.col(col) += apply_on_sites(t.op, universe, t.support, local_dim, e);
    e[col] = 0.0;
  }
  return out;
}

}  // namespace

CompressionPlan plan_compression(const SchmidtData& sd, double epsilon,
                                 std::optional<double> k_opt) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw std::domain_error("epsilon must lie in (0, 1)");
  const Region& A = sd.region;
  const int d = sd.local_dim;

  CompressionPlan plan{A, epsilon, 0.0, 1, thickened_boundary(A, 1),
                       region_bulk(A, 1), 0, false, false, VectorXc()};
  const int boundary_sites = plan.thick_boundary.size();
  if (boundary_sites == 0)
    throw std::domain_error("region has no boundary to compress into");

  const double S = sd.entanglement_entropy;
  const double k = k_opt.value_or(S / static_cast<double>(boundary_sites));
  plan.area_law_constant = k;

  if (k > 1e-15) {
    BoundaryWidth bw = boundary_width_function(A, k / epsilon);
    if (bw.whole_region)
      throw std::domain_error(
          "region too small for target epsilon: thickened boundary cannot reach " +
          std::to_string(k / epsilon) + " times |∂A| sites");
    plan.boundary_width = bw.l;
    plan.thick_boundary = thickened_boundary(A, bw.l);
    plan.bulk = region_bulk(A, bw.l);
  }

  // M = d^{|∂_l A|}, capped at the Schmidt rank.
  const long long rank = sd.rank();
  long long M = 1;
  for (int i = 0; i < plan.thick_boundary.size(); ++i) {
    if (M >= rank || M > (1LL << 50) / d) {
      M = rank;
      plan.rank_capped = true;
      break;
    }
    M *= d;
  }
  if (M >= rank) {
    plan.rank_capped = plan.rank_capped || (M > rank);
    M = std::min(M, rank);
  }
  plan.retained_rank = M;

  const double log_d_M = std::log(static_cast<double>(M)) / std::log(static_cast<double>(d));
  plan.guarantee = (log_d_M + 1e-12 >= S / epsilon) || (M >= sd.positive_rank());

  if (plan.bulk.size() * std::log2(static_cast<double>(d)) > 24.0)
    throw std::domain_error("bulk factor too large to hold a dense reference state");
  VectorXc ref = VectorXc::Zero(hilbert_dim(d, plan.bulk.size()));
  ref[0] = 1.0;
  plan.bulk_reference = std::move(ref);
  return plan;
}

CompressionUnitary::CompressionUnitary(MatrixXc matrix, CompressionPlan plan,
                                       MatrixXc retained_targets)
    : matrix_(std::move(matrix)), plan_(std::move(plan)),
      targets_(std::move(retained_targets)) {
  const long long n = matrix_.rows();
  if ((matrix_ * matrix_.adjoint() - MatrixXc::Identity(n, n)).norm() >
      1e-10 * std::sqrt(static_cast<double>(n)))
    throw std::runtime_error("compression unitary failed the unitarity contract");
}

namespace {

/// Orthonormal completion of a set of orthonormal columns, deterministic:
/// Householder QR against the canonical basis.
MatrixXc complete_basis(const MatrixXc& columns) {
  const long long n = columns.rows();
  const long long m = columns.cols();
  if (m == n) return MatrixXc(n, 0);
  MatrixXc padded(n, m + n);
  padded.leftCols(m) = columns;
  padded.rightCols(n) = MatrixXc::Identity(n, n);
  Eigen::HouseholderQR<MatrixXc> qr(padded);
  // Q is n x n; its first m columns span the input columns, so the trailing
  // ones form the orthogonal complement.
  MatrixXc Q = qr.householderQ() * MatrixXc::Identity(n, n);
  return Q.rightCols(n - m);
}

}  // namespace

CompressionUnitary build_compression_unitary(const SchmidtData& sd,
                                             const CompressionPlan& plan) {
  const int d = sd.local_dim;
  const long long M = plan.retained_rank;
  const long long dim_a = sd.left_basis.rows();
  SubsetIndexer inner(plan.region.sites(), plan.thick_boundary.sites(), d);
  const long long dim_boundary = inner.subset_dim();
  const long long dim_bulk = inner.rest_dim();
  if (M > dim_boundary)
    throw std::domain_error("retained rank exceeds the thickened-boundary dimension");
  if (plan.bulk_reference.size() != dim_bulk)
    throw std::domain_error("bulk reference dimension mismatch");

  // Targets t_j = |~j> ⊗ |∅>, with |~j> the j-th boundary configuration.
  MatrixXc targets = MatrixXc::Zero(dim_a, M);
  for (long long j = 0; j < M; ++j)
    for (long long b = 0; b < dim_bulk; ++b) {
      const Complex w = plan.bulk_reference[b];
      if (w != Complex(0.0, 0.0)) targets(inner.combine(j, b), j) = w;
    }

  MatrixXc source = MatrixXc(dim_a, dim_a);
  source.leftCols(M) = sd.left_basis.leftCols(M);
  source.rightCols(dim_a - M) = complete_basis(sd.left_basis.leftCols(M));
  MatrixXc dest = MatrixXc(dim_a, dim_a);
  dest.leftCols(M) = targets;
  dest.rightCols(dim_a - M) = complete_basis(targets);

  MatrixXc U = dest * source.adjoint();
  return CompressionUnitary(std::move(U), plan, std::move(targets));
}

PureState apply_matrix_on_region(const MatrixXc& op, const Region& A,
                                 const PureState& state) {
  std::vector<int> universe(state.lattice().size());
  std::iota(universe.begin(), universe.end(), 0);
  VectorXc amps = apply_on_sites(op, universe, A.sites(), state.local_dim(),
                                 state.amplitudes());
  return PureState(state.lattice(), state.local_dim(), std::move(amps));
}

PureState apply_on_region(const CompressionUnitary& U, const PureState& state) {
  return apply_matrix_on_region(U.matrix(), U.plan().region, state);
}

RecoveryReport compress_and_recover(const PureState& state, const CompressionPlan& plan,
                                    const CompressionUnitary& U) {
  PureState compressed = apply_on_region(U, state);
  const int d = state.local_dim();
  SubsetIndexer indexer(state.lattice(), plan.bulk.sites(), d);
  const long long db = indexer.subset_dim();
  const long long dr = indexer.rest_dim();
  const VectorXc& phi = compressed.amplitudes();
  const VectorXc& ref = plan.bulk_reference;

  // Slice phi over (bulk config b, rest config r).
  VectorXc projected = VectorXc::Zero(dr);  // (<∅|_bulk ⊗ I) φ
  for (long long b = 0; b < db; ++b) {
    const Complex w = std::conj(ref[b]);
    if (w == Complex(0.0, 0.0)) continue;
    for (long long r = 0; r < dr; ++r) projected[r] += w * phi[indexer.combine(b, r)];
  }

  RecoveryReport report;
  double fidelity = 0.0;
  MatrixXc gram = MatrixXc::Zero(db, db);
  std::vector<VectorXc> slices(db, VectorXc(dr));
  for (long long b = 0; b < db; ++b)
    for (long long r = 0; r < dr; ++r) slices[b][r] = phi[indexer.combine(b, r)];
  for (long long b = 0; b < db; ++b) {
    fidelity += std::norm(slices[b].dot(projected));
    for (long long b2 = 0; b2 <= b; ++b2) {
      gram(b, b2) = slices[b2].dot(slices[b]);  // <b2|ρ_bulk|b> ordering irrelevant for purity
      gram(b2, b) = std::conj(gram(b, b2));
    }
  }
  report.fidelity = fidelity;
  report.bulk_purity = gram.squaredNorm();
  return report;
}

BoundaryOperator boundary_represent(const MatrixXc& X_on_A, const SchmidtData& sd,
                                    const CompressionUnitary& U) {
  const long long dim_a = sd.left_basis.rows();
  if (X_on_A.rows() != dim_a || X_on_A.cols() != dim_a)
    throw std::domain_error("operator must act on the A factor");
  const long long M = U.plan().retained_rank;
  const MatrixXc U_M = sd.left_basis.leftCols(M);
  const MatrixXc P = U_M * U_M.adjoint();

  BoundaryOperator out;
  out.commutant_residual = operator_norm(X_on_A * P - P * X_on_A);

  const MatrixXc Y = U.matrix() * X_on_A * U.matrix().adjoint();
  const MatrixXc C = U.retained_targets().adjoint() * Y * U.retained_targets();

  SubsetIndexer inner(U.plan().region.sites(), U.plan().thick_boundary.sites(),
                      sd.local_dim);
  const long long dim_boundary = inner.subset_dim();
  out.op = MatrixXc::Zero(dim_boundary, dim_boundary);
  out.op.topLeftCorner(M, M) = C;  // |~j> are the leading boundary basis states
  return out;
}

CorrelationComparison correlation_compare(const std::vector<MatrixXc>& ops_on_A,
                                          const CompressionUnitary& U,
                                          const PureState& state, const SchmidtData& sd,
                                          double tol) {
  std::vector<MatrixXc> boundary_ops;
  for (const auto& X : ops_on_A) {
    BoundaryOperator b = boundary_represent(X, sd, U);
    if (b.commutant_residual > tol)
      throw std::domain_error("operator fails to commute with P_M: residual " +
                              std::to_string(b.commutant_residual));
    boundary_ops.push_back(std::move(b.op));
  }

  // <ψ| X_1 ... X_k |ψ>: apply right to left.
  PureState acted = state;
  for (auto it = ops_on_A.rbegin(); it != ops_on_A.rend(); ++it)
    acted = apply_matrix_on_region(*it, U.plan().region, acted);
  CorrelationComparison out;
  out.bulk_value = std::real(state.overlap(acted));

  // Reduced state of Uψ on the thickened boundary.
  PureState compressed = apply_on_region(U, state);
  SubsetIndexer indexer(state.lattice(), U.plan().thick_boundary.sites(),
                        state.local_dim());
  const long long dbnd = indexer.subset_dim();
  const long long dr = indexer.rest_dim();
  MatrixXc rho = MatrixXc::Zero(dbnd, dbnd);
  for (long long i = 0; i < dbnd; ++i)
    for (long long j = 0; j < dbnd; ++j) {
      Complex acc = 0.0;
      for (long long r = 0; r < dr; ++r)
        acc += compressed.amplitudes()[indexer.combine(i, r)] *
               std::conj(compressed.amplitudes()[indexer.combine(j, r)]);
      rho(i, j) = acc;
    }

  MatrixXc prod = MatrixXc::Identity(dbnd, dbnd);
  for (const auto& Xt : boundary_ops) prod = prod * Xt;
  out.boundary_value = std::real((prod * rho).trace());
  out.difference = std::abs(out.bulk_value - out.boundary_value);
  return out;
}

EnergyCheck energy_check(const PureState& state, const PureState& psi_M,
                         const LocalHamiltonian& H, const Region& A, double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw std::domain_error("epsilon must lie in (0, 1)");
  const VectorXc h_psi = H.apply(state.amplitudes());
  const VectorXc h_psi_m = H.apply(psi_M.amplitudes());
  const double e_full = std::real(state.amplitudes().dot(h_psi));
  const double e_trunc = std::real(psi_M.amplitudes().dot(h_psi_m));

  SplitHamiltonian split = split_hamiltonian(H, A);
  EnergyCheck out;
  out.lhs = std::abs(e_trunc - e_full);
  out.h_constant = split.h_constant;
  out.thm2_bound = std::sqrt(epsilon / (1.0 - epsilon)) * split.boundary_norm;
  out.eq_bound = 2.0 * std::sqrt(epsilon) * H.term_norm_sum();
  out.pass = out.lhs <= out.thm2_bound + 1e-12 && out.lhs <= out.eq_bound + 1e-12;
  return out;
}

double interior_commutator_expectation(const SchmidtData& sd, const LocalHamiltonian& H,
                                       long long M) {
  const Region& A = sd.region;
  SplitHamiltonian split = split_hamiltonian(H, A);
  const MatrixXc H_A = dense_on_sites(split.interior, A.sites(), sd.local_dim);
  const MatrixXc U_M = sd.left_basis.leftCols(std::min(M, sd.rank()));
  const MatrixXc P = U_M * U_M.adjoint();
  const auto& p = sd.spectrum.entries();
  MatrixXc rho = MatrixXc::Zero(H_A.rows(), H_A.cols());
  for (long long j = 0; j < sd.rank(); ++j)
    rho.noalias() += p[j] * (sd.left_basis.col(j) * sd.left_basis.col(j).adjoint());
  const Complex value = (rho * P * H_A * P).trace() - (rho * P * H_A).trace();
  return std::abs(value);
}

}  // namespace holocomp
