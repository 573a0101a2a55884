#include "holocomp/schmidt.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace holocomp {

long long SchmidtData::positive_rank(double floor) const {
  long long r = 0;
  for (double p : spectrum.entries())
    if (p > floor) ++r;
  return r;
}

SchmidtData schmidt_decompose(const PureState& state, const Region& A) {
  if (A.empty() || A.is_full())
    throw std::domain_error("Schmidt cut needs a nontrivial bipartition");
  if (!(A.lattice() == state.lattice()))
    throw std::domain_error("region lives on a different lattice");
  const int d = state.local_dim();
  SubsetIndexer indexer(state.lattice(), A.sites(), d);
  const long long da = indexer.subset_dim();
  const long long dc = indexer.rest_dim();

  MatrixXc psi(da, dc);
  for (long long a = 0; a < da; ++a)
    for (long long c = 0; c < dc; ++c)
      psi(a, c) = state.amplitudes()[indexer.combine(a, c)];

  Eigen::JacobiSVD<MatrixXc> svd(psi, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  std::vector<double> p(sv.size());
  for (Eigen::Index j = 0; j < sv.size(); ++j) p[j] = sv[j] * sv[j];

  ProbabilityVector spectrum = ProbabilityVector::normalized(std::move(p),
                                                             static_cast<double>(d));
  SchmidtData sd{A, d, spectrum, svd.matrixU(), svd.matrixV(),
                 shannon_entropy(spectrum)};
  return sd;
}

namespace {

VectorXc assemble(const SchmidtData& sd, const Lattice& lattice, long long M,
                  const std::vector<double>& weights) {
  SubsetIndexer indexer(lattice, sd.region.sites(), sd.local_dim);
  const long long da = indexer.subset_dim();
  const long long dc = indexer.rest_dim();
  VectorXc amps = VectorXc::Zero(da * dc);
  for (long long j = 0; j < M; ++j) {
    const double w = weights[j];
    if (w == 0.0) continue;
    for (long long a = 0; a < da; ++a) {
      const Complex ua = w * sd.left_basis(a, j);
      if (ua == Complex(0.0, 0.0)) continue;
      for (long long c = 0; c < dc; ++c)
        amps[indexer.combine(a, c)] += ua * std::conj(sd.right_basis(c, j));
    }
  }
  return amps;
}

}  // namespace

TruncatedState truncate_state(const SchmidtData& sd, long long M) {
  if (M < 1) throw std::domain_error("retained rank M must be >= 1");
  M = std::min(M, sd.rank());
  const auto& p = sd.spectrum.entries();
  std::vector<double> weights(M);
  for (long long j = 0; j < M; ++j) weights[j] = std::sqrt(p[j]);
  VectorXc amps = assemble(sd, sd.region.lattice(), M, weights);
  const double coverage = sd.spectrum.coverage(static_cast<std::size_t>(M));
  amps /= amps.norm();
  return {PureState(sd.region.lattice(), sd.local_dim, std::move(amps)), coverage};
}

PureState reconstruct(const SchmidtData& sd, const Lattice& lattice) {
  const auto& p = sd.spectrum.entries();
  std::vector<double> weights(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) weights[j] = std::sqrt(p[j]);
  VectorXc amps = assemble(sd, lattice, sd.rank(), weights);
  return PureState(lattice, sd.local_dim, std::move(amps));
}

}  // namespace holocomp
