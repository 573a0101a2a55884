#include "holocomp/spin_state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace holocomp {

long long hilbert_dim(int local_dim, int sites) {
  long long dim = 1;
  for (int i = 0; i < sites; ++i) {
    if (dim > (1LL << 50) / local_dim)
      throw std::domain_error("Hilbert space dimension out of range");
    dim *= local_dim;
  }
  return dim;
}

PureState::PureState(Lattice lattice, int local_dim, VectorXc amplitudes)
    : lattice_(std::move(lattice)), local_dim_(local_dim),
      amplitudes_(std::move(amplitudes)) {
  if (local_dim_ < 2) throw std::invalid_argument("local dimension must be >= 2");
  if (amplitudes_.size() != hilbert_dim(local_dim_, lattice_.size()))
    throw std::invalid_argument("amplitude length does not match d^|Λ|");
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > 1e-12) {
    if (norm <= 0.0) throw std::invalid_argument("zero state vector");
    amplitudes_ /= norm;
    if (std::abs(norm - 1.0) > 1e-6)
      throw std::invalid_argument("state vector far from normalized");
  }
}

PureState PureState::basis_state(const Lattice& lattice, int local_dim,
                                 const std::vector<int>& config) {
  if (static_cast<int>(config.size()) != lattice.size())
    throw std::invalid_argument("configuration length mismatch");
  long long index = 0;
  for (int v : config) {
    if (v < 0 || v >= local_dim) throw std::invalid_argument("configuration digit out of range");
    index = index * local_dim + v;
  }
  VectorXc amps = VectorXc::Zero(hilbert_dim(local_dim, lattice.size()));
  amps[index] = 1.0;
  return PureState(lattice, local_dim, std::move(amps));
}

PureState PureState::ghz(const Lattice& lattice, int local_dim) {
  VectorXc amps = VectorXc::Zero(hilbert_dim(local_dim, lattice.size()));
  const double w = 1.0 / std::sqrt(2.0);
  amps[0] = w;
  amps[amps.size() - 1] = w;
  return PureState(lattice, local_dim, std::move(amps));
}

PureState PureState::random(const Lattice& lattice, int local_dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  VectorXc amps(hilbert_dim(local_dim, lattice.size()));
  for (long long i = 0; i < amps.size(); ++i) amps[i] = Complex(normal(rng), normal(rng));
  amps /= amps.norm();
  return PureState(lattice, local_dim, std::move(amps));
}

Complex PureState::overlap(const PureState& other) const {
  if (other.dim() != dim()) throw std::domain_error("state dimension mismatch");
  return amplitudes_.dot(other.amplitudes_);
}

namespace {

std::vector<long long> digit_bases(const std::vector<int>& universe_sites,
                                   const std::vector<int>& member_sites, int local_dim) {
  // Stride of each universe position: site universe_sites[0] is the most
  // significant digit.
  const int n = static_cast<int>(universe_sites.size());
  std::vector<long long> stride(n);
  long long s = 1;
  for (int i = n - 1; i >= 0; --i) {
    stride[i] = s;
    s *= local_dim;
  }
  std::vector<long long> member_stride;
  member_stride.reserve(member_sites.size());
  for (int site : member_sites) {
    auto it = std::lower_bound(universe_sites.begin(), universe_sites.end(), site);
    if (it == universe_sites.end() || *it != site)
      throw std::domain_error("subset site not contained in the universe");
    member_stride.push_back(stride[it - universe_sites.begin()]);
  }
  const long long dim = hilbert_dim(local_dim, static_cast<int>(member_sites.size()));
  std::vector<long long> base(static_cast<std::size_t>(dim));
  std::vector<int> digits(member_sites.size(), 0);
  long long value = 0;
  for (long long idx = 0; idx < dim; ++idx) {
    base[idx] = value;
    // odometer over member digits, least significant (last member) first
    for (int pos = static_cast<int>(member_sites.size()) - 1; pos >= 0; --pos) {
      value += member_stride[pos];
      if (++digits[pos] < local_dim) break;
      value -= static_cast<long long>(local_dim) * member_stride[pos];
      digits[pos] = 0;
    }
  }
  return base;
}

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<int> complement_sites(const std::vector<int>& universe,
                                  const std::vector<int>& subset) {
  std::vector<int> rest;
  rest.reserve(universe.size() - subset.size());
  std::set_difference(universe.begin(), universe.end(), subset.begin(), subset.end(),
                      std::back_inserter(rest));
  return rest;
}

}  // namespace

SubsetIndexer::SubsetIndexer(const std::vector<int>& universe_sites,
                             const std::vector<int>& subset_sites, int local_dim) {
  auto universe = sorted_unique(universe_sites);
  auto subset = sorted_unique(subset_sites);
  auto rest = complement_sites(universe, subset);
  subset_dim_ = hilbert_dim(local_dim, static_cast<int>(subset.size()));
  rest_dim_ = hilbert_dim(local_dim, static_cast<int>(rest.size()));
  subset_base_ = digit_bases(universe, subset, local_dim);
  rest_base_ = digit_bases(universe, rest, local_dim);
}

SubsetIndexer::SubsetIndexer(const Lattice& lattice, const std::vector<int>& subset_sites,
                             int local_dim) {
  std::vector<int> universe(lattice.size());
  std::iota(universe.begin(), universe.end(), 0);
  auto subset = sorted_unique(subset_sites);
  auto rest = complement_sites(universe, subset);
  subset_dim_ = hilbert_dim(local_dim, static_cast<int>(subset.size()));
  rest_dim_ = hilbert_dim(local_dim, static_cast<int>(rest.size()));
  subset_base_ = digit_bases(universe, subset, local_dim);
  rest_base_ = digit_bases(universe, rest, local_dim);
}

VectorXc apply_on_sites(const MatrixXc& op, const std::vector<int>& universe_sites,
                        const std::vector<int>& sites, int local_dim,
                        const VectorXc& amps) {
  SubsetIndexer indexer(universe_sites, sites, local_dim);
  const long long ds = indexer.subset_dim();
  const long long dr = indexer.rest_dim();
  if (op.rows() != ds || op.cols() != ds)
    throw std::domain_error("operator dimension does not match its support");
  if (amps.size() != ds * dr) throw std::domain_error("amplitude length mismatch");
  VectorXc out = VectorXc::Zero(amps.size());
  VectorXc in_slice(ds), out_slice(ds);
  for (long long r = 0; r < dr; ++r) {
    const long long base = indexer.rest_bases()[r];
    for (long long a = 0; a < ds; ++a) in_slice[a] = amps[base + indexer.subset_bases()[a]];
    out_slice.noalias() = op * in_slice;
    for (long long a = 0; a < ds; ++a) out[base + indexer.subset_bases()[a]] = out_slice[a];
  }
  return out;
}

}  // namespace holocomp
