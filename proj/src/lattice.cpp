#include "holocomp/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace holocomp {

Lattice::Lattice(std::vector<int> extents, std::vector<BoundaryCondition> bc)
    : extents_(std::move(extents)), bc_(std::move(bc)) {
  if (extents_.empty()) throw std::invalid_argument("lattice needs at least one axis");
  if (bc_.size() == 1 && extents_.size() > 1) bc_.resize(extents_.size(), bc_[0]);
  if (bc_.size() != extents_.size())
    throw std::invalid_argument("one boundary condition per axis required");
  size_ = 1;
  for (int e : extents_) {
    if (e <= 0) throw std::invalid_argument("lattice extents must be positive");
    size_ *= e;
  }
}

Lattice Lattice::chain(int length, BoundaryCondition bc) {
  return Lattice({length}, {bc});
}

Lattice Lattice::grid(int lx, int ly, BoundaryCondition bc) {
  return Lattice({lx, ly}, {bc, bc});
}

void Lattice::check_site(int site) const {
  if (site < 0 || site >= size_) throw std::domain_error("site index out of range");
}

std::vector<int> Lattice::coordinates(int site) const {
  check_site(site);
  std::vector<int> c(extents_.size());
  for (int a = rank() - 1; a >= 0; --a) {
    c[a] = site % extents_[a];
    site /= extents_[a];
  }
  return c;
}

int Lattice::site_at(const std::vector<int>& coord) const {
  if (coord.size() != extents_.size())
    throw std::domain_error("coordinate rank mismatch");
  int site = 0;
  for (std::size_t a = 0; a < coord.size(); ++a) {
    if (coord[a] < 0 || coord[a] >= extents_[a])
      throw std::domain_error("coordinate out of range");
    site = site * extents_[a] + coord[a];
  }
  return site;
}

int Lattice::distance(int i, int j) const {
  check_site(i);
  check_site(j);
  // von Neumann adjacency on a hypercube: graph distance is the per-axis sum.
  auto ci = coordinates(i);
  auto cj = coordinates(j);
  int dist = 0;
  for (std::size_t a = 0; a < ci.size(); ++a) {
    int d = std::abs(ci[a] - cj[a]);
    if (bc_[a] == BoundaryCondition::periodic) d = std::min(d, extents_[a] - d);
    dist += d;
  }
  return dist;
}

std::vector<int> Lattice::neighbors(int site) const {
  check_site(site);
  auto c = coordinates(site);
  std::vector<int> out;
  out.reserve(2 * rank());
  for (int a = 0; a < rank(); ++a) {
    for (int step : {-1, +1}) {
      int v = c[a] + step;
      if (v < 0 || v >= extents_[a]) {
        if (bc_[a] != BoundaryCondition::periodic) continue;
        if (extents_[a] < 2) continue;
        v = (v + extents_[a]) % extents_[a];
      }
      auto cc = c;
      cc[a] = v;
      int s = site_at(cc);
      if (s != site) out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int Lattice::diameter() const {
  int d = 0;
  for (std::size_t a = 0; a < extents_.size(); ++a) {
    int e = extents_[a];
    d += (bc_[a] == BoundaryCondition::periodic) ? e / 2 : e - 1;
  }
  return d;
}

Region::Region(Lattice lattice, std::vector<int> sites)
    : lattice_(std::move(lattice)), sites_(std::move(sites)) {
  std::sort(sites_.begin(), sites_.end());
  sites_.erase(std::unique(sites_.begin(), sites_.end()), sites_.end());
  mask_.assign(lattice_.size(), 0);
  for (int s : sites_) {
    if (s < 0 || s >= lattice_.size())
      throw std::domain_error("region site outside the lattice");
    mask_[s] = 1;
  }
}

Region Region::box(const Lattice& lattice, const std::vector<int>& lo,
                   const std::vector<int>& hi) {
  if (static_cast<int>(lo.size()) != lattice.rank() || lo.size() != hi.size())
    throw std::domain_error("box rank mismatch");
  for (std::size_t a = 0; a < lo.size(); ++a)
    if (lo[a] > hi[a]) throw std::domain_error("box has lo > hi");
  std::vector<int> sites;
  std::vector<int> c(lo);
  while (true) {
    sites.push_back(lattice.site_at(c));
    int a = static_cast<int>(c.size()) - 1;
    while (a >= 0) {
      if (++c[a] <= hi[a]) break;
      c[a] = lo[a];
      --a;
    }
    if (a < 0) break;
  }
  return Region(lattice, std::move(sites));
}

Region Region::range(const Lattice& lattice, int first, int last) {
  if (first > last) throw std::domain_error("range has first > last");
  std::vector<int> sites(last - first + 1);
  std::iota(sites.begin(), sites.end(), first);
  return Region(lattice, std::move(sites));
}

bool Region::contains(int site) const {
  return site >= 0 && site < lattice_.size() && mask_[site] != 0;
}

Region Region::complement() const {
  std::vector<int> sites;
  sites.reserve(lattice_.size() - size());
  for (int s = 0; s < lattice_.size(); ++s)
    if (!mask_[s]) sites.push_back(s);
  return Region(lattice_, std::move(sites));
}

std::vector<int> distance_to_complement(const Region& A) {
  const Lattice& lat = A.lattice();
  const int n = lat.size();
  const int inf = n + 1;
  std::vector<int> dist(n, inf);
  std::deque<int> queue;
  for (int s = 0; s < n; ++s) {
    if (!A.contains(s)) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (int t : lat.neighbors(s)) {
      if (dist[t] > dist[s] + 1) {
        dist[t] = dist[s] + 1;
        queue.push_back(t);
      }
    }
  }
  return dist;
}

Region thickened_boundary(const Region& A, int l) {
  if (l < 1) throw std::domain_error("boundary width l must be >= 1");
  auto dist = distance_to_complement(A);
  std::vector<int> sites;
  for (int s : A.sites())
    if (dist[s] <= l) sites.push_back(s);
  return Region(A.lattice(), std::move(sites));
}

Region region_bulk(const Region& A, int l) {
  if (l < 1) throw std::domain_error("boundary width l must be >= 1");
  auto dist = distance_to_complement(A);
  std::vector<int> sites;
  for (int s : A.sites())
    if (dist[s] > l) sites.push_back(s);
  return Region(A.lattice(), std::move(sites));
}

std::vector<int> boundary_shell_sizes(const Region& A) {
  auto dist = distance_to_complement(A);
  int depth = 0;
  for (int s : A.sites()) depth = std::max(depth, dist[s]);
  std::vector<int> sizes(depth, 0);
  for (int s : A.sites()) {
    // site contributes to every |∂_l A| with l >= dist(s, A^c)
    for (int l = dist[s]; l <= depth; ++l) sizes[l - 1] += 1;
  }
  return sizes;
}

BoundaryWidth boundary_width_function(const Region& A, double k) {
  if (A.empty()) throw std::domain_error("boundary width of an empty region");
  if (A.is_full())
    throw std::domain_error("region equals the whole lattice: no boundary");
  if (!(k > 0.0)) throw std::domain_error("k must be positive");
  auto sizes = boundary_shell_sizes(A);
  const double target = k * static_cast<double>(sizes[0]);
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (static_cast<double>(sizes[i]) >= target)
      return {static_cast<int>(i) + 1, false};
  }
  return {static_cast<int>(sizes.size()), true};
}

std::string to_string(BoundaryCondition bc) {
  return bc == BoundaryCondition::open ? "open" : "periodic";
}

BoundaryCondition boundary_condition_from_string(const std::string& s) {
  if (s == "open") return BoundaryCondition::open;
  if (s == "periodic") return BoundaryCondition::periodic;
  throw std::domain_error("unknown boundary condition: " + s);
}

}  // namespace holocomp
