#ifndef HOLOCOMP_LATTICE_HPP
#define HOLOCOMP_LATTICE_HPP

#include <string>
#include <vector>

namespace holocomp {

enum class BoundaryCondition { open, periodic };

/// Finite hypercubic lattice with per-axis open/periodic boundary conditions.
/// Sites are indexed 0..size()-1 in row-major order (axis 0 slowest).
/// Adjacency is nearest-neighbor (von Neumann); the lattice distance is the
/// induced graph distance.
class Lattice {
public:
  Lattice(std::vector<int> extents, std::vector<BoundaryCondition> bc);

  static Lattice chain(int length, BoundaryCondition bc = BoundaryCondition::open);
  static Lattice grid(int lx, int ly, BoundaryCondition bc = BoundaryCondition::open);

  int rank() const { return static_cast<int>(extents_.size()); }
  const std::vector<int>& extents() const { return extents_; }
  const std::vector<BoundaryCondition>& boundary_conditions() const { return bc_; }
  int size() const { return size_; }

  std::vector<int> coordinates(int site) const;
  int site_at(const std::vector<int>& coord) const;

  /// Graph distance between two sites. Throws std::domain_error on invalid indices.
  int distance(int i, int j) const;

  std::vector<int> neighbors(int site) const;

  /// Largest distance between any two sites.
  int diameter() const;

  bool operator==(const Lattice& other) const {
    return extents_ == other.extents_ && bc_ == other.bc_;
  }

private:
  std::vector<int> extents_;
  std::vector<BoundaryCondition> bc_;
  int size_;
  void check_site(int site) const;
};

/// A subset of lattice sites. Stores a sorted, duplicate-free site list and a
/// copy of the lattice (lattices are small value types). Immutable after
/// construction.
class Region {
public:
  Region(Lattice lattice, std::vector<int> sites);

  /// Axis-aligned box [lo, hi] (inclusive on both ends).
  static Region box(const Lattice& lattice, const std::vector<int>& lo,
                    const std::vector<int>& hi);
  /// Contiguous index range [first, last] on any lattice.
  static Region range(const Lattice& lattice, int first, int last);

  const Lattice& lattice() const { return lattice_; }
  const std::vector<int>& sites() const { return sites_; }
  int size() const { return static_cast<int>(sites_.size()); }
  bool empty() const { return sites_.empty(); }
  bool is_full() const { return size() == lattice_.size(); }
  bool contains(int site) const;

  Region complement() const;

private:
  Lattice lattice_;
  std::vector<int> sites_;   // sorted ascending
  std::vector<char> mask_;   // size |Λ|
};

/// Distance from each site of the lattice to the complement of A
/// (multi-source BFS over the lattice graph). Sites of A^c get 0.
/// If A is the whole lattice every entry is size()+1 (an "infinite" sentinel).
std::vector<int> distance_to_complement(const Region& A);

/// Thickened boundary: the sites of A within lattice distance l of A^c.
/// l >= 1 required. Returns A itself once l covers the depth of A; returns an
/// empty region when A is empty or A = Λ (no complement to be close to).
Region thickened_boundary(const Region& A, int l);

/// bulk(A, l) = A minus its thickened boundary of width l.
Region region_bulk(const Region& A, int l);

/// |∂_l A| for l = 1..depth(A), cumulative shell sizes (saturates at |A|).
std::vector<int> boundary_shell_sizes(const Region& A);

struct BoundaryWidth {
  int l = 0;
  bool whole_region = false;  // even l = depth(A) cannot reach k|∂A| sites
};

/// Smallest l with |∂_l A| >= k |∂_1 A| (k real, no rounding). Requires A
/// nonempty and A != Λ. When the inequality is unreachable, returns the depth
/// of A with whole_region set.
BoundaryWidth boundary_width_function(const Region& A, double k);

std::string to_string(BoundaryCondition bc);
BoundaryCondition boundary_condition_from_string(const std::string& s);

}  // namespace holocomp

#endif
