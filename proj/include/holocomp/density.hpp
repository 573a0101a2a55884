#ifndef HOLOCOMP_DENSITY_HPP
#define HOLOCOMP_DENSITY_HPP

#include <functional>
#include <vector>

namespace holocomp {

/// Probability density on an axis-aligned box, integrated by the midpoint
/// rule on a regular grid. The normalization residual is always reported so
/// the caller can judge the quadrature resolution.
class DensityFunction {
public:
  using Evaluator = std::function<double(const std::vector<double>&)>;

  DensityFunction(Evaluator f, std::vector<double> lo, std::vector<double> hi,
                  std::vector<int> resolution);

  int dimension() const { return static_cast<int>(lo_.size()); }
  const std::vector<double>& lower() const { return lo_; }
  const std::vector<double>& upper() const { return hi_; }
  const std::vector<int>& resolution() const { return resolution_; }
  double cell_volume() const { return cell_volume_; }

  /// Visits every grid cell midpoint with the density value there.
  void for_each_cell(const std::function<void(double value)>& visit) const;

  double normalization() const;

private:
  Evaluator f_;
  std::vector<double> lo_, hi_;
  std::vector<int> resolution_;
  double cell_volume_;
};

struct DensityBoundReport {
  double normalization_residual = 0.0;  // |∫f - 1|
  double coverage = 0.0;                // p(X_δ)
  double level_set_volume = 0.0;        // |X_δ|
  double level_set_entropy = 0.0;       // H(X_δ), nats
  double total_entropy = 0.0;           // H over the whole box, nats
  double bound_tight = 0.0;
  double bound_weak = 0.0;
  bool bounds_defined = false;          // false when |X_δ| <= 1 (log not positive)
};

/// Level-set form of the truncation bound: with X_δ = {x : f(x) >= δ},
///   p(X_δ) >= 1 - (H - H(X_δ)) / (log|X_δ| - log p(X_δ)) >= 1 - H / log|X_δ|.
/// Bounds are flagged undefined when |X_δ| <= 1.
DensityBoundReport density_entropy_bound(const DensityFunction& f, double delta);

}  // namespace holocomp

#endif
