#include "holocomp/density.hpp"

#include <cmath>
#include <stdexcept>

namespace holocomp {

DensityFunction::DensityFunction(Evaluator f, std::vector<double> lo,
                                 std::vector<double> hi, std::vector<int> resolution)
    : f_(std::move(f)), lo_(std::move(lo)), hi_(std::move(hi)),
      resolution_(std::move(resolution)) {
  if (lo_.empty() || lo_.size() != hi_.size() || lo_.size() != resolution_.size())
    throw std::invalid_argument("density box/resolution rank mismatch");
  cell_volume_ = 1.0;
  for (std::size_t a = 0; a < lo_.size(); ++a) {
    if (!(hi_[a] > lo_[a])) throw std::invalid_argument("density box has hi <= lo");
    if (resolution_[a] < 1) throw std::invalid_argument("resolution must be >= 1");
    cell_volume_ *= (hi_[a] - lo_[a]) / resolution_[a];
  }
}

void DensityFunction::for_each_cell(const std::function<void(double)>& visit) const {
  const int dim = dimension();
  std::vector<int> idx(dim, 0);
  std::vector<double> x(dim);
  std::vector<double> step(dim);
  for (int a = 0; a < dim; ++a) step[a] = (hi_[a] - lo_[a]) / resolution_[a];
  while (true) {
    for (int a = 0; a < dim; ++a) x[a] = lo_[a] + (idx[a] + 0.5) * step[a];
    double v = f_(x);
    if (v < 0.0) throw std::domain_error("density evaluated negative");
    visit(v);
    int a = dim - 1;
    while (a >= 0) {
      if (++idx[a] < resolution_[a]) break;
      idx[a] = 0;
      --a;
    }
    if (a < 0) break;
  }
}

double DensityFunction::normalization() const {
  double sum = 0.0, comp = 0.0;
  for_each_cell([&](double v) {
    double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  });
  return (sum + comp) * cell_volume();
}

DensityBoundReport density_entropy_bound(const DensityFunction& f, double delta) {
  if (!(delta > 0.0)) throw std::domain_error("delta must be positive");
  struct Acc {
    double sum = 0.0, comp = 0.0;
    void add(double x) {
      double t = sum + x;
      if (std::abs(sum) >= std::abs(x))
        comp += (sum - t) + x;
      else
        comp += (x - t) + sum;
      sum = t;
    }
    double value() const { return sum + comp; }
  };
  Acc total_mass, level_mass, level_volume, level_entropy, total_entropy;
  f.for_each_cell([&](double v) {
    total_mass.add(v);
    if (v > 0.0) total_entropy.add(-v * std::log(v));
    if (v >= delta) {
      level_mass.add(v);
      level_volume.add(1.0);
      level_entropy.add(-v * std::log(v));
    }
  });
  const double dv = f.cell_volume();
  DensityBoundReport r;
  r.normalization_residual = std::abs(total_mass.value() * dv - 1.0);
  r.coverage = level_mass.value() * dv;
  r.level_set_volume = level_volume.value() * dv;
  r.level_set_entropy = level_entropy.value() * dv;
  r.total_entropy = total_entropy.value() * dv;
  if (r.level_set_volume > 1.0 && r.coverage > 0.0) {
    const double denom = std::log(r.level_set_volume) - std::log(r.coverage);
    r.bound_tight = 1.0 - (r.total_entropy - r.level_set_entropy) / denom;
    r.bound_weak = 1.0 - r.total_entropy / std::log(r.level_set_volume);
    r.bounds_defined = true;
  }
  return r;
}

}  // namespace holocomp
