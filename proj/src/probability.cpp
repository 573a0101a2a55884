#include "holocomp/probability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace holocomp {

namespace {

constexpr double kSumTolerance = 1e-12;

double neumaier(const double* xs, std::size_t n) {
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double t = sum + xs[i];
    if (std::abs(sum) >= std::abs(xs[i]))
      comp += (sum - t) + xs[i];
    else
      comp += (xs[i] - t) + sum;
    sum = t;
  }
  return sum + comp;
}

// -sum p ln p with 0 ln 0 = 0, compensated.
double entropy_nats(const double* p, std::size_t n) {
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (p[i] <= 0.0) continue;
    double x = -p[i] * std::log(p[i]);
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

}  // namespace

double neumaier_sum(const std::vector<double>& xs) {
  return neumaier(xs.data(), xs.size());
}

ProbabilityVector::ProbabilityVector(std::vector<double> entries, double log_base)
    : entries_(std::move(entries)), log_base_(log_base) {
  if (entries_.empty()) throw std::invalid_argument("empty probability vector");
  if (!(log_base_ > 0.0) || log_base_ == 1.0)
    throw std::invalid_argument("log base must be positive and != 1");
  for (double& e : entries_) {
    if (e < -1e-14) throw std::invalid_argument("negative probability entry");
    if (e < 0.0) e = 0.0;
  }
  // Stable sort: ties keep their original order, so truncation cuts are
  // deterministic.
  std::stable_sort(entries_.begin(), entries_.end(), std::greater<double>());
  double sum = neumaier(entries_.data(), entries_.size());
  if (std::abs(sum - 1.0) > kSumTolerance)
    throw std::invalid_argument("probability entries do not sum to one");
}

ProbabilityVector ProbabilityVector::normalized(std::vector<double> entries,
                                                double log_base) {
  double sum = neumaier(entries.data(), entries.size());
  if (!(sum > 0.0)) throw std::invalid_argument("cannot normalize zero vector");
  for (double& e : entries) e /= sum;
  return ProbabilityVector(std::move(entries), log_base);
}

ProbabilityVector ProbabilityVector::uniform(std::size_t n, double log_base) {
  if (n == 0) throw std::invalid_argument("empty probability vector");
  return ProbabilityVector(std::vector<double>(n, 1.0 / static_cast<double>(n)),
                           log_base);
}

double ProbabilityVector::coverage(std::size_t M) const {
  M = std::min(M, entries_.size());
  return neumaier(entries_.data(), M);
}

double shannon_entropy(const ProbabilityVector& p) {
  return entropy_nats(p.entries().data(), p.size()) / std::log(p.log_base());
}

double min_entropy(const ProbabilityVector& p) {
  return -std::log(p.entries().front()) / std::log(p.log_base());
}

double renyi_entropy(const ProbabilityVector& p, double alpha) {
  if (!(alpha > 0.0)) throw std::domain_error("Rényi order must be positive");
  if (alpha == 1.0)
    throw std::domain_error("alpha = 1 is the Shannon entropy; use shannon_entropy");
  if (std::isinf(alpha)) return min_entropy(p);
  double sum = 0.0, comp = 0.0;
  for (double e : p.entries()) {
    if (e <= 0.0) continue;
    double x = std::pow(e, alpha);
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  sum += comp;
  return std::log(sum) / (1.0 - alpha) / std::log(p.log_base());
}

TruncationBound truncation_bound(const ProbabilityVector& p, std::size_t M) {
  if (M < 2)
    throw std::domain_error("truncation bound needs M >= 2 (log M would vanish)");
  M = std::min(M, p.size());
  const auto& e = p.entries();
  const double h_full = entropy_nats(e.data(), e.size());
  const double h_top = entropy_nats(e.data(), M);
  const double mass_top = neumaier(e.data(), M);
  const double log_m = std::log(static_cast<double>(M));
  TruncationBound b;
  // Base-independent: numerator and denominator rescale together.
  b.tight = 1.0 - (h_full - h_top) / (log_m - std::log(mass_top));
  b.weak = 1.0 - h_full / log_m;
  return b;
}

std::size_t smooth_zero_rank(const ProbabilityVector& p, double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw std::domain_error("epsilon must lie in (0, 1)");
  const double target = 1.0 - epsilon;
  double sum = 0.0, comp = 0.0;
  const auto& e = p.entries();
  for (std::size_t i = 0; i < e.size(); ++i) {
    double t = sum + e[i];
    if (std::abs(sum) >= std::abs(e[i]))
      comp += (sum - t) + e[i];
    else
      comp += (e[i] - t) + sum;
    sum = t;
    if (sum + comp >= target) return i + 1;
  }
  return e.size();
}

double smooth_zero_entropy(const ProbabilityVector& p, double epsilon) {
  return std::log(static_cast<double>(smooth_zero_rank(p, epsilon))) /
         std::log(p.log_base());
}

namespace {

void check_counterexample_args(int d, double k, int boundary_size, int volume) {
  if (d < 2) throw std::domain_error("local dimension d must be >= 2");
  if (!(k > 0.0)) throw std::domain_error("k must be positive");
  if (boundary_size < 1) throw std::domain_error("boundary size must be >= 1");
  if (volume < 1) throw std::domain_error("volume must be >= 1");
  // Ordering of the spectrum requires the top entry to dominate the uniform
  // remainder: d^{-k*bs} >= (1 - d^{-k*bs})/(d^V - 1), i.e. volume >= k*bs.
  if (static_cast<double>(volume) < k * boundary_size - 1e-12)
    throw std::domain_error("volume < k*boundary_size: stated spectrum is not ordered");
}

}  // namespace

ProbabilityVector renyi_counterexample(int d, double k, int boundary_size, int volume) {
  check_counterexample_args(d, k, boundary_size, volume);
  if (volume * std::log2(static_cast<double>(d)) > 24.0)
    throw std::domain_error(
        "d^volume exceeds the 2^24 materialization cap; use counterexample_min_rank");
  long long n = 1;
  for (int i = 0; i < volume; ++i) n *= d;
  const double p1 = std::pow(static_cast<double>(d), -k * boundary_size);
  if (p1 > 1.0) throw std::domain_error("leading entry exceeds one");
  std::vector<double> entries(static_cast<std::size_t>(n),
                              (1.0 - p1) / static_cast<double>(n - 1));
  entries[0] = p1;
  return ProbabilityVector::normalized(std::move(entries), static_cast<double>(d));
}

long long counterexample_min_rank(int d, double k, int boundary_size, int volume,
                                  double epsilon) {
  check_counterexample_args(d, k, boundary_size, volume);
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw std::domain_error("epsilon must lie in (0, 1)");
  if (volume * std::log2(static_cast<double>(d)) > 62.0)
    throw std::domain_error("d^volume exceeds the integer range of the closed form");
  long long n = 1;
  for (int i = 0; i < volume; ++i) n *= d;
  const long double p1 = std::pow(static_cast<long double>(d),
                                  static_cast<long double>(-k * boundary_size));
  const long double target = 1.0L - static_cast<long double>(epsilon);
  const long double slack = 1e-12L;
  if (p1 >= target - slack) return 1;
  const long double rest = (1.0L - p1) / static_cast<long double>(n - 1);
  auto covered = [&](long long m) {
    return p1 + static_cast<long double>(m - 1) * rest >= target - slack;
  };
  long long m = 1 + static_cast<long long>(std::ceil(
                        static_cast<double>((target - p1) / rest) - 1e-9));
  m = std::max(1LL, std::min(m, n));
  while (m > 1 && covered(m - 1)) --m;
  while (m < n && !covered(m)) ++m;
  return m;
}

bool renyi_hierarchy_check(const ProbabilityVector& p, double alpha, double tol) {
  if (!(alpha > 1.0)) throw std::domain_error("hierarchy check needs alpha > 1");
  const double h_alpha = std::isinf(alpha) ? min_entropy(p) : renyi_entropy(p, alpha);
  const double h_inf = min_entropy(p);
  const double factor = std::isinf(alpha) ? 1.0 : (alpha - 1.0) / alpha;
  return h_alpha >= h_inf - tol && h_inf >= factor * h_alpha - tol;
}

ProbabilityVector random_dirichlet(std::mt19937_64& rng, std::size_t n, double alpha,
                                   double log_base) {
  std::gamma_distribution<double> gamma(alpha, 1.0);
  std::vector<double> xs(n);
  for (double& x : xs) x = gamma(rng);
  return ProbabilityVector::normalized(std::move(xs), log_base);
}

ProbabilityVector random_heavy_tail(std::mt19937_64& rng, std::size_t n, double exponent,
                                    double log_base) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> xs(n);
  for (std::size_t j = 0; j < n; ++j) {
    // Power-law profile with multiplicative noise; produces spectra whose
    // coverage is dominated by a few entries, the regime where the tight
    // bound separates from the weak one.
    xs[j] = std::pow(static_cast<double>(j + 1), -exponent) * (0.1 + unif(rng));
  }
  return ProbabilityVector::normalized(std::move(xs), log_base);
}

}  // namespace holocomp
