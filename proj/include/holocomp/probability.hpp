#ifndef HOLOCOMP_PROBABILITY_HPP
#define HOLOCOMP_PROBABILITY_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace holocomp {

/// Compensated (Neumaier) summation. Keeps the Lemma-style margins near
/// machine precision even for vectors with 10^4 entries.
double neumaier_sum(const std::vector<double>& xs);

/// Ordered probability distribution: entries non-increasing, summing to one
/// within 1e-12. Entropies are reported in log base `log_base` (the local
/// dimension of the ambient problem by convention); all internal computation
/// is in natural log with a single final conversion.
class ProbabilityVector {
public:
  explicit ProbabilityVector(std::vector<double> entries, double log_base = 2.0);

  /// Divides by the current sum before validating; for generator output.
  static ProbabilityVector normalized(std::vector<double> entries, double log_base = 2.0);
  static ProbabilityVector uniform(std::size_t n, double log_base = 2.0);

  const std::vector<double>& entries() const { return entries_; }
  double log_base() const { return log_base_; }
  std::size_t size() const { return entries_.size(); }

  /// Sum of the M largest entries (M clamped to size).
  double coverage(std::size_t M) const;

private:
  std::vector<double> entries_;
  double log_base_;
};

double shannon_entropy(const ProbabilityVector& p);

/// Rényi entropy of order alpha (> 0, != 1). alpha = +infinity gives the
/// min-entropy. Throws std::domain_error for alpha <= 0 or alpha == 1.
double renyi_entropy(const ProbabilityVector& p, double alpha);

double min_entropy(const ProbabilityVector& p);

struct TruncationBound {
  double tight = 0.0;
  double weak = 0.0;
};

/// Lower bounds on the mass of the M largest entries:
///   coverage >= 1 - (H(p)-H(q)) / (log M - log Σq)  >=  1 - H(p)/log M,
/// with q the top-M block of p. Requires 2 <= M (M > n is clamped to n).
TruncationBound truncation_bound(const ProbabilityVector& p, std::size_t M);

/// Smallest M whose top-M mass reaches 1 - epsilon.
std::size_t smooth_zero_rank(const ProbabilityVector& p, double epsilon);

/// H_0^eps(p) = log of smooth_zero_rank, in the vector's base. Satisfies
/// eps * H_0^eps(p) <= H(p).
double smooth_zero_entropy(const ProbabilityVector& p, double epsilon);

/// Spectrum with one entry d^{-k*boundary_size} and the rest uniform over
/// d^volume - 1 outcomes; its min-entropy equals k*boundary_size in base d.
/// Materializes the vector, so d^volume is capped at 2^24 entries.
ProbabilityVector renyi_counterexample(int d, double k, int boundary_size, int volume);

/// Closed-form minimal M with p_1 + (M-1)(1-p_1)/(d^volume - 1) >= 1 - epsilon
/// for the spectrum above; no materialization. Comparisons carry a 1e-12
/// absolute slack so exact-boundary cases are not pushed up by rounding.
long long counterexample_min_rank(int d, double k, int boundary_size, int volume,
                                  double epsilon);

/// H_alpha >= H_inf >= ((alpha-1)/alpha) H_alpha for alpha > 1, checked to tol.
bool renyi_hierarchy_check(const ProbabilityVector& p, double alpha, double tol = 1e-10);

/// Seeded random test distributions. `heavy_tail` draws p_j ~ u^a spectra with
/// a power-law profile, otherwise symmetric Dirichlet(alpha).
ProbabilityVector random_dirichlet(std::mt19937_64& rng, std::size_t n, double alpha,
                                   double log_base = 2.0);
ProbabilityVector random_heavy_tail(std::mt19937_64& rng, std::size_t n, double exponent,
                                    double log_base = 2.0);

}  // namespace holocomp

#endif
