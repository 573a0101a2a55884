#ifndef HOLOCOMP_CONFIG_HPP
#define HOLOCOMP_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "holocomp/lattice.hpp"

namespace holocomp {

inline constexpr const char* kArtifactVersion = "1.0.0";

/// Region literal: explicit site list, an axis-aligned box, or an index
/// range. Parsed from config JSON or from a compact CLI string
/// ("0..5", "0,3,7", or "box:0,0:1,3").
struct RegionSpec {
  std::vector<int> sites;                 // explicit list
  std::vector<int> box_lo, box_hi;        // box corners (inclusive)
  std::optional<std::pair<int, int>> index_range;

  bool empty() const {
    return sites.empty() && box_lo.empty() && !index_range.has_value();
  }
  Region resolve(const Lattice& lattice) const;
  static RegionSpec parse(const std::string& text);
  std::string describe() const;
};

struct ExperimentConfig {
  std::string kind;  // lemma-sweep | spin-compress | gauss-compress |
                     // renyi-counterexample | decay-fit | density-lemma
  // spin model
  std::string model = "tfim";
  int length = 12;
  double field = 2.0;
  double coupling = 1.0;
  std::string bc = "open";
  // harmonic model
  int grid_x = 0, grid_y = 0;  // 0 means use `length` as a chain
  double mass = 1.0;
  double kappa = 1.0;
  // shared
  RegionSpec region;
  std::vector<double> epsilons;
  std::uint64_t seed = 7;
  std::string out = "out.csv";
  // lemma sweep
  int trials = 1000;
  int max_size = 10000;
  // counter-example family
  int ce_d = 2;
  double ce_k = 1.0;
  int ce_boundary = 2;
  int ce_volume = 8;
  // density lemma
  std::string density = "normal";  // normal | exponential
  std::vector<double> deltas;
  long long quad_resolution = 100000;
  // decay fit cutoff sweep
  int l_max = 12;
  // test hook: deliberately falsify asserted bounds to exercise exit codes
  bool falsify_bounds = false;

  std::string to_json_string() const;
  static ExperimentConfig from_json_string(const std::string& text);
  static ExperimentConfig load(const std::string& path);
  void save(const std::string& path) const;

  /// FNV-1a over the canonical JSON form.
  std::string hash() const;
};

struct Diagnostic {
  std::string severity;  // "error" | "warning"
  std::string message;
};

/// Static checks (capacity, gap positivity, region sanity) without running.
std::vector<Diagnostic> validate(const ExperimentConfig& config);

}  // namespace holocomp

#endif
