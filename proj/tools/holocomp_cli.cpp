// Command-line workbench: holographic compression experiments on spin and
// harmonic lattices, driven by flags or a JSON config file (flags override
// the file). Every run writes a CSV plus a JSON manifest; the exit status is
// nonzero iff an asserted inequality failed.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "holocomp/config.hpp"
#include "holocomp/runner.hpp"

namespace {

using holocomp::ExperimentConfig;
using holocomp::RegionSpec;

int report(const holocomp::RunResult& result) {
  for (const auto& msg : result.messages) std::cerr << msg << '\n';
  if (!result.csv_path.empty())
    std::cout << "wrote " << result.csv_path << " and " << result.manifest_path << '\n';
  if (result.violations > 0)
    std::cerr << result.violations << " asserted inequality violation(s)\n";
  return result.exit_code;
}

void add_model_flags(CLI::App* cmd, ExperimentConfig& config, std::string& region_text) {
  cmd->add_option("--model", config.model, "tfim | heisenberg");
  cmd->add_option("--length", config.length, "chain length");
  cmd->add_option("--field", config.field, "transverse field strength");
  cmd->add_option("--coupling", config.coupling, "bond coupling");
  cmd->add_option("--bc", config.bc, "open | periodic");
  cmd->add_option("--region", region_text, "site range '0..5', list '0,1,2' or box:lo:hi");
  cmd->add_option("--epsilon", config.epsilons, "target error(s)");
  cmd->add_option("--seed", config.seed, "RNG seed");
  cmd->add_option("--out", config.out, "output CSV path");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"holocomp: boundary compression workbench for lattice states"};
  app.require_subcommand(1);

  ExperimentConfig config;
  std::string region_text;
  std::string config_path;
  std::string manifest_path;

  auto* lemma = app.add_subcommand("lemma-sweep", "random-spectrum truncation bound sweep");
  lemma->add_option("--trials", config.trials, "number of random distributions");
  lemma->add_option("--max-size", config.max_size, "largest distribution size");
  lemma->add_option("--seed", config.seed, "RNG seed");
  lemma->add_option("--out", config.out, "output CSV path");
  lemma->add_flag("--falsify-bounds", config.falsify_bounds,
                  "test hook: corrupt the bound to force a violation");

  auto* spin = app.add_subcommand("spin-compress",
                                  "ground-state compression on a spin chain");
  add_model_flags(spin, config, region_text);

  auto* gauss = app.add_subcommand("gauss-compress",
                                   "Gaussian compression on a harmonic lattice");
  gauss->add_option("--length", config.length, "chain length");
  gauss->add_option("--grid", [&config](const std::vector<std::string>& vals) {
    const auto x = vals.at(0).find('x');
    if (x == std::string::npos) return false;
    config.grid_x = std::stoi(vals.at(0).substr(0, x));
    config.grid_y = std::stoi(vals.at(0).substr(x + 1));
    return true;
  }, "grid extents, e.g. 6x6");
  gauss->add_option("--mass", config.mass, "oscillator mass term");
  gauss->add_option("--kappa", config.kappa, "nearest-neighbor coupling");
  gauss->add_option("--bc", config.bc, "open | periodic");
  gauss->add_option("--region", region_text, "region of modes to compress");
  gauss->add_option("--epsilon", config.epsilons, "target error(s)");
  gauss->add_option("--out", config.out, "output CSV path");

  auto* decay = app.add_subcommand("decay-fit",
                                   "cross-cut correlation decay of a harmonic chain");
  decay->add_option("--length", config.length, "chain length");
  decay->add_option("--mass", config.mass, "oscillator mass term");
  decay->add_option("--kappa", config.kappa, "nearest-neighbor coupling");
  decay->add_option("--bc", config.bc, "open | periodic");
  decay->add_option("--region", region_text, "cut region (default: first half)");
  decay->add_option("--out", config.out, "output CSV path");

  auto* renyi = app.add_subcommand("renyi-counterexample",
                                   "volume-scaling spectrum for orders above one");
  renyi->add_option("--d", config.ce_d, "local dimension");
  renyi->add_option("--k", config.ce_k, "area-law constant");
  renyi->add_option("--boundary", config.ce_boundary, "boundary size");
  renyi->add_option("--volume", config.ce_volume, "region volume");
  renyi->add_option("--epsilon", config.epsilons, "target error(s)");
  renyi->add_option("--out", config.out, "output CSV path");

  auto* density = app.add_subcommand("density-lemma",
                                     "continuous truncation bound by quadrature");
  density->add_option("--density", config.density, "normal | exponential");
  density->add_option("--delta", config.deltas, "level-set threshold(s)");
  density->add_option("--resolution", config.quad_resolution, "quadrature points");
  density->add_option("--out", config.out, "output CSV path");

  auto* runcmd = app.add_subcommand("run", "run from a config file or manifest");
  runcmd->add_option("--config", config_path, "JSON experiment config");
  runcmd->add_option("--from-manifest", manifest_path, "re-run a recorded manifest");
  runcmd->add_option("--out", config.out, "override the output CSV path");

  auto* validate_cmd = app.add_subcommand("validate", "static checks, no execution");
  validate_cmd->add_option("--config", config_path, "JSON experiment config")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate_cmd->parsed()) {
      ExperimentConfig c = ExperimentConfig::load(config_path);
      auto diagnostics = holocomp::validate(c);
      for (const auto& d : diagnostics)
        std::cout << d.severity << ": " << d.message << '\n';
      if (diagnostics.empty()) std::cout << "config ok\n";
      return 0;
    }
    if (runcmd->parsed()) {
      if (!manifest_path.empty()) {
        std::string out = runcmd->count("--out") ? config.out : "";
        return report(holocomp::run_from_manifest(manifest_path, out));
      }
      if (config_path.empty()) {
        std::cerr << "run needs --config or --from-manifest\n";
        return 2;
      }
      ExperimentConfig c = ExperimentConfig::load(config_path);
      if (runcmd->count("--out")) c.out = config.out;
      return report(holocomp::run(c));
    }

    if (lemma->parsed()) config.kind = "lemma-sweep";
    if (spin->parsed()) config.kind = "spin-compress";
    if (gauss->parsed()) config.kind = "gauss-compress";
    if (decay->parsed()) config.kind = "decay-fit";
    if (renyi->parsed()) config.kind = "renyi-counterexample";
    if (density->parsed()) config.kind = "density-lemma";
    if (!region_text.empty()) config.region = RegionSpec::parse(region_text);
    return report(holocomp::run(config));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
