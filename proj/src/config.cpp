#include "holocomp/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace holocomp {

using nlohmann::json;

Region RegionSpec::resolve(const Lattice& lattice) const {
  if (!sites.empty()) return Region(lattice, sites);
  if (!box_lo.empty()) return Region::box(lattice, box_lo, box_hi);
  if (index_range) return Region::range(lattice, index_range->first, index_range->second);
  throw std::domain_error("empty region specification");
}

RegionSpec RegionSpec::parse(const std::string& text) {
  RegionSpec spec;
  if (text.empty()) throw std::domain_error("empty region specification");
  auto parse_int_list = [](const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) throw std::domain_error("malformed integer list: " + s);
      std::size_t pos = 0;
      out.push_back(std::stoi(tok, &pos));
      if (pos != tok.size()) throw std::domain_error("malformed integer: " + tok);
    }
    return out;
  };
  if (text.rfind("box:", 0) == 0) {
    const std::string body = text.substr(4);
    const auto colon = body.find(':');
    if (colon == std::string::npos)
      throw std::domain_error("box region needs lo:hi corners, got " + text);
    spec.box_lo = parse_int_list(body.substr(0, colon));
    spec.box_hi = parse_int_list(body.substr(colon + 1));
    return spec;
  }
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    std::size_t pos = 0;
    const std::string lo_s = text.substr(0, dots), hi_s = text.substr(dots + 2);
    int lo = std::stoi(lo_s, &pos);
    if (pos != lo_s.size()) throw std::domain_error("malformed range: " + text);
    int hi = std::stoi(hi_s, &pos);
    if (pos != hi_s.size()) throw std::domain_error("malformed range: " + text);
    spec.index_range = {lo, hi};
    return spec;
  }
  spec.sites = parse_int_list(text);
  return spec;
}

std::string RegionSpec::describe() const {
  if (!sites.empty()) {
    std::string s = "sites[";
    for (std::size_t i = 0; i < sites.size(); ++i)
      s += (i ? "," : "") + std::to_string(sites[i]);
    return s + "]";
  }
  if (!box_lo.empty()) {
    std::string s = "box:";
    for (std::size_t i = 0; i < box_lo.size(); ++i)
      s += (i ? "," : "") + std::to_string(box_lo[i]);
    s += ":";
    for (std::size_t i = 0; i < box_hi.size(); ++i)
      s += (i ? "," : "") + std::to_string(box_hi[i]);
    return s;
  }
  if (index_range)
    return std::to_string(index_range->first) + ".." + std::to_string(index_range->second);
  return "(empty)";
}

namespace {

json region_to_json(const RegionSpec& spec) {
  json j;
  if (!spec.sites.empty()) {
    j["sites"] = spec.sites;
  } else if (!spec.box_lo.empty()) {
    j["lo"] = spec.box_lo;
    j["hi"] = spec.box_hi;
  } else if (spec.index_range) {
    j["first"] = spec.index_range->first;
    j["last"] = spec.index_range->second;
  }
  return j;
}

RegionSpec region_from_json(const json& j) {
  RegionSpec spec;
  if (j.contains("sites")) {
    spec.sites = j.at("sites").get<std::vector<int>>();
  } else if (j.contains("lo")) {
    spec.box_lo = j.at("lo").get<std::vector<int>>();
    spec.box_hi = j.at("hi").get<std::vector<int>>();
  } else if (j.contains("first")) {
    spec.index_range = {j.at("first").get<int>(), j.at("last").get<int>()};
  }
  return spec;
}

}  // namespace

std::string ExperimentConfig::to_json_string() const {
  json j;
  j["kind"] = kind;
  j["model"] = {{"name", model},   {"length", length}, {"field", field},
                {"coupling", coupling}, {"bc", bc},    {"grid_x", grid_x},
                {"grid_y", grid_y}, {"mass", mass},    {"kappa", kappa}};
  j["region"] = region_to_json(region);
  j["epsilons"] = epsilons;
  j["seed"] = seed;
  j["out"] = out;
  j["sweep"] = {{"trials", trials}, {"max_size", max_size}};
  j["counterexample"] = {{"d", ce_d}, {"k", ce_k}, {"boundary", ce_boundary},
                         {"volume", ce_volume}};
  j["density"] = {{"name", density}, {"deltas", deltas},
                  {"resolution", quad_resolution}};
  j["l_max"] = l_max;
  if (falsify_bounds) j["falsify_bounds"] = true;
  return j.dump(2);
}

ExperimentConfig ExperimentConfig::from_json_string(const std::string& text) {
  json j = json::parse(text);
  ExperimentConfig c;
  c.kind = j.at("kind").get<std::string>();
  if (j.contains("model")) {
    const auto& m = j["model"];
    if (m.contains("name")) c.model = m["name"].get<std::string>();
    if (m.contains("length")) c.length = m["length"].get<int>();
    if (m.contains("field")) c.field = m["field"].get<double>();
    if (m.contains("coupling")) c.coupling = m["coupling"].get<double>();
    if (m.contains("bc")) c.bc = m["bc"].get<std::string>();
    if (m.contains("grid_x")) c.grid_x = m["grid_x"].get<int>();
    if (m.contains("grid_y")) c.grid_y = m["grid_y"].get<int>();
    if (m.contains("mass")) c.mass = m["mass"].get<double>();
    if (m.contains("kappa")) c.kappa = m["kappa"].get<double>();
  }
  if (j.contains("region")) c.region = region_from_json(j["region"]);
  if (j.contains("epsilons")) c.epsilons = j["epsilons"].get<std::vector<double>>();
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("out")) c.out = j["out"].get<std::string>();
  if (j.contains("sweep")) {
    if (j["sweep"].contains("trials")) c.trials = j["sweep"]["trials"].get<int>();
    if (j["sweep"].contains("max_size")) c.max_size = j["sweep"]["max_size"].get<int>();
  }
  if (j.contains("counterexample")) {
    const auto& ce = j["counterexample"];
    if (ce.contains("d")) c.ce_d = ce["d"].get<int>();
    if (ce.contains("k")) c.ce_k = ce["k"].get<double>();
    if (ce.contains("boundary")) c.ce_boundary = ce["boundary"].get<int>();
    if (ce.contains("volume")) c.ce_volume = ce["volume"].get<int>();
  }
  if (j.contains("density")) {
    const auto& dj = j["density"];
    if (dj.contains("name")) c.density = dj["name"].get<std::string>();
    if (dj.contains("deltas")) c.deltas = dj["deltas"].get<std::vector<double>>();
    if (dj.contains("resolution")) c.quad_resolution = dj["resolution"].get<long long>();
  }
  if (j.contains("l_max")) c.l_max = j["l_max"].get<int>();
  if (j.contains("falsify_bounds")) c.falsify_bounds = j["falsify_bounds"].get<bool>();
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_string(ss.str());
}

void ExperimentConfig::save(const std::string& path) const {
  std::ofstream out_file(path);
  if (!out_file) throw std::runtime_error("cannot open " + path + " for writing");
  out_file << to_json_string() << '\n';
}

std::string ExperimentConfig::hash() const {
  // FNV-1a 64-bit over the canonical JSON form.
  const std::string text = to_json_string();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<Diagnostic> validate(const ExperimentConfig& c) {
  std::vector<Diagnostic> out;
  const std::vector<std::string> kinds = {"lemma-sweep",   "spin-compress",
                                          "gauss-compress", "renyi-counterexample",
                                          "decay-fit",     "density-lemma"};
  if (std::find(kinds.begin(), kinds.end(), c.kind) == kinds.end())
    out.push_back({"error", "unknown experiment kind: " + c.kind});

  if (c.kind == "spin-compress") {
    if (c.model != "tfim" && c.model != "heisenberg")
      out.push_back({"error", "unknown spin model: " + c.model});
    if (c.length > 24)
      out.push_back({"error", "capacity: spin chains are capped at 24 sites "
                              "(iterative path); dense oracles stop at 12"});
    else if (c.length > 14)
      out.push_back({"warning", "lengths above 14 are slow; fidelity pipelines "
                                "are sized for <= 14 sites"});
    if (c.region.empty()) out.push_back({"error", "spin-compress needs a region"});
    if (c.epsilons.empty()) out.push_back({"error", "no epsilon values given"});
    for (double e : c.epsilons)
      if (!(e > 0.0 && e < 1.0))
        out.push_back({"error", "epsilon must lie in (0,1)"});
    if (c.model == "tfim" && std::abs(std::abs(c.field) - std::abs(c.coupling)) < 1e-9)
      out.push_back({"warning", "|field| = |coupling| is the critical point; the "
                                "model is gapless there"});
  } else if (c.kind == "gauss-compress" || c.kind == "decay-fit") {
    if (c.mass == 0.0)
      out.push_back({"warning", "mass 0 is gapless: decay fits will be rejected"});
    if (c.mass < 0.0) out.push_back({"error", "mass must be non-negative"});
    if (c.kappa <= 0.0) out.push_back({"error", "kappa must be positive"});
    const int sites = c.grid_x > 0 ? c.grid_x * c.grid_y : c.length;
    if (sites > 400)
      out.push_back({"error", "capacity: harmonic lattices are capped at 400 sites"});
    if (c.kind == "gauss-compress" && c.region.empty())
      out.push_back({"error", "gauss-compress needs a region"});
    if (c.kind == "gauss-compress" && c.epsilons.empty())
      out.push_back({"error", "no epsilon values given"});
  } else if (c.kind == "renyi-counterexample") {
    if (c.ce_d < 2) out.push_back({"error", "counter-example needs d >= 2"});
    if (c.ce_volume * std::log2(static_cast<double>(c.ce_d)) > 62.0)
      out.push_back({"error", "capacity: d^volume exceeds the closed-form range"});
  } else if (c.kind == "lemma-sweep") {
    if (c.trials < 1) out.push_back({"error", "trials must be positive"});
    if (c.max_size < 2) out.push_back({"error", "max_size must be at least 2"});
  } else if (c.kind == "density-lemma") {
    if (c.density != "normal" && c.density != "exponential")
      out.push_back({"error", "unknown density: " + c.density});
    if (c.quad_resolution < 10)
      out.push_back({"error", "quadrature resolution too small"});
  }
  return out;
}

}  // namespace holocomp
