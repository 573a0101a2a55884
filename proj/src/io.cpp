#include "holocomp/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace holocomp {

using nlohmann::json;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) throw std::invalid_argument("CSV header row is mandatory");
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size())
    throw std::invalid_argument("CSV row width does not match the header");
  rows_.push_back(std::move(cells));
}

namespace {

std::string join_csv(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    const std::string& c = cells[i];
    if (c.find_first_of(",\"\n") != std::string::npos) {
      line += '"';
      for (char ch : c) {
        if (ch == '"') line += '"';
        line += ch;
      }
      line += '"';
    } else {
      line += c;
    }
  }
  return line;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  cells.push_back(std::move(cur));
  return cells;
}

}  // namespace

void CsvTable::write(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << join_csv(header_) << '\n';
  for (const auto& row : rows_) out << join_csv(row) << '\n';
}

CsvTable CsvTable::read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  CsvTable table(split_csv(line));
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    table.add_row(split_csv(line));
  }
  return table;
}

void save_probability_vector(const std::string& path, const ProbabilityVector& p) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "log_base " << format_double(p.log_base()) << '\n';
  for (double e : p.entries()) out << format_double(e) << '\n';
}

ProbabilityVector load_probability_vector(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string keyword;
  double base;
  if (!(in >> keyword >> base) || keyword != "log_base")
    throw std::runtime_error("missing log_base header in " + path);
  std::vector<double> entries;
  double v;
  while (in >> v) entries.push_back(v);
  return ProbabilityVector(std::move(entries), base);
}

namespace {

void write_raw(const std::string& path, const void* data, std::size_t bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(bytes));
}

std::vector<char> read_raw(const std::string& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw std::runtime_error("cannot open " + path);
  const std::streamsize size = in.tellg();
  in.seekg(0);
  std::vector<char> buf(static_cast<std::size_t>(size));
  in.read(buf.data(), size);
  return buf;
}

}  // namespace

void save_state_binary(const std::string& path, const PureState& state) {
  write_raw(path, state.amplitudes().data(),
            sizeof(Complex) * static_cast<std::size_t>(state.dim()));
  json side;
  side["dtype"] = "complex128";
  side["shape"] = {state.dim()};
  side["local_dim"] = state.local_dim();
  side["site_order"] = "row-major, site 0 most significant";
  side["lattice"] = {{"extents", state.lattice().extents()},
                     {"boundary", [&] {
                        std::vector<std::string> bcs;
                        for (auto bc : state.lattice().boundary_conditions())
                          bcs.push_back(to_string(bc));
                        return bcs;
                      }()}};
  std::ofstream out(path + ".json");
  out << side.dump(2) << '\n';
}

PureState load_state_binary(const std::string& path) {
  std::ifstream side_in(path + ".json");
  if (!side_in) throw std::runtime_error("missing sidecar " + path + ".json");
  json side = json::parse(side_in);
  const int d = side.at("local_dim").get<int>();
  std::vector<int> extents = side.at("lattice").at("extents").get<std::vector<int>>();
  std::vector<BoundaryCondition> bcs;
  for (const auto& s : side.at("lattice").at("boundary"))
    bcs.push_back(boundary_condition_from_string(s.get<std::string>()));
  Lattice lat(extents, bcs);
  auto raw = read_raw(path);
  const long long n = static_cast<long long>(raw.size() / sizeof(Complex));
  VectorXc amps(n);
  std::memcpy(amps.data(), raw.data(), raw.size());
  return PureState(std::move(lat), d, std::move(amps));
}

void save_matrix_binary(const std::string& path, const MatrixXc& m,
                        const std::string& kind) {
  write_raw(path, m.data(), sizeof(Complex) * static_cast<std::size_t>(m.size()));
  json side;
  side["dtype"] = "complex128";
  side["shape"] = {m.rows(), m.cols()};
  side["layout"] = "column-major";
  side["kind"] = kind;
  std::ofstream out(path + ".json");
  out << side.dump(2) << '\n';
}

MatrixXc load_matrix_binary(const std::string& path) {
  std::ifstream side_in(path + ".json");
  if (!side_in) throw std::runtime_error("missing sidecar " + path + ".json");
  json side = json::parse(side_in);
  const auto shape = side.at("shape").get<std::vector<long long>>();
  auto raw = read_raw(path);
  MatrixXc m(shape.at(0), shape.at(1));
  if (static_cast<std::size_t>(m.size()) * sizeof(Complex) != raw.size())
    throw std::runtime_error("binary payload size mismatch for " + path);
  std::memcpy(m.data(), raw.data(), raw.size());
  return m;
}

}  // namespace holocomp
