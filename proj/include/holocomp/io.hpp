#ifndef HOLOCOMP_IO_HPP
#define HOLOCOMP_IO_HPP

#include <string>
#include <vector>

#include "holocomp/probability.hpp"
#include "holocomp/spin_state.hpp"

namespace holocomp {

/// Floats are serialized with 17 significant digits so CSV round-trips are
/// exact for doubles.
std::string format_double(double x);

/// Minimal RFC-4180-style CSV: mandatory header row, one record per line.
class CsvTable {
public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  std::size_t rows() const { return rows_.size(); }
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& data() const { return rows_; }

  void write(const std::string& path) const;
  static CsvTable read(const std::string& path);

private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Plain-text probability vector: "log_base <b>" header line, one entry per
/// line at full precision.
void save_probability_vector(const std::string& path, const ProbabilityVector& p);
ProbabilityVector load_probability_vector(const std::string& path);

/// Raw little-endian complex128 array with a JSON sidecar (<path>.json)
/// recording shape, local dimension and site ordering.
void save_state_binary(const std::string& path, const PureState& state);
PureState load_state_binary(const std::string& path);

void save_matrix_binary(const std::string& path, const MatrixXc& m,
                        const std::string& kind);
MatrixXc load_matrix_binary(const std::string& path);

}  // namespace holocomp

#endif
