#pragma once

#include <string>
#include <vector>

namespace kantmfg {

/// One output row of a solve run.  `type_or_x` is the 0-based type index for
/// finite games and the grid coordinate for continuum games.
struct CsvRow {
  std::string scenario;  // scenario name plus ":curve" suffix
  double alpha = 0.0;
  double type_or_x = 0.0;
  double action = 0.0;
  double cost = 0.0;
  std::string solver;
  double residual = 0.0;
  long long iterations = 0;
};

/// Shortest round-trip-friendly decimal rendering (12 significant digits);
/// identical inputs give identical strings, keeping reruns byte-stable.
std::string format_g12(double value);

/// Renders header + rows with '\n' line endings.
std::string render_csv(const std::vector<CsvRow>& rows);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace kantmfg
