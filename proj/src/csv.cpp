#include "kantmfg/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kantmfg {

std::string format_g12(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

std::string render_csv(const std::vector<CsvRow>& rows) {
  std::string out = "scenario,alpha,type_or_x,action,cost,solver,residual,iterations\n";
  for (const CsvRow& row : rows) {
    out += row.scenario;
    out += ',';
    out += format_g12(row.alpha);
    out += ',';
    out += format_g12(row.type_or_x);
    out += ',';
    out += format_g12(row.action);
    out += ',';
    out += format_g12(row.cost);
    out += ',';
    out += row.solver;
    out += ',';
    out += format_g12(row.residual);
    out += ',';
    out += std::to_string(row.iterations);
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open for writing: " + path);
  file << content;
  if (!file) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

}  // namespace kantmfg
