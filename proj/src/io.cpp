#include "qf/io.hpp"

#include <fmt/format.h>

#include <filesystem>
#include <fstream>

namespace qf {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json matrix_to_json(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (int r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < m.cols(); ++c)
      row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw ParseFailure("matrix must be a non-empty array of rows");
  int rows = static_cast<int>(j.size());
  int cols = static_cast<int>(j[0].size());
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(j[r].size()) != cols)
      throw ParseFailure(fmt::format("row {} has {} entries, expected {}", r,
                                     j[r].size(), cols));
    for (int c = 0; c < cols; ++c) {
      const json& cell = j[r][c];
      if (!cell.is_array() || cell.size() != 2)
        throw ParseFailure(fmt::format("entry ({}, {}) is not an [re, im] pair", r, c));
      m(r, c) = cx(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  return m;
}

namespace {

json read_json_file(const std::string& path) {
  if (!std::filesystem::exists(path))
    throw FileNotFound(fmt::format("no such file: {}", path));
  std::ifstream in(path);
  if (!in) throw FileNotFound(fmt::format("cannot open: {}", path));
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseFailure(fmt::format("{}: {}", path, e.what()));
  }
}

}  // namespace

DensityMatrix load_state(const std::string& path) {
  json j = read_json_file(path);
  if (!j.contains("matrix"))
    throw ParseFailure(fmt::format("{}: missing 'matrix' key", path));
  Matrix m = matrix_from_json(j["matrix"]);
  std::vector<int> dims;
  if (j.contains("dims"))
    dims = j["dims"].get<std::vector<int>>();
  else
    dims = {static_cast<int>(m.rows())};
  return validate_density(m, dims);
}

void save_state(const std::string& path, const DensityMatrix& rho) {
  ordered_json j;
  j["dims"] = rho.dims;
  j["matrix"] = matrix_to_json(rho.matrix);
  std::ofstream out(path);
  if (!out) throw FileNotFound(fmt::format("cannot write: {}", path));
  out << j.dump(2) << "\n";
}

Observable load_observable(const std::string& path) {
  json j = read_json_file(path);
  if (!j.contains("matrix"))
    throw ParseFailure(fmt::format("{}: missing 'matrix' key", path));
  return make_observable(matrix_from_json(j["matrix"]));
}

std::string config_digest(const ordered_json& config) {
  std::string canonical = config.dump();
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return fmt::format("{:016x}", h);
}

}  // namespace qf
