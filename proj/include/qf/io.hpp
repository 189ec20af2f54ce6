#pragma once

#include <string>

#include "json.hpp"
#include "qf/correlations.hpp"

namespace qf {

// state file layout:
//   {"dims": [2, 2], "matrix": [[[re, im], ...], ...]}   row-major
// matrices without tensor structure drop the "dims" key

nlohmann::ordered_json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

// reads and validates; throws FileNotFound / ParseFailure / validation errors
DensityMatrix load_state(const std::string& path);
void save_state(const std::string& path, const DensityMatrix& rho);

// hermitian operator file, same matrix layout
Observable load_observable(const std::string& path);

// fnv-1a over the canonical serialization, hex string; stamped into cli
// reports so reruns are comparable
std::string config_digest(const nlohmann::ordered_json& config);

}  // namespace qf
