#pragma once

#include <vector>

#include "qf/errors.hpp"
#include "qf/linalg.hpp"

namespace qf {

// validated state: hermitian, unit trace, eigenvalues >= 0 up to tolerance
struct DensityMatrix {
  std::vector<int> dims;
  Matrix matrix;

  int dim() const { return dim_product(dims); }
};

// eigenvalues descending; eigenvector columns phase-fixed so the largest-modulus
// component of each column is real positive
struct SpectralDecomposition {
  RealVector eigenvalues;
  Matrix eigenvectors;
  // indices grouped by near-degeneracy, relative gap threshold
  std::vector<std::vector<int>> clusters;
};

struct SchmidtForm {
  RealVector coefficients;  // descending, squares sum to 1
  Matrix basis_a;           // columns
  Matrix basis_b;
};

struct ValidateOptions {
  double tol_hermitian = tol_herm;
  double tol_positive = tol_psd;
  double tol_trace = tol_tr;
};

// checks shape, hermiticity, positivity, trace; clips eigenvalues in
// (-tol_positive, 0) and renormalizes. the matrix is rebuilt from clipped
// eigenvalues only when clipping actually occurred.
DensityMatrix validate_density(const Matrix& m, const std::vector<int>& dims,
                               const ValidateOptions& opts = {});

// eigenvalues whose magnitude falls below tol_deg_rel times the spectral
// radius are snapped to exact zero; see the implementation note on why
SpectralDecomposition spectral_decompose(const Matrix& hermitian,
                                         double tol_deg_rel = tol_deg);

// keep must be strictly increasing subsystem indices; result trace equals
// input trace
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

// bipartite pure state, dims = {d_a, d_b}; psi row-major over (a, b)
SchmidtForm schmidt_decompose(const Vector& psi, const std::vector<int>& dims);

}  // namespace qf
