#pragma once

#include <optional>

#include "qf/density.hpp"
#include "qf/fops.hpp"

namespace qf {

struct Observable {
  Matrix matrix;
  std::optional<RealVector> declared_spectrum;
};

// hermiticity-checked constructor; the overload with a declared spectrum also
// verifies it matches the actual eigenvalues as a multiset
Observable make_observable(const Matrix& m, double tol = tol_herm);
Observable make_observable(const Matrix& m, const RealVector& spectrum,
                           double tol = tol_herm);

// symmetrized covariance <{A,B}>/2 - <A><B>, evaluated by direct traces
double covariance(const DensityMatrix& rho, const Observable& a, const Observable& b);
double variance(const DensityMatrix& rho, const Observable& a);

// metric-adjusted skew information sum over eigenpairs of rho
double masi(const DensityMatrix& rho, const Observable& obs, const FOpSpec& f);
double masi(const SpectralDecomposition& dec, const Observable& obs, const FOpSpec& f);

// dual-function covariance (the subtracted part of the correlation split)
double f_covariance(const DensityMatrix& rho, const Observable& a,
                    const Observable& b, const FOpSpec& f);
double f_covariance(const SpectralDecomposition& dec, const Observable& a,
                    const Observable& b, const FOpSpec& f);

// metric-adjusted correlation Upsilon^f; real by construction
double f_correlation(const DensityMatrix& rho, const Observable& a,
                     const Observable& b, const FOpSpec& f);
double f_correlation(const SpectralDecomposition& dec, const Observable& a,
                     const Observable& b, const FOpSpec& f);

// masi(a + b) - masi(a) - masi(b) - 2 Upsilon(a, b); identically zero when a
// and b act on disjoint subsystems (pass them already embedded)
double nonadditivity_gap(const DensityMatrix& rho, const Observable& a_embedded,
                         const Observable& b_embedded, const FOpSpec& f);

struct CorrelationMatrix {
  RealMatrix entries;  // 3x3, entries(i, j) = Upsilon(sigma_i on A, sigma_j on B)
  std::string f_name;
};

// requires dims == {2, 2}
CorrelationMatrix correlation_matrix(const DensityMatrix& rho, const FOpSpec& f);

// same pauli-pauli matrix on a state whose first two subsystems are qubits;
// extra subsystems are allowed and untouched
CorrelationMatrix pauli_correlation_matrix(const DensityMatrix& rho, const FOpSpec& f);
CorrelationMatrix pauli_correlation_matrix(const SpectralDecomposition& dec,
                                           const std::vector<int>& dims,
                                           const FOpSpec& f);

}  // namespace qf
