#include "qf/correlations.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace qf {

namespace {

void require_square_match(const Matrix& m, Eigen::Index d, const char* what) {
  if (m.rows() != m.cols() || m.rows() != d)
    throw DimensionMismatch(fmt::format("{} is {}x{}, state dimension is {}", what,
                                        m.rows(), m.cols(), d));
}

// observables expressed in the eigenbasis of the state
Matrix to_eigenbasis(const SpectralDecomposition& dec, const Matrix& m) {
  return dec.eigenvectors.adjoint() * m * dec.eigenvectors;
}

double masi_from_table(const WeightTable& table, const Matrix& obs_tilde) {
  int n = static_cast<int>(table.eigenvalues.size());
  double acc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      acc += 2.0 * table.g(i, j) * std::norm(obs_tilde(i, j));
  return acc;
}

double correlation_from_table(const WeightTable& table, const Matrix& a_tilde,
                              const Matrix& b_tilde) {
  int n = static_cast<int>(table.eigenvalues.size());
  double acc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      acc += 2.0 * table.g(i, j) *
             (a_tilde(i, j) * std::conj(b_tilde(i, j))).real();
  return acc;
}

}  // namespace

Observable make_observable(const Matrix& m, double tol) {
  if (m.rows() != m.cols())
    throw DimensionMismatch(fmt::format("observable is {}x{}", m.rows(), m.cols()));
  double hd = herm_defect(m);
  if (hd > tol)
    throw NonHermitian(fmt::format("hermiticity defect {:.3e} exceeds {:.1e}", hd, tol));
  return Observable{hermitize(m), std::nullopt};
}

Observable make_observable(const Matrix& m, const RealVector& spectrum, double tol) {
  Observable obs = make_observable(m, tol);
  if (spectrum.size() != m.rows())
    throw DimensionMismatch(fmt::format("declared spectrum has {} values for a {}x{} matrix",
                                        spectrum.size(), m.rows(), m.cols()));
  Eigen::SelfAdjointEigenSolver<Matrix> es(obs.matrix, Eigen::EigenvaluesOnly);
  RealVector actual = es.eigenvalues();
  RealVector declared = spectrum;
  std::sort(actual.begin(), actual.end());
  std::sort(declared.begin(), declared.end());
  double radius = std::max(actual.cwiseAbs().maxCoeff(), declared.cwiseAbs().maxCoeff());
  double gap = tol_deg * std::max(1.0, radius);
  for (int i = 0; i < actual.size(); ++i)
    if (std::abs(actual[i] - declared[i]) > gap)
      throw DimensionMismatch(
          fmt::format("declared spectrum value {:.12g} vs actual {:.12g}", declared[i],
                      actual[i]));
  obs.declared_spectrum = spectrum;
  return obs;
}

double covariance(const DensityMatrix& rho, const Observable& a, const Observable& b) {
  Eigen::Index d = rho.matrix.rows();
  require_square_match(a.matrix, d, "observable a");
  require_square_match(b.matrix, d, "observable b");
  cx sym = (rho.matrix * (a.matrix * b.matrix + b.matrix * a.matrix)).trace();
  cx ma = (rho.matrix * a.matrix).trace();
  cx mb = (rho.matrix * b.matrix).trace();
  return 0.5 * sym.real() - ma.real() * mb.real();
}

double variance(const DensityMatrix& rho, const Observable& a) {
  return covariance(rho, a, a);
}

double masi(const SpectralDecomposition& dec, const Observable& obs, const FOpSpec& f) {
  require_square_match(obs.matrix, dec.eigenvectors.rows(), "observable");
  WeightTable table = build_weight_table(f, dec.eigenvalues);
  return masi_from_table(table, to_eigenbasis(dec, obs.matrix));
}

double masi(const DensityMatrix& rho, const Observable& obs, const FOpSpec& f) {
  return masi(spectral_decompose(rho.matrix), obs, f);
}

double f_covariance(const SpectralDecomposition& dec, const Observable& a,
                    const Observable& b, const FOpSpec& f) {
  Eigen::Index d = dec.eigenvectors.rows();
  require_square_match(a.matrix, d, "observable a");
  require_square_match(b.matrix, d, "observable b");
  WeightTable table = build_weight_table(f, dec.eigenvalues);
  Matrix at = to_eigenbasis(dec, a.matrix);
  Matrix bt = to_eigenbasis(dec, b.matrix);
  int n = static_cast<int>(d);
  double mean_a = 0.0, mean_b = 0.0;
  for (int i = 0; i < n; ++i) {
    mean_a += dec.eigenvalues[i] * at(i, i).real();
    mean_b += dec.eigenvalues[i] * bt(i, i).real();
  }
  double acc = 0.0;
  for (int i = 0; i < n; ++i)
    acc += table.tilde_mean(i, i) * (at(i, i).real() - mean_a) * (bt(i, i).real() - mean_b);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      acc += 2.0 * table.tilde_mean(i, j) * (at(i, j) * std::conj(bt(i, j))).real();
  return acc;
}

double f_covariance(const DensityMatrix& rho, const Observable& a, const Observable& b,
                    const FOpSpec& f) {
  return f_covariance(spectral_decompose(rho.matrix), a, b, f);
}

double f_correlation(const SpectralDecomposition& dec, const Observable& a,
                     const Observable& b, const FOpSpec& f) {
  Eigen::Index d = dec.eigenvectors.rows();
  require_square_match(a.matrix, d, "observable a");
  require_square_match(b.matrix, d, "observable b");
  WeightTable table = build_weight_table(f, dec.eigenvalues);
  return correlation_from_table(table, to_eigenbasis(dec, a.matrix),
                                to_eigenbasis(dec, b.matrix));
}

double f_correlation(const DensityMatrix& rho, const Observable& a, const Observable& b,
                     const FOpSpec& f) {
  return f_correlation(spectral_decompose(rho.matrix), a, b, f);
}

double nonadditivity_gap(const DensityMatrix& rho, const Observable& a_embedded,
                         const Observable& b_embedded, const FOpSpec& f) {
  SpectralDecomposition dec = spectral_decompose(rho.matrix);
  Observable sum{a_embedded.matrix + b_embedded.matrix, std::nullopt};
  return masi(dec, sum, f) - masi(dec, a_embedded, f) - masi(dec, b_embedded, f) -
         2.0 * f_correlation(dec, a_embedded, b_embedded, f);
}

CorrelationMatrix pauli_correlation_matrix(const SpectralDecomposition& dec,
                                           const std::vector<int>& dims,
                                           const FOpSpec& f) {
  if (dims.size() < 2 || dims[0] != 2 || dims[1] != 2)
    throw DimensionMismatch("first two subsystems must be qubits");
  Eigen::Index d = dim_product(dims);
  if (dec.eigenvectors.rows() != d)
    throw DimensionMismatch(fmt::format("decomposition dimension {} vs dims product {}",
                                        dec.eigenvectors.rows(), d));
  WeightTable table = build_weight_table(f, dec.eigenvalues);
  std::array<Matrix, 3> at, bt;
  for (int k = 0; k < 3; ++k) {
    at[k] = to_eigenbasis(dec, embed_local(paulis()[k], dims, 0));
    bt[k] = to_eigenbasis(dec, embed_local(paulis()[k], dims, 1));
  }
  CorrelationMatrix out;
  out.entries = RealMatrix(3, 3);
  out.f_name = f.name();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      out.entries(i, j) = correlation_from_table(table, at[i], bt[j]);
  return out;
}

CorrelationMatrix pauli_correlation_matrix(const DensityMatrix& rho, const FOpSpec& f) {
  return pauli_correlation_matrix(spectral_decompose(rho.matrix), rho.dims, f);
}

CorrelationMatrix correlation_matrix(const DensityMatrix& rho, const FOpSpec& f) {
  if (rho.dims != std::vector<int>{2, 2})
    throw DimensionMismatch("correlation matrix is defined for two qubits");
  return pauli_correlation_matrix(rho, f);
}

}  // namespace qf
