#include "qf/density.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace qf {

namespace {

// rotate each column so its largest-modulus entry is real positive; makes the
// eigenbasis deterministic up to degeneracies
void fix_phases(Matrix& vectors) {
  for (int c = 0; c < vectors.cols(); ++c) {
    int best = 0;
    double best_mod = -1.0;
    for (int r = 0; r < vectors.rows(); ++r) {
      double m = std::abs(vectors(r, c));
      if (m > best_mod) {
        best_mod = m;
        best = r;
      }
    }
    if (best_mod > 0.0) {
      cx phase = std::conj(vectors(best, c)) / best_mod;
      vectors.col(c) *= phase;
    }
  }
}

std::vector<std::vector<int>> cluster_descending(const RealVector& vals,
                                                 double tol_deg_rel) {
  std::vector<std::vector<int>> clusters;
  if (vals.size() == 0) return clusters;
  double radius = vals.cwiseAbs().maxCoeff();
  double gap = tol_deg_rel * radius;
  clusters.push_back({0});
  for (int i = 1; i < vals.size(); ++i) {
    if (std::abs(vals[i - 1] - vals[i]) <= gap)
      clusters.back().push_back(i);
    else
      clusters.push_back({i});
  }
  return clusters;
}

}  // namespace

DensityMatrix validate_density(const Matrix& m, const std::vector<int>& dims,
                               const ValidateOptions& opts) {
  int d = dim_product(dims);
  if (dims.empty()) throw DimensionMismatch("empty dimension list");
  if (m.rows() != m.cols() || m.rows() != d)
    throw DimensionMismatch(fmt::format("matrix is {}x{}, dims give {}", m.rows(),
                                        m.cols(), d));
  double hd = herm_defect(m);
  if (hd > opts.tol_hermitian)
    throw NonHermitian(fmt::format("hermiticity defect {:.3e} exceeds {:.1e}", hd,
                                   opts.tol_hermitian));
  Matrix h = hermitize(m);
  double tr = h.trace().real();
  if (std::abs(tr - 1.0) > opts.tol_trace)
    throw TraceMismatch(fmt::format("trace {:.12f} differs from 1 by more than {:.1e}",
                                    tr, opts.tol_trace));

  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -opts.tol_positive)
    throw NonPositive(fmt::format("smallest eigenvalue {:.3e} below -{:.1e}", min_eig,
                                  opts.tol_positive));

  if (min_eig < 0.0) {
    // clip the tolerated negatives and rebuild; otherwise keep the input
    // matrix untouched so tiny genuine eigenvalues stay relatively accurate
    RealVector clipped = es.eigenvalues().cwiseMax(0.0);
    h = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint();
    h = hermitize(h);
    tr = h.trace().real();
  }
  h /= tr;
  return DensityMatrix{dims, std::move(h)};
}

SpectralDecomposition spectral_decompose(const Matrix& hermitian, double tol_deg_rel) {
  if (hermitian.rows() != hermitian.cols())
    throw DimensionMismatch(fmt::format("matrix is {}x{}", hermitian.rows(),
                                        hermitian.cols()));
  double hd = herm_defect(hermitian);
  if (hd > tol_herm)
    throw NonHermitian(fmt::format("hermiticity defect {:.3e} exceeds {:.1e}", hd,
                                   tol_herm));
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(hermitian));

  int n = static_cast<int>(hermitian.rows());
  SpectralDecomposition dec;
  dec.eigenvalues = es.eigenvalues().reverse();
  dec.eigenvectors = es.eigenvectors().rowwise().reverse();
  // eigenvalues below the noise floor become exact zeros. the weight
  // functions approach their zero limits slowly (logarithmically for the
  // variance family, like eps^alpha for wyd), so +-1e-16 leftovers from a
  // rank-deficient input would shift correlation values by percents, not
  // ulps. decompositions assembled analytically (gibbs weights, dilations)
  // never pass through here and keep genuine sub-noise eigenvalues.
  double radius = dec.eigenvalues.cwiseAbs().maxCoeff();
  for (int i = 0; i < n; ++i)
    if (std::abs(dec.eigenvalues[i]) <= tol_deg_rel * radius) dec.eigenvalues[i] = 0.0;
  fix_phases(dec.eigenvectors);
  dec.clusters = cluster_descending(dec.eigenvalues, tol_deg_rel);
  return dec;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  const auto& dims = rho.dims;
  int n = static_cast<int>(dims.size());
  if (keep.empty()) throw DimensionMismatch("keep list is empty");
  for (size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= n)
      throw DimensionMismatch(fmt::format("keep index {} out of range", keep[i]));
    if (i > 0 && keep[i] <= keep[i - 1])
      throw DimensionMismatch("keep indices must be strictly increasing");
  }

  std::vector<int> traced;
  for (int s = 0; s < n; ++s)
    if (std::find(keep.begin(), keep.end(), s) == keep.end()) traced.push_back(s);

  // strides of each subsystem in the flat row-major index
  std::vector<int> stride(n, 1);
  for (int s = n - 2; s >= 0; --s) stride[s] = stride[s + 1] * dims[s + 1];

  std::vector<int> kept_dims;
  int dk = 1, dt = 1;
  for (int s : keep) {
    kept_dims.push_back(dims[s]);
    dk *= dims[s];
  }
  for (int s : traced) dt *= dims[s];

  auto flat_index = [&](int kept_flat, int traced_flat) {
    int idx = 0;
    for (int i = static_cast<int>(keep.size()) - 1; i >= 0; --i) {
      int s = keep[i];
      idx += (kept_flat % dims[s]) * stride[s];
      kept_flat /= dims[s];
    }
    for (int i = static_cast<int>(traced.size()) - 1; i >= 0; --i) {
      int s = traced[i];
      idx += (traced_flat % dims[s]) * stride[s];
      traced_flat /= dims[s];
    }
    return idx;
  };

  Matrix out = Matrix::Zero(dk, dk);
  for (int r = 0; r < dk; ++r)
    for (int c = 0; c < dk; ++c) {
      cx acc = 0.0;
      for (int t = 0; t < dt; ++t)
        acc += rho.matrix(flat_index(r, t), flat_index(c, t));
      out(r, c) = acc;
    }
  return DensityMatrix{std::move(kept_dims), std::move(out)};
}

SchmidtForm schmidt_decompose(const Vector& psi, const std::vector<int>& dims) {
  if (dims.size() != 2)
    throw DimensionMismatch(fmt::format("schmidt form needs 2 subsystems, got {}",
                                        dims.size()));
  int da = dims[0], db = dims[1];
  if (psi.size() != static_cast<Eigen::Index>(da) * db)
    throw DimensionMismatch(fmt::format("vector length {} does not match {}x{}",
                                        psi.size(), da, db));
  double norm = psi.norm();
  if (std::abs(norm - 1.0) > tol_tr)
    throw NotNormalized(fmt::format("norm {:.12f} differs from 1", norm));

  Matrix amp(da, db);
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b) amp(a, b) = psi[a * db + b];

  Eigen::JacobiSVD<Matrix> svd(amp, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtForm out;
  out.coefficients = svd.singularValues();
  out.basis_a = svd.matrixU();
  out.basis_b = svd.matrixV().conjugate();

  // psi = sum_k c_k a_k (x) b_k; fix the pairwise phase freedom on side a and
  // push the conjugate phase to side b
  for (int k = 0; k < out.basis_a.cols(); ++k) {
    int best = 0;
    double best_mod = -1.0;
    for (int r = 0; r < out.basis_a.rows(); ++r) {
      double m = std::abs(out.basis_a(r, k));
      if (m > best_mod) {
        best_mod = m;
        best = r;
      }
    }
    if (best_mod > 0.0) {
      cx phase = std::conj(out.basis_a(best, k)) / best_mod;
      out.basis_a.col(k) *= phase;
      out.basis_b.col(k) *= std::conj(phase);
    }
  }
  return out;
}

}  // namespace qf
