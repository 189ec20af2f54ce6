#include "qf/thermal.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>

namespace qf {

namespace {

// logarithmic mean (x - y)/(log x - log y) for positive arguments, with the
// stable atanh form near the diagonal
double log_mean(double x, double y) {
  if (x == y) return x;
  double m = 0.5 * (x + y);
  double r = (x - y) / (x + y);
  if (std::abs(r) < 1e-4) return m * (1.0 - r * r / 3.0);
  return m * r / std::atanh(r);
}

}  // namespace

std::vector<int> chain_dims(int sites) { return std::vector<int>(sites, 2); }

Matrix tfi_hamiltonian(const SpinChainSpec& spec) {
  if (spec.sites < 1 || spec.sites > 8)
    throw DimensionMismatch(fmt::format("chain length {} outside [1, 8]", spec.sites));
  std::vector<int> dims = chain_dims(spec.sites);
  int d = dim_product(dims);
  Matrix h = Matrix::Zero(d, d);
  for (int i = 0; i + 1 < spec.sites; ++i)
    h -= spec.coupling * (embed_local(pauli_z(), dims, i) *
                          embed_local(pauli_z(), dims, i + 1));
  for (int i = 0; i < spec.sites; ++i)
    h -= spec.field * embed_local(pauli_x(), dims, i);
  return h;
}

GibbsModel gibbs(const Matrix& h, double temperature, const std::vector<int>& dims) {
  if (!(temperature > 0.0))
    throw DomainError(fmt::format("temperature {} must be positive", temperature));
  int d = dim_product(dims);
  if (h.rows() != h.cols() || h.rows() != d)
    throw DimensionMismatch(fmt::format("hamiltonian is {}x{}, dims give {}", h.rows(),
                                        h.cols(), d));
  double hd = herm_defect(h);
  if (hd > tol_herm)
    throw NonHermitian(fmt::format("hermiticity defect {:.3e} exceeds {:.1e}", hd,
                                   tol_herm));

  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(h));  // energies ascending
  RealVector energies = es.eigenvalues();
  double e0 = energies[0];
  RealVector weights(d);
  double z_shifted = 0.0;
  for (int k = 0; k < d; ++k) {
    weights[k] = std::exp(-(energies[k] - e0) / temperature);
    z_shifted += weights[k];
  }
  weights /= z_shifted;

  GibbsModel model;
  model.hamiltonian = hermitize(h);
  model.temperature = temperature;
  model.log_partition = std::log(z_shifted) - e0 / temperature;

  // boltzmann weights descend as energies ascend, so the eigenvector order
  // already matches the descending-eigenvalue convention
  model.decomposition.eigenvalues = weights;
  model.decomposition.eigenvectors = es.eigenvectors();
  {
    // same phase convention as spectral_decompose
    Matrix& vecs = model.decomposition.eigenvectors;
    for (int c = 0; c < vecs.cols(); ++c) {
      int best = 0;
      double best_mod = -1.0;
      for (int r = 0; r < vecs.rows(); ++r) {
        double m = std::abs(vecs(r, c));
        if (m > best_mod) {
          best_mod = m;
          best = r;
        }
      }
      if (best_mod > 0.0) vecs.col(c) *= std::conj(vecs(best, c)) / best_mod;
    }
    double radius = weights.cwiseAbs().maxCoeff();
    double gap = tol_deg * radius;
    auto& clusters = model.decomposition.clusters;
    clusters.push_back({0});
    for (int i = 1; i < d; ++i) {
      if (std::abs(weights[i - 1] - weights[i]) <= gap)
        clusters.back().push_back(i);
      else
        clusters.push_back({i});
    }
  }

  Matrix rho = model.decomposition.eigenvectors * weights.asDiagonal() *
               model.decomposition.eigenvectors.adjoint();
  model.state = DensityMatrix{dims, hermitize(rho)};
  return model;
}

double quantum_variance(const GibbsModel& model, const Observable& obs,
                        VarianceRoute route) {
  if (route == VarianceRoute::closed_form)
    return masi(model.decomposition, obs, FOpSpec::qvar());
  RealVector nodes, weights;
  gauss_legendre(32, nodes, weights);
  double acc = 0.0;
  for (int k = 0; k < nodes.size(); ++k)
    acc += weights[k] * masi(model.decomposition, obs, FOpSpec::wyd(nodes[k]));
  return acc;
}

double quantum_variance(const DensityMatrix& rho, const Observable& obs,
                        VarianceRoute route) {
  SpectralDecomposition dec = spectral_decompose(rho.matrix);
  if (route == VarianceRoute::closed_form) return masi(dec, obs, FOpSpec::qvar());
  RealVector nodes, weights;
  gauss_legendre(32, nodes, weights);
  double acc = 0.0;
  for (int k = 0; k < nodes.size(); ++k)
    acc += weights[k] * masi(dec, obs, FOpSpec::wyd(nodes[k]));
  return acc;
}

double default_fd_delta(const Observable& b) {
  return 1e-4 * std::max(1.0, opnorm(b.matrix));
}

double susceptibility_fd(const Matrix& h, double temperature, const Observable& a,
                         const Observable& b, double delta) {
  if (h.rows() != a.matrix.rows() || h.rows() != b.matrix.rows())
    throw DimensionMismatch("hamiltonian and observables must share one dimension");
  if (delta <= 0.0) delta = default_fd_delta(b);
  std::vector<int> dims = {static_cast<int>(h.rows())};
  // h(x) = h - x b, central difference of <a> at x = 0
  GibbsModel plus = gibbs(h - delta * b.matrix, temperature, dims);
  GibbsModel minus = gibbs(h + delta * b.matrix, temperature, dims);
  double ap = (plus.state.matrix * a.matrix).trace().real();
  double am = (minus.state.matrix * a.matrix).trace().real();
  return (ap - am) / (2.0 * delta);
}

double kubo_mori_cov(const DensityMatrix& rho, const Observable& a, const Observable& b,
                     bool* rank_warning) {
  SpectralDecomposition dec = spectral_decompose(rho.matrix);
  GibbsModel carrier;
  carrier.decomposition = std::move(dec);
  if (rank_warning)
    *rank_warning = carrier.decomposition.eigenvalues.minCoeff() < 1e-12;
  return kubo_mori_cov(carrier, a, b);
}

double kubo_mori_cov(const GibbsModel& model, const Observable& a, const Observable& b) {
  const SpectralDecomposition& dec = model.decomposition;
  Eigen::Index d = dec.eigenvectors.rows();
  if (a.matrix.rows() != d || b.matrix.rows() != d)
    throw DimensionMismatch("observable dimension does not match the state");
  Matrix at = dec.eigenvectors.adjoint() * a.matrix * dec.eigenvectors;
  Matrix bt = dec.eigenvectors.adjoint() * b.matrix * dec.eigenvectors;
  int n = static_cast<int>(d);
  double mean_a = 0.0, mean_b = 0.0;
  for (int i = 0; i < n; ++i) {
    mean_a += dec.eigenvalues[i] * at(i, i).real();
    mean_b += dec.eigenvalues[i] * bt(i, i).real();
  }
  // only non-positive weights are lifted; genuine tiny positive ones carry
  // real information through the log
  auto safe = [](double p) { return p > 0.0 ? p : 1e-300; };
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    double ai = at(i, i).real() - mean_a;
    double bi = bt(i, i).real() - mean_b;
    acc += safe(dec.eigenvalues[i]) * ai * bi;
    for (int j = i + 1; j < n; ++j) {
      double ker = log_mean(safe(dec.eigenvalues[i]), safe(dec.eigenvalues[j]));
      acc += 2.0 * ker * (at(i, j) * std::conj(bt(i, j))).real();
    }
  }
  return acc;
}

double thermo_f_correlation(const Matrix& h, double temperature, const Observable& a,
                            const Observable& b, const std::vector<int>& dims,
                            double delta) {
  GibbsModel model = gibbs(h, temperature, dims);
  double cov = covariance(model.state, a, b);
  double chi = susceptibility_fd(h, temperature, a, b, delta);
  return cov - temperature * chi;
}

void gauss_legendre(int n, RealVector& nodes, RealVector& weights) {
  if (n < 1) throw DomainError(fmt::format("node count {} < 1", n));
  nodes.resize(n);
  weights.resize(n);
  // newton iteration on legendre roots in (-1, 1), then affine map to (0, 1)
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[n - 1 - i] = 0.5 * (1.0 + x);
    weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * pp * pp);
  }
}

}  // namespace qf
