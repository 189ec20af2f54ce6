#pragma once

#include "qf/correlations.hpp"

namespace qf {

// gibbs state exp(-h/t)/z. the decomposition is built from the eigensystem of
// h itself (boltzmann weights computed in shifted log space), so eigenvalues
// far below machine epsilon stay relatively accurate; re-diagonalizing the
// assembled matrix would destroy them.
struct GibbsModel {
  Matrix hamiltonian;
  double temperature = 1.0;
  double log_partition = 0.0;  // log tr exp(-h/t)
  DensityMatrix state;
  SpectralDecomposition decomposition;
};

GibbsModel gibbs(const Matrix& h, double temperature, const std::vector<int>& dims);

// open transverse-field ising chain
//   h = -coupling * sum_i z_i z_{i+1} - field * sum_i x_i
struct SpinChainSpec {
  int sites = 2;
  double coupling = 1.0;
  double field = 1.0;
};

Matrix tfi_hamiltonian(const SpinChainSpec& spec);
std::vector<int> chain_dims(int sites);

enum class VarianceRoute { closed_form, quadrature };

// quantum variance = masi with the qvar function; the quadrature route
// integrates the wyd family over alpha with 32-node gauss-legendre
double quantum_variance(const DensityMatrix& rho, const Observable& obs,
                        VarianceRoute route = VarianceRoute::closed_form);
double quantum_variance(const GibbsModel& model, const Observable& obs,
                        VarianceRoute route = VarianceRoute::closed_form);

// d<a>/d(h_b) at h_b = 0 for h(h_b) = h - h_b b, central difference.
// delta <= 0 selects the default step 1e-4 * max(1, opnorm(b))
double susceptibility_fd(const Matrix& h, double temperature, const Observable& a,
                         const Observable& b, double delta = 0.0);
double default_fd_delta(const Observable& b);

// kubo-mori covariance: logarithmic-mean kernel over centered observables.
// rank_warning (optional) is set when the smallest eigenvalue is below 1e-12;
// only non-positive eigenvalues are lifted (log(0) protection), computed
// small positive weights are trusted as-is.
double kubo_mori_cov(const DensityMatrix& rho, const Observable& a,
                     const Observable& b, bool* rank_warning = nullptr);
double kubo_mori_cov(const GibbsModel& model, const Observable& a,
                     const Observable& b);

// fluctuation-dissipation route to the qvar correlation:
//   cov(a, b) - t * susceptibility_fd(h, t, a, b)
double thermo_f_correlation(const Matrix& h, double temperature, const Observable& a,
                            const Observable& b, const std::vector<int>& dims,
                            double delta = 0.0);

// nodes and weights on [0, 1], exact for polynomials of degree 2n - 1
void gauss_legendre(int n, RealVector& nodes, RealVector& weights);

}  // namespace qf
