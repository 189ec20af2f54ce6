#pragma once

#include "qf/correlations.hpp"
#include "qf/rng.hpp"

namespace qf {

// optimization domain: local observables with the fixed equispaced spectrum
// {-d/2, ..., d/2} in steps of d/(d-1), d = min(d_a, d_b); the larger side
// carries the same d values padded with zeros
struct EquispacedSpectrum {
  RealVector values_a;
  RealVector values_b;
};

EquispacedSpectrum equispaced_spectrum(int d_a, int d_b);

enum class QfMethod { closed_form, alternating, pure_schmidt };

struct QfResult {
  double value = 0.0;
  Observable observable_a;  // local observables attaining the reported value
  Observable observable_b;
  QfMethod method = QfMethod::closed_form;
  int restarts = 0;
  bool converged = true;
};

// two-qubit closed form: largest singular value of the pauli correlation
// matrix; optimal observables from the top singular vector pair
QfResult qf_two_qubit(const DensityMatrix& rho, const FOpSpec& f);

// reduced kernel k on the free side such that
// Upsilon(rho, embed(x, free), embed(fixed_obs, fixed)) = tr[x k]
// for every hermitian x on the free side
Matrix linear_kernel(const DensityMatrix& rho, const Observable& fixed_obs,
                     Side fixed_side, const FOpSpec& f);

struct QfOptimizeOptions {
  int restarts = 20;
  int max_iters = 500;
  double tol = 1e-10;
  std::uint64_t seed = 0;
};

// alternating maximization over the equispaced-spectrum observable pair;
// works for any bipartite dims. restart 0 starts from the computational
// basis, later restarts from haar-random bases.
QfResult qf_optimize(const DensityMatrix& rho, const FOpSpec& f,
                     const QfOptimizeOptions& opts = {});

// pure bipartite state with min(d_a, d_b) = 2: the quantifier collapses to
// twice the product of the two schmidt coefficients, independent of f
double pure_qf(const Vector& psi, const std::vector<int>& dims);

}  // namespace qf
