#include "qf/qfcorr.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace qf {

namespace {

struct BipartiteContext {
  std::vector<int> dims;
  SpectralDecomposition dec;
  WeightTable table;
};

BipartiteContext make_context(const DensityMatrix& rho, const FOpSpec& f) {
  if (rho.dims.size() != 2)
    throw DimensionMismatch(fmt::format("need a bipartite state, got {} subsystems",
                                        rho.dims.size()));
  BipartiteContext ctx;
  ctx.dims = rho.dims;
  ctx.dec = spectral_decompose(rho.matrix);
  ctx.table = build_weight_table(f, ctx.dec.eigenvalues);
  return ctx;
}

// reduced correlation kernel on the free side for a fixed local observable on
// the other side: Upsilon(x, fixed) = tr[x k] for hermitian local x
Matrix kernel_free_side(const BipartiteContext& ctx, const Matrix& fixed_local,
                        Side fixed_side) {
  int fixed_slot = (fixed_side == Side::a) ? 0 : 1;
  int free_slot = 1 - fixed_slot;
  Matrix embedded = embed_local(fixed_local, ctx.dims, fixed_slot);
  Matrix bt = ctx.dec.eigenvectors.adjoint() * embedded * ctx.dec.eigenvectors;
  Matrix kt = ctx.table.g.cast<cx>().cwiseProduct(bt);
  Matrix k_full = ctx.dec.eigenvectors * kt * ctx.dec.eigenvectors.adjoint();
  DensityMatrix carrier{ctx.dims, std::move(k_full)};
  return hermitize(partial_trace(carrier, {free_slot}).matrix);
}

// best observable with the given spectrum against a fixed kernel: align the
// sorted spectrum with the sorted kernel eigenbasis (rearrangement bound)
Matrix align_spectrum(const Matrix& kernel, const RealVector& spectrum, double* value) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(kernel);  // ascending
  RealVector s = spectrum;
  std::sort(s.begin(), s.end());
  Matrix obs = Matrix::Zero(kernel.rows(), kernel.cols());
  double acc = 0.0;
  for (int k = 0; k < s.size(); ++k) {
    obs += s[k] * es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
    acc += s[k] * es.eigenvalues()[k];
  }
  if (value) *value = acc;
  return obs;
}

}  // namespace

EquispacedSpectrum equispaced_spectrum(int d_a, int d_b) {
  if (d_a < 2 || d_b < 2)
    throw DimensionMismatch(fmt::format("both sides need dimension >= 2, got {} and {}",
                                        d_a, d_b));
  int d = std::min(d_a, d_b);
  double step = static_cast<double>(d) / (d - 1);
  RealVector values(d);
  for (int k = 0; k < d; ++k) values[k] = -0.5 * d + step * k;
  EquispacedSpectrum out;
  out.values_a = RealVector::Zero(d_a);
  out.values_b = RealVector::Zero(d_b);
  out.values_a.head(d) = values;
  out.values_b.head(d) = values;
  return out;
}

QfResult qf_two_qubit(const DensityMatrix& rho, const FOpSpec& f) {
  CorrelationMatrix m = correlation_matrix(rho, f);
  Eigen::JacobiSVD<RealMatrix> svd(m.entries, Eigen::ComputeFullU | Eigen::ComputeFullV);
  QfResult res;
  res.value = svd.singularValues()[0];
  res.method = QfMethod::closed_form;

  RealVector na = svd.matrixU().col(0);
  RealVector nb = svd.matrixV().col(0);
  Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
  for (int k = 0; k < 3; ++k) {
    a += na[k] * paulis()[k];
    b += nb[k] * paulis()[k];
  }
  EquispacedSpectrum eq = equispaced_spectrum(2, 2);
  res.observable_a = make_observable(a, eq.values_a);
  res.observable_b = make_observable(b, eq.values_b);
  return res;
}

Matrix linear_kernel(const DensityMatrix& rho, const Observable& fixed_obs,
                     Side fixed_side, const FOpSpec& f) {
  BipartiteContext ctx = make_context(rho, f);
  int slot = (fixed_side == Side::a) ? 0 : 1;
  if (fixed_obs.matrix.rows() != ctx.dims[slot])
    throw DimensionMismatch(fmt::format("observable is {}x{}, fixed side has dimension {}",
                                        fixed_obs.matrix.rows(), fixed_obs.matrix.cols(),
                                        ctx.dims[slot]));
  return kernel_free_side(ctx, fixed_obs.matrix, fixed_side);
}

QfResult qf_optimize(const DensityMatrix& rho, const FOpSpec& f,
                     const QfOptimizeOptions& opts) {
  BipartiteContext ctx = make_context(rho, f);
  int da = ctx.dims[0], db = ctx.dims[1];
  EquispacedSpectrum eq = equispaced_spectrum(da, db);

  QfResult best;
  best.method = QfMethod::alternating;
  best.restarts = opts.restarts;
  best.value = -1.0;
  bool best_converged = false;

  for (int r = 0; r <= opts.restarts; ++r) {
    Matrix a_local;
    if (r == 0) {
      a_local = Matrix(eq.values_a.cast<cx>().asDiagonal());
    } else {
      RngStream rng(opts.seed, static_cast<std::uint64_t>(r));
      Matrix u = haar_unitary(da, rng);
      a_local = u * eq.values_a.cast<cx>().asDiagonal() * u.adjoint();
    }

    Matrix b_local;
    double obj = 0.0, prev = -1.0;
    bool converged = false;
    for (int it = 0; it < opts.max_iters; ++it) {
      Matrix kb = kernel_free_side(ctx, a_local, Side::a);
      b_local = align_spectrum(kb, eq.values_b, nullptr);
      Matrix ka = kernel_free_side(ctx, b_local, Side::b);
      a_local = align_spectrum(ka, eq.values_a, &obj);
      if (it > 0 && std::abs(obj - prev) <= opts.tol * std::max(1.0, std::abs(obj))) {
        converged = true;
        break;
      }
      prev = obj;
    }
    if (obj > best.value) {
      best.value = obj;
      best.observable_a = Observable{a_local, eq.values_a};
      best.observable_b = Observable{b_local, eq.values_b};
      best_converged = converged;
    }
  }
  best.converged = best_converged;
  // a correlation maximum is never negative: the pair (a, -b) flips the sign
  best.value = std::max(best.value, 0.0);
  return best;
}

double pure_qf(const Vector& psi, const std::vector<int>& dims) {
  if (dims.size() != 2)
    throw DimensionMismatch("pure-state closed form needs a bipartite split");
  if (std::min(dims[0], dims[1]) != 2)
    throw DomainError("pure-state closed form needs one side to be a qubit");
  SchmidtForm schmidt = schmidt_decompose(psi, dims);
  return 2.0 * schmidt.coefficients[0] * schmidt.coefficients[1];
}

}  // namespace qf
