#include "qf/fops.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>

#include "qf/density.hpp"
#include "qf/rng.hpp"

namespace qf {

namespace {

void require_nonnegative(double t) {
  if (!(t >= 0.0))
    throw DomainError(fmt::format("argument {} outside [0, inf)", t));
}

// (t^a - 1) / (a (t - 1)) expanded to 4th order around t = 1
double binomial_ratio_series(double a, double u) {
  double c1 = (a - 1.0) / 2.0;
  double c2 = c1 * (a - 2.0) / 3.0;
  double c3 = c2 * (a - 3.0) / 4.0;
  double c4 = c3 * (a - 4.0) / 5.0;
  return 1.0 + u * (c1 + u * (c2 + u * (c3 + u * c4)));
}

double eval_wyd(double alpha, double t) {
  if (t == 0.0) return alpha * (1.0 - alpha);
  double u = t - 1.0;
  if (std::abs(u) < 1e-4) {
    // the direct form loses half the digits here; both bracket factors are
    // expanded instead
    return 1.0 / (binomial_ratio_series(alpha, u) *
                  binomial_ratio_series(1.0 - alpha, u));
  }
  double ell = std::log1p(u);
  double a = std::expm1(alpha * ell);
  double b = std::expm1((1.0 - alpha) * ell);
  return alpha * (1.0 - alpha) * u * u / (a * b);
}

double eval_qvar(double t) {
  if (t == 0.0) return 1.0 / 6.0;
  double u = t - 1.0;
  if (std::abs(u) <= 0.05) {
    // reciprocal series from the gregory coefficients of z/log(1+z); tail at
    // the branch edge is ~1e-13 relative
    double s = 1.0 +
               u * (-1.0 / 2.0 +
               u * (19.0 / 60.0 +
               u * (-9.0 / 40.0 +
               u * (863.0 / 5040.0 +
               u * (-275.0 / 2016.0 +
               u * (33953.0 / 302400.0 +
               u * (-8183.0 / 86400.0 +
               u * (3250433.0 / 39916800.0))))))));
    return 1.0 / s;
  }
  double bracket = 0.5 * (t + 1.0) - u / std::log(t);
  return u * u / (12.0 * bracket);
}

}  // namespace

FOpSpec FOpSpec::bu() { return FOpSpec(FKind::bures_uhlmann, 0.0); }
FOpSpec FOpSpec::wy() { return FOpSpec(FKind::wigner_yanase, 0.5); }

FOpSpec FOpSpec::wyd(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw DomainError(fmt::format("alpha {} outside (0, 1)", alpha));
  return FOpSpec(FKind::wigner_yanase_dyson, alpha);
}

FOpSpec FOpSpec::qvar() { return FOpSpec(FKind::quantum_variance, 0.0); }

FOpSpec FOpSpec::parse(std::string_view token) {
  if (token == "bu") return bu();
  if (token == "wy") return wy();
  if (token == "qvar") return qvar();
  constexpr std::string_view prefix = "wyd:";
  if (token.substr(0, prefix.size()) == prefix) {
    std::string_view rest = token.substr(prefix.size());
    double alpha = 0.0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), alpha);
    if (ec != std::errc() || ptr != rest.data() + rest.size())
      throw ParseFailure(fmt::format("bad wyd parameter '{}'", rest));
    return wyd(alpha);
  }
  throw ParseFailure(
      fmt::format("unknown function spec '{}', expected bu|wy|wyd:<alpha>|qvar", token));
}

std::string FOpSpec::name() const {
  switch (kind_) {
    case FKind::bures_uhlmann: return "bu";
    case FKind::wigner_yanase: return "wy";
    case FKind::wigner_yanase_dyson: return fmt::format("wyd:{:g}", alpha_);
    case FKind::quantum_variance: return "qvar";
  }
  return "?";
}

double FOpSpec::eval(double t) const {
  require_nonnegative(t);
  switch (kind_) {
    case FKind::bures_uhlmann:
      return 0.5 * (1.0 + t);
    case FKind::wigner_yanase: {
      double s = 1.0 + std::sqrt(t);
      return 0.25 * s * s;
    }
    case FKind::wigner_yanase_dyson:
      return eval_wyd(alpha_, t);
    case FKind::quantum_variance:
      return eval_qvar(t);
  }
  return 0.0;
}

double FOpSpec::zero() const {
  switch (kind_) {
    case FKind::bures_uhlmann: return 0.5;
    case FKind::wigner_yanase: return 0.25;
    case FKind::wigner_yanase_dyson: return alpha_ * (1.0 - alpha_);
    case FKind::quantum_variance: return 1.0 / 6.0;
  }
  return 0.0;
}

double FOpSpec::tilde(double t) const {
  require_nonnegative(t);
  // exact at t = 0 (the bracket cancels to 0 with no rounding hazard)
  double u = t - 1.0;
  return 0.5 * ((t + 1.0) - u * u * zero() / eval(t));
}

double FOpSpec::mean(double x, double y) const {
  require_nonnegative(x);
  require_nonnegative(y);
  auto [lo, hi] = std::minmax(x, y);
  if (hi == 0.0) return 0.0;
  return hi * eval(lo / hi);
}

double FOpSpec::weight(double x, double y) const {
  require_nonnegative(x);
  require_nonnegative(y);
  if (x == y) return 0.0;
  double d = x - y;
  return 0.5 * zero() * d * d / mean(x, y);
}

double FOpSpec::tilde_mean(double x, double y) const {
  require_nonnegative(x);
  require_nonnegative(y);
  auto [lo, hi] = std::minmax(x, y);
  if (hi == 0.0) return 0.0;
  return hi * tilde(lo / hi);
}

WeightTable build_weight_table(const FOpSpec& f, const RealVector& eigenvalues,
                               double tol_deg_rel) {
  int n = static_cast<int>(eigenvalues.size());
  WeightTable table;
  table.eigenvalues = eigenvalues;
  table.g = RealMatrix::Zero(n, n);
  table.tilde_mean = RealMatrix::Zero(n, n);
  double radius = (n > 0) ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  double gap = tol_deg_rel * radius;
  for (int i = 0; i < n; ++i) {
    table.tilde_mean(i, i) = eigenvalues[i];  // m_tilde(p, p) = p tilde(1) = p
    for (int j = i + 1; j < n; ++j) {
      // eigensolver noise can leave state spectra at -1e-17; the weights'
      // limits at zero make clamping exact
      double x = std::max(eigenvalues[i], 0.0), y = std::max(eigenvalues[j], 0.0);
      if (std::abs(x - y) <= gap) {
        // degenerate pair: the correlation weight vanishes and the mean
        // collapses to the shared value
        table.tilde_mean(i, j) = table.tilde_mean(j, i) = x;
        continue;
      }
      double g = f.weight(x, y);
      double tm = f.tilde_mean(x, y);
      table.g(i, j) = table.g(j, i) = g;
      table.tilde_mean(i, j) = table.tilde_mean(j, i) = tm;
    }
  }
  return table;
}

FPropertyReport check_function_properties(const std::function<double(double)>& f,
                                          int scalar_points, int matrix_samples,
                                          int dim, RngStream& rng) {
  FPropertyReport rep{};
  rep.scalar_points = scalar_points;
  rep.matrix_samples = matrix_samples;
  rep.max_normalization_defect = std::abs(f(1.0) - 1.0);

  // symmetry t f(1/t) = f(t) on a log grid
  for (int k = 0; k < scalar_points; ++k) {
    double e = -6.0 + 12.0 * k / std::max(1, scalar_points - 1);
    double t = std::pow(10.0, e);
    double ft = f(t);
    double defect = std::abs(t * f(1.0 / t) - ft) / std::max(1.0, std::abs(ft));
    rep.max_symmetry_defect = std::max(rep.max_symmetry_defect, defect);
  }

  // operator monotonicity spot-check: spectral calculus on random psd pairs
  // a <= b; any negative eigenvalue of f(b) - f(a) is a violation
  auto apply = [&](const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    RealVector vals = es.eigenvalues();
    for (int i = 0; i < vals.size(); ++i) vals[i] = f(std::max(vals[i], 0.0));
    return Matrix(es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint());
  };
  for (int s = 0; s < matrix_samples; ++s) {
    Matrix w = ginibre(dim, dim, rng);
    Matrix a = w * w.adjoint() + 0.1 * Matrix::Identity(dim, dim);
    Matrix v = ginibre(dim, dim, rng);
    Matrix b = a + v * v.adjoint();
    Matrix diff = apply(b) - apply(a);
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(diff), Eigen::EigenvaluesOnly);
    double viol = std::max(0.0, -es.eigenvalues().minCoeff());
    rep.max_monotone_defect = std::max(rep.max_monotone_defect, viol);
  }
  return rep;
}

FPropertyReport check_fop_properties(const FOpSpec& f, int scalar_points,
                                     int matrix_samples, int dim, RngStream& rng) {
  return check_function_properties([&f](double t) { return f.eval(t); },
                                   scalar_points, matrix_samples, dim, rng);
}

}  // namespace qf
