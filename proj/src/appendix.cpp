#include "qf/appendix.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <utility>

namespace qf {

Eigen::Matrix3d so3_from_su2(const Matrix& u) {
  if (u.rows() != 2 || u.cols() != 2)
    throw DimensionMismatch(fmt::format("expected a 2x2 unitary, got {}x{}", u.rows(),
                                        u.cols()));
  double ud = unitary_defect(u);
  if (ud > tol_unit)
    throw NotUnitary(fmt::format("unitarity defect {:.3e} exceeds {:.1e}", ud, tol_unit));
  Eigen::Matrix3d r;
  for (int i = 0; i < 3; ++i) {
    Matrix rotated = u.adjoint() * paulis()[i] * u;
    for (int j = 0; j < 3; ++j)
      r(i, j) = 0.5 * (rotated * paulis()[j]).trace().real();
  }
  return r;
}

DilationResult dilate_unital(const DensityMatrix& rho, const UnitalQubitChannel& ch,
                             Side side) {
  if (rho.dims != std::vector<int>{2, 2})
    throw DimensionMismatch("dilation is built for two-qubit states");
  if (!(ch.p >= 0.0 && ch.p <= 1.0))
    throw DomainError(fmt::format("mixing parameter {} outside [0, 1]", ch.p));

  // environment |alpha> = sqrt(p)|0> + sqrt(1-p)|1>, appended as the last slot
  Vector alpha(2);
  alpha << std::sqrt(ch.p), std::sqrt(1.0 - ch.p);
  Matrix env = alpha * alpha.adjoint();
  Matrix joint = kron(rho.matrix, env);

  std::vector<int> dims = {2, 2, 2};
  int slot = (side == Side::a) ? 0 : 1;
  // controlled unitary sum_k u_k (x) |k><k|_d
  Matrix w = Matrix::Zero(8, 8);
  const Matrix* us[2] = {&ch.u, &ch.v};
  for (int k = 0; k < 2; ++k) {
    Matrix proj = Matrix::Zero(2, 2);
    proj(k, k) = 1.0;
    w += embed_local(*us[k], dims, slot) * embed_local(proj, dims, 2);
  }
  Matrix tau = w * joint * w.adjoint();

  DilationResult out;
  out.tau = validate_density(tau, dims);
  out.s = ch.p * so3_from_su2(ch.u) + (1.0 - ch.p) * so3_from_su2(ch.v);

  // spectrum of tau is the input spectrum plus four exact zeros; eigenvectors
  // are w (v_i (x) alpha) for the support and w (v_i (x) alpha_perp) for the
  // zero block. re-diagonalizing would smear the zeros to ~1e-16 noise, which
  // sqrt-like weight functions amplify to ~1e-8.
  SpectralDecomposition dec_in = spectral_decompose(rho.matrix);
  Vector alpha_perp(2);
  alpha_perp << -std::sqrt(1.0 - ch.p), std::sqrt(ch.p);
  std::vector<std::pair<double, Vector>> pairs;
  for (int i = 0; i < 4; ++i) {
    Vector vi = dec_in.eigenvectors.col(i);
    pairs.emplace_back(dec_in.eigenvalues[i], w * kron(vi, alpha));
    pairs.emplace_back(0.0, w * kron(vi, alpha_perp));
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  SpectralDecomposition& dec = out.tau_decomposition;
  dec.eigenvalues.resize(8);
  dec.eigenvectors.resize(8, 8);
  for (int i = 0; i < 8; ++i) {
    dec.eigenvalues[i] = pairs[i].first;
    dec.eigenvectors.col(i) = pairs[i].second;
  }
  double radius = dec.eigenvalues.cwiseAbs().maxCoeff();
  dec.clusters.push_back({0});
  for (int i = 1; i < 8; ++i) {
    if (std::abs(dec.eigenvalues[i - 1] - dec.eigenvalues[i]) <= tol_deg * radius)
      dec.clusters.back().push_back(i);
    else
      dec.clusters.push_back({i});
  }
  return out;
}

ContractionReport contraction_check(const DensityMatrix& rho,
                                    const UnitalQubitChannel& ch, const FOpSpec& f,
                                    Side side) {
  DilationResult dil = dilate_unital(rho, ch, side);

  ContractionReport rep;
  rep.m_in = correlation_matrix(rho, f);
  rep.m_out = pauli_correlation_matrix(dil.tau_decomposition, std::vector<int>{2, 2, 2}, f);
  rep.s = dil.s;

  // the dilation acts on one side only, so the rotation multiplies from that
  // side: side a contracts rows, side b columns
  Eigen::Matrix3d predicted = (side == Side::a)
                                  ? Eigen::Matrix3d(dil.s * rep.m_in.entries)
                                  : Eigen::Matrix3d(rep.m_in.entries * dil.s.transpose());
  rep.identity_residual = (rep.m_out.entries - predicted).cwiseAbs().maxCoeff();

  Eigen::JacobiSVD<RealMatrix> svd_in(rep.m_in.entries);
  Eigen::JacobiSVD<RealMatrix> svd_out(rep.m_out.entries);
  rep.smax_in = svd_in.singularValues()[0];
  rep.smax_out = svd_out.singularValues()[0];
  rep.contraction_violation = std::max(0.0, rep.smax_out - rep.smax_in);
  return rep;
}

}  // namespace qf
