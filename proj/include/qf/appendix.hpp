#pragma once

#include "qf/channels.hpp"
#include "qf/correlations.hpp"

namespace qf {

// rotation image of a qubit unitary: u^dag sigma_i u = sum_j r(i, j) sigma_j
Eigen::Matrix3d so3_from_su2(const Matrix& u);

// unitary dilation of the mixed-unitary channel: the environment register d
// (dimension = number of kraus terms, here 2) is appended as the last slot,
// prepared in |alpha> = sqrt(p)|0> + sqrt(1-p)|1>, and the controlled unitary
// sum_k u_k (x) |k><k|_d acts on the chosen side
struct DilationResult {
  DensityMatrix tau;  // dims {2, 2, 2}
  // exact spectral structure: the input eigenpairs carried through the
  // controlled unitary plus an exact zero block from the environment; using
  // it instead of re-diagonalizing tau keeps the zero eigenvalues exact
  SpectralDecomposition tau_decomposition;
  Eigen::Matrix3d s;  // p r_u + (1-p) r_v
};

DilationResult dilate_unital(const DensityMatrix& rho, const UnitalQubitChannel& ch,
                             Side side = Side::a);

struct ContractionReport {
  CorrelationMatrix m_in;   // on rho
  CorrelationMatrix m_out;  // on tau
  Eigen::Matrix3d s;
  double identity_residual = 0.0;       // max abs of m_out - s * m_in
  double contraction_violation = 0.0;   // max(0, smax_out - smax_in)
  double smax_in = 0.0;
  double smax_out = 0.0;
};

// checks m_out = s * m_in entrywise and the induced contraction of the
// largest singular value
ContractionReport contraction_check(const DensityMatrix& rho,
                                    const UnitalQubitChannel& ch, const FOpSpec& f,
                                    Side side = Side::a);

}  // namespace qf
