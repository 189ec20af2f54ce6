#include "qf/channels.hpp"

#include <fmt/format.h>

#include <cmath>

namespace qf {

namespace {

int side_slot(Side side) { return side == Side::a ? 0 : 1; }

DensityMatrix kraus_apply(const std::vector<Matrix>& kraus, const DensityMatrix& rho,
                          Side side) {
  if (rho.dims.size() != 2)
    throw DimensionMismatch(fmt::format("need a bipartite state, got {} subsystems",
                                        rho.dims.size()));
  int slot = side_slot(side);
  Matrix out = Matrix::Zero(rho.matrix.rows(), rho.matrix.cols());
  for (const Matrix& k : kraus) {
    if (k.rows() != rho.dims[slot])
      throw DimensionMismatch(fmt::format("kraus operator is {}x{}, side has dimension {}",
                                          k.rows(), k.cols(), rho.dims[slot]));
    Matrix ke = embed_local(k, rho.dims, slot);
    out += ke * rho.matrix * ke.adjoint();
  }
  return validate_density(out, rho.dims);
}

}  // namespace

UnitalQubitChannel random_unital_qubit(RngStream& rng) {
  UnitalQubitChannel ch;
  ch.p = rng.uniform();
  ch.u = haar_unitary(2, rng);
  ch.v = haar_unitary(2, rng);
  return ch;
}

SemiClassicalChannel random_semiclassical(int d, RngStream& rng) {
  return SemiClassicalChannel{haar_unitary(d, rng)};
}

DensityMatrix apply_local(const UnitalQubitChannel& ch, const DensityMatrix& rho,
                          Side side) {
  if (unitary_defect(ch.u) > tol_unit || unitary_defect(ch.v) > tol_unit)
    throw NotUnitary("channel unitaries fail the unitarity check");
  if (!(ch.p >= 0.0 && ch.p <= 1.0))
    throw DomainError(fmt::format("mixing parameter {} outside [0, 1]", ch.p));
  std::vector<Matrix> kraus = {std::sqrt(ch.p) * ch.u, std::sqrt(1.0 - ch.p) * ch.v};
  return kraus_apply(kraus, rho, side);
}

DensityMatrix apply_local(const SemiClassicalChannel& ch, const DensityMatrix& rho,
                          Side side) {
  if (unitary_defect(ch.basis) > tol_unit)
    throw NotUnitary("dephasing basis is not orthonormal");
  std::vector<Matrix> kraus;
  for (int k = 0; k < ch.basis.cols(); ++k)
    kraus.push_back(ch.basis.col(k) * ch.basis.col(k).adjoint());
  return kraus_apply(kraus, rho, side);
}

DensityMatrix make_cq_state(int d_a, int d_b, RngStream& rng) {
  Matrix basis = haar_unitary(d_a, rng);
  RealVector q = random_simplex(d_a, rng);
  Matrix out = Matrix::Zero(d_a * d_b, d_a * d_b);
  for (int i = 0; i < d_a; ++i) {
    Matrix proj = basis.col(i) * basis.col(i).adjoint();
    DensityMatrix block = random_density_hs({d_b}, rng);
    out += q[i] * kron(proj, block.matrix);
  }
  return validate_density(out, {d_a, d_b});
}

DensityMatrix make_qc_state(int d_a, int d_b, RngStream& rng) {
  Matrix basis = haar_unitary(d_b, rng);
  RealVector q = random_simplex(d_b, rng);
  Matrix out = Matrix::Zero(d_a * d_b, d_a * d_b);
  for (int i = 0; i < d_b; ++i) {
    Matrix proj = basis.col(i) * basis.col(i).adjoint();
    DensityMatrix block = random_density_hs({d_a}, rng);
    out += q[i] * kron(block.matrix, proj);
  }
  return validate_density(out, {d_a, d_b});
}

}  // namespace qf
