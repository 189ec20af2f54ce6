#include "qf/linalg.hpp"

#include <fmt/format.h>

#include <unsupported/Eigen/KroneckerProduct>

#include "qf/errors.hpp"

namespace qf {

namespace {

Matrix make_pauli(int which) {
  Matrix m(2, 2);
  switch (which) {
    case 0: m << 0, 1, 1, 0; break;
    case 1: m << 0, cx(0, -1), cx(0, 1), 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

}  // namespace

const Matrix& pauli_x() {
  static const Matrix m = make_pauli(0);
  return m;
}

const Matrix& pauli_y() {
  static const Matrix m = make_pauli(1);
  return m;
}

const Matrix& pauli_z() {
  static const Matrix m = make_pauli(2);
  return m;
}

const std::array<Matrix, 3>& paulis() {
  static const std::array<Matrix, 3> ps = {pauli_x(), pauli_y(), pauli_z()};
  return ps;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b);
}

double herm_defect(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double tol) {
  return m.rows() == m.cols() && herm_defect(m) <= tol;
}

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

double unitary_defect(const Matrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  Matrix d = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
  return d.cwiseAbs().maxCoeff();
}

double opnorm(const Matrix& hermitian) {
  if (hermitian.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(hermitian),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

int dim_product(const std::vector<int>& dims) {
  int d = 1;
  for (int k : dims) {
    if (k < 1) throw DimensionMismatch(fmt::format("subsystem dimension {} < 1", k));
    d *= k;
  }
  return d;
}

Matrix embed_local(const Matrix& op, const std::vector<int>& dims, int slot) {
  if (slot < 0 || slot >= static_cast<int>(dims.size()))
    throw DimensionMismatch(
        fmt::format("slot {} out of range for {} subsystems", slot, dims.size()));
  if (op.rows() != op.cols() || op.rows() != dims[slot])
    throw DimensionMismatch(fmt::format("operator is {}x{}, subsystem {} has dimension {}",
                                        op.rows(), op.cols(), slot, dims[slot]));
  int pre = 1, post = 1;
  for (int k = 0; k < slot; ++k) pre *= dims[k];
  for (int k = slot + 1; k < static_cast<int>(dims.size()); ++k) post *= dims[k];
  Matrix out = Matrix::Identity(pre, pre);
  out = kron(out, op);
  return kron(out, Matrix::Identity(post, post));
}

}  // namespace qf
