#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <vector>

namespace qf {

using cx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// default tolerances; tol_deg is relative to the spectral radius
inline constexpr double tol_herm = 1e-10;
inline constexpr double tol_unit = 1e-10;
inline constexpr double tol_psd = 1e-10;
inline constexpr double tol_tr = 1e-10;
inline constexpr double tol_rec = 1e-9;
inline constexpr double tol_deg = 1e-12;

enum class Side { a, b };

const Matrix& pauli_x();
const Matrix& pauli_y();
const Matrix& pauli_z();
// x, y, z in that order
const std::array<Matrix, 3>& paulis();

Matrix kron(const Matrix& a, const Matrix& b);

// max abs entry of m - m^dag; 0 for empty
double herm_defect(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol = tol_herm);
Matrix hermitize(const Matrix& m);

// max abs entry of u^dag u - id
double unitary_defect(const Matrix& u);

// largest singular value of a hermitian matrix = max |eigenvalue|
double opnorm(const Matrix& hermitian);

int dim_product(const std::vector<int>& dims);

// id (x) ... (x) op (x) ... (x) id with op at position slot
Matrix embed_local(const Matrix& op, const std::vector<int>& dims, int slot);

}  // namespace qf
