#include <cmath>
#include <complex>

#include "doctest.h"
#include "qf/appendix.hpp"
#include "qf/rng.hpp"

using namespace qf;

TEST_CASE("rotation images of the pauli and hadamard gates") {
  Eigen::Matrix3d rx = so3_from_su2(pauli_x());
  Eigen::Matrix3d expect_x = Eigen::Vector3d(1.0, -1.0, -1.0).asDiagonal();
  CHECK((rx - expect_x).cwiseAbs().maxCoeff() < 1e-14);

  Matrix had(2, 2);
  double inv = 1.0 / std::sqrt(2.0);
  had << inv, inv, inv, -inv;
  Eigen::Matrix3d rh = so3_from_su2(had);
  Eigen::Matrix3d expect_h;
  expect_h << 0, 0, 1, 0, -1, 0, 1, 0, 0;
  CHECK((rh - expect_h).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("rotation images are orthogonal with unit determinant") {
  RngStream rng(71, 0);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix u = haar_unitary(2, rng);
    Eigen::Matrix3d r = so3_from_su2(u);
    CHECK((r * r.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <
          1e-12);
    CHECK(r.determinant() == doctest::Approx(1.0).epsilon(1e-12));

    // a global phase on the unitary leaves the rotation unchanged
    Matrix phased = std::polar(1.0, 0.83) * u;
    CHECK((so3_from_su2(phased) - r).cwiseAbs().maxCoeff() < 1e-12);
  }

  Matrix notu = Matrix::Ones(2, 2);
  CHECK_THROWS_AS(so3_from_su2(notu), NotUnitary);
  CHECK_THROWS_AS(so3_from_su2(Matrix::Identity(3, 3)), DimensionMismatch);
}

TEST_CASE("mixing the rotations of an even split collapses to the shared axis") {
  UnitalQubitChannel ch;
  ch.p = 0.5;
  ch.u = Matrix::Identity(2, 2);
  ch.v = pauli_z();
  RngStream rng(72, 0);
  DensityMatrix rho = random_density_hs({2, 2}, rng);
  DilationResult dil = dilate_unital(rho, ch);

  Eigen::Matrix3d expect = Eigen::Vector3d(0.0, 0.0, 1.0).asDiagonal();
  CHECK((dil.s - expect).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("tracing out the environment recovers the channel output") {
  RngStream rng(73, 0);
  for (Side side : {Side::a, Side::b}) {
    DensityMatrix rho = random_density_hs({2, 2}, rng);
    UnitalQubitChannel ch = random_unital_qubit(rng);
    DilationResult dil = dilate_unital(rho, ch, side);

    CHECK(dil.tau.dims == std::vector<int>{2, 2, 2});
    DensityMatrix reduced = partial_trace(dil.tau, {0, 1});
    DensityMatrix direct = apply_local(ch, rho, side);
    CHECK((reduced.matrix - direct.matrix).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("dilation carries the exact spectral structure") {
  RngStream rng(74, 0);
  DensityMatrix rho = random_density_induced({2, 2}, 2, rng);
  UnitalQubitChannel ch = random_unital_qubit(rng);
  DilationResult dil = dilate_unital(rho, ch);
  const SpectralDecomposition& dec = dil.tau_decomposition;

  REQUIRE(dec.eigenvalues.size() == 8);
  // input spectrum plus four exact zeros, descending
  SpectralDecomposition in = spectral_decompose(rho.matrix);
  CHECK(dec.eigenvalues[0] == doctest::Approx(in.eigenvalues[0]).epsilon(1e-13));
  CHECK(dec.eigenvalues[1] == doctest::Approx(in.eigenvalues[1]).epsilon(1e-13));
  int zeros = 0;
  for (int i = 0; i < 8; ++i)
    if (dec.eigenvalues[i] == 0.0) ++zeros;
  CHECK(zeros >= 4);
  for (int i = 1; i < 8; ++i) CHECK(dec.eigenvalues[i - 1] >= dec.eigenvalues[i]);

  Matrix gram = dec.eigenvectors.adjoint() * dec.eigenvectors;
  CHECK((gram - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-12);

  Matrix rebuilt =
      dec.eigenvectors * dec.eigenvalues.asDiagonal() * dec.eigenvectors.adjoint();
  CHECK((rebuilt - dil.tau.matrix).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("correlation matrices transform by the mixed rotation") {
  RngStream rng(75, 0);
  FOpSpec f = FOpSpec::wy();
  for (Side side : {Side::a, Side::b}) {
    for (int trial = 0; trial < 10; ++trial) {
      DensityMatrix rho = random_density_induced({2, 2}, 1 + (trial % 4), rng);
      UnitalQubitChannel ch = random_unital_qubit(rng);
      ContractionReport rep = contraction_check(rho, ch, f, side);
      CHECK(rep.identity_residual < 1e-9);
      CHECK(rep.contraction_violation <= 1e-9);
      CHECK(rep.smax_out <= rep.smax_in + 1e-9);
    }
  }
}

TEST_CASE("contraction margins are reported consistently") {
  RngStream rng(76, 0);
  DensityMatrix rho = random_density_hs({2, 2}, rng);
  UnitalQubitChannel ch = random_unital_qubit(rng);
  ContractionReport rep = contraction_check(rho, ch, FOpSpec::qvar());

  Eigen::JacobiSVD<RealMatrix> svd_in(rep.m_in.entries);
  Eigen::JacobiSVD<RealMatrix> svd_out(rep.m_out.entries);
  CHECK(rep.smax_in == doctest::Approx(svd_in.singularValues()[0]).epsilon(1e-13));
  CHECK(rep.smax_out == doctest::Approx(svd_out.singularValues()[0]).epsilon(1e-13));
  CHECK(rep.contraction_violation ==
        doctest::Approx(std::max(0.0, rep.smax_out - rep.smax_in)).scale(1.0));
}
