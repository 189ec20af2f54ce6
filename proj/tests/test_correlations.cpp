#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "doctest.h"
#include "qf/correlations.hpp"
#include "qf/rng.hpp"

using namespace qf;

namespace {

DensityMatrix bloch_x_state(double r) {
  Matrix m(2, 2);
  m << 0.5, 0.5 * r, 0.5 * r, 0.5;
  return validate_density(m, {2});
}

// straight double-loop evaluation in the eigenbasis, kept free of the
// library's table machinery so it can serve as an oracle
double upsilon_by_hand(const DensityMatrix& rho, const Matrix& a, const Matrix& b,
                       const FOpSpec& f) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix);
  RealVector p = es.eigenvalues();
  Matrix v = es.eigenvectors();
  Matrix at = v.adjoint() * a * v;
  Matrix bt = v.adjoint() * b * v;
  double sum = 0.0;
  for (int i = 0; i < p.size(); ++i)
    for (int j = i + 1; j < p.size(); ++j) {
      double x = std::max(p[i], 0.0), y = std::max(p[j], 0.0);
      sum += 2.0 * f.weight(x, y) * std::real(at(i, j) * std::conj(bt(i, j)));
    }
  return sum;
}

}  // namespace

TEST_CASE("skew information of a bloch state against closed-form values") {
  DensityMatrix rho = bloch_x_state(0.6);
  Observable z = make_observable(pauli_z());
  CHECK(masi(rho, z, FOpSpec::wy()) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(masi(rho, z, FOpSpec::bu()) == doctest::Approx(0.36).epsilon(1e-12));
  CHECK(variance(rho, z) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("commuting observables carry no skew information") {
  DensityMatrix rho = bloch_x_state(0.6);
  Observable x = make_observable(pauli_x());
  for (const char* tok : {"bu", "wy", "wyd:0.3", "qvar"}) {
    CHECK(std::abs(masi(rho, x, FOpSpec::parse(tok))) < 1e-14);
  }
}

TEST_CASE("correlation vanishes when either observable commutes with the state") {
  DensityMatrix rho = bloch_x_state(0.4);
  Observable x = make_observable(pauli_x());
  Observable z = make_observable(pauli_z());
  FOpSpec wy = FOpSpec::wy();
  CHECK(std::abs(f_correlation(rho, x, z, wy)) < 1e-14);
  CHECK(std::abs(f_correlation(rho, z, x, wy)) < 1e-14);
}

TEST_CASE("correlation splits covariance minus the dual covariance") {
  RngStream rng(31, 0);
  for (const char* tok : {"bu", "wy", "wyd:0.25", "qvar"}) {
    FOpSpec f = FOpSpec::parse(tok);
    for (int trial = 0; trial < 10; ++trial) {
      DensityMatrix rho = random_density_hs({2, 2}, rng);
      Observable a = make_observable(random_hermitian(4, rng));
      Observable b = make_observable(random_hermitian(4, rng));
      double direct = f_correlation(rho, a, b, f);
      double split = covariance(rho, a, b) - f_covariance(rho, a, b, f);
      CHECK(direct == doctest::Approx(split).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("correlation matches an independent eigenbasis sum") {
  RngStream rng(32, 0);
  FOpSpec f = FOpSpec::wyd(0.4);
  for (int trial = 0; trial < 5; ++trial) {
    DensityMatrix rho = random_density_hs({3}, rng);
    Matrix a = random_hermitian(3, rng);
    Matrix b = random_hermitian(3, rng);
    double lib = f_correlation(rho, make_observable(a), make_observable(b), f);
    double hand = upsilon_by_hand(rho, a, b, f);
    CHECK(lib == doctest::Approx(hand).epsilon(1e-11).scale(1.0));
  }
}

TEST_CASE("skew information is squeezed between zero and the variance") {
  RngStream rng(33, 0);
  for (int trial = 0; trial < 20; ++trial) {
    DensityMatrix rho = random_density_hs({3}, rng);
    Observable o = make_observable(random_hermitian(3, rng));
    double var = variance(rho, o);
    for (const char* tok : {"bu", "wy", "qvar"}) {
      double i = masi(rho, o, FOpSpec::parse(tok));
      CHECK(i >= -1e-12);
      CHECK(i <= var + 1e-10);
    }
  }
}

TEST_CASE("shifting an observable by the identity changes nothing") {
  RngStream rng(34, 0);
  DensityMatrix rho = random_density_hs({2, 2}, rng);
  Matrix a = random_hermitian(4, rng);
  Matrix b = random_hermitian(4, rng);
  Matrix shifted = a + 0.7 * Matrix::Identity(4, 4);
  FOpSpec f = FOpSpec::qvar();
  CHECK(masi(rho, make_observable(a), f) ==
        doctest::Approx(masi(rho, make_observable(shifted), f)).epsilon(1e-10));
  CHECK(f_correlation(rho, make_observable(a), make_observable(b), f) ==
        doctest::Approx(f_correlation(rho, make_observable(shifted),
                                      make_observable(b), f))
            .epsilon(1e-10));
}

TEST_CASE("gap functional vanishes for observables on disjoint subsystems") {
  RngStream rng(35, 0);
  std::vector<int> dims = {2, 3};
  Matrix oa = random_hermitian(2, rng);
  Matrix ob = random_hermitian(3, rng);
  Observable a = make_observable(embed_local(oa, dims, 0));
  Observable b = make_observable(embed_local(ob, dims, 1));
  for (int trial = 0; trial < 5; ++trial) {
    DensityMatrix rho = random_density_hs(dims, rng);
    for (const char* tok : {"bu", "wy", "wyd:0.6", "qvar"}) {
      CHECK(std::abs(nonadditivity_gap(rho, a, b, FOpSpec::parse(tok))) < 1e-9);
    }
  }
}

TEST_CASE("correlation matrix of a product state is zero") {
  RngStream rng(36, 0);
  DensityMatrix a = random_density_hs({2}, rng);
  DensityMatrix b = random_density_hs({2}, rng);
  DensityMatrix rho = validate_density(kron(a.matrix, b.matrix), {2, 2});
  CorrelationMatrix m = correlation_matrix(rho, FOpSpec::wy());
  CHECK(m.entries.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("pauli correlation matrix agrees with the two-qubit special case") {
  RngStream rng(37, 0);
  DensityMatrix rho = random_density_hs({2, 2}, rng);
  FOpSpec f = FOpSpec::wyd(0.2);
  CorrelationMatrix direct = correlation_matrix(rho, f);
  CorrelationMatrix general = pauli_correlation_matrix(rho, f);
  CHECK((direct.entries - general.entries).cwiseAbs().maxCoeff() < 1e-13);

  DensityMatrix rho3 = random_density_hs({3}, rng);
  CHECK_THROWS_AS(correlation_matrix(rho3, f), DimensionMismatch);
}

TEST_CASE("declared spectra are verified against the actual eigenvalues") {
  RealVector pm(2);
  pm << 1.0, -1.0;
  Observable z = make_observable(pauli_z(), pm);
  REQUIRE(z.declared_spectrum.has_value());

  RealVector wrong(2);
  wrong << 1.0, 0.0;
  CHECK_THROWS_AS(make_observable(pauli_z(), wrong), DimensionMismatch);

  Matrix nonherm(2, 2);
  nonherm << 0.0, cx(0.0, 1.0), cx(0.0, 2.0), 0.0;
  CHECK_THROWS_AS(make_observable(nonherm), NonHermitian);
}
