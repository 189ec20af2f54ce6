#include <cmath>

#include "doctest.h"
#include "qf/fops.hpp"
#include "qf/rng.hpp"

using namespace qf;

TEST_CASE("point values of the four function families") {
  FOpSpec bu = FOpSpec::bu();
  CHECK(bu.eval(3.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(bu.zero() == doctest::Approx(0.5).epsilon(1e-15));

  FOpSpec wy = FOpSpec::wy();
  CHECK(wy.eval(4.0) == doctest::Approx(2.25).epsilon(1e-15));
  CHECK(wy.zero() == doctest::Approx(0.25).epsilon(1e-15));

  FOpSpec wyd = FOpSpec::wyd(0.25);
  CHECK(wyd.zero() == doctest::Approx(0.1875).epsilon(1e-15));
  // reference values from a 50-digit evaluation of the defining formula
  CHECK(FOpSpec::wyd(0.25).eval(2.0) ==
        doctest::Approx(1.4534877581369791).epsilon(1e-14));
  CHECK(FOpSpec::wyd(0.3).eval(0.7) ==
        doctest::Approx(0.84297305210052734).epsilon(1e-14));

  FOpSpec qv = FOpSpec::qvar();
  CHECK(qv.zero() == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(qv.eval(3.0) == doctest::Approx(1.8567873292911935).epsilon(1e-14));
  CHECK(qv.eval(0.9) == doctest::Approx(0.94929774504044618).epsilon(1e-14));
}

TEST_CASE("normalization and zero limits hold for every family") {
  for (const char* tok : {"bu", "wy", "wyd:0.1", "wyd:0.5", "wyd:0.9", "qvar"}) {
    FOpSpec f = FOpSpec::parse(tok);
    CHECK(f.eval(1.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(f.eval(0.0) == doctest::Approx(f.zero()).epsilon(1e-13));
    CHECK(f.tilde(0.0) == 0.0);
    CHECK(f.tilde(1.0) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("series branches agree with the direct formulas at the crossover") {
  // the wyd branch switches at |t - 1| = 1e-4, the qvar branch at 0.05;
  // reference values from 50-digit arithmetic straddle both switch points
  CHECK(FOpSpec::wyd(0.3).eval(1.00005) ==
        doctest::Approx(1.0000249998354208).epsilon(1e-13));
  CHECK(FOpSpec::qvar().eval(1.03) ==
        doctest::Approx(1.0149408833793506).epsilon(1e-13));

  for (double d : {0.9e-4, 1.1e-4}) {
    double lo = FOpSpec::wyd(0.42).eval(1.0 - d);
    double hi = FOpSpec::wyd(0.42).eval(1.0 + d);
    CHECK(std::abs(lo - 1.0) < 2.0 * d);
    CHECK(std::abs(hi - 1.0) < 2.0 * d);
  }
  double just_in = FOpSpec::qvar().eval(1.0499);
  double just_out = FOpSpec::qvar().eval(1.0501);
  CHECK(std::abs(just_in - just_out) < 2e-4);
}

TEST_CASE("wyd at alpha one half collapses to wy") {
  FOpSpec wyd = FOpSpec::wyd(0.5);
  FOpSpec wy = FOpSpec::wy();
  for (double t : {0.0, 0.01, 0.3, 0.99995, 1.0, 1.2, 7.0}) {
    CHECK(wyd.eval(t) == doctest::Approx(wy.eval(t)).epsilon(1e-12));
  }
}

TEST_CASE("parse round-trips and rejects bad tokens") {
  for (const char* tok : {"bu", "wy", "wyd:0.25", "qvar"}) {
    CHECK(FOpSpec::parse(tok).name() == tok);
  }
  CHECK_THROWS_AS(FOpSpec::parse("nope"), ParseFailure);
  CHECK_THROWS_AS(FOpSpec::parse("wyd:abc"), ParseFailure);
  CHECK_THROWS_AS(FOpSpec::parse("wyd:0"), DomainError);
  CHECK_THROWS_AS(FOpSpec::parse("wyd:1"), DomainError);
  CHECK_THROWS_AS(FOpSpec::wyd(1.5), DomainError);
}

TEST_CASE("dual of the largest function is the harmonic-type mean") {
  FOpSpec bu = FOpSpec::bu();
  CHECK(bu.tilde(3.0) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(bu.tilde(2.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  for (double t : {0.1, 0.5, 2.0, 9.0}) {
    CHECK(bu.tilde(t) == doctest::Approx(2.0 * t / (1.0 + t)).epsilon(1e-13));
  }
}

TEST_CASE("means and weights satisfy the structural limits") {
  for (const char* tok : {"bu", "wy", "wyd:0.35", "qvar"}) {
    FOpSpec f = FOpSpec::parse(tok);
    for (double x : {0.2, 0.7, 1.3}) {
      CHECK(f.weight(x, x) == 0.0);
      // the weight at a vanishing partner is x/2 for every family
      CHECK(f.weight(x, 0.0) == doctest::Approx(0.5 * x).epsilon(1e-12));
      CHECK(f.weight(0.0, x) == doctest::Approx(0.5 * x).epsilon(1e-12));
      CHECK(f.tilde_mean(x, 0.0) == doctest::Approx(0.0).scale(1.0));
      CHECK(f.tilde_mean(x, x) == doctest::Approx(x).epsilon(1e-12));
      for (double y : {0.1, 0.9}) {
        CHECK(f.mean(x, y) == doctest::Approx(f.mean(y, x)).epsilon(1e-13));
        CHECK(f.weight(x, y) == doctest::Approx(f.weight(y, x)).epsilon(1e-13));
      }
    }
  }
  // arithmetic mean for the largest function, geometric-flavored for wy
  CHECK(FOpSpec::bu().mean(0.3, 0.5) == doctest::Approx(0.4).epsilon(1e-14));
  double sq = (std::sqrt(0.3) + std::sqrt(0.5)) / 2.0;
  CHECK(FOpSpec::wy().mean(0.3, 0.5) == doctest::Approx(sq * sq).epsilon(1e-13));
}

TEST_CASE("weight table handles degeneracy and eigenvalue noise") {
  FOpSpec wy = FOpSpec::wy();
  RealVector p(3);
  p << 0.6, 0.4, 0.4 + 1e-15;
  WeightTable table = build_weight_table(wy, p);
  CHECK(table.g(1, 2) == 0.0);
  CHECK(table.tilde_mean(1, 2) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(table.g(0, 1) > 0.0);
  CHECK(table.g(0, 0) == 0.0);
  for (int i = 0; i < 3; ++i)
    CHECK(table.tilde_mean(i, i) == doctest::Approx(p[i]).epsilon(1e-13));

  // a -1e-17 leak from an eigensolver must not trip the domain checks
  RealVector noisy(2);
  noisy << 1.0, -1e-17;
  WeightTable t2 = build_weight_table(wy, noisy);
  CHECK(t2.g(0, 1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("property checker passes the library families") {
  RngStream rng(21, 0);
  for (const char* tok : {"bu", "wy", "wyd:0.25", "qvar"}) {
    FOpSpec f = FOpSpec::parse(tok);
    FPropertyReport rep = check_fop_properties(f, 200, 40, 4, rng);
    CHECK(rep.max_symmetry_defect < 1e-10);
    CHECK(rep.max_normalization_defect < 1e-13);
    CHECK(rep.max_monotone_defect < 1e-9);
  }
}

TEST_CASE("property checker flags a non-monotone control function") {
  RngStream rng(22, 0);
  // t^2 is symmetric under t f(1/t) but not matrix monotone
  FPropertyReport rep = check_function_properties(
      [](double t) { return t * t; }, 50, 40, 4, rng);
  CHECK(rep.max_monotone_defect > 1e-3);
}
