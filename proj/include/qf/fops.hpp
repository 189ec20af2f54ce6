#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "qf/errors.hpp"
#include "qf/linalg.hpp"

namespace qf {

class RngStream;

enum class FKind { bures_uhlmann, wigner_yanase, wigner_yanase_dyson, quantum_variance };

// symmetric normalized regular operator monotone function together with the
// derived quantities used by the correlation functionals:
//   mean(x, y)   = y f(x/y)             (matrix mean kernel)
//   weight(x, y) = f(0)/2 (x-y)^2 / mean
//   tilde(t)     = ((t+1) - (t-1)^2 f(0)/f(t)) / 2   (dual function)
class FOpSpec {
 public:
  static FOpSpec bu();
  static FOpSpec wy();
  static FOpSpec wyd(double alpha);  // alpha in (0, 1)
  static FOpSpec qvar();
  // grammar: "bu" | "wy" | "wyd:<alpha>" | "qvar"
  static FOpSpec parse(std::string_view token);

  double eval(double t) const;   // t >= 0
  double zero() const;           // f(0), finite and positive
  double tilde(double t) const;  // t >= 0, tilde(0) = 0
  double mean(double x, double y) const;        // symmetric, mean(x, 0) = x f(0)
  double weight(double x, double y) const;      // weight(x, x) = 0, weight(x, 0) = x/2
  double tilde_mean(double x, double y) const;  // mean of tilde, tilde_mean(x, 0) = 0

  FKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  std::string name() const;  // round-trips through parse

 private:
  FOpSpec(FKind kind, double alpha) : kind_(kind), alpha_(alpha) {}
  FKind kind_;
  double alpha_;
};

// pairwise tables over a fixed spectrum. pairs closer than
// tol_deg_rel * max|p| count as degenerate: g = 0 and tilde_mean = p_i there.
struct WeightTable {
  RealVector eigenvalues;
  RealMatrix g;           // masi weights, zero diagonal
  RealMatrix tilde_mean;  // m_tilde(p_i, p_j)
};

WeightTable build_weight_table(const FOpSpec& f, const RealVector& eigenvalues,
                               double tol_deg_rel = tol_deg);

struct FPropertyReport {
  double max_symmetry_defect;       // |t f(1/t) - f(t)| / max(1, |f|)
  double max_normalization_defect;  // |f(1) - 1|
  double max_monotone_defect;       // worst matrix monotonicity violation
  int scalar_points;
  int matrix_samples;
};

// spot-checks the defining properties on a log grid plus random psd pairs
// a <= b with f applied spectrally. the callable form exists so a test can
// feed a non-monotone control function and watch it get flagged.
FPropertyReport check_function_properties(const std::function<double(double)>& f,
                                          int scalar_points, int matrix_samples,
                                          int dim, RngStream& rng);
FPropertyReport check_fop_properties(const FOpSpec& f, int scalar_points,
                                     int matrix_samples, int dim, RngStream& rng);

}  // namespace qf
