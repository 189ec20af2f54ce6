#include "qf/rng.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>

namespace qf {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed),
      stream_index_(stream_index),
      gen_(splitmix64(master_seed ^ splitmix64(stream_index + 0x9E3779B97F4A7C15ULL))) {}

std::uint64_t RngStream::next_u64() { return gen_(); }

double RngStream::uniform() {
  // 53 uniform bits in [0, 1)
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

Matrix ginibre(int rows, int cols, RngStream& rng) {
  Matrix g(rows, cols);
  const double s = std::numbers::sqrt2 / 2.0;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) g(r, c) = cx(rng.normal() * s, rng.normal() * s);
  return g;
}

Matrix haar_unitary(int d, RngStream& rng) {
  if (d < 1) throw DimensionMismatch(fmt::format("dimension {} < 1", d));
  Matrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // the phase fix makes the distribution haar instead of qr-convention biased
  for (int k = 0; k < d; ++k) {
    cx rkk = r(k, k);
    double m = std::abs(rkk);
    q.col(k) *= (m > 0.0) ? rkk / m : cx(1.0, 0.0);
  }
  return q;
}

Matrix random_hermitian(int d, RngStream& rng) {
  Matrix g = ginibre(d, d, rng);
  return hermitize(g);
}

Vector random_pure(int d, RngStream& rng) {
  if (d < 1) throw DimensionMismatch(fmt::format("dimension {} < 1", d));
  Vector v(d);
  const double s = std::numbers::sqrt2 / 2.0;
  for (int k = 0; k < d; ++k) v[k] = cx(rng.normal() * s, rng.normal() * s);
  double n = v.norm();
  if (n == 0.0) {
    v.setZero();
    v[0] = 1.0;
    return v;
  }
  return v / n;
}

RealVector random_simplex(int n, RngStream& rng) {
  if (n < 1) throw DimensionMismatch(fmt::format("size {} < 1", n));
  // flat dirichlet from normalized exponentials
  RealVector w(n);
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    double u = 1.0 - rng.uniform();
    w[k] = -std::log(u);
    total += w[k];
  }
  return w / total;
}

DensityMatrix random_density_hs(const std::vector<int>& dims, RngStream& rng) {
  int d = dim_product(dims);
  return random_density_induced(dims, d, rng);
}

DensityMatrix random_density_induced(const std::vector<int>& dims, int rank,
                                     RngStream& rng) {
  int d = dim_product(dims);
  if (rank < 1 || rank > d)
    throw DimensionMismatch(fmt::format("rank {} outside [1, {}]", rank, d));
  Matrix g = ginibre(d, rank, rng);
  Matrix w = g * g.adjoint();
  w /= w.trace().real();
  return DensityMatrix{dims, hermitize(w)};
}

}  // namespace qf
