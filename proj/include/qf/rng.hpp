#pragma once

#include <cstdint>
#include <random>

#include "qf/density.hpp"

namespace qf {

// deterministic stream addressed by (master_seed, stream_index). streams with
// distinct indices are independent, so parallel loops can draw per-sample
// streams and reproduce the serial sequence bit for bit.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t next_u64();
  double uniform();  // [0, 1), 53 bits
  double normal();   // standard normal, Box-Muller

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// complex ginibre matrix, entries (normal + i normal)/sqrt(2)
Matrix ginibre(int rows, int cols, RngStream& rng);

// haar-distributed unitary via qr of a ginibre matrix with the phase fix
// u = q diag(r_kk / |r_kk|)
Matrix haar_unitary(int d, RngStream& rng);

// gue-like hermitian matrix (g + g^dag)/2
Matrix random_hermitian(int d, RngStream& rng);

// normalized haar-random pure state vector
Vector random_pure(int d, RngStream& rng);

// flat dirichlet point on the probability simplex
RealVector random_simplex(int n, RngStream& rng);

// hilbert-schmidt measure: g g^dag / tr with square ginibre g
DensityMatrix random_density_hs(const std::vector<int>& dims, RngStream& rng);

// induced measure with g of shape d x rank; rank in [1, d]
DensityMatrix random_density_induced(const std::vector<int>& dims, int rank,
                                     RngStream& rng);

}  // namespace qf
