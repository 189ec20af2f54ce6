#pragma once

#include "qf/rng.hpp"

namespace qf {

// random mixture of two unitary conjugations p u.u^dag + (1-p) v.v^dag;
// unital by construction
struct UnitalQubitChannel {
  double p = 1.0;
  Matrix u;
  Matrix v;
};

UnitalQubitChannel random_unital_qubit(RngStream& rng);

// dephasing in a haar-random orthonormal basis (columns); semi-classical in
// the sense that outputs commute with the basis projectors
struct SemiClassicalChannel {
  Matrix basis;
};

SemiClassicalChannel random_semiclassical(int d, RngStream& rng);

// apply the channel to one side of a bipartite state; the acted side must be
// a qubit for the unital channel, any dimension for the dephasing one
DensityMatrix apply_local(const UnitalQubitChannel& ch, const DensityMatrix& rho,
                          Side side);
DensityMatrix apply_local(const SemiClassicalChannel& ch, const DensityMatrix& rho,
                          Side side);

// classical-quantum state: sum_i q_i |i><i| (x) rho_b^i with a haar-random
// orthonormal basis {|i>} on side a and independent hs-random rho_b^i
DensityMatrix make_cq_state(int d_a, int d_b, RngStream& rng);
// mirrored: quantum-classical
DensityMatrix make_qc_state(int d_a, int d_b, RngStream& rng);

}  // namespace qf
