#pragma once

#include "gerbes/duality.hpp"

namespace gerbes {

// Crossed module phi : N -> E with a right E-action on N by automorphisms,
// E-equivariance of phi and the Peiffer identity.
struct CrossedModule {
  GroupPtr n;
  GroupPtr e;
  GroupHom phi;             // N -> E
  Eigen::MatrixXi action;   // (n_idx, e_idx) -> n^e

  int act(int nn, int ee) const { return action(nn, ee); }
};

// First violated axiom, encoded as {axiom, indices...} with axiom
// 0: action identity, 1: action composition, 2: automorphism,
// 3: equivariance, 4: Peiffer.  Empty means valid.
std::optional<std::vector<int>> crossed_module_violation(const CrossedModule& x);
inline bool validate_crossed_module(const CrossedModule& x) {
  return !crossed_module_violation(x).has_value();
}

struct FourTermSequence {
  AbelianStructure pi1;       // ker phi with its abelian structure
  std::vector<int> pi1_elements;  // ker phi as indices of N
  GroupPtr pi0;               // coker phi
  GroupHom pi0_projection;    // E -> pi0
};
FourTermSequence four_term(const CrossedModule& x);

// The two dual crossed modules attached to a central fiber S in G with a
// nondegenerate bilinear pairing, circle truncated to (1/level)Z/Z.  Both
// share N = S x Z/level and E = S x G; the first targets the S-coordinate,
// the second pushes the fiber into G.
struct FiniteFiberPair {
  CrossedModule x1;
  CrossedModule x2;
  FourTermSequence four1;
  FourTermSequence four2;
  GroupPtr s_times_k;   // comparison model for coker(target_2)
  GroupHom coker2_iso;  // pi0(x2) -> s_times_k
  bool coker1_equals_g = false;
  Int level = 0;
};
FiniteFiberPair finite_fiber_pair(const GroupPtr& g, const std::vector<int>& fiber_elements,
                                  const BilinearForm& b, Int level = 0);

}  // namespace gerbes
