#pragma once

#include "gerbes/duality.hpp"

namespace gerbes {

// One term of the second page H^p(K, H^q(S, Q/Z)) for a central extension,
// with the trivial action on the coefficients.  q is capped at 2.  The (0,0)
// corner is the full circle group and is reported by flag instead of factors.
struct E2Term {
  int p = 0, q = 0;
  std::vector<Int> factors;
  bool full_circle = false;
  Int order() const {
    Int o = 1;
    for (Int f : factors) o *= f;
    return o;
  }
};

E2Term lhs_e2(const GroupPtr& k, const FiniteAbelianGroup& s, int p, int q,
              const SolveOptions& opts = {});

struct FiberRestriction {
  bool trivial = false;
  Int level = 0;       // solve level used for the class test
  Cochain restricted;  // the restricted cocycle itself
};

// Restriction of the gerbe class to the central fiber, tested against zero.
FiberRestriction fiber_restriction(const MultiplicativeGerbe& g,
                                   const std::vector<int>& fiber_elements,
                                   const SolveOptions& opts = {});

}  // namespace gerbes
