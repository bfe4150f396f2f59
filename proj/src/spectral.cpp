#include "gerbes/spectral.hpp"

namespace gerbes {

E2Term lhs_e2(const GroupPtr& k, const FiniteAbelianGroup& s, int p, int q,
              const SolveOptions& opts) {
  if (q < 0 || q > 2) fail(ErrorKind::InvalidInput, "second-page terms are computed for q <= 2 only");
  if (p < 0) fail(ErrorKind::InvalidInput, "p must be nonnegative");
  E2Term out;
  out.p = p;
  out.q = q;

  // coefficient module H^q(S, Q/Z) with trivial K-action (the fiber is central)
  FiniteAbelianGroup coeffs;
  bool circle = false;
  switch (q) {
    case 0:
      circle = true;  // H^0(S) = Q/Z
      break;
    case 1:
      coeffs = s;  // H^1(S) = dual of S, same invariant factors
      break;
    case 2: {
      CohomologyGroup h2 = cohomology_group(s.as_group(), 2, opts);
      coeffs = FiniteAbelianGroup(h2.factors);
      break;
    }
  }

  if (circle) {
    if (p == 0) {
      out.full_circle = true;
      return out;
    }
    out.factors = cohomology_group(k, p, opts).factors;
    return out;
  }
  if (p == 0) {
    out.factors = coeffs.factors();
    return out;
  }
  if (coeffs.rank() == 0) return out;  // trivial coefficients
  out.factors = abelian_cohomology(Site::group_site(k), p, coeffs, opts).factors;
  return out;
}

FiberRestriction fiber_restriction(const MultiplicativeGerbe& g,
                                   const std::vector<int>& fiber_elements,
                                   const SolveOptions& opts) {
  if (!is_central(*g.group, fiber_elements))
    fail(ErrorKind::NotCentral, "fiber is not central");
  SubgroupView sub = subgroup_as_group(g.group, fiber_elements);
  FiberRestriction out;
  out.restricted = restrict_to_subgroup(g.alpha, sub);
  Cochain zero(out.restricted.site(), 3);
  ClassComparison cc = classes_equal(out.restricted, zero, opts);
  out.trivial = cc.equal;
  out.level = cc.level;
  return out;
}

}  // namespace gerbes
