#include "gerbes/crossmod.hpp"

#include <algorithm>

namespace gerbes {

std::optional<std::vector<int>> crossed_module_violation(const CrossedModule& x) {
  const auto& N = *x.n;
  const auto& E = *x.e;
  x.phi.validate();
  if (x.action.rows() != N.order() || x.action.cols() != E.order())
    fail(ErrorKind::InvalidInput, "action table shape mismatch");

  for (int nn = 0; nn < N.order(); ++nn)
    if (x.act(nn, FiniteGroup::identity) != nn) return std::vector<int>{0, nn};
  for (int nn = 0; nn < N.order(); ++nn)
    for (int e1 = 0; e1 < E.order(); ++e1)
      for (int e2 = 0; e2 < E.order(); ++e2)
        if (x.act(x.act(nn, e1), e2) != x.act(nn, E.mul(e1, e2)))
          return std::vector<int>{1, nn, e1, e2};
  for (int ee = 0; ee < E.order(); ++ee) {
    std::vector<char> seen(N.order(), 0);
    for (int nn = 0; nn < N.order(); ++nn) {
      if (seen[x.act(nn, ee)]++) return std::vector<int>{2, ee, nn};
    }
    for (int n1 = 0; n1 < N.order(); ++n1)
      for (int n2 = 0; n2 < N.order(); ++n2)
        if (x.act(N.mul(n1, n2), ee) != N.mul(x.act(n1, ee), x.act(n2, ee)))
          return std::vector<int>{2, ee, n1, n2};
  }
  for (int nn = 0; nn < N.order(); ++nn)
    for (int ee = 0; ee < E.order(); ++ee)
      if (x.phi.image[x.act(nn, ee)] != E.conjugate(x.phi.image[nn], ee))
        return std::vector<int>{3, nn, ee};
  for (int nn = 0; nn < N.order(); ++nn)
    for (int mm = 0; mm < N.order(); ++mm)
      if (x.act(nn, x.phi.image[mm]) != N.conjugate(nn, mm)) return std::vector<int>{4, nn, mm};
  return std::nullopt;
}

FourTermSequence four_term(const CrossedModule& x) {
  if (auto w = crossed_module_violation(x))
    fail(ErrorKind::InvalidInput, "not a crossed module",
         std::vector<long long>(w->begin(), w->end()));
  FourTermSequence out;
  out.pi1_elements = x.phi.kernel();
  SubgroupView ker = subgroup_as_group(x.n, out.pi1_elements);
  out.pi1 = abelian_invariants(*ker.group);  // kernel of a crossed module map is abelian

  std::vector<int> image;
  for (int nn = 0; nn < x.n->order(); ++nn) image.push_back(x.phi.image[nn]);
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  QuotientResult q = quotient_by_normal(x.e, image);
  out.pi0 = q.quotient;
  out.pi0_projection = q.projection;
  return out;
}

FiniteFiberPair finite_fiber_pair(const GroupPtr& g, const std::vector<int>& fiber_elements,
                                  const BilinearForm& b, Int level) {
  CentralQuotient q = quotient_by_central(g, fiber_elements);
  const FiniteAbelianGroup& S = q.fiber_abelian.group;
  if (!(b.domain == S))
    fail(ErrorKind::InvalidInput, "bilinear form domain does not match the fiber");
  BSharp sharp = b_sharp(b);
  if (!sharp.is_isomorphism)
    fail(ErrorKind::NotNondegenerate, "bilinear form does not identify the fiber with its dual");

  if (level == 0) level = S.exponent();
  for (const auto& row : b.matrix)
    for (const auto& v : row)
      if (level % v.denominator() != 0)
        fail(ErrorKind::LevelTooCoarse, "a pairing value does not live at the truncation level",
             {level});

  GroupPtr s_group = S.as_group();
  GroupPtr circle = FiniteGroup::cyclic(static_cast<int>(level));
  GroupPtr N = FiniteGroup::direct_product(s_group, circle);
  GroupPtr E = FiniteGroup::direct_product(s_group, g);

  const Int ns = S.order();
  const int nl = static_cast<int>(level);
  const int ng = g->order();
  auto n_enc = [&](Int sbar, Int lam) { return static_cast<int>(sbar) * nl + static_cast<int>(lam); };
  auto e_enc = [&](Int s, int gg) { return static_cast<int>(s) * ng + gg; };

  // ambient element of a fiber tuple index
  auto fiber_ambient = [&](Int idx) {
    return q.fiber.element_map[q.fiber_abelian.element_of_index[idx]];
  };

  FiniteFiberPair out;
  out.level = level;

  CrossedModule x1;
  x1.n = N;
  x1.e = E;
  x1.phi = GroupHom{N, E, {}};
  x1.phi.image.resize(N->order());
  for (Int sbar = 0; sbar < ns; ++sbar)
    for (int lam = 0; lam < nl; ++lam)
      x1.phi.image[n_enc(sbar, lam)] = e_enc(sbar, FiniteGroup::identity);
  // the target-1 module carries the trivial action; the fiber-twisted action
  // would violate the Peiffer identity against the S-coordinate image
  x1.action.resize(N->order(), E->order());
  for (int nn = 0; nn < N->order(); ++nn)
    for (int ee = 0; ee < E->order(); ++ee) x1.action(nn, ee) = nn;

  CrossedModule x2;
  x2.n = N;
  x2.e = E;
  x2.phi = GroupHom{N, E, {}};
  x2.phi.image.resize(N->order());
  for (Int sbar = 0; sbar < ns; ++sbar)
    for (int lam = 0; lam < nl; ++lam)
      x2.phi.image[n_enc(sbar, lam)] = e_enc(0, fiber_ambient(sbar));
  x2.action.resize(N->order(), E->order());
  for (Int sbar = 0; sbar < ns; ++sbar) {
    auto sbar_t = S.tuple_of(sbar);
    for (int lam = 0; lam < nl; ++lam)
      for (Int s = 0; s < ns; ++s) {
        CircleValue v = b.evaluate(sbar_t, S.tuple_of(s));
        Int shift = v.numerator() * (level / v.denominator());
        int lam2 = static_cast<int>((lam + shift) % level);
        for (int gg = 0; gg < ng; ++gg)
          x2.action(n_enc(sbar, lam), e_enc(s, gg)) = n_enc(sbar, lam2);
      }
  }

  if (auto w = crossed_module_violation(x1))
    fail(ErrorKind::InternalVerificationFailed, "first crossed module failed validation",
         std::vector<long long>(w->begin(), w->end()));
  if (auto w = crossed_module_violation(x2))
    fail(ErrorKind::InternalVerificationFailed, "second crossed module failed validation",
         std::vector<long long>(w->begin(), w->end()));

  out.four1 = four_term(x1);
  out.four2 = four_term(x2);
  out.x1 = std::move(x1);
  out.x2 = std::move(x2);

  // coker(target_1): cosets of S x {e} have least representatives (0, g), so
  // the quotient table must literally be the table of G
  out.coker1_equals_g = out.four1.pi0->same_table(*g);

  // coker(target_2) compared against S x K through (s, g) -> (s, p(g))
  out.s_times_k = FiniteGroup::direct_product(s_group, q.quotient);
  const auto& proj2 = out.four2.pi0_projection;
  std::vector<int> iso(out.four2.pi0->order(), -1);
  for (Int s = 0; s < ns; ++s)
    for (int gg = 0; gg < ng; ++gg) {
      int coset = proj2.image[e_enc(s, gg)];
      int target = static_cast<int>(s) * q.quotient->order() + q.projection.image[gg];
      if (iso[coset] == -1)
        iso[coset] = target;
      else if (iso[coset] != target)
        fail(ErrorKind::InternalVerificationFailed, "coker(target_2) comparison ill-defined");
    }
  out.coker2_iso = GroupHom{out.four2.pi0, out.s_times_k, iso};
  out.coker2_iso.validate();
  if (!out.coker2_iso.is_bijective())
    fail(ErrorKind::InternalVerificationFailed, "coker(target_2) is not S x K");
  return out;
}

}  // namespace gerbes
