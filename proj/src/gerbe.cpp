#include "gerbes/gerbe.hpp"

namespace gerbes {

MultiplicativeGerbe make_gerbe(GroupPtr g, Cochain alpha) {
  if (!alpha.site().is_group_base() || !alpha.site().group().same_table(*g) || alpha.degree() != 3)
    fail(ErrorKind::InvalidInput, "gerbe cocycle must be a degree-3 cochain on the group");
  if (auto w = cocycle_violation(alpha))
    fail(ErrorKind::NotACocycle, "gerbe cochain is not a 3-cocycle",
         std::vector<long long>{(*w)[1], (*w)[2], (*w)[3], (*w)[4]});
  if (!alpha.is_normalized()) alpha = normalize_cocycle(alpha);
  return MultiplicativeGerbe{std::move(g), std::move(alpha)};
}

GerbeRepresentation canonical_representation(const MultiplicativeGerbe& g) {
  Site site = Site::right_regular(g.group);
  Cochain beta = Cochain::from_function(site, 2, [&](int point, std::span<const int> args) {
    std::vector<int> full{point, args[0], args[1]};
    return g.alpha.at(0, full);
  });
  Cochain lhs = delta(beta);
  Cochain rhs = pullback_to_groupoid(g.alpha, site);
  if (!(lhs == rhs))
    fail(ErrorKind::InternalVerificationFailed, "canonical representation equation failed");
  return GerbeRepresentation{g, std::move(site), std::move(beta)};
}

RepresentationSearch representation_exists(const MultiplicativeGerbe& g, const Site& space,
                                           const SolveOptions& opts) {
  if (!space.group().same_table(*g.group))
    fail(ErrorKind::InvalidAction, "space is not acted on by the gerbe's group");
  Cochain target = pullback_to_groupoid(g.alpha, space);
  SolveResult r = solve_coboundary(target, opts);
  return RepresentationSearch{std::move(r.solution), r.level};
}

Int count_representation_classes(const MultiplicativeGerbe& g, const Site& space,
                                 const SolveOptions& opts) {
  if (!space.group().same_table(*g.group))
    fail(ErrorKind::InvalidAction, "space is not acted on by the gerbe's group");
  return site_cohomology_order(space, 2, opts);
}

std::optional<std::vector<int>> rep_morphism_violation(const GerbeRepresentation& source,
                                                       const GerbeRepresentation& target,
                                                       const RepMorphism& m) {
  const Site& ns = source.space;
  const Site& nt = target.space;
  if (!source.gerbe.group->same_table(*target.gerbe.group) ||
      !(source.gerbe.alpha == target.gerbe.alpha))
    fail(ErrorKind::DomainMismatch, "morphism endpoints live over different gerbes");
  if (static_cast<int>(m.point_map.size()) != ns.points())
    fail(ErrorKind::InvalidInput, "point map size mismatch");
  for (int p = 0; p < ns.points(); ++p)
    for (int a = 0; a < ns.group().order(); ++a)
      if (nt.act(m.point_map[p], a) != m.point_map[ns.act(p, a)])
        fail(ErrorKind::NotEquivariant, "point map is not equivariant", {p, a});

  Cochain residual = source.beta - pullback_along_points(target.beta, ns, m.point_map) - delta(m.gamma);
  for (Int i = 0; i < residual.size(); ++i) {
    if (!residual[i].is_zero()) {
      int p;
      std::vector<int> args;
      tuple_decode(ns, 2, i, p, args);
      std::vector<int> out{p};
      out.insert(out.end(), args.begin(), args.end());
      return out;
    }
  }
  return std::nullopt;
}

RepMorphism compose_rep_morphisms(const RepMorphism& second, const RepMorphism& first,
                                  const Site& source_space) {
  RepMorphism out;
  out.point_map.resize(first.point_map.size());
  for (std::size_t i = 0; i < first.point_map.size(); ++i)
    out.point_map[i] = second.point_map[first.point_map[i]];
  out.gamma = first.gamma + pullback_along_points(second.gamma, source_space, first.point_map);
  return out;
}

}  // namespace gerbes
