#include <doctest.h>

#include <random>

#include "gerbes/gerbe.hpp"

using namespace gerbes;

namespace {

MultiplicativeGerbe z2_generator_gerbe() {
  auto z2 = FiniteGroup::cyclic(2);
  CohomologyGroup h = cohomology_group(z2, 3);
  return make_gerbe(z2, h.generators[0]);
}

}  // namespace

TEST_CASE("gerbe construction validates") {
  auto z2 = FiniteGroup::cyclic(2);
  // trivial gerbe
  MultiplicativeGerbe triv = make_gerbe(z2, Cochain(Site::group_site(z2), 3));
  CHECK(triv.alpha.is_zero());
  // generator gerbe
  MultiplicativeGerbe g = z2_generator_gerbe();
  CHECK(is_cocycle(g.alpha));
  CHECK(g.alpha.is_normalized());
  // corrupted entry is rejected with a witness
  Cochain bad = g.alpha;
  std::vector<int> t{1, 1, 1};
  bad.set(0, t, bad.at(0, t) + CircleValue(1, 3));
  bool threw = false;
  try {
    make_gerbe(z2, bad);
  } catch (const Error& e) {
    threw = true;
    CHECK(e.kind() == ErrorKind::NotACocycle);
    CHECK(e.witness().size() == 4);
  }
  CHECK(threw);
}

TEST_CASE("canonical representation verifies its defining equation") {
  {
    MultiplicativeGerbe g = z2_generator_gerbe();
    GerbeRepresentation rep = canonical_representation(g);
    CHECK(delta(rep.beta) == pullback_to_groupoid(g.alpha, rep.space));
  }
  {
    auto z4 = FiniteGroup::cyclic(4);
    CohomologyGroup h = cohomology_group(z4, 3);
    REQUIRE(h.factors == std::vector<Int>{4});
    MultiplicativeGerbe g = make_gerbe(z4, h.generators[0]);
    GerbeRepresentation rep = canonical_representation(g);
    CHECK(rep.space.points() == 4);
    CHECK(delta(rep.beta) == pullback_to_groupoid(g.alpha, rep.space));
  }
  {
    // trivial gerbe: canonical beta is zero
    auto z3 = FiniteGroup::cyclic(3);
    MultiplicativeGerbe g = make_gerbe(z3, Cochain(Site::group_site(z3), 3));
    CHECK(canonical_representation(g).beta.is_zero());
  }
}

TEST_CASE("representation existence") {
  MultiplicativeGerbe g = z2_generator_gerbe();
  // on the right-regular space a representation always exists
  RepresentationSearch reg = representation_exists(g, Site::right_regular(g.group));
  CHECK(reg.beta.has_value());
  CHECK(delta(*reg.beta) == pullback_to_groupoid(g.alpha, Site::right_regular(g.group)));

  // on the point there is none: the class is nontrivial
  RepresentationSearch pt = representation_exists(g, Site::point_site(g.group));
  CHECK_FALSE(pt.beta.has_value());

  // the trivial gerbe is representable anywhere, with beta = 0 admissible
  MultiplicativeGerbe triv = make_gerbe(g.group, Cochain(Site::group_site(g.group), 3));
  RepresentationSearch pt2 = representation_exists(triv, Site::point_site(g.group));
  REQUIRE(pt2.beta.has_value());

  // a coboundary class is representable on the point even if it looks wild
  std::mt19937 rng(5);
  std::uniform_int_distribution<Int> num(0, 7);
  Cochain b = Cochain::from_function(Site::group_site(g.group), 2, [&](int, std::span<const int> a) {
    for (int x : a)
      if (x == 0) return CircleValue();
    return CircleValue(num(rng), 4);
  });
  MultiplicativeGerbe cob = make_gerbe(g.group, delta(b));
  CHECK(representation_exists(cob, Site::point_site(g.group)).beta.has_value());
}

TEST_CASE("representation class counts") {
  auto z2 = FiniteGroup::cyclic(2);
  MultiplicativeGerbe triv = make_gerbe(z2, Cochain(Site::group_site(z2), 3));
  // regular space: the groupoid is contractible
  CHECK(count_representation_classes(triv, Site::right_regular(z2)) == 1);
  // point: H^2(Z/2, Q/Z) is trivial (the circle is divisible)
  CHECK(count_representation_classes(triv, Site::point_site(z2)) == 1);
  // trivial group on a point
  auto e = FiniteGroup::trivial();
  MultiplicativeGerbe te = make_gerbe(e, Cochain(Site::group_site(e), 3));
  CHECK(count_representation_classes(te, Site::point_site(e)) == 1);
  // V4 on a point has a nontrivial Schur multiplier
  auto v4 = FiniteGroup::direct_product(z2, z2);
  MultiplicativeGerbe tv = make_gerbe(v4, Cochain(Site::group_site(v4), 3));
  CHECK(count_representation_classes(tv, Site::point_site(v4)) == 2);
}

TEST_CASE("representation morphisms") {
  MultiplicativeGerbe g = z2_generator_gerbe();
  GerbeRepresentation rep = canonical_representation(g);

  // identity morphism with gamma = 0
  RepMorphism id{{0, 1}, Cochain(rep.space, 1)};
  CHECK(validate_rep_morphism(rep, rep, id));

  // translation by the nonidentity element is equivariant; a gamma may be
  // needed, so validate composition closure on a morphism that does hold
  std::mt19937 rng(9);
  std::uniform_int_distribution<Int> num(0, 7);
  Cochain gamma = Cochain::from_function(rep.space, 1, [&](int, std::span<const int>) {
    return CircleValue(num(rng), 4);
  });
  GerbeRepresentation shifted{g, rep.space, rep.beta - delta(gamma)};
  RepMorphism m{{0, 1}, gamma};
  CHECK(validate_rep_morphism(rep, shifted, m));

  // corrupted gamma fails with a witness
  RepMorphism badm = m;
  std::vector<int> arg{1};
  badm.gamma.set(0, arg, badm.gamma.at(0, arg) + CircleValue(1, 3));
  auto w = rep_morphism_violation(rep, shifted, badm);
  CHECK(w.has_value());

  // composition of validating morphisms validates
  Cochain gamma2 = Cochain::from_function(rep.space, 1, [&](int, std::span<const int>) {
    return CircleValue(num(rng), 4);
  });
  GerbeRepresentation shifted2{g, rep.space, shifted.beta - delta(gamma2)};
  RepMorphism m2{{0, 1}, gamma2};
  CHECK(validate_rep_morphism(shifted, shifted2, m2));
  RepMorphism comp = compose_rep_morphisms(m2, m, rep.space);
  CHECK(validate_rep_morphism(rep, shifted2, comp));

  // non-equivariant point maps are rejected
  auto z4 = FiniteGroup::cyclic(4);
  MultiplicativeGerbe t4 = make_gerbe(z4, Cochain(Site::group_site(z4), 3));
  GerbeRepresentation r4 = canonical_representation(t4);
  RepMorphism swap{{0, 2, 1, 3}, Cochain(r4.space, 1)};
  CHECK_THROWS_AS(static_cast<void>(rep_morphism_violation(r4, r4, swap)), Error);
}

TEST_CASE("morphism composition is associative on point maps and gammas") {
  auto z2 = FiniteGroup::cyclic(2);
  MultiplicativeGerbe triv = make_gerbe(z2, Cochain(Site::group_site(z2), 3));
  GerbeRepresentation rep = canonical_representation(triv);
  std::mt19937 rng(33);
  std::uniform_int_distribution<Int> num(0, 7);
  auto rand_gamma = [&] {
    return Cochain::from_function(rep.space, 1,
                                  [&](int, std::span<const int>) { return CircleValue(num(rng), 8); });
  };
  RepMorphism a{{0, 1}, rand_gamma()}, b{{1, 0}, rand_gamma()}, c{{1, 0}, rand_gamma()};
  RepMorphism lhs = compose_rep_morphisms(c, compose_rep_morphisms(b, a, rep.space), rep.space);
  RepMorphism rhs = compose_rep_morphisms(compose_rep_morphisms(c, b, rep.space), a, rep.space);
  CHECK(lhs.point_map == rhs.point_map);
  CHECK(lhs.gamma == rhs.gamma);
}
