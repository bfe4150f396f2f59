// Acceptance suite: one check per shipped criterion, each printed as a
// pass/fail line with its runtime.  Exits nonzero if any criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "gerbes/crossmod.hpp"
#include "gerbes/duality.hpp"
#include "gerbes/json_io.hpp"
#include "gerbes/spectral.hpp"
#include "oracle.hpp"

using namespace gerbes;

namespace {

struct Criterion {
  int number;
  std::string summary;
  double limit_seconds;
  std::function<void(std::ostream&)> run;  // throws on failure
};

#define ACCEPT(cond, msg)                                  \
  do {                                                     \
    if (!(cond)) throw std::runtime_error(msg);            \
  } while (0)

MultiplicativeGerbe trivial_gerbe(const GroupPtr& g) {
  return make_gerbe(g, Cochain(Site::group_site(g), 3));
}

bool plausibly_isomorphic(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order()) return false;
  if (a.is_abelian() != b.is_abelian()) return false;
  if (a.is_abelian()) return abelian_invariants(a).group.factors() == abelian_invariants(b).group.factors();
  return a.order_census() == b.order_census();  // conclusive through order 8
}

std::vector<std::vector<Int>> abelian_shapes_up_to(Int max_order) {
  std::vector<std::vector<Int>> out{{}};
  std::function<void(std::vector<Int>&, Int, Int)> rec = [&](std::vector<Int>& cur, Int product, Int min_d) {
    for (Int d = min_d; product * d <= max_order; ++d) {
      if (!cur.empty() && d % cur.back() != 0) continue;
      cur.push_back(d);
      out.push_back(cur);
      rec(cur, product * d, d);
      cur.pop_back();
    }
  };
  std::vector<Int> cur;
  rec(cur, 1, 2);
  return out;
}

GroupPtr dihedral8() {
  FiniteAbelianGroup s(std::vector<Int>{2});
  FiniteAbelianGroup v4(std::vector<Int>{2, 2});
  auto k = v4.as_group();
  AbelianCochain f(Site::group_site(k), 2, s);
  for (Int x = 0; x < 4; ++x)
    for (Int y = 0; y < 4; ++y) {
      auto tx = v4.tuple_of(x), ty = v4.tuple_of(y);
      std::vector<int> args{static_cast<int>(x), static_cast<int>(y)};
      f.set(0, args, {(tx[1] * ty[0]) % 2});
    }
  return central_extension({s, k, f}).total;
}

GroupPtr quaternion8() {
  FiniteAbelianGroup s(std::vector<Int>{2});
  FiniteAbelianGroup v4(std::vector<Int>{2, 2});
  auto k = v4.as_group();
  AbelianCochain f(Site::group_site(k), 2, s);
  for (Int x = 0; x < 4; ++x)
    for (Int y = 0; y < 4; ++y) {
      auto tx = v4.tuple_of(x), ty = v4.tuple_of(y);
      std::vector<int> args{static_cast<int>(x), static_cast<int>(y)};
      f.set(0, args, {(tx[0] * ty[0] + tx[1] * ty[1] + tx[1] * ty[0]) % 2});
    }
  return central_extension({s, k, f}).total;
}

// --- criterion 1 -----------------------------------------------------------

void criterion1(std::ostream& log) {
  Eigen::MatrixXi t(2, 2);
  t << 0, 1, 1, 0;
  auto z2 = FiniteGroup::cyclic(2);
  std::vector<std::vector<Int>> want{{2}, {}, {2}};
  for (int n = 1; n <= 3; ++n) {
    CohomologyGroup h = cohomology_group(z2, n);
    ACCEPT(h.factors == want[n - 1], "H^n(Z/2) factors mismatch at n=" + std::to_string(n));
    oracle::BruteClasses bc = oracle::brute_cohomology_classes(t, n, 4, 8);
    ACCEPT(bc.classes == h.order(), "oracle class count mismatch at n=" + std::to_string(n));
    // the oracle's class-order census must agree with the invariant factors
    std::map<Int, Int> want_census;
    want_census[1] = 1;
    for (Int f : h.factors)
      for (Int k = 2; k <= f; ++k)
        if (f % k == 0) want_census[k] += 0;  // shape only; orders handled below
    // build expected census from the group structure directly
    std::map<Int, Int> expect;
    std::function<void(std::size_t, Int)> rec = [&](std::size_t i, Int ord) {
      if (i == h.factors.size()) {
        expect[ord]++;
        return;
      }
      for (Int c = 0; c < h.factors[i]; ++c)
        rec(i + 1, lcm64(ord, c == 0 ? 1 : h.factors[i] / gcd64(c, h.factors[i])));
    };
    rec(0, 1);
    ACCEPT(bc.class_order_census == expect, "oracle census mismatch at n=" + std::to_string(n));
  }
  log << "H^{1,2,3}(Z/2, Q/Z) = [2], [], [2], matching the level-4 enumeration oracle";
}

// --- criterion 2 -----------------------------------------------------------

void criterion2(std::ostream& log) {
  auto k = FiniteGroup::cyclic(2);
  FiniteAbelianGroup s(std::vector<Int>{2});
  Site ks = Site::group_site(k);
  std::vector<AbelianCochain> cocycles;
  for (int bit : {0, 1}) {
    AbelianCochain f(ks, 2, s);
    std::vector<int> oneone{1, 1};
    f.set(0, oneone, {bit});
    ACCEPT(is_cocycle(f), "normalized 2-cochain on Z/2 must be a cocycle");
    cocycles.push_back(std::move(f));
  }
  ACCEPT(!classes_equal(cocycles[0], cocycles[1]), "the two extension classes collapsed");

  std::vector<std::vector<Int>> got;
  for (auto& f : cocycles) {
    CentralExtension e = central_extension({s, k, f});
    got.push_back(abelian_invariants(*e.total).group.factors());
    // round trip recovers the class
    std::vector<int> fiber{e.iota.image[0], e.iota.image[1]};
    CentralQuotient q = quotient_by_central(e.total, fiber);
    ACCEPT(q.quotient->same_table(*k), "quotient base mismatch");
    ACCEPT(classes_equal(q.transgression, f), "round trip lost the extension class");
  }
  ACCEPT((got[0] == std::vector<Int>{2, 2}), "trivial class should give Z/2 x Z/2");
  ACCEPT((got[1] == std::vector<Int>{4}), "nontrivial class should give Z/4");
  log << "exactly 2 classes of F over (K, S) = (Z/2, Z/2): groups Z/2 x Z/2 and Z/4, round trips hold";
}

// --- criterion 3 -----------------------------------------------------------

void criterion3(std::ostream& log) {
  int count = 0;
  for (auto& shape : abelian_shapes_up_to(16)) {
    FiniteAbelianGroup s(shape);
    auto g = s.as_group();
    std::vector<int> all(g->order());
    for (int i = 0; i < g->order(); ++i) all[i] = i;
    DualityInput input = make_duality_input(trivial_gerbe(g), all);
    auto w = omega_membership(input);
    ACCEPT(std::holds_alternative<OmegaWitness>(w), "classical membership failed");
    DualGerbeResult d = dual_gerbe(input, std::get<OmegaWitness>(w));
    ACCEPT(d.ext.f_hat.is_zero(), "classical dual must split");
    ACCEPT(abelian_invariants(*d.dual.group).group.factors() == shape,
           "dual group factors mismatch");
    ACCEPT(d.dual.alpha.is_zero(), "classical dual cocycle must vanish");
    DoubleDualReport rep = double_dual_check(input, std::get<OmegaWitness>(w));
    ACCEPT(rep.ok && rep.comparison_iso && rep.class_match, "double dual failed");
    ++count;
  }
  log << "duality and double duality of <S, 0> over S verified for all " << count
      << " abelian groups with |S| <= 16";
}

// --- criterion 4 -----------------------------------------------------------

void criterion4(std::ostream& log) {
  FiniteAbelianGroup s2(std::vector<Int>{2});
  std::vector<GroupPtr> bases{FiniteGroup::cyclic(4),
                              FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2))};
  int extensions = 0;
  for (auto& k : bases) {
    Site ks = Site::group_site(k);
    ModCohomology h2 = abelian_cohomology(ks, 2, s2);
    for (auto& f : all_class_representatives(ks, 2, h2)) {
      CentralExtension e = central_extension({s2, k, f});
      ++extensions;
      std::vector<int> fiber{e.iota.image[0], e.iota.image[1]};
      DualityInput input = make_duality_input(trivial_gerbe(e.total), fiber);
      auto w = omega_membership(input);
      ACCEPT(std::holds_alternative<OmegaWitness>(w), "trivial gerbe membership failed");
      DualGerbeResult d = dual_gerbe(input, std::get<OmegaWitness>(w));

      // dual group is the split extension K x S^
      ACCEPT(d.ext.f_hat.is_zero(), "dual transgression should vanish");
      const CentralExtension& ext = d.ext.extension;
      Cochain expected =
          Cochain::from_function(Site::group_site(d.dual.group), 3, [&](int, std::span<const int> a) {
            std::vector<int> pair23{ext.k_part(a[1]), ext.k_part(a[2])};
            return character_pairing(input.chart.structure, ext.s_tuple(a[0]),
                                     input.transgression.value(0, pair23));
          });
      ACCEPT(classes_equal(d.dual.alpha, expected).equal, "dual cocycle is not the pairing class");

      // reverse direction: dual of <K x S^, alpha^> over S^ recovers G with
      // the trivial class
      DualityInput back = make_duality_input(d.dual, d.dual_fiber_elements, d.dual_chart);
      auto w2 = omega_membership(back);
      ACCEPT(std::holds_alternative<OmegaWitness>(w2), "reverse membership failed");
      DualGerbeResult d2 = dual_gerbe(back, std::get<OmegaWitness>(w2));
      ACCEPT(plausibly_isomorphic(*d2.dual.group, *e.total), "reverse dual group is not G");
      Cochain zero(Site::group_site(d2.dual.group), 3);
      ACCEPT(classes_equal(d2.dual.alpha, zero).equal, "reverse dual class is not trivial");
    }
  }
  log << "mutual duality of trivial gerbes checked for all " << extensions
      << " central extensions of order 8 over S = Z/2";
}

// --- criterion 5 -----------------------------------------------------------

struct Sweep5Stats {
  int pairs_tested = 0;
  int eps_samples = 0;
  int ambiguous_recoveries = 0;  // solver witness matched only modulo the representation class
};

Sweep5Stats sweep_explicit(Int s_min, Int s_cap, Int k_min, Int k_cap, bool run_double_dual,
                           std::ostream& log) {
  Sweep5Stats stats;
  std::vector<GroupPtr> bases;
  for (auto& shape : abelian_shapes_up_to(k_cap)) {
    FiniteAbelianGroup a(shape);
    if (a.order() >= k_min) bases.push_back(a.as_group());
  }

  for (auto& s_shape : abelian_shapes_up_to(s_cap)) {
    FiniteAbelianGroup s(s_shape);
    if (s.order() < s_min) continue;
    for (auto& k : bases) {
      Site ks = Site::group_site(k);
      ModCohomology h2;
      if (s.rank() == 0)
        h2 = ModCohomology{s, {}, {}};
      else
        h2 = abelian_cohomology(ks, 2, s);
      auto f_reps = all_class_representatives(ks, 2, h2);
      auto fhat_reps = f_reps;  // the dual has the same invariant factors

      // epsilon is unique up to degree-3 cocycles; one generator shift plus
      // one coboundary shift gives three samples per pair
      std::vector<Cochain> z3_shifts;
      if (k->order() > 1) {
        CohomologyGroup hk3 = cohomology_group(k, 3);
        for (std::size_t i = 0; i < hk3.generators.size() && i < 1; ++i)
          z3_shifts.push_back(hk3.generators[i]);
      }

      // the representation ambiguity of the membership witness depends only
      // on the extension, not on F^ or epsilon; compute it lazily per F
      bool fiber_has_h2 = s.rank() > 0 && !cohomology_group(s.as_group(), 2).factors.empty();

      for (auto& f : f_reps) {
        std::optional<std::vector<AbelianCochain>> ambig_cache;
        for (auto& fhat : fhat_reps) {
          Cochain cup = Cochain::from_function(ks, 4, [&](int, std::span<const int> a) {
            std::vector<int> p12{a[0], a[1]}, p34{a[2], a[3]};
            return character_pairing(s, fhat.value(0, p12), f.value(0, p34));
          });
          std::optional<Cochain> eps0;
          if (cup.is_zero()) {
            eps0 = Cochain(ks, 3);
          } else {
            SolveResult r = solve_coboundary(cup);
            if (!r.solution) continue;  // pair does not satisfy the compatibility
            eps0 = r.solution;
          }
          ++stats.pairs_tested;

          std::vector<Cochain> eps_list{*eps0};
          for (auto& z : z3_shifts) eps_list.push_back(*eps0 + z);
          if (k->order() > 1) {
            // a coboundary shift changes the representative but not the data class
            Cochain wshift = Cochain::from_function(ks, 2, [&](int, std::span<const int> a) {
              for (int x : a)
                if (x == FiniteGroup::identity) return CircleValue();
              return CircleValue((a[0] * 3 + a[1]) % 4, 4);
            });
            eps_list.push_back(*eps0 + delta(wshift));
          }

          for (auto& eps : eps_list) {
            ++stats.eps_samples;
            ExplicitPair pair = build_explicit_pair({s, k, f, fhat, eps});
            // both cocycles were validated inside; rerun the checks explicitly
            ACCEPT(is_cocycle(pair.gerbe.alpha), "explicit alpha is not a cocycle");
            ACCEPT(is_cocycle(pair.dual.alpha), "explicit alpha^ is not a cocycle");

            DualityInput input = make_duality_input(pair.gerbe, pair.fiber_elements, pair.chart);
            auto w = omega_membership(input);
            ACCEPT(std::holds_alternative<OmegaWitness>(w), "explicit pair fails membership");

            // the canonical witness recovers [F^] on the nose
            DualExtensionResult canon = extract_dual_extension(input, pair.canonical_witness);
            ACCEPT(classes_equal(canon.f_hat, fhat),
                   "canonical-witness extraction does not recover [F^]");

            // a solver witness recovers [F^] up to the representation class of
            // the membership witness (shifts generated by H^2 of the fiber)
            DualExtensionResult ext = extract_dual_extension(input, std::get<OmegaWitness>(w));
            if (classes_equal(ext.f_hat, fhat)) {
              // recovered directly
            } else {
              ACCEPT(fiber_has_h2, "unambiguous extraction failed to recover [F^]");
              if (!ambig_cache) ambig_cache = representation_ambiguity(input);
              const auto& shifts = *ambig_cache;
              AbelianCochain diff = ext.f_hat - fhat;
              bool matched = false;
              std::function<void(std::size_t, AbelianCochain)> try_shift =
                  [&](std::size_t i, AbelianCochain acc) {
                    if (matched) return;
                    if (i == shifts.size()) {
                      if (classes_equal(diff, acc)) matched = true;
                      return;
                    }
                    for (Int c = 0; c < s.exponent() && !matched; ++c) {
                      try_shift(i + 1, c == 0 ? acc : acc + shifts[i].times(c));
                    }
                  };
              try_shift(0, AbelianCochain(Site::group_site(k), 2, s));
              ACCEPT(matched,
                     "solver-witness extraction differs from [F^] by more than the "
                     "representation ambiguity");
              ++stats.ambiguous_recoveries;
            }

            if (run_double_dual) {
              DoubleDualReport rep = double_dual_check(input, std::get<OmegaWitness>(w));
              ACCEPT(rep.ok, "double dual failed on explicit pair: " + rep.failure);
            }
          }
        }
      }
    }
  }
  log << stats.pairs_tested << " compatible (F, F^) pairs, " << stats.eps_samples
      << " epsilon samples";
  if (stats.ambiguous_recoveries)
    log << " (" << stats.ambiguous_recoveries
        << " solver witnesses recovered [F^] modulo the representation class)";
  return stats;
}

void criterion5(std::ostream& log) {
  Sweep5Stats stats = sweep_explicit(1, 4, 1, 4, false, log);
  ACCEPT(stats.pairs_tested >= 25, "sweep unexpectedly small");
  log << "; cocycle validation and [F^] recovery held throughout";
}

// --- criterion 6 -----------------------------------------------------------

void criterion6(std::ostream& log) {
  std::ostringstream devnull;
  Sweep5Stats stats = sweep_explicit(2, 2, 2, 2, true, devnull);
  ACCEPT(stats.pairs_tested == 4, "expected the four (F, F^) pairs over (Z/2, Z/2)");
  log << "double dual (iso + exact class match) on the |S| = |K| = 2 sweep, " << stats.eps_samples
      << " epsilon samples";
}

// --- criterion 7 -----------------------------------------------------------

void criterion7(std::ostream& log) {
  auto d8 = dihedral8();
  FiniteAbelianGroup s(std::vector<Int>{2});
  BilinearForm b{s, {{CircleValue(1, 2)}}};
  FiniteFiberPair pair = finite_fiber_pair(d8, d8->center(), b, 2);
  ACCEPT(validate_crossed_module(pair.x1), "first module invalid");
  ACCEPT(validate_crossed_module(pair.x2), "second module invalid");
  ACCEPT(pair.coker1_equals_g && pair.four1.pi0->same_table(*d8), "pi0(X1) is not G");
  ACCEPT(abelian_invariants(*pair.four2.pi0).group.factors() == std::vector<Int>({2, 2, 2}),
         "pi0(X2) is not Z/2 x (Z/2 x Z/2)");
  auto pi1a = abelian_invariants(*subgroup_as_group(pair.x1.n, pair.four1.pi1_elements).group);
  auto pi1b = abelian_invariants(*subgroup_as_group(pair.x2.n, pair.four2.pi1_elements).group);
  ACCEPT(pi1a.group.factors() == std::vector<Int>({2}), "pi1(X1) is not the truncated circle");
  ACCEPT(pi1b.group.factors() == std::vector<Int>({2}), "pi1(X2) is not the truncated circle");
  ACCEPT(pair.four1.pi0->is_abelian() != pair.four2.pi0->is_abelian(),
         "the two modules should differ at pi0");
  log << "validated dual crossed modules over the dihedral-type group: pi0 = G vs Z/2 x V4, "
         "pi1 = (1/2)Z/Z, non-isomorphic at pi0";
}

// --- criterion 8 -----------------------------------------------------------

void criterion8(std::ostream& log) {
  std::vector<GroupPtr> groups{FiniteGroup::trivial()};
  for (int m = 2; m <= 8; ++m) groups.push_back(FiniteGroup::cyclic(m));
  groups.push_back(FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)));
  groups.push_back(FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4)));
  groups.push_back(FiniteGroup::direct_product(
      FiniteGroup::cyclic(2), FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2))));
  groups.push_back(FiniteGroup::from_permutations(3, {{1, 2, 0}, {1, 0, 2}}));
  groups.push_back(dihedral8());
  groups.push_back(quaternion8());
  ACCEPT(quaternion8()->order_census()[4] == 6, "quaternion-type census check");

  int gerbes_checked = 0;
  for (auto& g : groups) {
    CohomologyGroup h = cohomology_group(g, 3);
    Site pt = Site::point_site(g);
    Site group_base = Site::group_site(g);

    // the trivial class always has representations, including on the point
    MultiplicativeGerbe triv = trivial_gerbe(g);
    canonical_representation(triv);
    ACCEPT(representation_exists(triv, pt).beta.has_value(), "trivial class lost its point module");

    for (auto& gen : h.generators) {
      MultiplicativeGerbe gerbe = make_gerbe(g, gen);
      ++gerbes_checked;
      canonical_representation(gerbe);  // throws if the defining equation fails
      RepresentationSearch r = representation_exists(gerbe, pt);
      ACCEPT(!r.beta.has_value(), "nontrivial class admitted a point module");
    }
    // a nontrivial-looking coboundary is still representable on the point
    if (g->order() > 1) {
      std::mt19937 rng(g->order());
      std::uniform_int_distribution<Int> num(0, 7);
      Cochain w = Cochain::from_function(group_base, 2, [&](int, std::span<const int> a) {
        for (int x : a)
          if (x == FiniteGroup::identity) return CircleValue();
        return CircleValue(num(rng), 4);
      });
      MultiplicativeGerbe cob = make_gerbe(g, delta(w));
      ++gerbes_checked;
      RepresentationSearch r = representation_exists(cob, pt);
      ACCEPT(r.beta.has_value(), "coboundary class lost its point module");
    }
  }
  log << "canonical representations verified and the point-module criterion held for "
      << gerbes_checked << " gerbes over all 14 groups of order <= 8";
}

// --- criterion 9 -----------------------------------------------------------

void criterion9(std::ostream& log) {
  std::mt19937 rng(20260809);
  int checks = 0;
  auto random_cochain = [&](const Site& s, int degree) {
    std::uniform_int_distribution<Int> num(0, 11), den(1, 6);
    return Cochain::from_function(s, degree, [&](int, std::span<const int>) {
      return CircleValue(num(rng), den(rng));
    });
  };
  auto random_normalized = [&](const Site& s, int degree) {
    std::uniform_int_distribution<Int> num(0, 11), den(1, 4);
    return Cochain::from_function(s, degree, [&](int, std::span<const int> args) {
      for (int a : args)
        if (a == FiniteGroup::identity) return CircleValue();
      return CircleValue(num(rng), den(rng));
    });
  };

  std::vector<Site> sites;
  for (int m : {2, 3, 4, 5, 6}) sites.push_back(Site::group_site(FiniteGroup::cyclic(m)));
  sites.push_back(Site::group_site(FiniteGroup::from_permutations(3, {{1, 2, 0}, {1, 0, 2}})));
  sites.push_back(Site::right_regular(FiniteGroup::cyclic(3)));
  {
    auto z4 = FiniteGroup::cyclic(4);
    Eigen::MatrixXi action(2, 4);
    action << 0, 1, 0, 1, 1, 0, 1, 0;
    sites.push_back(Site::action_site(z4, action));
  }

  // delta o delta = 0 on group and groupoid bases
  for (auto& s : sites)
    for (int deg = 0; deg <= 2; ++deg)
      for (int trial = 0; trial < 2; ++trial) {
        ACCEPT(delta(delta(random_cochain(s, deg))).is_zero(), "delta^2 != 0");
        ++checks;
      }

  // the outer differential squares to zero
  {
    auto z4 = FiniteGroup::cyclic(4);
    auto z2 = FiniteGroup::cyclic(2);
    GroupHom pi{z4, z2, {0, 1, 0, 1}};
    Eigen::MatrixXi action(2, 4);
    for (int k = 0; k < 2; ++k)
      for (int g = 0; g < 4; ++g) action(k, g) = z2->mul(k, pi.image[g]);
    Site s = Site::action_site(z4, action);
    for (int outer = 0; outer <= 1; ++outer)
      for (int trial = 0; trial < 3; ++trial) {
        KValuedCochain f(z2, s, outer, 1);
        for (Int i = 0; i < f.component_count(); ++i) f.component_at(i) = random_cochain(s, 1);
        ACCEPT(d_K(d_K(f)).is_zero(), "d_K^2 != 0");
        ++checks;
      }
  }

  // pullback naturality along a projection and an inclusion
  {
    auto z6 = FiniteGroup::cyclic(6);
    auto z3 = FiniteGroup::cyclic(3);
    GroupHom pi{z6, z3, {0, 1, 2, 0, 1, 2}};
    pi.validate();
    Site s3 = Site::group_site(z3);
    for (int deg = 1; deg <= 2; ++deg)
      for (int trial = 0; trial < 3; ++trial) {
        Cochain f = random_cochain(s3, deg);
        ACCEPT(pullback(delta(f), pi) == delta(pullback(f, pi)), "pullback naturality failed");
        ++checks;
      }
    SubgroupView sub = subgroup_as_group(z6, {0, 2, 4});
    for (int deg = 1; deg <= 2; ++deg) {
      Cochain f = random_cochain(Site::group_site(z6), deg);
      ACCEPT(restrict_to_subgroup(delta(f), sub) == delta(restrict_to_subgroup(f, sub)),
             "restriction naturality failed");
      ++checks;
    }
  }

  // solve round trips: delta b' = delta b exactly
  for (auto& s : sites) {
    if (s.group().order() > 6) continue;
    for (int deg = 1; deg <= 2; ++deg)
      for (int trial = 0; trial < 2; ++trial) {
        Cochain b = random_normalized(s, deg);
        Cochain c = delta(b);
        SolveResult r = solve_coboundary(c);
        ACCEPT(r.solution.has_value(), "round trip solve missed");
        ACCEPT(delta(*r.solution) == c, "round trip solve inexact");
        ++checks;
      }
  }
  log << checks << " property checks, 0 failures";
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "cohomology oracle agreement", 5.0, criterion1},
      {2, "extension classification", 1.0, criterion2},
      {3, "classical Pontrjagin duality", 30.0, criterion3},
      {4, "mutual duality of trivial gerbes", 300.0, criterion4},
      {5, "explicit-formula theorem sweep", 600.0, criterion5},
      {6, "double dual on the small sweep", 600.0, criterion6},
      {7, "finite-fiber crossed modules", 10.0, criterion7},
      {8, "representation criterion", 120.0, criterion8},
      {9, "differential algebra suite", 600.0, criterion9},
  };

  int failures = 0;
  for (auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::ostringstream detail;
    bool ok = true;
    std::string error;
    try {
      c.run(detail);
    } catch (const std::exception& e) {
      ok = false;
      error = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = secs < c.limit_seconds;
    if (!in_time) {
      ok = false;
      error += (error.empty() ? "" : "; ") + std::string("runtime limit exceeded");
    }
    std::printf("criterion %d [%s] %s (%.2fs < %.0fs): %s\n", c.number, ok ? "PASS" : "FAIL",
                c.summary.c_str(), secs, c.limit_seconds, ok ? detail.str().c_str() : error.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures) {
    std::printf("%d criterion(s) FAILED\n", failures);
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
