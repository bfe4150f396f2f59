#pragma once

#include "gerbes/abelian.hpp"
#include "gerbes/cochain.hpp"

namespace gerbes {

// Data of a central extension S -> G -> K: the fiber in invariant-factor
// form, the base, and a normalized S-valued 2-cocycle on the base.
struct CentralExtensionData {
  FiniteAbelianGroup fiber;
  GroupPtr base;
  AbelianCochain transgression;  // degree 2 on the group base of `base`, valued in `fiber`
};

// Assembled total group: elements are pairs (s, k) flattened as
// s_index * |K| + k, so the fiber section k -> (0, k) is index-preserving and
// cosets of the fiber have their base element as least representative.
struct CentralExtension {
  CentralExtensionData data;
  GroupPtr total;
  GroupPtr fiber_group;  // the fiber as a table group (tuple index order)
  GroupHom iota;         // fiber_group -> total
  GroupHom projection;   // total -> base
  std::vector<int> section;

  int encode(Int s_index, int k) const { return static_cast<int>(s_index) * data.base->order() + k; }
  Int s_index(int g) const { return g / data.base->order(); }
  std::vector<Int> s_tuple(int g) const { return data.fiber.tuple_of(s_index(g)); }
  int k_part(int g) const { return g % data.base->order(); }
};

CentralExtension central_extension(const CentralExtensionData& data, Int max_order = 4096);

// Quotient of a group by a central subgroup, with the least-index section and
// the induced transgression cocycle expressed in the fiber's invariant-factor
// coordinates.
struct CentralQuotient {
  SubgroupView fiber;              // S as a subgroup of G
  AbelianStructure fiber_abelian;  // invariant factors of S plus the coordinate maps
  GroupPtr quotient;               // K
  GroupHom projection;             // G -> K
  std::vector<int> section;        // K -> G, least ambient index per coset
  AbelianCochain transgression;    // F in Z^2(K, S)
};

CentralQuotient quotient_by_central(const GroupPtr& g, const std::vector<int>& fiber_elements);

}  // namespace gerbes
