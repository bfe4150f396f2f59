#pragma once

#include "gerbes/cohomology.hpp"

namespace gerbes {

// A finite group together with a validated normalized 3-cocycle.
struct MultiplicativeGerbe {
  GroupPtr group;
  Cochain alpha;  // degree 3 on the group base, normalized
};

// Validates the cocycle condition and stores a normalized representative
// (non-normalized cocycle input is replaced by a cohomologous normalized one).
MultiplicativeGerbe make_gerbe(GroupPtr g, Cochain alpha);

struct GerbeRepresentation {
  MultiplicativeGerbe gerbe;
  Site space;     // finite right G-set
  Cochain beta;   // degree 2 on the space, with delta beta = pullback of alpha
};

// The group acting on itself by right multiplication, with the 2-cochain
// obtained by reading the first cocycle slot as the point.  The defining
// equation is verified exactly before returning.
GerbeRepresentation canonical_representation(const MultiplicativeGerbe& g);

// Witness beta with delta beta = pullback of alpha, if one exists at the
// solving level.
struct RepresentationSearch {
  std::optional<Cochain> beta;
  Int level = 0;
};
RepresentationSearch representation_exists(const MultiplicativeGerbe& g, const Site& space,
                                           const SolveOptions& opts = {});

// Number of isomorphism classes of representations on the given space
// (order of the degree-2 cohomology of the action groupoid).
Int count_representation_classes(const MultiplicativeGerbe& g, const Site& space,
                                 const SolveOptions& opts = {});

struct RepMorphism {
  std::vector<int> point_map;  // equivariant map between the spaces
  Cochain gamma;               // degree 1 on the source space
};

// Checks beta - F*beta' = delta gamma exactly; returns the first violating
// tuple (point, args...) or nothing when the morphism is valid.  Equivariance
// failures raise NotEquivariant.
std::optional<std::vector<int>> rep_morphism_violation(const GerbeRepresentation& source,
                                                       const GerbeRepresentation& target,
                                                       const RepMorphism& m);
inline bool validate_rep_morphism(const GerbeRepresentation& source,
                                  const GerbeRepresentation& target, const RepMorphism& m) {
  return !rep_morphism_violation(source, target, m).has_value();
}

// (F', gamma') o (F, gamma) = (F' o F, gamma + F* gamma').
RepMorphism compose_rep_morphisms(const RepMorphism& second, const RepMorphism& first,
                                  const Site& source_space);

}  // namespace gerbes
