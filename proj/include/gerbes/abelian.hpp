#pragma once

#include <vector>

#include "gerbes/fraction.hpp"
#include "gerbes/group.hpp"

namespace gerbes {

// Finite abelian group in invariant-factor form d1 | d2 | ... | dr, di >= 2.
// Elements are r-tuples of residues, addition componentwise; tuples are also
// addressable by a mixed-radix index (row-major in factor order).
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<Int> factors);

  const std::vector<Int>& factors() const { return factors_; }
  int rank() const { return static_cast<int>(factors_.size()); }
  Int order() const;
  Int exponent() const { return factors_.empty() ? 1 : factors_.back(); }

  std::vector<Int> zero() const { return std::vector<Int>(rank(), 0); }
  std::vector<Int> add(const std::vector<Int>& a, const std::vector<Int>& b) const;
  std::vector<Int> neg(const std::vector<Int>& a) const;
  std::vector<Int> reduce(std::vector<Int> a) const;

  Int index_of(const std::vector<Int>& tuple) const;
  std::vector<Int> tuple_of(Int index) const;

  bool operator==(const FiniteAbelianGroup& o) const { return factors_ == o.factors_; }

  // The group as a multiplication table (identity = tuple 0 = index 0).
  GroupPtr as_group() const;

 private:
  std::vector<Int> factors_;
};

// Character of a finite abelian group, stored by its values on the invariant
// factor generators; value i is a multiple of 1/d_i.
struct Character {
  FiniteAbelianGroup domain;
  std::vector<CircleValue> values_on_generators;

  CircleValue evaluate(const std::vector<Int>& element) const;
  std::vector<Int> as_dual_tuple() const;  // coordinates in the dual group
  static Character from_dual_tuple(const FiniteAbelianGroup& domain, const std::vector<Int>& tuple);
};

struct DualGroup {
  FiniteAbelianGroup group;  // same invariant factors
  std::vector<Character> basis;
};
DualGroup dual_group(const FiniteAbelianGroup& s);

// Evaluation map S -> dual(dual(S)); in invariant-factor coordinates it is
// the identity matrix, which the function also verifies by full pairing.
struct DoubleDualIso {
  FiniteAbelianGroup source;
  bool bijective;
};
DoubleDualIso double_dual_iso(const FiniteAbelianGroup& s);

struct BilinearForm {
  FiniteAbelianGroup domain;
  std::vector<std::vector<CircleValue>> matrix;  // rank x rank, entry (i,j) = b(g_i, g_j)

  CircleValue evaluate(const std::vector<Int>& a, const std::vector<Int>& b) const;
  void validate() const;
};

struct BSharp {
  std::vector<Character> image_of_generators;
  bool is_isomorphism;
  Character apply(const std::vector<Int>& s, const BilinearForm& b) const;
};
BSharp b_sharp(const BilinearForm& b);

// Invariant factors of an abelian FiniteGroup plus the explicit isomorphism
// in both directions.
struct AbelianStructure {
  FiniteAbelianGroup group;
  std::vector<std::vector<Int>> tuple_of_element;  // ambient element -> tuple
  std::vector<int> element_of_index;               // tuple index -> ambient element
};
AbelianStructure abelian_invariants(const FiniteGroup& g);

}  // namespace gerbes
