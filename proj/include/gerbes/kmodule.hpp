#pragma once

#include <optional>

#include "gerbes/cochain.hpp"

namespace gerbes {

// Element of C^i(K, C^l(site)): one groupoid cochain per i-tuple of the outer
// group K.  The outer group acts on the inner cochains by translating the
// point, so the inner site's points must be the elements of K.
class KValuedCochain {
 public:
  KValuedCochain()
      : KValuedCochain(FiniteGroup::trivial(), Site::point_site(FiniteGroup::trivial()), 0, 0) {}
  KValuedCochain(GroupPtr outer, Site inner_site, int outer_degree, int inner_degree);

  const GroupPtr& outer() const { return outer_; }
  int outer_degree() const { return outer_degree_; }
  int inner_degree() const { return inner_degree_; }
  const Site& inner_site() const { return inner_site_; }

  Int component_count() const { return static_cast<Int>(components_.size()); }
  Int outer_index(std::span<const int> ks) const;
  const Cochain& component(std::span<const int> ks) const;
  Cochain& component(std::span<const int> ks);
  const Cochain& component_at(Int idx) const { return components_[idx]; }
  Cochain& component_at(Int idx) { return components_[idx]; }

  bool is_zero() const;
  bool is_normalized() const;  // outer identity slots carry zero cochains
  KValuedCochain operator-(const KValuedCochain& o) const;

 private:
  GroupPtr outer_;
  Site inner_site_;
  int outer_degree_;
  int inner_degree_;
  std::vector<Cochain> components_;
};

// Outer differential with the right translation twist on the last face.  The
// sign convention fixes (d_K f)(h) = f*h - f in outer degree 0 and
// (d_K g)(k1,k2) = g(k2) - g(k1 k2) + g(k1)*k2 in outer degree 1, which is
// the pair of shapes the duality pipeline consumes.
KValuedCochain d_K(const KValuedCochain& f);

// First (outer tuple, point, args) where d_K(f) is nonzero.
std::optional<std::vector<int>> cocycle_violation(const KValuedCochain& f);
inline bool is_cocycle(const KValuedCochain& f) { return !cocycle_violation(f).has_value(); }

}  // namespace gerbes
