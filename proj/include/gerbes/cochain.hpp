#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gerbes/abelian.hpp"
#include "gerbes/fraction.hpp"
#include "gerbes/group.hpp"

namespace gerbes {

// Base of a cochain complex: a finite right G-set given by an action table.
// A one-point site with the trivial action presents the bar complex of the
// group itself; a multi-point site presents the action groupoid complex
// (cochains take one point plus l group arguments).
class Site {
 public:
  Site();  // one-point site over the trivial group (placeholder default)
  static Site group_site(GroupPtr g);
  static Site point_site(GroupPtr g);  // one-point groupoid base
  static Site action_site(GroupPtr g, Eigen::MatrixXi action);
  static Site right_regular(GroupPtr g);

  int points() const { return static_cast<int>(action_.rows()); }
  const FiniteGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  int act(int p, int g) const { return action_(p, g); }
  const Eigen::MatrixXi& action() const { return action_; }
  bool is_group_base() const { return group_base_; }

  bool same_as(const Site& o) const;

 private:
  Site(GroupPtr g, Eigen::MatrixXi action, bool group_base);
  GroupPtr group_;
  Eigen::MatrixXi action_;
  bool group_base_;
};

// Tuple bookkeeping shared by all cochain kinds: a degree-n cochain has one
// value per (point, g_1, ..., g_n).  Indexing is point-major, then argument
// slots left to right.
Int tuple_count(const Site& s, int degree);
Int tuple_index(const Site& s, int degree, int point, std::span<const int> args);
void tuple_decode(const Site& s, int degree, Int index, int& point, std::vector<int>& args);

// Q/Z-valued cochain, stored densely over all tuples.
class Cochain {
 public:
  Cochain() : Cochain(Site(), 0) {}
  Cochain(Site site, int degree);

  const Site& site() const { return site_; }
  int degree() const { return degree_; }
  Int size() const { return static_cast<Int>(values_.size()); }
  const CircleValue& operator[](Int i) const { return values_[i]; }
  CircleValue& operator[](Int i) { return values_[i]; }
  const CircleValue& at(int point, std::span<const int> args) const;
  void set(int point, std::span<const int> args, CircleValue v);

  bool is_zero() const;
  bool is_normalized() const;  // vanishes whenever a group argument is the identity
  Int value_denominator_lcm() const;

  Cochain operator+(const Cochain& o) const;
  Cochain operator-(const Cochain& o) const;
  Cochain operator-() const;
  Cochain times(Int k) const;
  bool operator==(const Cochain& o) const;

  static Cochain from_function(const Site& site, int degree,
                               const std::function<CircleValue(int, std::span<const int>)>& fn);

 private:
  Site site_;
  int degree_;
  std::vector<CircleValue> values_;
};

// Simplicial differential; for a one-point site this is the inhomogeneous
// bar differential, in general the action groupoid differential.
Cochain delta(const Cochain& f);

// First tuple (point, args) on which delta(f) is nonzero, in index order.
std::optional<std::vector<int>> cocycle_violation(const Cochain& f);
inline bool is_cocycle(const Cochain& f) { return !cocycle_violation(f).has_value(); }

// f on the group base of K, pi : G -> K; result on the group base of G.
Cochain pullback(const Cochain& f, const GroupHom& pi);
// alpha on the group base of s.group(); result on s, ignoring the point.
Cochain pullback_to_groupoid(const Cochain& alpha, const Site& s);
// beta' on the site of N'; point_map : N -> N' equivariant; result on `from`.
Cochain pullback_along_points(const Cochain& beta_target, const Site& from,
                              const std::vector<int>& point_map);
// f on a group base; restriction to the subgroup presented by `sub`.
Cochain restrict_to_subgroup(const Cochain& f, const SubgroupView& sub);
// Right translation action on groupoid cochains whose points are the
// elements of `outer`: (f*h)(k; ...) = f(h k; ...).
Cochain act_point(const Cochain& f, int h, const FiniteGroup& outer);

// Cohomologous normalized representative of a cocycle (identity-argument
// slots cleared by subtracting coboundaries of degeneracy contractions).
Cochain normalize_cocycle(const Cochain& f);

// Cochain valued in a finite abelian group (componentwise residues).
class AbelianCochain {
 public:
  AbelianCochain() : AbelianCochain(Site(), 0, FiniteAbelianGroup()) {}
  AbelianCochain(Site site, int degree, FiniteAbelianGroup coefficients);

  const Site& site() const { return site_; }
  int degree() const { return degree_; }
  const FiniteAbelianGroup& coefficients() const { return coeffs_; }
  Int size() const { return values_.rows(); }

  std::vector<Int> value_at(Int index) const;
  std::vector<Int> value(int point, std::span<const int> args) const;
  void set(int point, std::span<const int> args, const std::vector<Int>& v);
  void set_at(Int index, const std::vector<Int>& v);

  bool is_zero() const;
  bool is_normalized() const;
  AbelianCochain operator+(const AbelianCochain& o) const;
  AbelianCochain operator-(const AbelianCochain& o) const;
  AbelianCochain times(Int k) const;
  bool operator==(const AbelianCochain& o) const;

  // Componentwise postcomposition with a character of the coefficients.
  Cochain compose_character(const Character& rho) const;

 private:
  Site site_;
  int degree_;
  FiniteAbelianGroup coeffs_;
  Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic> values_;  // tuples x rank
};

AbelianCochain delta(const AbelianCochain& f);
std::optional<std::vector<int>> cocycle_violation(const AbelianCochain& f);
inline bool is_cocycle(const AbelianCochain& f) { return !cocycle_violation(f).has_value(); }

}  // namespace gerbes
