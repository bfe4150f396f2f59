#pragma once

#include <Eigen/Core>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gerbes/errors.hpp"
#include "gerbes/fraction.hpp"

namespace gerbes {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Finite group given by its full multiplication table over element indices
// 0..order-1, with the identity canonicalized to index 0.
class FiniteGroup {
 public:
  int order() const { return static_cast<int>(table_.rows()); }
  int mul(int a, int b) const { return table_(a, b); }
  int inv(int a) const { return inverse_[a]; }
  static constexpr int identity = 0;

  const Eigen::MatrixXi& table() const { return table_; }
  int element_order(int a) const;
  bool is_abelian() const;
  std::vector<int> center() const;
  std::map<int, int> order_census() const;  // element order -> count
  int conjugate(int n, int e) const { return mul(mul(inv(e), n), e); }

  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels) { labels_ = std::move(labels); }

  bool same_table(const FiniteGroup& o) const { return table_ == o.table_; }

  // Factories.  from_table validates the group axioms and relabels so the
  // identity sits at index 0; the permutation applied (new index -> old
  // index) is reported through *relabeling when requested.
  static GroupPtr from_table(const Eigen::MatrixXi& table, std::vector<int>* relabeling = nullptr);
  static GroupPtr from_permutations(int degree, const std::vector<std::vector<int>>& generators,
                                    Int max_order = 4096);
  static GroupPtr trivial();
  static GroupPtr cyclic(int m);
  static GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b);

 private:
  explicit FiniteGroup(Eigen::MatrixXi table);
  Eigen::MatrixXi table_;
  std::vector<int> inverse_;
  std::vector<std::string> labels_;
};

struct GroupHom {
  GroupPtr source;
  GroupPtr target;
  std::vector<int> image;  // one target index per source element

  int operator()(int x) const { return image[x]; }
  void validate() const;  // multiplicativity and identity
  bool is_bijective() const;
  bool is_surjective() const;
  std::vector<int> kernel() const;
  static GroupHom compose(const GroupHom& second, const GroupHom& first);
};

std::vector<int> commutator_subgroup(const FiniteGroup& g);
bool is_subgroup(const FiniteGroup& g, const std::vector<int>& elements);
bool is_central(const FiniteGroup& g, const std::vector<int>& elements);
std::vector<int> subgroup_closure(const FiniteGroup& g, std::vector<int> generators);

// Subgroup as a group in its own right; element_map[i] is the ambient index
// of the subgroup element i (identity first, then ascending).
struct SubgroupView {
  GroupPtr group;
  std::vector<int> element_map;
  std::vector<int> index_of;  // ambient index -> subgroup index, -1 outside
  GroupHom inclusion;         // subgroup -> ambient
};
SubgroupView subgroup_as_group(const GroupPtr& ambient, std::vector<int> elements);

// Quotient by a normal subgroup: coset group with least-index representatives
// in ascending order (so the identity coset is index 0).
struct QuotientResult {
  GroupPtr quotient;
  GroupHom projection;
  std::vector<int> section;  // coset index -> least ambient representative
};
QuotientResult quotient_by_normal(const GroupPtr& g, const std::vector<int>& normal_elements);

}  // namespace gerbes
