#include "gerbes/group.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gerbes {

FiniteGroup::FiniteGroup(Eigen::MatrixXi table) : table_(std::move(table)) {
  const int n = static_cast<int>(table_.rows());
  inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (table_(a, b) == identity) inverse_[a] = b;
}

int FiniteGroup::element_order(int a) const {
  int x = a, k = 1;
  while (x != identity) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

bool FiniteGroup::is_abelian() const {
  const int n = order();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::vector<int> FiniteGroup::center() const {
  std::vector<int> out;
  const int n = order();
  for (int a = 0; a < n; ++a) {
    bool central = true;
    for (int b = 0; b < n && central; ++b)
      if (mul(a, b) != mul(b, a)) central = false;
    if (central) out.push_back(a);
  }
  return out;
}

std::map<int, int> FiniteGroup::order_census() const {
  std::map<int, int> out;
  for (int a = 0; a < order(); ++a) out[element_order(a)]++;
  return out;
}

GroupPtr FiniteGroup::from_table(const Eigen::MatrixXi& table, std::vector<int>* relabeling) {
  const int n = static_cast<int>(table.rows());
  if (n == 0 || table.cols() != n) fail(ErrorKind::InvalidInput, "multiplication table must be square and nonempty");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (table(a, b) < 0 || table(a, b) >= n)
        fail(ErrorKind::InvalidInput, "table entry out of range", {a, b});

  // locate a two-sided identity
  int e = -1;
  for (int cand = 0; cand < n && e < 0; ++cand) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      if (table(cand, x) != x || table(x, cand) != x) ok = false;
    if (ok) e = cand;
  }
  if (e < 0) fail(ErrorKind::NoIdentity, "no two-sided identity element");

  // rows and columns must be permutations (inverses exist)
  for (int a = 0; a < n; ++a) {
    std::vector<char> seen_row(n, 0), seen_col(n, 0);
    for (int b = 0; b < n; ++b) {
      if (seen_row[table(a, b)]++) fail(ErrorKind::NotInvertible, "row is not a permutation", {a});
      if (seen_col[table(b, a)]++) fail(ErrorKind::NotInvertible, "column is not a permutation", {a});
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table(table(a, b), c) != table(a, table(b, c)))
          fail(ErrorKind::NotAssociative, "associativity fails", {a, b, c});

  // canonicalize identity to index 0 by swapping labels 0 <-> e
  std::vector<int> new_to_old(n);
  for (int i = 0; i < n; ++i) new_to_old[i] = i;
  std::swap(new_to_old[0], new_to_old[e]);
  std::vector<int> old_to_new(n);
  for (int i = 0; i < n; ++i) old_to_new[new_to_old[i]] = i;
  Eigen::MatrixXi relabeled(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      relabeled(a, b) = old_to_new[table(new_to_old[a], new_to_old[b])];
  if (relabeling) *relabeling = new_to_old;
  return GroupPtr(new FiniteGroup(std::move(relabeled)));
}

GroupPtr FiniteGroup::from_permutations(int degree, const std::vector<std::vector<int>>& generators,
                                        Int max_order) {
  if (degree <= 0) fail(ErrorKind::InvalidInput, "degree must be positive");
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != degree) fail(ErrorKind::InvalidInput, "generator arity mismatch");
    std::vector<char> seen(degree, 0);
    for (int v : g) {
      if (v < 0 || v >= degree || seen[v]++) fail(ErrorKind::InvalidInput, "generator is not a permutation");
    }
  }
  std::vector<int> id(degree);
  for (int i = 0; i < degree; ++i) id[i] = i;

  // breadth-first closure, deterministic element order
  std::vector<std::vector<int>> elements{id};
  std::map<std::vector<int>, int> index{{id, 0}};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& g : generators) {
      std::vector<int> prod(degree);
      for (int i = 0; i < degree; ++i) prod[i] = g[elements[head][i]];
      if (!index.count(prod)) {
        if (static_cast<Int>(elements.size()) + 1 > max_order)
          fail(ErrorKind::OrderLimitExceeded, "group order exceeds cap", {max_order});
        index[prod] = static_cast<int>(elements.size());
        elements.push_back(prod);
      }
    }
  }
  const int n = static_cast<int>(elements.size());
  Eigen::MatrixXi table(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<int> prod(degree);
      for (int i = 0; i < degree; ++i) prod[i] = elements[b][elements[a][i]];  // right action: (a*b)(i) = b(a(i))
      table(a, b) = index.at(prod);
    }
  return GroupPtr(new FiniteGroup(std::move(table)));
}

GroupPtr FiniteGroup::trivial() {
  Eigen::MatrixXi t(1, 1);
  t(0, 0) = 0;
  return GroupPtr(new FiniteGroup(std::move(t)));
}

GroupPtr FiniteGroup::cyclic(int m) {
  if (m <= 0) fail(ErrorKind::InvalidInput, "cyclic order must be positive");
  Eigen::MatrixXi t(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) t(a, b) = (a + b) % m;
  return GroupPtr(new FiniteGroup(std::move(t)));
}

GroupPtr FiniteGroup::direct_product(const GroupPtr& a, const GroupPtr& b) {
  const int na = a->order(), nb = b->order();
  Eigen::MatrixXi t(na * nb, na * nb);
  auto enc = [&](int x, int y) { return x * nb + y; };
  for (int x1 = 0; x1 < na; ++x1)
    for (int y1 = 0; y1 < nb; ++y1)
      for (int x2 = 0; x2 < na; ++x2)
        for (int y2 = 0; y2 < nb; ++y2)
          t(enc(x1, y1), enc(x2, y2)) = enc(a->mul(x1, x2), b->mul(y1, y2));
  return GroupPtr(new FiniteGroup(std::move(t)));
}

void GroupHom::validate() const {
  if (static_cast<int>(image.size()) != source->order())
    fail(ErrorKind::InvalidInput, "homomorphism image size mismatch");
  for (int v : image)
    if (v < 0 || v >= target->order()) fail(ErrorKind::InvalidInput, "homomorphism value out of range");
  if (image[FiniteGroup::identity] != FiniteGroup::identity)
    fail(ErrorKind::InvalidInput, "homomorphism does not fix the identity");
  for (int x = 0; x < source->order(); ++x)
    for (int y = 0; y < source->order(); ++y)
      if (image[source->mul(x, y)] != target->mul(image[x], image[y]))
        fail(ErrorKind::InvalidInput, "map is not a homomorphism", {x, y});
}

bool GroupHom::is_bijective() const {
  if (source->order() != target->order()) return false;
  std::vector<char> seen(target->order(), 0);
  for (int v : image)
    if (seen[v]++) return false;
  return true;
}

bool GroupHom::is_surjective() const {
  std::vector<char> seen(target->order(), 0);
  for (int v : image) seen[v] = 1;
  for (char c : seen)
    if (!c) return false;
  return true;
}

std::vector<int> GroupHom::kernel() const {
  std::vector<int> out;
  for (int x = 0; x < source->order(); ++x)
    if (image[x] == FiniteGroup::identity) out.push_back(x);
  return out;
}

GroupHom GroupHom::compose(const GroupHom& second, const GroupHom& first) {
  GroupHom out{first.source, second.target, {}};
  out.image.resize(first.source->order());
  for (int x = 0; x < first.source->order(); ++x) out.image[x] = second.image[first.image[x]];
  return out;
}

bool is_subgroup(const FiniteGroup& g, const std::vector<int>& elements) {
  std::set<int> s(elements.begin(), elements.end());
  if (!s.count(FiniteGroup::identity)) return false;
  for (int a : s)
    for (int b : s)
      if (!s.count(g.mul(a, b))) return false;
  return true;
}

bool is_central(const FiniteGroup& g, const std::vector<int>& elements) {
  for (int a : elements)
    for (int b = 0; b < g.order(); ++b)
      if (g.mul(a, b) != g.mul(b, a)) return false;
  return true;
}

std::vector<int> subgroup_closure(const FiniteGroup& g, std::vector<int> generators) {
  std::set<int> s{FiniteGroup::identity};
  for (int x : generators) s.insert(x);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> cur(s.begin(), s.end());
    for (int a : cur)
      for (int b : cur)
        if (s.insert(g.mul(a, b)).second) grew = true;
  }
  return {s.begin(), s.end()};
}

SubgroupView subgroup_as_group(const GroupPtr& ambient, std::vector<int> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (!is_subgroup(*ambient, elements))
    fail(ErrorKind::NotSubgroup, "element set is not a subgroup");
  const int m = static_cast<int>(elements.size());
  SubgroupView out;
  out.element_map = elements;  // identity = 0 is the least ambient index
  out.index_of.assign(ambient->order(), -1);
  for (int i = 0; i < m; ++i) out.index_of[elements[i]] = i;
  Eigen::MatrixXi t(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) t(i, j) = out.index_of[ambient->mul(elements[i], elements[j])];
  out.group = FiniteGroup::from_table(t);
  out.inclusion = GroupHom{out.group, ambient, out.element_map};
  return out;
}

std::vector<int> commutator_subgroup(const FiniteGroup& g) {
  std::vector<int> gens;
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      gens.push_back(g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b)));
  return subgroup_closure(g, gens);
}

QuotientResult quotient_by_normal(const GroupPtr& g, const std::vector<int>& normal_elements) {
  if (!is_subgroup(*g, normal_elements)) fail(ErrorKind::NotSubgroup, "quotient by a non-subgroup");
  std::set<int> nset(normal_elements.begin(), normal_elements.end());
  for (int x = 0; x < g->order(); ++x)
    for (int n : nset)
      if (!nset.count(g->mul(g->mul(g->inv(x), n), x)))
        fail(ErrorKind::NotSubgroup, "subgroup is not normal", {n, x});

  const int n = g->order();
  std::vector<int> coset_of(n, -1);
  std::vector<int> reps;
  for (int x = 0; x < n; ++x) {
    if (coset_of[x] >= 0) continue;
    int c = static_cast<int>(reps.size());
    reps.push_back(x);  // least index in the coset, since we scan ascending
    for (int s : nset) coset_of[g->mul(s, x)] = c;  // left cosets Nx = xN by normality
  }
  const int k = static_cast<int>(reps.size());
  Eigen::MatrixXi t(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) t(i, j) = coset_of[g->mul(reps[i], reps[j])];
  QuotientResult out;
  out.quotient = FiniteGroup::from_table(t);
  out.section = reps;
  out.projection = GroupHom{g, out.quotient, coset_of};
  return out;
}

}  // namespace gerbes
