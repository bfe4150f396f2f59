#include "gerbes/abelian.hpp"

#include <algorithm>
#include <deque>
#include <optional>

#include "gerbes/smith.hpp"

namespace gerbes {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<Int> factors) : factors_(std::move(factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2) fail(ErrorKind::InvalidInput, "invariant factors must be >= 2");
    if (i > 0 && factors_[i] % factors_[i - 1] != 0)
      fail(ErrorKind::InvalidInput, "invariant factors must form a divisibility chain");
  }
}

Int FiniteAbelianGroup::order() const {
  Int o = 1;
  for (Int d : factors_) {
    if (o > (1LL << 40)) fail(ErrorKind::SizeLimitExceeded, "abelian group too large");
    o *= d;
  }
  return o;
}

std::vector<Int> FiniteAbelianGroup::add(const std::vector<Int>& a, const std::vector<Int>& b) const {
  std::vector<Int> out(rank());
  for (int i = 0; i < rank(); ++i) out[i] = (a[i] + b[i]) % factors_[i];
  return out;
}

std::vector<Int> FiniteAbelianGroup::neg(const std::vector<Int>& a) const {
  std::vector<Int> out(rank());
  for (int i = 0; i < rank(); ++i) out[i] = (factors_[i] - a[i]) % factors_[i];
  return out;
}

std::vector<Int> FiniteAbelianGroup::reduce(std::vector<Int> a) const {
  for (int i = 0; i < rank(); ++i) {
    a[i] %= factors_[i];
    if (a[i] < 0) a[i] += factors_[i];
  }
  return a;
}

Int FiniteAbelianGroup::index_of(const std::vector<Int>& tuple) const {
  Int idx = 0;
  for (int i = 0; i < rank(); ++i) idx = idx * factors_[i] + tuple[i];
  return idx;
}

std::vector<Int> FiniteAbelianGroup::tuple_of(Int index) const {
  std::vector<Int> out(rank());
  for (int i = rank() - 1; i >= 0; --i) {
    out[i] = index % factors_[i];
    index /= factors_[i];
  }
  return out;
}

GroupPtr FiniteAbelianGroup::as_group() const {
  const Int n = order();
  Eigen::MatrixXi t(n, n);
  for (Int a = 0; a < n; ++a) {
    auto ta = tuple_of(a);
    for (Int b = 0; b < n; ++b) t(a, b) = static_cast<int>(index_of(add(ta, tuple_of(b))));
  }
  return FiniteGroup::from_table(t);
}

CircleValue Character::evaluate(const std::vector<Int>& element) const {
  if (element.size() != values_on_generators.size())
    fail(ErrorKind::DomainMismatch, "character/element rank mismatch");
  CircleValue out;
  for (std::size_t i = 0; i < element.size(); ++i) out += values_on_generators[i].times(element[i]);
  return out;
}

std::vector<Int> Character::as_dual_tuple() const {
  std::vector<Int> out(values_on_generators.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const CircleValue& v = values_on_generators[i];
    Int d = domain.factors()[i];
    if (d % v.denominator() != 0)
      fail(ErrorKind::RestrictionNotCharacter, "value order does not divide the invariant factor");
    out[i] = v.numerator() * (d / v.denominator()) % d;
  }
  return out;
}

Character Character::from_dual_tuple(const FiniteAbelianGroup& domain, const std::vector<Int>& tuple) {
  Character out{domain, {}};
  out.values_on_generators.reserve(domain.rank());
  for (int i = 0; i < domain.rank(); ++i)
    out.values_on_generators.push_back(CircleValue(tuple[i], domain.factors()[i]));
  return out;
}

DualGroup dual_group(const FiniteAbelianGroup& s) {
  DualGroup out;
  out.group = s;  // same invariant factors
  for (int i = 0; i < s.rank(); ++i) {
    Character c{s, std::vector<CircleValue>(s.rank())};
    c.values_on_generators[i] = CircleValue(1, s.factors()[i]);
    out.basis.push_back(std::move(c));
  }
  return out;
}

DoubleDualIso double_dual_iso(const FiniteAbelianGroup& s) {
  DoubleDualIso out{s, true};
  // evaluation pairing on all |S| x |S^| pairs; the matrix of the map in
  // invariant-factor coordinates must be the identity
  DualGroup dual = dual_group(s);
  const Int n = s.order();
  for (Int a = 1; a < n; ++a) {
    auto ta = s.tuple_of(a);
    bool nonzero = false;
    for (Int b = 0; b < n; ++b) {
      Character rho = Character::from_dual_tuple(s, s.tuple_of(b));
      if (!rho.evaluate(ta).is_zero()) nonzero = true;
    }
    if (!nonzero) out.bijective = false;  // nondegeneracy failure (cannot happen)
  }
  return out;
}

CircleValue BilinearForm::evaluate(const std::vector<Int>& a, const std::vector<Int>& b) const {
  CircleValue out;
  for (int i = 0; i < domain.rank(); ++i)
    for (int j = 0; j < domain.rank(); ++j) out += matrix[i][j].times(a[i] * b[j]);
  return out;
}

void BilinearForm::validate() const {
  if (static_cast<int>(matrix.size()) != domain.rank())
    fail(ErrorKind::InvalidInput, "bilinear form matrix rank mismatch");
  for (int i = 0; i < domain.rank(); ++i) {
    if (static_cast<int>(matrix[i].size()) != domain.rank())
      fail(ErrorKind::InvalidInput, "bilinear form matrix rank mismatch");
    for (int j = 0; j < domain.rank(); ++j) {
      if (!matrix[i][j].times(domain.factors()[i]).is_zero() ||
          !matrix[i][j].times(domain.factors()[j]).is_zero())
        fail(ErrorKind::InvalidInput, "bilinear form entry order incompatible with factors", {i, j});
    }
  }
}

BSharp b_sharp(const BilinearForm& b) {
  b.validate();
  const auto& s = b.domain;
  BSharp out;
  for (int i = 0; i < s.rank(); ++i) {
    Character c{s, std::vector<CircleValue>(s.rank())};
    for (int j = 0; j < s.rank(); ++j) c.values_on_generators[j] = b.matrix[i][j];
    out.image_of_generators.push_back(std::move(c));
  }
  out.is_isomorphism = true;
  const Int n = s.order();
  for (Int a = 1; a < n; ++a) {
    auto ta = s.tuple_of(a);
    bool allzero = true;
    for (Int x = 0; x < n && allzero; ++x)
      if (!b.evaluate(ta, s.tuple_of(x)).is_zero()) allzero = false;
    if (allzero) {
      out.is_isomorphism = false;
      break;
    }
  }
  return out;
}

Character BSharp::apply(const std::vector<Int>& s, const BilinearForm& b) const {
  Character c{b.domain, std::vector<CircleValue>(b.domain.rank())};
  for (int j = 0; j < b.domain.rank(); ++j) {
    CircleValue v;
    for (int i = 0; i < b.domain.rank(); ++i) v += b.matrix[i][j].times(s[i]);
    c.values_on_generators[j] = v;
  }
  return c;
}

AbelianStructure abelian_invariants(const FiniteGroup& g) {
  const int n = g.order();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (g.mul(a, b) != g.mul(b, a)) fail(ErrorKind::NotAbelian, "group is not abelian", {a, b});

  AbelianStructure out;
  if (n == 1) {
    out.group = FiniteAbelianGroup(std::vector<Int>{});
    out.tuple_of_element = {{}};
    out.element_of_index = {0};
    return out;
  }

  // greedy generating sequence
  std::vector<int> gens;
  {
    std::vector<int> closure{FiniteGroup::identity};
    std::vector<char> in_closure(n, 0);
    in_closure[0] = 1;
    for (int x = 1; x < n; ++x) {
      if (in_closure[x]) continue;
      gens.push_back(x);
      auto cl = subgroup_closure(g, [&] {
        std::vector<int> gg = gens;
        return gg;
      }());
      std::fill(in_closure.begin(), in_closure.end(), 0);
      for (int y : cl) in_closure[y] = 1;
    }
  }
  const int r = static_cast<int>(gens.size());

  // coefficient vectors by breadth-first expansion
  std::vector<std::optional<std::vector<Int>>> coeff(n);
  coeff[0] = std::vector<Int>(r, 0);
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int i = 0; i < r; ++i) {
      int y = g.mul(x, gens[i]);
      if (!coeff[y]) {
        auto c = *coeff[x];
        c[i] += 1;
        coeff[y] = std::move(c);
        queue.push_back(y);
      }
    }
  }

  // Schreier relations generate the kernel of Z^r -> G
  std::vector<IVector> rels;
  for (int x = 0; x < n; ++x)
    for (int i = 0; i < r; ++i) {
      int y = g.mul(x, gens[i]);
      IVector rel(r);
      for (int k = 0; k < r; ++k) rel(k) = (*coeff[x])[k] - (*coeff[y])[k];
      rel(i) += 1;
      if (rel.any()) rels.push_back(rel);
    }
  IMatrix R(r, std::max<std::size_t>(rels.size(), 1));
  R.setZero();
  for (std::size_t j = 0; j < rels.size(); ++j) R.col(static_cast<int>(j)) = rels[j];

  DenseSmith s = smith_dense(R);
  if (s.rank < r) fail(ErrorKind::InternalVerificationFailed, "relation lattice not full rank");
  std::vector<int> kept;
  std::vector<Int> factors;
  for (int i = 0; i < r; ++i)
    if (s.diagonal[i] > 1) {
      kept.push_back(i);
      factors.push_back(s.diagonal[i]);
    }
  out.group = FiniteAbelianGroup(factors);
  if (out.group.order() != n) fail(ErrorKind::InternalVerificationFailed, "invariant factor order mismatch");

  // element -> tuple via y = P c(x), keeping the coordinates of the kept slots
  out.tuple_of_element.assign(n, {});
  out.element_of_index.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    std::vector<Int> tuple(kept.size());
    for (std::size_t k = 0; k < kept.size(); ++k) {
      Int acc = 0;
      for (int j = 0; j < r; ++j) acc += s.P(kept[k], j) * (*coeff[x])[j];
      Int d = factors[k];
      acc %= d;
      if (acc < 0) acc += d;
      tuple[k] = acc;
    }
    out.tuple_of_element[x] = tuple;
    Int idx = out.group.index_of(tuple);
    if (out.element_of_index[idx] != -1)
      fail(ErrorKind::InternalVerificationFailed, "invariant factor coordinates not injective");
    out.element_of_index[idx] = x;
  }
  return out;
}

}  // namespace gerbes
