#include "gerbes/kmodule.hpp"

namespace gerbes {

KValuedCochain::KValuedCochain(GroupPtr outer, Site inner_site, int outer_degree, int inner_degree)
    : outer_(std::move(outer)),
      inner_site_(std::move(inner_site)),
      outer_degree_(outer_degree),
      inner_degree_(inner_degree) {
  if (inner_site_.points() != outer_->order())
    fail(ErrorKind::DomainMismatch, "inner site points must be the outer group");
  Int count = 1;
  for (int i = 0; i < outer_degree_; ++i) count *= outer_->order();
  components_.assign(count, Cochain(inner_site_, inner_degree_));
}

Int KValuedCochain::outer_index(std::span<const int> ks) const {
  Int idx = 0;
  for (int k : ks) idx = idx * outer_->order() + k;
  return idx;
}

const Cochain& KValuedCochain::component(std::span<const int> ks) const {
  return components_[outer_index(ks)];
}

Cochain& KValuedCochain::component(std::span<const int> ks) {
  return components_[outer_index(ks)];
}

bool KValuedCochain::is_zero() const {
  for (const auto& c : components_)
    if (!c.is_zero()) return false;
  return true;
}

bool KValuedCochain::is_normalized() const {
  const int o = outer_->order();
  std::vector<int> ks(outer_degree_);
  for (Int idx = 0; idx < component_count(); ++idx) {
    Int t = idx;
    bool degenerate = false;
    for (int i = outer_degree_ - 1; i >= 0; --i) {
      ks[i] = static_cast<int>(t % o);
      t /= o;
      if (ks[i] == FiniteGroup::identity) degenerate = true;
    }
    if (degenerate && !components_[idx].is_zero()) return false;
    if (!components_[idx].is_normalized()) return false;
  }
  return true;
}

KValuedCochain KValuedCochain::operator-(const KValuedCochain& o) const {
  if (outer_degree_ != o.outer_degree_ || inner_degree_ != o.inner_degree_)
    fail(ErrorKind::DomainMismatch, "outer cochain shape mismatch");
  KValuedCochain out = *this;
  for (Int i = 0; i < component_count(); ++i) out.components_[i] = components_[i] - o.components_[i];
  return out;
}

KValuedCochain d_K(const KValuedCochain& f) {
  const int i = f.outer_degree();
  const int o = f.outer()->order();
  KValuedCochain out(f.outer(), f.inner_site(), i + 1, f.inner_degree());
  const Int sign_rest = (i % 2 == 0) ? -1 : 1;  // (-1)^{i+1}

  std::vector<int> ks(i + 1, 0);
  const Int total = out.component_count();
  for (Int idx = 0; idx < total; ++idx) {
    Int t = idx;
    for (int k = i; k >= 0; --k) {
      ks[k] = static_cast<int>(t % o);
      t /= o;
    }
    // twist face: f(k_1..k_i) * k_{i+1}
    std::vector<int> head(ks.begin(), ks.end() - 1);
    Cochain acc = act_point(f.component(head), ks[i], *f.outer());
    // untwisted faces with the global (-1)^{i+1}
    std::vector<int> face(std::max(i, 0));
    {
      std::vector<int> tail(ks.begin() + 1, ks.end());
      Cochain v = f.component(tail);
      acc = (sign_rest > 0) ? acc + v : acc - v;
    }
    for (int r = 1; r <= i; ++r) {
      for (int k = 0; k < i; ++k)
        face[k] = (k < r - 1) ? ks[k] : (k == r - 1) ? f.outer()->mul(ks[r - 1], ks[r]) : ks[k + 1];
      Int sign = sign_rest * ((r % 2) ? -1 : 1);
      Cochain v = f.component(face);
      acc = (sign > 0) ? acc + v : acc - v;
    }
    out.component_at(idx) = std::move(acc);
  }
  return out;
}

std::optional<std::vector<int>> cocycle_violation(const KValuedCochain& f) {
  KValuedCochain d = d_K(f);
  const int o = f.outer()->order();
  for (Int idx = 0; idx < d.component_count(); ++idx) {
    const Cochain& c = d.component_at(idx);
    for (Int j = 0; j < c.size(); ++j) {
      if (!c[j].is_zero()) {
        std::vector<int> out;
        Int t = idx;
        std::vector<int> ks(d.outer_degree());
        for (int k = d.outer_degree() - 1; k >= 0; --k) {
          ks[k] = static_cast<int>(t % o);
          t /= o;
        }
        out = ks;
        int p;
        std::vector<int> args;
        tuple_decode(c.site(), c.degree(), j, p, args);
        out.push_back(p);
        out.insert(out.end(), args.begin(), args.end());
        return out;
      }
    }
  }
  return std::nullopt;
}

}  // namespace gerbes
