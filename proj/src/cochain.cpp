#include "gerbes/cochain.hpp"

#include <algorithm>

namespace gerbes {

namespace {
constexpr Int kMaxTuples = 1LL << 24;

// Iterates over all argument tuples of a given degree; invokes fn(point, args).
void for_each_tuple(const Site& s, int degree, const std::function<void(int, std::span<const int>)>& fn) {
  const int o = s.group().order();
  std::vector<int> args(degree, 0);
  for (int p = 0; p < s.points(); ++p) {
    while (true) {
      fn(p, args);
      int i = degree - 1;
      while (i >= 0 && args[i] == o - 1) args[i--] = 0;
      if (i < 0) break;
      ++args[i];
    }
  }
}
}  // namespace

Site::Site(GroupPtr g, Eigen::MatrixXi action, bool group_base)
    : group_(std::move(g)), action_(std::move(action)), group_base_(group_base) {}

Site::Site() : Site(group_site(FiniteGroup::trivial())) {}

Site Site::group_site(GroupPtr g) {
  Eigen::MatrixXi a(1, g->order());
  a.setZero();
  return Site(std::move(g), std::move(a), true);
}

Site Site::point_site(GroupPtr g) {
  Eigen::MatrixXi a(1, g->order());
  a.setZero();
  return Site(std::move(g), std::move(a), false);
}

Site Site::action_site(GroupPtr g, Eigen::MatrixXi action) {
  const int o = g->order();
  const int n = static_cast<int>(action.rows());
  if (action.cols() != o || n == 0) fail(ErrorKind::InvalidAction, "action table shape mismatch");
  for (int p = 0; p < n; ++p) {
    if (action(p, FiniteGroup::identity) != p)
      fail(ErrorKind::InvalidAction, "identity does not fix the points", {p});
    for (int a = 0; a < o; ++a) {
      if (action(p, a) < 0 || action(p, a) >= n) fail(ErrorKind::InvalidAction, "action value out of range", {p, a});
      for (int b = 0; b < o; ++b)
        if (action(action(p, a), b) != action(p, g->mul(a, b)))
          fail(ErrorKind::InvalidAction, "action is not compatible with the product", {p, a, b});
    }
  }
  return Site(std::move(g), std::move(action), false);
}

Site Site::right_regular(GroupPtr g) {
  const int o = g->order();
  Eigen::MatrixXi a(o, o);
  for (int p = 0; p < o; ++p)
    for (int x = 0; x < o; ++x) a(p, x) = g->mul(p, x);
  return Site(std::move(g), std::move(a), false);
}

bool Site::same_as(const Site& o) const {
  return group_->same_table(o.group()) && action_ == o.action_;
}

Int tuple_count(const Site& s, int degree) {
  Int c = s.points();
  for (int i = 0; i < degree; ++i) {
    c *= s.group().order();
    if (c > kMaxTuples) fail(ErrorKind::SizeLimitExceeded, "cochain too large");
  }
  return c;
}

Int tuple_index(const Site& s, int degree, int point, std::span<const int> args) {
  Int idx = point;
  const int o = s.group().order();
  for (int i = 0; i < degree; ++i) idx = idx * o + args[i];
  return idx;
}

void tuple_decode(const Site& s, int degree, Int index, int& point, std::vector<int>& args) {
  const int o = s.group().order();
  args.assign(degree, 0);
  for (int i = degree - 1; i >= 0; --i) {
    args[i] = static_cast<int>(index % o);
    index /= o;
  }
  point = static_cast<int>(index);
}

Cochain::Cochain(Site site, int degree) : site_(std::move(site)), degree_(degree) {
  if (degree < 0) fail(ErrorKind::InvalidInput, "negative cochain degree");
  values_.assign(tuple_count(site_, degree_), CircleValue());
}

const CircleValue& Cochain::at(int point, std::span<const int> args) const {
  return values_[tuple_index(site_, degree_, point, args)];
}

void Cochain::set(int point, std::span<const int> args, CircleValue v) {
  values_[tuple_index(site_, degree_, point, args)] = v;
}

bool Cochain::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const CircleValue& v) { return v.is_zero(); });
}

bool Cochain::is_normalized() const {
  bool ok = true;
  for_each_tuple(site_, degree_, [&](int p, std::span<const int> args) {
    if (!ok) return;
    for (int a : args)
      if (a == FiniteGroup::identity) {
        if (!at(p, args).is_zero()) ok = false;
        return;
      }
  });
  return ok;
}

Int Cochain::value_denominator_lcm() const {
  Int l = 1;
  for (const auto& v : values_) l = lcm64(l, v.denominator());
  return l;
}

Cochain Cochain::operator+(const Cochain& o) const {
  if (!site_.same_as(o.site_) || degree_ != o.degree_) fail(ErrorKind::DomainMismatch, "cochain shape mismatch");
  Cochain out = *this;
  for (Int i = 0; i < size(); ++i) out.values_[i] += o.values_[i];
  return out;
}

Cochain Cochain::operator-(const Cochain& o) const { return *this + (-o); }

Cochain Cochain::operator-() const {
  Cochain out = *this;
  for (auto& v : out.values_) v = -v;
  return out;
}

Cochain Cochain::times(Int k) const {
  Cochain out = *this;
  for (auto& v : out.values_) v = v.times(k);
  return out;
}

bool Cochain::operator==(const Cochain& o) const {
  return site_.same_as(o.site_) && degree_ == o.degree_ && values_ == o.values_;
}

Cochain Cochain::from_function(const Site& site, int degree,
                               const std::function<CircleValue(int, std::span<const int>)>& fn) {
  Cochain out(site, degree);
  for_each_tuple(site, degree, [&](int p, std::span<const int> args) { out.set(p, args, fn(p, args)); });
  return out;
}

Cochain delta(const Cochain& f) {
  const Site& s = f.site();
  const int n = f.degree();
  Cochain out(s, n + 1);
  std::vector<int> face(n);
  Int write = 0;
  for_each_tuple(s, n + 1, [&](int p, std::span<const int> args) {
    CircleValue acc;
    {  // first face: move the point along the first argument
      for (int k = 0; k < n; ++k) face[k] = args[k + 1];
      acc += f.at(s.act(p, args[0]), face);
    }
    for (int i = 1; i <= n; ++i) {
      for (int k = 0; k < n; ++k)
        face[k] = (k < i - 1) ? args[k] : (k == i - 1) ? s.group().mul(args[i - 1], args[i]) : args[k + 1];
      if (i % 2)
        acc -= f.at(p, face);
      else
        acc += f.at(p, face);
    }
    {  // last face: drop the final argument
      for (int k = 0; k < n; ++k) face[k] = args[k];
      CircleValue v = f.at(p, face);
      if ((n + 1) % 2)
        acc -= v;
      else
        acc += v;
    }
    out[write++] = acc;
  });
  return out;
}

std::optional<std::vector<int>> cocycle_violation(const Cochain& f) {
  Cochain d = delta(f);
  for (Int i = 0; i < d.size(); ++i) {
    if (!d[i].is_zero()) {
      int p;
      std::vector<int> args;
      tuple_decode(f.site(), f.degree() + 1, i, p, args);
      std::vector<int> out{p};
      out.insert(out.end(), args.begin(), args.end());
      return out;
    }
  }
  return std::nullopt;
}

Cochain pullback(const Cochain& f, const GroupHom& pi) {
  if (!f.site().is_group_base() || !f.site().group().same_table(*pi.target))
    fail(ErrorKind::DomainMismatch, "pullback target mismatch");
  Site src = Site::group_site(pi.source);
  const int n = f.degree();
  return Cochain::from_function(src, n, [&](int, std::span<const int> args) {
    std::vector<int> mapped(n);
    for (int i = 0; i < n; ++i) mapped[i] = pi.image[args[i]];
    return f.at(0, mapped);
  });
}

Cochain pullback_to_groupoid(const Cochain& alpha, const Site& s) {
  if (!alpha.site().is_group_base() || !alpha.site().group().same_table(s.group()))
    fail(ErrorKind::DomainMismatch, "groupoid pullback group mismatch");
  return Cochain::from_function(s, alpha.degree(),
                                [&](int, std::span<const int> args) { return alpha.at(0, args); });
}

Cochain pullback_along_points(const Cochain& beta_target, const Site& from,
                              const std::vector<int>& point_map) {
  if (static_cast<int>(point_map.size()) != from.points())
    fail(ErrorKind::DomainMismatch, "point map size mismatch");
  return Cochain::from_function(from, beta_target.degree(), [&](int p, std::span<const int> args) {
    return beta_target.at(point_map[p], args);
  });
}

Cochain restrict_to_subgroup(const Cochain& f, const SubgroupView& sub) {
  if (!f.site().is_group_base()) fail(ErrorKind::DomainMismatch, "restriction needs a group base");
  Site dst = Site::group_site(sub.group);
  const int n = f.degree();
  return Cochain::from_function(dst, n, [&](int, std::span<const int> args) {
    std::vector<int> mapped(n);
    for (int i = 0; i < n; ++i) mapped[i] = sub.element_map[args[i]];
    return f.at(0, mapped);
  });
}

Cochain act_point(const Cochain& f, int h, const FiniteGroup& outer) {
  if (f.site().points() != outer.order())
    fail(ErrorKind::DomainMismatch, "translation action needs points indexed by the outer group");
  return Cochain::from_function(f.site(), f.degree(), [&](int p, std::span<const int> args) {
    return f.at(outer.mul(h, p), args);
  });
}

Cochain normalize_cocycle(const Cochain& f) {
  if (cocycle_violation(f)) fail(ErrorKind::NotACocycle, "cannot normalize a non-cocycle");
  Cochain cur = f;
  const int n = cur.degree();
  if (n == 0) return cur;
  for (int pass = 0; pass < 2 * n + 2 && !cur.is_normalized(); ++pass) {
    // first argument slot that still carries identity entries
    int slot = -1;
    for (int i = 0; i < n && slot < 0; ++i) {
      bool dirty = false;
      for_each_tuple(cur.site(), n, [&](int p, std::span<const int> args) {
        if (!dirty && args[i] == FiniteGroup::identity && !cur.at(p, args).is_zero()) dirty = true;
      });
      if (dirty) slot = i;
    }
    if (slot < 0) break;
    // contraction: u(g_1..g_{n-1}) = f(g_1,..,g_{slot-1}, e, g_slot, ..);
    // subtracting or adding its coboundary clears the slot (the sign
    // alternates with the slot position), so try both and keep the one
    // that works
    Cochain u = Cochain::from_function(cur.site(), n - 1, [&](int p, std::span<const int> args) {
      std::vector<int> full(n);
      for (int k = 0; k < n; ++k)
        full[k] = (k < slot) ? args[k] : (k == slot) ? FiniteGroup::identity : args[k - 1];
      return cur.at(p, full);
    });
    Cochain du = delta(u);
    auto slot_clean = [&](const Cochain& c) {
      bool clean = true;
      for_each_tuple(c.site(), n, [&](int p, std::span<const int> args) {
        if (clean && args[slot] == FiniteGroup::identity && !c.at(p, args).is_zero()) clean = false;
      });
      return clean;
    };
    Cochain minus = cur - du;
    if (slot_clean(minus)) {
      cur = std::move(minus);
    } else {
      Cochain plus = cur + du;
      if (!slot_clean(plus))
        fail(ErrorKind::InternalVerificationFailed, "normalization pass stalled");
      cur = std::move(plus);
    }
  }
  if (!cur.is_normalized())
    fail(ErrorKind::InternalVerificationFailed, "normalization did not converge");
  return cur;
}

// ---------------------------------------------------------------------------
// AbelianCochain
// ---------------------------------------------------------------------------

AbelianCochain::AbelianCochain(Site site, int degree, FiniteAbelianGroup coefficients)
    : site_(std::move(site)), degree_(degree), coeffs_(std::move(coefficients)) {
  values_ = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>::Zero(tuple_count(site_, degree_),
                                                                     coeffs_.rank());
}

std::vector<Int> AbelianCochain::value_at(Int index) const {
  std::vector<Int> out(coeffs_.rank());
  for (int j = 0; j < coeffs_.rank(); ++j) out[j] = values_(index, j);
  return out;
}

std::vector<Int> AbelianCochain::value(int point, std::span<const int> args) const {
  return value_at(tuple_index(site_, degree_, point, args));
}

void AbelianCochain::set(int point, std::span<const int> args, const std::vector<Int>& v) {
  set_at(tuple_index(site_, degree_, point, args), v);
}

void AbelianCochain::set_at(Int index, const std::vector<Int>& v) {
  auto r = coeffs_.reduce(v);
  for (int j = 0; j < coeffs_.rank(); ++j) values_(index, j) = r[j];
}

bool AbelianCochain::is_zero() const { return values_.isZero(); }

bool AbelianCochain::is_normalized() const {
  const int o = site_.group().order();
  bool ok = true;
  std::vector<int> args;
  for (Int i = 0; i < size() && ok; ++i) {
    int p;
    tuple_decode(site_, degree_, i, p, args);
    for (int a : args)
      if (a == FiniteGroup::identity) {
        for (int j = 0; j < coeffs_.rank(); ++j)
          if (values_(i, j) != 0) ok = false;
        break;
      }
  }
  (void)o;
  return ok;
}

AbelianCochain AbelianCochain::operator+(const AbelianCochain& o) const {
  if (!site_.same_as(o.site_) || degree_ != o.degree_ || !(coeffs_ == o.coeffs_))
    fail(ErrorKind::DomainMismatch, "abelian cochain shape mismatch");
  AbelianCochain out = *this;
  out.values_ += o.values_;
  for (Int i = 0; i < out.values_.rows(); ++i)
    for (int j = 0; j < coeffs_.rank(); ++j) out.values_(i, j) %= coeffs_.factors()[j];
  return out;
}

AbelianCochain AbelianCochain::operator-(const AbelianCochain& o) const {
  return *this + o.times(-1);
}

AbelianCochain AbelianCochain::times(Int k) const {
  AbelianCochain out = *this;
  for (Int i = 0; i < out.values_.rows(); ++i)
    for (int j = 0; j < coeffs_.rank(); ++j) {
      Int d = coeffs_.factors()[j];
      Int v = (values_(i, j) * (k % d)) % d;
      if (v < 0) v += d;
      out.values_(i, j) = v;
    }
  return out;
}

bool AbelianCochain::operator==(const AbelianCochain& o) const {
  return site_.same_as(o.site_) && degree_ == o.degree_ && coeffs_ == o.coeffs_ &&
         values_ == o.values_;
}

Cochain AbelianCochain::compose_character(const Character& rho) const {
  if (!(rho.domain == coeffs_)) fail(ErrorKind::DomainMismatch, "character domain mismatch");
  Cochain out(site_, degree_);
  for (Int i = 0; i < size(); ++i) out[i] = rho.evaluate(value_at(i));
  return out;
}

AbelianCochain delta(const AbelianCochain& f) {
  const Site& s = f.site();
  const int n = f.degree();
  AbelianCochain out(s, n + 1, f.coefficients());
  const auto& A = f.coefficients();
  std::vector<int> args;
  for (Int idx = 0; idx < out.size(); ++idx) {
    int p;
    tuple_decode(s, n + 1, idx, p, args);
    std::vector<Int> acc = A.zero();
    {
      std::vector<int> rest(args.begin() + 1, args.end());
      acc = A.add(acc, f.value(s.act(p, args[0]), rest));
    }
    std::vector<int> merged(n);
    for (int i = 1; i <= n; ++i) {
      for (int k = 0; k < n; ++k)
        merged[k] = (k < i - 1) ? args[k] : (k == i - 1) ? s.group().mul(args[i - 1], args[i]) : args[k + 1];
      auto v = f.value(p, merged);
      acc = A.add(acc, (i % 2) ? A.neg(v) : v);
    }
    {
      std::vector<int> head(args.begin(), args.end() - 1);
      auto v = f.value(p, head);
      acc = A.add(acc, ((n + 1) % 2) ? A.neg(v) : v);
    }
    out.set_at(idx, acc);
  }
  return out;
}

std::optional<std::vector<int>> cocycle_violation(const AbelianCochain& f) {
  AbelianCochain d = delta(f);
  for (Int i = 0; i < d.size(); ++i) {
    auto v = d.value_at(i);
    bool nz = std::any_of(v.begin(), v.end(), [](Int x) { return x != 0; });
    if (nz) {
      int p;
      std::vector<int> args;
      tuple_decode(f.site(), f.degree() + 1, i, p, args);
      std::vector<int> out{p};
      out.insert(out.end(), args.begin(), args.end());
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace gerbes
