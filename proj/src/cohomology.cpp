#include "gerbes/cohomology.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace gerbes {

namespace {

Int norm_count(const Site& s, int degree) {
  Int c = s.points();
  for (int i = 0; i < degree; ++i) c *= (s.group().order() - 1);
  return c;
}

Int norm_index(const Site& s, int degree, int point, std::span<const int> args) {
  const int r = s.group().order() - 1;
  Int idx = point;
  for (int i = 0; i < degree; ++i) idx = idx * r + (args[i] - 1);
  return idx;
}

Int full_index(const Site& s, int degree, int point, std::span<const int> args) {
  return tuple_index(s, degree, point, args);
}

// iterate tuples of the given coordinate set
void for_each_coord(const Site& s, int degree, bool normalized,
                    const std::function<void(Int, int, std::span<const int>)>& fn) {
  const int o = s.group().order();
  const int lo = normalized ? 1 : 0;
  if (degree > 0 && lo > o - 1) return;  // empty coordinate set (trivial group)
  std::vector<int> args(degree, lo);
  Int idx = 0;
  for (int p = 0; p < s.points(); ++p) {
    std::fill(args.begin(), args.end(), lo);
    while (true) {
      fn(idx++, p, args);
      int i = degree - 1;
      while (i >= 0 && args[i] == o - 1) args[i--] = lo;
      if (i < 0) break;
      ++args[i];
    }
  }
}

bool tuple_has_identity(std::span<const int> args) {
  return std::any_of(args.begin(), args.end(), [](int a) { return a == FiniteGroup::identity; });
}

IMatrix to_dense(const DeltaMatrix& m) {
  IMatrix out = IMatrix::Zero(m.rows, m.cols);
  for (const auto& t : m.entries) out(t.row, t.col) += t.value;
  return out;
}

}  // namespace

DeltaMatrix delta_matrix(const Site& s, int target_degree, bool normalized) {
  const int n = target_degree;
  if (n < 1) fail(ErrorKind::InvalidInput, "delta matrix needs target degree >= 1");
  DeltaMatrix out;
  out.rows = normalized ? norm_count(s, n) : tuple_count(s, n);
  out.cols = normalized ? norm_count(s, n - 1) : tuple_count(s, n - 1);
  auto col_of = [&](int p, std::span<const int> a) {
    return normalized ? norm_index(s, n - 1, p, a) : full_index(s, n - 1, p, a);
  };
  for_each_coord(s, n, normalized, [&](Int row, int p, std::span<const int> args) {
    {  // face moving the point
      std::vector<int> rest(args.begin() + 1, args.end());
      if (!(normalized && tuple_has_identity(rest)))
        out.entries.push_back({static_cast<int>(row), static_cast<int>(col_of(s.act(p, args[0]), rest)), 1});
    }
    std::vector<int> merged(n - 1);
    for (int i = 1; i <= n - 1; ++i) {
      for (int k = 0; k < n - 1; ++k)
        merged[k] = (k < i - 1) ? args[k] : (k == i - 1) ? s.group().mul(args[i - 1], args[i]) : args[k + 1];
      if (normalized && tuple_has_identity(merged)) continue;
      out.entries.push_back(
          {static_cast<int>(row), static_cast<int>(col_of(p, merged)), (i % 2) ? Int(-1) : Int(1)});
    }
    {  // face dropping the last argument
      std::vector<int> head(args.begin(), args.end() - 1);
      if (!(normalized && tuple_has_identity(head)))
        out.entries.push_back(
            {static_cast<int>(row), static_cast<int>(col_of(p, head)), (n % 2) ? Int(-1) : Int(1)});
    }
  });
  return out;
}

std::vector<Int> cochain_coordinates(const Cochain& c, bool normalized, Int level) {
  std::vector<Int> out(normalized ? norm_count(c.site(), c.degree()) : tuple_count(c.site(), c.degree()));
  for_each_coord(c.site(), c.degree(), normalized, [&](Int idx, int p, std::span<const int> args) {
    const CircleValue& v = c.at(p, args);
    if (level % v.denominator() != 0)
      fail(ErrorKind::InvalidInput, "cochain value does not live at the solve level");
    out[idx] = v.numerator() * (level / v.denominator());
  });
  return out;
}

Cochain cochain_from_coordinates(const Site& s, int degree, bool normalized,
                                 const std::vector<Int>& coords, Int level) {
  Cochain out(s, degree);
  for_each_coord(s, degree, normalized, [&](Int idx, int p, std::span<const int> args) {
    if (coords[idx] != 0) out.set(p, args, CircleValue(coords[idx], level));
  });
  return out;
}

CoboundarySolver::CoboundarySolver(Site site, int c_degree, bool normalized, Int level,
                                   const SolveOptions& opts)
    : site_(std::move(site)), degree_(c_degree), normalized_(normalized), level_(level) {
  if (degree_ < 1) fail(ErrorKind::InvalidInput, "coboundary solving needs degree >= 1");
  DeltaMatrix m = delta_matrix(site_, degree_, normalized_);
  if (m.rows > opts.max_matrix_dim || m.cols > opts.max_matrix_dim)
    fail(ErrorKind::SizeLimitExceeded, "solve matrix exceeds the configured cap", {m.rows, m.cols});
  engine_ = std::make_unique<SparseSmith>(static_cast<int>(m.rows), static_cast<int>(m.cols),
                                          m.entries, level_);
}

std::optional<Cochain> CoboundarySolver::solve(const Cochain& c) const {
  auto rhs = cochain_coordinates(c, normalized_, level_);
  auto x = engine_->solve(rhs);
  if (!x) return std::nullopt;
  return cochain_from_coordinates(site_, degree_ - 1, normalized_, *x, level_);
}

std::shared_ptr<const CoboundarySolver> shared_coboundary_solver(const Site& s, int c_degree,
                                                                 bool normalized, Int level,
                                                                 const SolveOptions& opts) {
  static std::mutex mutex;
  static std::vector<std::pair<std::string, std::shared_ptr<const CoboundarySolver>>> cache;
  constexpr std::size_t kCapacity = 8;

  std::string key;
  {
    std::ostringstream os;
    os << s.points() << ':' << s.group().order() << ':' << c_degree << ':' << normalized << ':'
       << level << ':' << opts.max_matrix_dim << ':';
    const auto& t = s.group().table();
    for (int i = 0; i < t.rows(); ++i)
      for (int j = 0; j < t.cols(); ++j) os << t(i, j) << ',';
    os << ';';
    for (int i = 0; i < s.points(); ++i)
      for (int j = 0; j < s.group().order(); ++j) os << s.act(i, j) << ',';
    key = os.str();
  }
  std::lock_guard<std::mutex> lock(mutex);
  for (auto& [k, solver] : cache)
    if (k == key) return solver;
  auto solver = std::make_shared<const CoboundarySolver>(s, c_degree, normalized, level, opts);
  if (cache.size() >= kCapacity) cache.erase(cache.begin());
  cache.emplace_back(std::move(key), solver);
  return solver;
}

SolveResult solve_coboundary(const Cochain& c, const SolveOptions& opts) {
  if (c.degree() < 1) fail(ErrorKind::InvalidInput, "cannot solve below degree 1");
  if (auto w = cocycle_violation(c))
    fail(ErrorKind::NotACocycle, "right-hand side is not a cocycle",
         std::vector<long long>(w->begin(), w->end()));
  Int level = lcm64(c.value_denominator_lcm(), 1) * c.site().group().order() * opts.level_multiplier;
  if (level < 2) level = 2;
  SolveResult out;
  out.level = level;
  if (c.is_zero()) {
    out.solution = Cochain(c.site(), c.degree() - 1);
    return out;
  }
  CoboundarySolver solver(c.site(), c.degree(), c.is_normalized(), level, opts);
  out.solution = solver.solve(c);
  return out;
}

ClassComparison classes_equal(const Cochain& c1, const Cochain& c2, const SolveOptions& opts) {
  SolveResult r = solve_coboundary(c1 - c2, opts);
  return {r.solution.has_value(), r.level};
}

std::optional<AbelianCochain> solve_coboundary(const AbelianCochain& c, const SolveOptions& opts) {
  if (c.degree() < 1) fail(ErrorKind::InvalidInput, "cannot solve below degree 1");
  if (auto w = cocycle_violation(c))
    fail(ErrorKind::NotACocycle, "right-hand side is not a cocycle",
         std::vector<long long>(w->begin(), w->end()));
  const bool normalized = c.is_normalized();
  AbelianCochain b(c.site(), c.degree() - 1, c.coefficients());
  if (c.is_zero()) return b;
  DeltaMatrix m = delta_matrix(c.site(), c.degree(), normalized);
  if (m.rows > opts.max_matrix_dim || m.cols > opts.max_matrix_dim)
    fail(ErrorKind::SizeLimitExceeded, "solve matrix exceeds the configured cap", {m.rows, m.cols});
  const auto& A = c.coefficients();
  // solve one modular system per invariant factor
  std::vector<std::vector<Int>> solution_components;
  for (int comp = 0; comp < A.rank(); ++comp) {
    Int d = A.factors()[comp];
    SparseSmith engine(static_cast<int>(m.rows), static_cast<int>(m.cols), m.entries, d);
    std::vector<Int> rhs(m.rows);
    for_each_coord(c.site(), c.degree(), normalized,
                   [&](Int idx, int p, std::span<const int> args) { rhs[idx] = c.value(p, args)[comp]; });
    auto x = engine.solve(rhs);
    if (!x) return std::nullopt;
    solution_components.push_back(std::move(*x));
  }
  for_each_coord(c.site(), c.degree() - 1, normalized, [&](Int idx, int p, std::span<const int> args) {
    std::vector<Int> v(A.rank());
    for (int comp = 0; comp < A.rank(); ++comp) v[comp] = solution_components[comp][idx];
    b.set(p, args, v);
  });
  return b;
}

bool classes_equal(const AbelianCochain& c1, const AbelianCochain& c2, const SolveOptions& opts) {
  return solve_coboundary(c1 - c2, opts).has_value();
}

namespace {

// Canonicalize a direct sum of cyclic pieces with attached generators: given
// orders g_i and generator objects combinable with integer coefficients,
// return the invariant-factor chain with matched generators.
template <typename Gen, typename Combine>
void canonicalize(std::vector<Int>& orders, std::vector<Gen>& gens, const Combine& combine) {
  const int k = static_cast<int>(orders.size());
  if (k == 0) return;
  IMatrix rel = IMatrix::Zero(k, k);
  for (int i = 0; i < k; ++i) rel(i, i) = orders[i];
  QuotientPresentation pres = quotient_presentation(k, rel, 0);
  std::vector<Int> new_orders;
  std::vector<Gen> new_gens;
  for (std::size_t j = 0; j < pres.factors.size(); ++j) {
    new_orders.push_back(pres.factors[j]);
    new_gens.push_back(combine(pres.generators[j]));
  }
  orders = std::move(new_orders);
  gens = std::move(new_gens);
}

}  // namespace

CohomologyGroup cohomology_group(const Site& s, int n, const SolveOptions& opts) {
  if (n < 1) fail(ErrorKind::InvalidInput, "cohomology degree must be >= 1");
  CohomologyGroup out;
  const Int order = s.group().order();
  if (order == 1) return out;
  const Int m = order * order;

  DeltaMatrix A = delta_matrix(s, n + 1, true);
  if (A.rows > opts.max_matrix_dim || A.cols > opts.max_matrix_dim)
    fail(ErrorKind::SizeLimitExceeded, "cohomology matrix exceeds the configured cap", {A.rows, A.cols});
  SparseSmith engine(static_cast<int>(A.rows), static_cast<int>(A.cols), A.entries, m);

  std::vector<Int> orders;
  std::vector<Cochain> gens;
  for (int i = 0; i < engine.pivot_count(); ++i) {
    Int g = engine.cokernel_factor(i);
    if (g == 1 || g == m) continue;
    std::vector<Int> y = engine.cokernel_generator(i);
    Cochain rep(s, n);
    for_each_coord(s, n, true, [&](Int idx, int p, std::span<const int> args) {
      if (y[idx] % g != 0) rep.set(p, args, CircleValue(y[idx], g));
    });
    orders.push_back(g);
    gens.push_back(std::move(rep));
  }
  canonicalize(orders, gens, [&](const IVector& coef) {
    Cochain acc(s, n);
    for (int i = 0; i < coef.size(); ++i)
      if (coef(i) != 0) acc = acc + gens[i].times(coef(i));
    return acc;
  });
  for (std::size_t j = 0; j < orders.size(); ++j) {
    if (order % orders[j] != 0 && orders[j] % order != 0) {
      // torsion of group cohomology divides the group order; anything else
      // signals an elimination bug
      if (order % orders[j] != 0)
        fail(ErrorKind::InternalVerificationFailed, "unexpected invariant factor");
    }
    if (cocycle_violation(gens[j]))
      fail(ErrorKind::InternalVerificationFailed, "cohomology representative is not a cocycle");
  }
  out.factors = std::move(orders);
  out.generators = std::move(gens);
  return out;
}

CohomologyGroup cohomology_group(const GroupPtr& g, int n, const SolveOptions& opts) {
  return cohomology_group(Site::group_site(g), n, opts);
}

Int site_cohomology_order(const Site& s, int n, const SolveOptions& opts) {
  return cohomology_group(s, n, opts).order();
}

ModCohomology abelian_cohomology(const Site& s, int n, const FiniteAbelianGroup& coeffs,
                                 const SolveOptions& opts) {
  if (n < 1) fail(ErrorKind::InvalidInput, "cohomology degree must be >= 1");
  ModCohomology out;
  out.coefficients = coeffs;
  const Int N = norm_count(s, n);
  if (norm_count(s, n + 1) > 100000 || N > 2000)
    fail(ErrorKind::SizeLimitExceeded, "abelian-coefficient cohomology exceeds the dense cap");
  if (N == 0 || coeffs.rank() == 0) return out;

  IMatrix B = to_dense(delta_matrix(s, n + 1, true));
  IMatrix A = (n >= 1) ? to_dense(delta_matrix(s, n, true)) : IMatrix::Zero(N, 0);

  std::vector<Int> orders;
  std::vector<AbelianCochain> gens;
  for (int comp = 0; comp < coeffs.rank(); ++comp) {
    Int d = coeffs.factors()[comp];
    IMatrix kker = integer_kernel(B, d);  // N x k
    const int k = static_cast<int>(kker.cols());
    if (k == 0) continue;
    // relations: columns y with kker*y in im(A) + d Z^N
    IMatrix stacked(N, k + A.cols() + N);
    stacked.leftCols(k) = kker;
    stacked.middleCols(k, A.cols()) = A;
    stacked.rightCols(N) = IMatrix::Identity(N, N) * d;
    IMatrix ker = integer_kernel(stacked, 0);
    IMatrix rel = ker.topRows(k);
    QuotientPresentation pres = quotient_presentation(k, rel, 0);
    for (std::size_t j = 0; j < pres.factors.size(); ++j) {
      IVector x = kker * pres.generators[j];
      AbelianCochain rep(s, n, coeffs);
      for_each_coord(s, n, true, [&](Int idx, int p, std::span<const int> args) {
        Int v = x(idx) % d;
        if (v < 0) v += d;
        if (v != 0) {
          std::vector<Int> val(coeffs.rank(), 0);
          val[comp] = v;
          rep.set(p, args, val);
        }
      });
      orders.push_back(pres.factors[j]);
      gens.push_back(std::move(rep));
    }
  }
  canonicalize(orders, gens, [&](const IVector& coef) {
    AbelianCochain acc(s, n, coeffs);
    for (int i = 0; i < coef.size(); ++i)
      if (coef(i) != 0) acc = acc + gens[i].times(coef(i));
    return acc;
  });
  for (auto& g : gens)
    if (cocycle_violation(g))
      fail(ErrorKind::InternalVerificationFailed, "mod-d representative is not a cocycle");
  out.factors = std::move(orders);
  out.generators = std::move(gens);
  return out;
}

std::vector<AbelianCochain> all_class_representatives(const Site& s, int n, const ModCohomology& h) {
  Int total = 1;
  for (Int f : h.factors) {
    total *= f;
    if (total > 100000) fail(ErrorKind::SizeLimitExceeded, "too many cohomology classes to enumerate");
  }
  std::vector<AbelianCochain> out;
  out.reserve(total);
  std::vector<Int> c(h.factors.size(), 0);
  while (true) {
    AbelianCochain acc(s, n, h.coefficients);
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] != 0) acc = acc + h.generators[i].times(c[i]);
    out.push_back(std::move(acc));
    int i = static_cast<int>(c.size()) - 1;
    while (i >= 0 && c[i] == h.factors[i] - 1) c[i--] = 0;
    if (i < 0) break;
    ++c[i];
  }
  return out;
}

}  // namespace gerbes
