#include "gerbes/smith.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

namespace gerbes {

namespace {
using I128 = __int128;

Int mod_balance(I128 v, Int m) {
  if (m == 0) {
    if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min())
      fail(ErrorKind::Overflow, "integer overflow in exact elimination");
    return static_cast<Int>(v);
  }
  I128 r = v % m;
  if (r < 0) r += m;
  if (r > m / 2) r -= m;
  return static_cast<Int>(r);
}

// Extended gcd: returns g >= 0, sets x, y with a x + b y = g.
Int ext_gcd(Int a, Int b, Int& x, Int& y) {
  if (b == 0) {
    x = (a < 0) ? -1 : 1;
    y = 0;
    return a < 0 ? -a : a;
  }
  Int x1, y1;
  Int g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}
}  // namespace

std::vector<Int> DenseSmith::nontrivial_divisors() const {
  std::vector<Int> out;
  for (Int d : diagonal)
    if (d > 1) out.push_back(d);
  return out;
}

DenseSmith smith_dense(IMatrix A, Int modulus) {
  const int r = static_cast<int>(A.rows());
  const int c = static_cast<int>(A.cols());
  DenseSmith out;
  out.P = IMatrix::Identity(r, r);
  out.Pinv = IMatrix::Identity(r, r);
  out.Q = IMatrix::Identity(c, c);
  out.Qinv = IMatrix::Identity(c, c);

  auto red = [&](Int v) { return mod_balance(v, modulus); };
  if (modulus != 0)
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) A(i, j) = red(A(i, j));

  auto row_add = [&](int i, int j, Int coef) {  // row_i += coef * row_j
    for (int k = 0; k < c; ++k) A(i, k) = mod_balance((I128)A(i, k) + (I128)coef * A(j, k), modulus);
    out.P.row(i) += coef * out.P.row(j);
    out.Pinv.col(j) -= coef * out.Pinv.col(i);
  };
  auto col_add = [&](int i, int j, Int coef) {  // col_i += coef * col_j
    for (int k = 0; k < r; ++k) A(k, i) = mod_balance((I128)A(k, i) + (I128)coef * A(k, j), modulus);
    out.Q.col(i) += coef * out.Q.col(j);
    out.Qinv.row(j) -= coef * out.Qinv.row(i);
  };
  auto row_swap = [&](int i, int j) {
    if (i == j) return;
    A.row(i).swap(A.row(j));
    out.P.row(i).swap(out.P.row(j));
    out.Pinv.col(i).swap(out.Pinv.col(j));
  };
  auto col_swap = [&](int i, int j) {
    if (i == j) return;
    A.col(i).swap(A.col(j));
    out.Q.col(i).swap(out.Q.col(j));
    out.Qinv.row(i).swap(out.Qinv.row(j));
  };
  auto row_negate = [&](int i) {
    for (int k = 0; k < c; ++k) A(i, k) = red(-A(i, k));
    out.P.row(i) = -out.P.row(i);
    out.Pinv.col(i) = -out.Pinv.col(i);
  };

  // Eliminates everything below/right of (t, t) in row t and column t,
  // assuming A(t, t) != 0.  Euclidean steps handle non-dividing entries.
  auto settle = [&](int t) {
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (int i = t + 1; i < r; ++i) {
        while (A(i, t) != 0) {
          Int q = A(i, t) / A(t, t);
          if (q != 0) row_add(i, t, -q);
          if (A(i, t) != 0) row_swap(i, t);
        }
      }
      for (int j = t + 1; j < c; ++j) {
        while (A(t, j) != 0) {
          Int q = A(t, j) / A(t, t);
          if (q != 0) col_add(j, t, -q);
          if (A(t, j) != 0) col_swap(j, t);
        }
      }
      for (int i = t + 1; i < r; ++i)
        if (A(i, t) != 0) dirty = true;
    }
    if (A(t, t) < 0) row_negate(t);
  };

  const int n = std::min(r, c);
  int t = 0;
  for (; t < n; ++t) {
    int pi = -1, pj = -1;
    Int best = 0;
    for (int i = t; i < r; ++i)
      for (int j = t; j < c; ++j) {
        Int v = A(i, j) < 0 ? -A(i, j) : A(i, j);
        if (v != 0 && (pi < 0 || v < best)) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;
    row_swap(t, pi);
    col_swap(t, pj);
    settle(t);
  }
  out.rank = t;

  // Divisibility chain.  With a modulus, a vanished pivot stands for the
  // modulus itself; writing it back is a legal mod-m rewrite.
  auto norm_diag = [&](int i) {
    if (modulus != 0) {
      Int v = ((A(i, i) % modulus) + modulus) % modulus;
      A(i, i) = (v == 0) ? modulus : v;
    } else if (A(i, i) < 0) {
      row_negate(i);
    }
  };
  for (int i = 0; i < out.rank; ++i) norm_diag(i);
  for (int i = 0; i < out.rank; ++i) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int j = i + 1; j < out.rank; ++j) {
        if (A(j, j) % A(i, i) == 0) continue;
        col_add(i, j, 1);  // brings A(j, i) = A(j, j)
        settle(i);
        norm_diag(i);
        norm_diag(j);
        changed = true;
      }
    }
  }

  out.D = A;
  out.diagonal.clear();
  for (int i = 0; i < out.rank; ++i) out.diagonal.push_back(A(i, i));
  return out;
}

IMatrix integer_kernel(const IMatrix& A, Int modulus) {
  DenseSmith s = smith_dense(A, modulus);
  const int c = static_cast<int>(A.cols());
  std::vector<IVector> gens;
  for (int i = 0; i < s.rank; ++i) {
    if (modulus != 0) {
      Int g = gcd64(s.diagonal[i], modulus);
      if (g == 0) g = modulus;
      Int scale = modulus / g;
      if (scale != modulus)  // scale == modulus would be the trivial lattice m*Z
        gens.push_back(s.Q.col(i) * scale);
      else
        gens.push_back(s.Q.col(i) * scale);
    }
  }
  for (int j = s.rank; j < c; ++j) gens.push_back(s.Q.col(j));
  IMatrix out(c, static_cast<int>(gens.size()));
  for (int j = 0; j < out.cols(); ++j) out.col(j) = gens[j];
  return out;
}

QuotientPresentation quotient_presentation(int n, const IMatrix& relations, Int modulus) {
  QuotientPresentation out;
  if (n == 0) return out;
  IMatrix R = relations;
  if (R.cols() == 0) R = IMatrix::Zero(n, 1);
  if (R.rows() != n) fail(ErrorKind::InvalidInput, "relation matrix row count mismatch");
  DenseSmith s = smith_dense(R, modulus);
  for (int i = 0; i < n; ++i) {
    Int d = (i < s.rank) ? s.diagonal[i] : 0;
    if (modulus != 0) {
      d = (i < s.rank) ? gcd64(s.diagonal[i], modulus) : modulus;
      if (d == 0) d = modulus;
    }
    if (d == 1) continue;
    if (d == 0) fail(ErrorKind::InvalidInput, "quotient is not finite");
    out.factors.push_back(d);
    out.generators.push_back(s.Pinv.col(i));
  }
  return out;
}

// ---------------------------------------------------------------------------
// SparseSmith
// ---------------------------------------------------------------------------

SparseSmith::SparseSmith(int rows, int cols, const std::vector<Triplet>& entries, Int modulus)
    : rows_(rows), cols_(cols), modulus_(modulus) {
  if (modulus < 2) fail(ErrorKind::InvalidInput, "sparse elimination requires modulus >= 2");
  mat_.assign(rows, {});
  col_rows_.assign(cols, {});
  row_done_.assign(rows, 0);
  col_done_.assign(cols, 0);
  std::vector<Triplet> sorted = entries;
  std::sort(sorted.begin(), sorted.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    I128 acc = 0;
    while (j < sorted.size() && sorted[j].row == sorted[i].row && sorted[j].col == sorted[i].col)
      acc += sorted[j++].value;
    Int v = mod_balance(acc, modulus_);
    if (v != 0) {
      mat_[sorted[i].row].push_back({sorted[i].col, v});
      col_rows_[sorted[i].col].insert(sorted[i].row);
    }
    i = j;
  }
  q_ = IMatrix::Identity(cols, cols);
  factor();
}

Int SparseSmith::balance(Int v) const { return mod_balance(v, modulus_); }

Int SparseSmith::entry(int row, int col) const {
  for (auto& [c, v] : mat_[row])
    if (c == col) return v;
  return 0;
}

void SparseSmith::drop_entry(int row, int col) {
  auto& rr = mat_[row];
  for (auto it = rr.begin(); it != rr.end(); ++it)
    if (it->first == col) {
      rr.erase(it);
      col_rows_[col].erase(row);
      return;
    }
}

void SparseSmith::set_entry(int row, int col, Int v) {
  auto& rr = mat_[row];
  for (auto& [c, val] : rr)
    if (c == col) {
      if (v == 0)
        drop_entry(row, col);
      else
        val = v;
      return;
    }
  if (v != 0) {
    rr.insert(std::upper_bound(rr.begin(), rr.end(), std::make_pair(col, Int(0)),
                               [](const auto& a, const auto& b) { return a.first < b.first; }),
              {col, v});
    col_rows_[col].insert(row);
  }
}

void SparseSmith::add_row(int dst, int src, Int c) {
  if (c == 0 || dst == src) return;
  log_.push_back({RowOp::Add, dst, src, c});
  const auto& s = mat_[src];
  auto& d = mat_[dst];
  std::vector<std::pair<int, Int>> merged;
  merged.reserve(d.size() + s.size());
  std::size_t i = 0, j = 0;
  while (i < d.size() || j < s.size()) {
    if (j >= s.size() || (i < d.size() && d[i].first < s[j].first)) {
      merged.push_back(d[i++]);
    } else if (i >= d.size() || s[j].first < d[i].first) {
      Int v = balance((I128)c * s[j].second);
      if (v != 0) {
        merged.push_back({s[j].first, v});
        col_rows_[s[j].first].insert(dst);
      }
      ++j;
    } else {
      Int v = balance((I128)d[i].second + (I128)c * s[j].second);
      if (v != 0)
        merged.push_back({d[i].first, v});
      else
        col_rows_[d[i].first].erase(dst);
      ++i;
      ++j;
    }
  }
  d = std::move(merged);
}

void SparseSmith::swap_rows(int i, int j) {
  if (i == j) return;
  log_.push_back({RowOp::Swap, i, j, 0});
  std::set<int> touched;
  for (auto& [c, v] : mat_[i]) touched.insert(c);
  for (auto& [c, v] : mat_[j]) touched.insert(c);
  std::swap(mat_[i], mat_[j]);
  for (int c : touched) {
    col_rows_[c].erase(i);
    col_rows_[c].erase(j);
  }
  for (auto& [c, v] : mat_[i]) col_rows_[c].insert(i);
  for (auto& [c, v] : mat_[j]) col_rows_[c].insert(j);
}

void SparseSmith::add_col(int dst, int src, Int c) {
  if (c == 0 || dst == src) return;
  std::vector<int> rws(col_rows_[src].begin(), col_rows_[src].end());
  for (int rr : rws) {
    Int v = balance((I128)entry(rr, dst) + (I128)c * entry(rr, src));
    set_entry(rr, dst, v);
  }
  for (int k = 0; k < cols_; ++k) q_(k, dst) = balance((I128)q_(k, dst) + (I128)c * q_(k, src));
}

void SparseSmith::factor() {
  while (true) {
    int pcol = -1;
    std::size_t best = 0;
    for (int c = 0; c < cols_; ++c) {
      if (col_done_[c] || col_rows_[c].empty()) continue;
      if (pcol < 0 || col_rows_[c].size() < best) {
        pcol = c;
        best = col_rows_[c].size();
      }
    }
    if (pcol < 0) break;

    int prow = -1;
    Int pval = 0;
    std::size_t prnnz = 0;
    for (int rr : col_rows_[pcol]) {
      Int v = entry(rr, pcol);
      Int av = v < 0 ? -v : v;
      auto key = std::make_tuple(av == 1 ? Int(0) : av, mat_[rr].size(), (std::size_t)rr);
      if (prow < 0 || key < std::make_tuple((pval < 0 ? -pval : pval) == 1 ? Int(0) : (pval < 0 ? -pval : pval),
                                            prnnz, (std::size_t)prow)) {
        prow = rr;
        pval = v;
        prnnz = mat_[rr].size();
      }
    }

    // Alternate column- and row-clearing until both are clean.
    while (true) {
      // clear pivot column with row operations (euclidean when needed)
      while (true) {
        bool colclean = true;
        std::vector<int> rws(col_rows_[pcol].begin(), col_rows_[pcol].end());
        for (int rr : rws) {
          if (rr == prow) continue;
          Int v = entry(rr, pcol);
          if (v == 0) continue;
          Int q = v / pval;
          if (q != 0) add_row(rr, prow, -q);
          if (entry(rr, pcol) != 0) {
            swap_rows(rr, prow);
            pval = entry(prow, pcol);
            colclean = false;
            break;
          }
        }
        if (colclean) break;
      }
      // clear pivot row with column operations
      while (true) {
        bool rowclean = true;
        std::vector<std::pair<int, Int>> row_copy = mat_[prow];
        for (auto& [cc, vv] : row_copy) {
          if (cc == pcol) continue;
          Int q = vv / pval;
          if (q != 0) add_col(cc, pcol, -q);
          if (entry(prow, cc) != 0) {
            // column swap: exchange entries of the two columns in all rows
            std::set<int> rws;
            for (int x : col_rows_[cc]) rws.insert(x);
            for (int x : col_rows_[pcol]) rws.insert(x);
            for (int x : rws) {
              Int a = entry(x, pcol), b = entry(x, cc);
              set_entry(x, pcol, b);
              set_entry(x, cc, a);
            }
            q_.col(pcol).swap(q_.col(cc));
            pval = entry(prow, pcol);
            rowclean = false;
            break;
          }
        }
        if (rowclean) break;
      }
      if (col_rows_[pcol].size() <= 1 && mat_[prow].size() <= 1) break;
    }

    pval = entry(prow, pcol);
    if (pval < 0) {
      log_.push_back({RowOp::Add, prow, prow, -2});  // encodes row *= -1 for replay
      set_entry(prow, pcol, -pval);
      pval = -pval;
    }
    Int norm = ((pval % modulus_) + modulus_) % modulus_;
    if (norm == 0) norm = modulus_;
    pivots_.push_back({prow, pcol, norm});
    row_done_[prow] = 1;
    col_done_[pcol] = 1;
    drop_entry(prow, pcol);
  }
}

std::vector<Int> SparseSmith::cokernel_factors() const {
  std::vector<Int> out;
  out.reserve(pivots_.size());
  for (auto& p : pivots_) {
    Int g = gcd64(p.value, modulus_);
    out.push_back(g == 0 ? modulus_ : g);
  }
  return out;
}

Int SparseSmith::cokernel_factor(int i) const {
  Int g = gcd64(pivots_[i].value, modulus_);
  return g == 0 ? modulus_ : g;
}

std::vector<Int> SparseSmith::cokernel_generator(int i) const {
  const Pivot& p = pivots_[i];
  Int x, y;
  ext_gcd(p.value % modulus_ == 0 ? modulus_ : p.value % modulus_, modulus_, x, y);
  std::vector<Int> out(cols_);
  for (int k = 0; k < cols_; ++k) {
    Int v = static_cast<Int>((((I128)x * q_(k, p.col)) % modulus_ + modulus_) % modulus_);
    out[k] = v;
  }
  return out;
}

std::optional<std::vector<Int>> SparseSmith::solve(std::vector<Int> rhs) const {
  if (static_cast<int>(rhs.size()) != rows_) fail(ErrorKind::InvalidInput, "rhs size mismatch");
  for (auto& v : rhs) v = balance(v);
  for (const auto& op : log_) {
    if (op.kind == RowOp::Swap)
      std::swap(rhs[op.i], rhs[op.j]);
    else if (op.i == op.j)
      rhs[op.i] = balance((I128)rhs[op.i] * (1 + op.c));
    else
      rhs[op.i] = balance((I128)rhs[op.i] + (I128)op.c * rhs[op.j]);
  }
  std::vector<char> pivot_row(rows_, 0);
  for (auto& p : pivots_) pivot_row[p.row] = 1;
  for (int rr = 0; rr < rows_; ++rr)
    if (!pivot_row[rr] && ((rhs[rr] % modulus_) + modulus_) % modulus_ != 0) return std::nullopt;

  std::vector<Int> x(cols_, 0);
  for (auto& p : pivots_) {
    Int w = ((rhs[p.row] % modulus_) + modulus_) % modulus_;
    if (w == 0) continue;
    Int a = p.value % modulus_;
    if (a == 0) a = modulus_;
    Int s, t;
    Int g = ext_gcd(a, modulus_, s, t);
    if (w % g != 0) return std::nullopt;
    Int y = static_cast<Int>((((I128)s * (w / g)) % modulus_ + modulus_) % modulus_);
    if (y == 0) continue;
    for (int k = 0; k < cols_; ++k)
      x[k] = static_cast<Int>((((I128)x[k] + (I128)y * q_(k, p.col)) % modulus_ + modulus_) % modulus_);
  }
  return x;
}

}  // namespace gerbes
