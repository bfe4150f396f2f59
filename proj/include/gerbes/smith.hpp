#pragma once

#include <Eigen/Core>
#include <optional>
#include <set>
#include <vector>

#include "gerbes/fraction.hpp"

namespace gerbes {

using IMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IVector = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

struct Triplet {
  int row;
  int col;
  Int value;
};

// Dense Smith normal form with full transforms: P * A * Q = D, with P, Q
// unimodular and D diagonal satisfying the divisibility chain.  When
// modulus > 0 all entries are kept reduced mod the modulus (valid because a
// reduction is a column operation against the implicit [A | m*I] system) and
// the diagonal describes the cokernel of A as a Z/m-module.
struct DenseSmith {
  IMatrix D;
  IMatrix P, Pinv, Q, Qinv;
  std::vector<Int> diagonal;  // all pivot values after chain fixing, >= 1
  int rank = 0;               // number of nonzero diagonal entries
  std::vector<Int> nontrivial_divisors() const;  // entries > 1
};

DenseSmith smith_dense(IMatrix A, Int modulus = 0);

// Kernel of A as a Z-lattice basis (columns); when modulus > 0, a generating
// set of { x mod m : A x = 0 (mod m) } including the trivial m*e_i only when
// needed (i.e. generators of the solution lattice modulo m).
IMatrix integer_kernel(const IMatrix& A, Int modulus = 0);

// Presentation of the finite abelian group Z^n / (columns of R), assuming the
// quotient is finite.  Returns invariant factors (> 1) and, for each, the
// coordinate vector of a generator in Z^n.
struct QuotientPresentation {
  std::vector<Int> factors;
  std::vector<IVector> generators;
};
QuotientPresentation quotient_presentation(int n, const IMatrix& relations, Int modulus = 0);

// Sparse elimination engine for one matrix and many right-hand sides, all
// arithmetic mod a fixed modulus m >= 2.  Diagonalizes with unimodular
// row/column operations (entries kept balanced mod m), logging row operations
// for replay on right-hand sides and tracking the column transform densely.
//
// Solvability and solutions of  M x = v (mod m)  are exact.  Per pivot with
// value e the engine exposes the cyclic cokernel factor gcd(e, m) together
// with a coordinate vector y such that M y = gcd(e, m) * z (mod m) for an
// integer vector z; this is what cohomology extraction needs.
class SparseSmith {
 public:
  SparseSmith(int rows, int cols, const std::vector<Triplet>& entries, Int modulus);

  Int modulus() const { return modulus_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int pivot_count() const { return static_cast<int>(pivots_.size()); }

  // Cokernel data: one entry per pivot, value gcd(e, m) in [1, m]; rows that
  // never received a pivot contribute an implicit factor m each.
  std::vector<Int> cokernel_factors() const;
  int free_rows() const { return rows_ - pivot_count(); }

  std::optional<std::vector<Int>> solve(std::vector<Int> rhs) const;

  // Generator for the cokernel factor of pivot i: coordinates y (length cols,
  // reduced mod m) with M y = factor_i * (integer vector) mod m.
  std::vector<Int> cokernel_generator(int pivot_index) const;
  Int cokernel_factor(int pivot_index) const;

 private:
  struct RowOp {
    enum Kind { Add, Swap } kind;
    int i, j;
    Int c;  // Add: row_i += c * row_j
  };
  struct Pivot {
    int row, col;
    Int value;  // in (0, m]
  };

  Int balance(Int v) const;
  void add_row(int dst, int src, Int c);
  void swap_rows(int i, int j);
  void add_col(int dst, int src, Int c);
  void drop_entry(int row, int col);
  void set_entry(int row, int col, Int v);
  Int entry(int row, int col) const;
  void factor();

  int rows_, cols_;
  Int modulus_;
  std::vector<std::vector<std::pair<int, Int>>> mat_;  // row -> sorted (col, val)
  std::vector<std::set<int>> col_rows_;
  std::vector<RowOp> log_;
  IMatrix q_;  // cols x cols column transform
  std::vector<Pivot> pivots_;
  std::vector<char> row_done_, col_done_;
};

}  // namespace gerbes
