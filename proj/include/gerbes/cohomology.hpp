#pragma once

#include <memory>
#include <optional>

#include "gerbes/cochain.hpp"
#include "gerbes/smith.hpp"

namespace gerbes {

struct SolveOptions {
  Int level_multiplier = 1;
  Int max_matrix_dim = 2'000'000;  // rows cap for assembled differentials
};

// Matrix of delta : C^{n-1} -> C^n over the chosen coordinate set.
struct DeltaMatrix {
  Int rows = 0, cols = 0;
  std::vector<Triplet> entries;
};
DeltaMatrix delta_matrix(const Site& s, int target_degree, bool normalized);

// Coordinates of a cochain in the (normalized or full) tuple basis, scaled to
// integers at the given level; fails if a denominator does not divide it.
std::vector<Int> cochain_coordinates(const Cochain& c, bool normalized, Int level);
Cochain cochain_from_coordinates(const Site& s, int degree, bool normalized,
                                 const std::vector<Int>& coords, Int level);

// Factored solver for delta b = c at a fixed coefficient level; reusable
// across many right-hand sides on the same site and degree.
class CoboundarySolver {
 public:
  CoboundarySolver(Site site, int c_degree, bool normalized, Int level, const SolveOptions& opts = {});
  Int level() const { return level_; }
  std::optional<Cochain> solve(const Cochain& c) const;

 private:
  Site site_;
  int degree_;
  bool normalized_;
  Int level_;
  std::unique_ptr<SparseSmith> engine_;
};

// Memoized access to factored solvers: repeated solves against the same site,
// degree and level (the duality pipeline's common case) reuse one
// elimination.  The cache is small, bounded and guarded by a mutex; entries
// are immutable once built.
std::shared_ptr<const CoboundarySolver> shared_coboundary_solver(const Site& s, int c_degree,
                                                                 bool normalized, Int level,
                                                                 const SolveOptions& opts = {});

struct SolveResult {
  std::optional<Cochain> solution;
  Int level = 0;
};

// delta b = c with b at the coefficient level lcm(denominators) * |G| *
// multiplier; a miss is reported as an empty solution carrying the level
// tried (no-solution-at-level), never as a definitive negative.
SolveResult solve_coboundary(const Cochain& c, const SolveOptions& opts = {});

struct ClassComparison {
  bool equal = false;
  Int level = 0;
};
ClassComparison classes_equal(const Cochain& c1, const Cochain& c2, const SolveOptions& opts = {});

// Exact coboundary solving for finite-abelian-valued cochains (componentwise
// modular systems; no level heuristic involved).
std::optional<AbelianCochain> solve_coboundary(const AbelianCochain& c, const SolveOptions& opts = {});
bool classes_equal(const AbelianCochain& c1, const AbelianCochain& c2, const SolveOptions& opts = {});

struct CohomologyGroup {
  std::vector<Int> factors;        // invariant factors, ascending chain
  std::vector<Cochain> generators; // one verified cocycle per factor
  Int order() const {
    Int o = 1;
    for (Int f : factors) o *= f;
    return o;
  }
};

// H^n(site, Q/Z) for n >= 1 computed as integer cohomology one degree up,
// with representatives lifted back through the connecting isomorphism.
CohomologyGroup cohomology_group(const Site& s, int n, const SolveOptions& opts = {});
CohomologyGroup cohomology_group(const GroupPtr& g, int n, const SolveOptions& opts = {});
Int site_cohomology_order(const Site& s, int n, const SolveOptions& opts = {});

// H^n(site, coefficients) for a finite abelian coefficient group with the
// trivial action, with representative cocycles; exact (componentwise mod d).
struct ModCohomology {
  FiniteAbelianGroup coefficients;
  std::vector<Int> factors;
  std::vector<AbelianCochain> generators;
  Int order() const {
    Int o = 1;
    for (Int f : factors) o *= f;
    return o;
  }
};
ModCohomology abelian_cohomology(const Site& s, int n, const FiniteAbelianGroup& coeffs,
                                 const SolveOptions& opts = {});

// All coboundary-class representatives (one per class).
std::vector<AbelianCochain> all_class_representatives(const Site& s, int n, const ModCohomology& h);

}  // namespace gerbes
