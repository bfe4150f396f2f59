#pragma once

#include <optional>
#include <variant>

#include "gerbes/extension.hpp"
#include "gerbes/gerbe.hpp"
#include "gerbes/kmodule.hpp"

namespace gerbes {

// Invariant-factor coordinates for a central subgroup sitting inside an
// ambient group: tuple index <-> ambient element, both directions.
struct FiberChart {
  FiniteAbelianGroup structure;
  std::vector<int> element_of_tuple;   // tuple index -> ambient element
  std::vector<Int> tuple_index_of;     // ambient element -> tuple index (-1 outside)

  std::vector<Int> tuple_of(int ambient) const {
    return structure.tuple_of(tuple_index_of[ambient]);
  }
};

struct DualityInput {
  MultiplicativeGerbe gerbe;
  std::vector<int> fiber_elements;  // S as ambient indices, ascending
  FiberChart chart;
  GroupPtr quotient;                // K
  GroupHom projection;              // G -> K
  std::vector<int> section;         // least-index section K -> G
  AbelianCochain transgression;     // F in Z^2(K, S)
  Site groupoid;                    // K acted on by G through the projection
};

// Derives quotient, section, transgression and the action groupoid.  An
// explicit chart skips the invariant-factor search (useful when the ambient
// group is already in extension coordinates).
DualityInput make_duality_input(MultiplicativeGerbe gerbe, std::vector<int> fiber_elements,
                                std::optional<FiberChart> chart = std::nullopt);

struct OmegaWitness {
  Cochain beta;          // degree 2 on the groupoid, delta beta = pullback alpha
  KValuedCochain gamma;  // outer degree 1, inner degree 1; delta gamma(h) = beta*h - beta
};

struct OmegaFailure {
  int stage = 0;  // 1: beta solve, 2: gamma solve
  Int level = 0;
};

std::variant<OmegaWitness, OmegaFailure> omega_membership(const DualityInput& input,
                                                          const SolveOptions& opts = {});

struct DualExtensionResult {
  AbelianCochain f_hat;       // Z^2(K, S^) in the dual's invariant-factor coordinates
  CentralExtension extension; // S^ -> G^ -> K
};

// Restriction of d_K gamma to fiber characters, giving the classifying
// cocycle of the dual extension.
DualExtensionResult extract_dual_extension(const DualityInput& input, const OmegaWitness& witness);

struct DualGerbeResult {
  DualExtensionResult ext;
  MultiplicativeGerbe dual;           // <G^, alpha^>
  FiberChart dual_chart;              // S^ inside G^
  std::vector<int> dual_fiber_elements;
};

DualGerbeResult dual_gerbe(const DualityInput& input, const OmegaWitness& witness,
                           const SolveOptions& opts = {});

// Split data for the closed-formula construction: F, F^ and a degree-3
// cochain whose coboundary is the pairing of F^ against F.
struct ExplicitFormulaData {
  FiniteAbelianGroup fiber;     // S
  GroupPtr base;                // K
  AbelianCochain f;             // Z^2(K, S)
  AbelianCochain f_hat;         // Z^2(K, S^), coordinates in the same factors
  Cochain epsilon;              // C^3(K, Q/Z), normalized
};

struct ExplicitPair {
  CentralExtension g_ext;
  MultiplicativeGerbe gerbe;
  FiberChart chart;
  std::vector<int> fiber_elements;

  CentralExtension g_hat_ext;
  MultiplicativeGerbe dual;
  FiberChart dual_chart;
  std::vector<int> dual_fiber_elements;

  // closed-form membership witness for the first gerbe over its fiber:
  //   beta(k; g2, g3)   = F^(k, k2)(a3) + eps(k, k2, k3)
  //   gamma(h)(k; g)    = F^(h, k)(a)   + eps(h, k, x)
  OmegaWitness canonical_witness;
};

ExplicitPair build_explicit_pair(const ExplicitFormulaData& data, Int max_order = 4096);

// The witness for a membership problem is unique only up to a degree-2
// cohomology class of the groupoid (a representation class); shifting the
// witness shifts the extracted dual transgression.  This returns one
// extracted shift per generator of that ambiguity, so callers can compare
// extractions modulo the representation choice.
std::vector<AbelianCochain> representation_ambiguity(const DualityInput& input,
                                                     const SolveOptions& opts = {});

struct DoubleDualReport {
  bool ok = false;
  std::string failure;           // empty when ok
  DualGerbeResult dual;          // first dual
  DualGerbeResult double_dual;   // dual of the dual
  GroupHom comparison;           // G -> G^^, fiberwise evaluation over K
  Cochain transported;           // comparison pullback of the double-dual cocycle
  bool comparison_iso = false;
  bool class_match = false;
  Int class_match_level = 0;
};

DoubleDualReport double_dual_check(const DualityInput& input, const OmegaWitness& witness,
                                   const SolveOptions& opts = {});

// Pairing of a dual-coordinate tuple against a fiber tuple:
// sum_i rho_i s_i / d_i.
CircleValue character_pairing(const FiniteAbelianGroup& factors, const std::vector<Int>& rho,
                              const std::vector<Int>& s);

}  // namespace gerbes
