// Command-line front end: JSON in, JSON report out.
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gerbes/json_io.hpp"

using namespace gerbes;

namespace {

struct GlobalOptions {
  std::string input = "-";
  Int level_multiplier = 1;
  Int max_order = 4096;
  Int max_matrix_dim = 2'000'000;
  bool emit_witness = false;

  SolveOptions solve() const { return SolveOptions{level_multiplier, max_matrix_dim}; }
};

std::string read_input(const GlobalOptions& g) {
  if (g.input == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(g.input);
  if (!f) fail(ErrorKind::InvalidInput, "cannot open input file '" + g.input + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Json witness_json(const OmegaWitness& w) {
  Json out;
  out["beta"] = cochain_to_json(w.beta);
  Json gammas = Json::array();
  for (int h = 0; h < w.gamma.outer()->order(); ++h) {
    std::vector<int> idx{h};
    Json g;
    g["h"] = h;
    g["cochain"] = cochain_to_json(w.gamma.component(idx));
    gammas.push_back(std::move(g));
  }
  out["gamma"] = std::move(gammas);
  return out;
}

DualityInput duality_input_from_json(const Json& payload) {
  MultiplicativeGerbe gerbe = gerbe_from_json(payload.at("gerbe"));
  auto fiber = payload.at("central_subgroup").get<std::vector<int>>();
  return make_duality_input(std::move(gerbe), std::move(fiber));
}

Json run_group(const Json& payload, const std::string& mode, const GlobalOptions& g) {
  Json result;
  if (mode == "inspect") {
    std::vector<int> relabeling;
    GroupPtr grp = group_from_json(payload.at("group"), &relabeling, g.max_order);
    result["group"] = group_to_json(*grp, relabeling.empty() ? nullptr : &relabeling);
    result["order"] = grp->order();
    result["center"] = grp->center();
    Json census = Json::array();
    for (auto& [ord, count] : grp->order_census())
      census.push_back(Json{{"element_order", ord}, {"count", count}});
    result["order_census"] = std::move(census);
    if (grp->is_abelian()) {
      result["invariant_factors"] = abelian_invariants(*grp).group.factors();
    }
  } else if (mode == "quotient") {
    GroupPtr grp = group_from_json(payload.at("group"), nullptr, g.max_order);
    auto fiber = payload.at("central_subgroup").get<std::vector<int>>();
    CentralQuotient q = quotient_by_central(grp, fiber);
    result["quotient"] = group_to_json(*q.quotient);
    result["projection"] = q.projection.image;
    result["section"] = q.section;
    result["fiber_factors"] = q.fiber_abelian.group.factors();
    result["transgression"] = abelian_cochain_to_json(q.transgression);
  } else if (mode == "extension") {
    CentralExtensionData data;
    data.fiber = FiniteAbelianGroup(payload.at("fiber_factors").get<std::vector<Int>>());
    data.base = group_from_json(payload.at("base"), nullptr, g.max_order);
    data.transgression = abelian_cochain_from_json(payload.at("transgression"));
    CentralExtension ext = central_extension(data, g.max_order);
    result["group"] = group_to_json(*ext.total);
    result["iota"] = ext.iota.image;
    result["projection"] = ext.projection.image;
    result["section"] = ext.section;
  } else {
    fail(ErrorKind::InvalidInput, "unknown group mode '" + mode + "'");
  }
  return result;
}

Json run_cohomology(const Json& payload, const GlobalOptions& g) {
  GroupPtr grp = group_from_json(payload.at("group"), nullptr, g.max_order);
  int degree = payload.at("degree").get<int>();
  CohomologyGroup h = cohomology_group(grp, degree, g.solve());
  return cohomology_to_json(h);
}

Json run_cocycle(const Json& payload, const std::string& mode, const GlobalOptions& g) {
  Json result;
  if (mode == "check") {
    Cochain c = cochain_from_json(payload.at("cochain"));
    auto w = cocycle_violation(c);
    result["is_cocycle"] = !w.has_value();
    if (w) result["witness"] = *w;
  } else if (mode == "solve") {
    Cochain c = cochain_from_json(payload.at("cochain"));
    SolveResult r = solve_coboundary(c, g.solve());
    result["level"] = r.level;
    if (!r.solution)
      fail(ErrorKind::NoSolutionAtLevel, "no primitive at the solve level", {r.level});
    result["solution"] = cochain_to_json(*r.solution);
  } else if (mode == "equal") {
    Cochain c1 = cochain_from_json(payload.at("first"));
    Cochain c2 = cochain_from_json(payload.at("second"));
    ClassComparison cc = classes_equal(c1, c2, g.solve());
    result["equal"] = cc.equal;
    result["level"] = cc.level;
  } else {
    fail(ErrorKind::InvalidInput, "unknown cocycle mode '" + mode + "'");
  }
  return result;
}

Json run_gerbe(const Json& payload, const std::string& mode, const GlobalOptions& g) {
  Json result;
  if (mode == "make") {
    MultiplicativeGerbe gerbe = gerbe_from_json(payload);
    result["gerbe"] = gerbe_to_json(gerbe);
    return result;
  }
  if (mode != "rep") fail(ErrorKind::InvalidInput, "unknown gerbe mode '" + mode + "'");
  MultiplicativeGerbe gerbe = gerbe_from_json(payload.at("gerbe"));
  std::string what = payload.at("what").get<std::string>();
  if (what == "canonical") {
    GerbeRepresentation rep = canonical_representation(gerbe);
    result["space_size"] = rep.space.points();
    result["action"] = Json::array();
    for (int p = 0; p < rep.space.points(); ++p) {
      Json row = Json::array();
      for (int a = 0; a < rep.space.group().order(); ++a) row.push_back(rep.space.act(p, a));
      result["action"].push_back(std::move(row));
    }
    result["beta"] = cochain_to_json(rep.beta);
    return result;
  }
  Eigen::MatrixXi action(payload.at("action").size(), gerbe.group->order());
  {
    int r = 0;
    for (const auto& row : payload.at("action")) {
      int c = 0;
      for (const auto& v : row) action(r, c++) = v.get<int>();
      ++r;
    }
  }
  Site space = Site::action_site(gerbe.group, std::move(action));
  if (what == "exists") {
    RepresentationSearch s = representation_exists(gerbe, space, g.solve());
    result["exists"] = s.beta.has_value();
    result["level"] = s.level;
    if (s.beta && g.emit_witness) result["beta"] = cochain_to_json(*s.beta);
  } else if (what == "count") {
    result["classes"] = count_representation_classes(gerbe, space, g.solve());
  } else {
    fail(ErrorKind::InvalidInput, "unknown representation query '" + what + "'");
  }
  return result;
}

Json run_dual(const Json& payload, const GlobalOptions& g) {
  DualityInput input = duality_input_from_json(payload);
  auto w = omega_membership(input, g.solve());
  if (std::holds_alternative<OmegaFailure>(w)) {
    auto f = std::get<OmegaFailure>(w);
    fail(ErrorKind::NoSolutionAtLevel, "membership solve failed at stage " + std::to_string(f.stage),
         {f.stage, f.level});
  }
  const OmegaWitness& witness = std::get<OmegaWitness>(w);
  DualGerbeResult d = dual_gerbe(input, witness, g.solve());
  Json result;
  result["dual_group"] = group_to_json(*d.dual.group);
  result["F_hat"] = abelian_cochain_to_json(d.ext.f_hat);
  result["alpha_hat"] = cochain_to_json(d.dual.alpha);
  result["dual_fiber"] = d.dual_fiber_elements;
  if (g.emit_witness) result["witness"] = witness_json(witness);
  Json classes;
  classes["fiber_factors"] = input.chart.structure.factors();
  {
    Cochain zero(Site::group_site(d.dual.group), 3);
    ClassComparison cc = classes_equal(d.dual.alpha, zero, g.solve());
    classes["alpha_hat_trivial"] = cc.equal;
    classes["alpha_hat_level"] = cc.level;
  }
  result["classes"] = std::move(classes);
  return result;
}

Json run_doubledual(const Json& payload, const GlobalOptions& g) {
  DualityInput input = duality_input_from_json(payload);
  auto w = omega_membership(input, g.solve());
  if (std::holds_alternative<OmegaFailure>(w)) {
    auto f = std::get<OmegaFailure>(w);
    fail(ErrorKind::NoSolutionAtLevel, "membership solve failed at stage " + std::to_string(f.stage),
         {f.stage, f.level});
  }
  DoubleDualReport rep = double_dual_check(input, std::get<OmegaWitness>(w), g.solve());
  Json result;
  result["ok"] = rep.ok;
  if (!rep.ok) result["failure"] = rep.failure;
  result["comparison_iso"] = rep.comparison_iso;
  result["class_match"] = rep.class_match;
  result["dual_group"] = group_to_json(*rep.dual.dual.group);
  if (rep.comparison_iso) {
    result["double_dual_group"] = group_to_json(*rep.double_dual.dual.group);
    result["comparison"] = rep.comparison.image;
  }
  if (!rep.ok) fail(ErrorKind::ClassMismatch, "double dual check failed: " + rep.failure);
  return result;
}

Json run_crossmod(const Json& payload, const std::string& mode, const GlobalOptions& g) {
  Json result;
  if (mode == "validate") {
    CrossedModule x = crossed_module_from_json(payload);
    auto w = crossed_module_violation(x);
    result["valid"] = !w.has_value();
    if (w) result["witness"] = *w;
    return result;
  }
  if (mode != "pair") fail(ErrorKind::InvalidInput, "unknown crossmod mode '" + mode + "'");
  GroupPtr grp = group_from_json(payload.at("group"), nullptr, g.max_order);
  auto fiber = payload.at("central_subgroup").get<std::vector<int>>();
  CentralQuotient q = quotient_by_central(grp, fiber);
  BilinearForm b;
  b.domain = q.fiber_abelian.group;
  b.matrix.assign(b.domain.rank(), std::vector<CircleValue>(b.domain.rank()));
  {
    const Json& rows = payload.at("bilinear");
    for (int i = 0; i < b.domain.rank(); ++i)
      for (int j = 0; j < b.domain.rank(); ++j)
        b.matrix[i][j] = CircleValue::parse(rows[i][j].get<std::string>());
  }
  Int level = payload.value("level", Int(0));
  FiniteFiberPair pair = finite_fiber_pair(grp, fiber, b, level);
  result["level"] = pair.level;
  result["x1"] = crossed_module_to_json(pair.x1);
  result["x2"] = crossed_module_to_json(pair.x2);
  result["pi0_x1"] = group_to_json(*pair.four1.pi0);
  result["pi0_x2"] = group_to_json(*pair.four2.pi0);
  result["pi1_factors"] = abelian_invariants(*subgroup_as_group(pair.x1.n, pair.four1.pi1_elements).group)
                              .group.factors();
  result["coker1_equals_group"] = pair.coker1_equals_g;
  result["coker2_is_s_times_k"] = pair.coker2_iso.is_bijective();
  return result;
}

Json run_spectral(const Json& payload, const GlobalOptions& g) {
  GroupPtr k = group_from_json(payload.at("base"), nullptr, g.max_order);
  FiniteAbelianGroup s(payload.at("fiber_factors").get<std::vector<Int>>());
  int pmax = payload.value("p_max", 3);
  int qmax = payload.value("q_max", 2);
  Json table = Json::array();
  for (int p = 0; p <= pmax; ++p)
    for (int q = 0; q <= std::min(qmax, 2); ++q) {
      E2Term t = lhs_e2(k, s, p, q, g.solve());
      Json cell;
      cell["p"] = p;
      cell["q"] = q;
      if (t.full_circle) {
        cell["order"] = "circle";
      } else {
        cell["order"] = t.order();
        cell["factors"] = t.factors;
      }
      table.push_back(std::move(cell));
    }
  Json result;
  result["e2"] = std::move(table);
  return result;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"computations with multiplicative gerbes over finite groups"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  GlobalOptions g;
  app.add_option("--input", g.input, "input file ('-' = stdin)")->envname("GERBES_INPUT");
  app.add_option("--level-multiplier", g.level_multiplier, "extra factor for solve levels")
      ->envname("GERBES_LEVEL_MULTIPLIER");
  app.add_option("--max-order", g.max_order, "group order cap")->envname("GERBES_MAX_ORDER");
  app.add_option("--max-matrix-dim", g.max_matrix_dim, "solver dimension cap")
      ->envname("GERBES_MAX_MATRIX_DIM");
  app.add_flag("--emit-witness", g.emit_witness, "include solver witnesses in reports")
      ->envname("GERBES_EMIT_WITNESS");

  std::string command, mode;
  auto* c_group = app.add_subcommand("group", "inspect groups, quotients, extensions");
  c_group->add_option("mode", mode, "inspect|quotient|extension")->required();
  auto* c_cohomology = app.add_subcommand("cohomology", "circle-coefficient cohomology of a group");
  auto* c_cocycle = app.add_subcommand("cocycle", "check/solve/equal for cochains");
  c_cocycle->add_option("mode", mode, "check|solve|equal")->required();
  auto* c_gerbe = app.add_subcommand("gerbe", "make gerbes and query representations");
  c_gerbe->add_option("mode", mode, "make|rep")->required();
  auto* c_dual = app.add_subcommand("dual", "fibrewise Pontrjagin dual");
  auto* c_doubledual = app.add_subcommand("doubledual", "double dual round trip");
  auto* c_crossmod = app.add_subcommand("crossmod", "crossed modules");
  c_crossmod->add_option("mode", mode, "pair|validate")->required();
  auto* c_spectral = app.add_subcommand("spectral", "second-page table for a central extension");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto started = std::chrono::steady_clock::now();
  Json report;
  int exit_code = 0;
  try {
    Json payload = parse_json(read_input(g));
    Json result;
    if (c_group->parsed()) {
      command = "group " + mode;
      result = run_group(payload, mode, g);
    } else if (c_cohomology->parsed()) {
      command = "cohomology";
      result = run_cohomology(payload, g);
    } else if (c_cocycle->parsed()) {
      command = "cocycle " + mode;
      result = run_cocycle(payload, mode, g);
    } else if (c_gerbe->parsed()) {
      command = "gerbe " + mode;
      result = run_gerbe(payload, mode, g);
    } else if (c_dual->parsed()) {
      command = "dual";
      result = run_dual(payload, g);
    } else if (c_doubledual->parsed()) {
      command = "doubledual";
      result = run_doubledual(payload, g);
    } else if (c_crossmod->parsed()) {
      command = "crossmod " + mode;
      result = run_crossmod(payload, mode, g);
    } else if (c_spectral->parsed()) {
      command = "spectral";
      result = run_spectral(payload, g);
    }
    report["command"] = command;
    report["status"] = "ok";
    report["result"] = std::move(result);
  } catch (const Error& e) {
    report["command"] = command;
    report["status"] = "error";
    Json err;
    err["kind"] = error_kind_name(e.kind());
    err["message"] = e.what();
    err["witness"] = e.witness();
    report["error"] = std::move(err);
    exit_code = e.exit_code();
  } catch (const std::exception& e) {
    report["command"] = command;
    report["status"] = "error";
    report["error"] = Json{{"kind", "Internal"}, {"message", e.what()}};
    exit_code = 1;
  }
  auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
  report["timing_ms"] = elapsed.count();
  std::cout << report.dump(2) << std::endl;
  return exit_code;
}
