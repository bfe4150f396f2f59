#include "gerbes/json_io.hpp"

namespace gerbes {

namespace {

Eigen::MatrixXi matrix_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) fail(ErrorKind::InvalidInput, std::string(what) + ": expected a nonempty array");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  Eigen::MatrixXi m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols)
      fail(ErrorKind::InvalidInput, std::string(what) + ": ragged rows");
    for (int c = 0; c < cols; ++c) {
      if (!j[r][c].is_number_integer()) fail(ErrorKind::InvalidInput, std::string(what) + ": non-integer entry");
      m(r, c) = j[r][c].get<int>();
    }
  }
  return m;
}

Json matrix_to_json(const Eigen::MatrixXi& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Json parse_json(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorKind::InvalidInput, "malformed JSON input");
  return j;
}

Json group_to_json(const FiniteGroup& g, const std::vector<int>* relabeling) {
  Json out;
  out["kind"] = "table";
  out["order"] = g.order();
  out["table"] = matrix_to_json(g.table());
  out["abelian"] = g.is_abelian();
  if (relabeling) out["relabeling"] = *relabeling;
  return out;
}

GroupPtr group_from_json(const Json& j, std::vector<int>* relabeling, Int max_order) {
  if (!j.is_object() || !j.contains("kind"))
    fail(ErrorKind::InvalidInput, "group description needs a 'kind'");
  std::string kind = j["kind"].get<std::string>();
  if (kind == "table") {
    if (!j.contains("table")) fail(ErrorKind::InvalidInput, "table group needs 'table'");
    return FiniteGroup::from_table(matrix_from_json(j["table"], "group table"), relabeling);
  }
  if (kind == "perm") {
    if (!j.contains("degree") || !j.contains("generators"))
      fail(ErrorKind::InvalidInput, "perm group needs 'degree' and 'generators'");
    std::vector<std::vector<int>> gens;
    for (const auto& g : j["generators"]) gens.push_back(g.get<std::vector<int>>());
    if (relabeling) relabeling->clear();
    return FiniteGroup::from_permutations(j["degree"].get<int>(), gens, max_order);
  }
  if (kind == "abelian") {
    if (!j.contains("factors")) fail(ErrorKind::InvalidInput, "abelian group needs 'factors'");
    FiniteAbelianGroup a(j["factors"].get<std::vector<Int>>());
    if (a.order() > max_order) fail(ErrorKind::OrderLimitExceeded, "group order exceeds cap", {a.order()});
    if (relabeling) relabeling->clear();
    return a.as_group();
  }
  fail(ErrorKind::InvalidInput, "unknown group kind '" + kind + "'");
}

Json base_to_json(const Site& s) {
  Json out;
  if (s.is_group_base()) {
    out["kind"] = "group";
    out["group"] = group_to_json(s.group());
  } else {
    out["kind"] = "groupoid";
    out["group"] = group_to_json(s.group());
    out["action"] = matrix_to_json(s.action());
  }
  return out;
}

Site base_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) fail(ErrorKind::InvalidInput, "base needs a 'kind'");
  std::string kind = j["kind"].get<std::string>();
  GroupPtr g = group_from_json(j.at("group"));
  if (kind == "group") return Site::group_site(g);
  if (kind == "groupoid") {
    if (!j.contains("action")) fail(ErrorKind::InvalidInput, "groupoid base needs 'action'");
    Eigen::MatrixXi action = matrix_from_json(j["action"], "action");
    if (action.rows() == 1 && action.isZero()) return Site::point_site(g);
    return Site::action_site(g, std::move(action));
  }
  fail(ErrorKind::InvalidInput, "unknown base kind '" + kind + "'");
}

Json cochain_to_json(const Cochain& c) {
  Json out;
  out["base"] = base_to_json(c.site());
  out["degree"] = c.degree();
  out["normalized"] = c.is_normalized();
  Json entries = Json::array();
  const bool group_base = c.site().is_group_base();
  for (Int i = 0; i < c.size(); ++i) {
    if (c[i].is_zero()) continue;
    int p;
    std::vector<int> args;
    tuple_decode(c.site(), c.degree(), i, p, args);
    Json e;
    Json ja = Json::array();
    if (!group_base) ja.push_back(p);
    for (int a : args) ja.push_back(a);
    e["args"] = std::move(ja);
    e["value"] = c[i].str();
    entries.push_back(std::move(e));
  }
  out["entries"] = std::move(entries);
  return out;
}

Cochain cochain_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorKind::InvalidInput, "cochain must be an object");
  Site s = base_from_json(j.at("base"));
  int degree = j.at("degree").get<int>();
  Cochain out(s, degree);
  const bool group_base = s.is_group_base();
  for (const auto& e : j.value("entries", Json::array())) {
    auto args = e.at("args").get<std::vector<int>>();
    int p = 0;
    if (!group_base) {
      if (static_cast<int>(args.size()) != degree + 1)
        fail(ErrorKind::InvalidInput, "groupoid cochain entries need [point, args...]");
      p = args.front();
      args.erase(args.begin());
    } else if (static_cast<int>(args.size()) != degree) {
      fail(ErrorKind::InvalidInput, "cochain entry arity mismatch");
    }
    for (int a : args)
      if (a < 0 || a >= s.group().order()) fail(ErrorKind::InvalidInput, "cochain argument out of range");
    if (p < 0 || p >= s.points()) fail(ErrorKind::InvalidInput, "cochain point out of range");
    out.set(p, args, CircleValue::parse(e.at("value").get<std::string>()));
  }
  return out;
}

Json abelian_cochain_to_json(const AbelianCochain& c) {
  Json out;
  out["base"] = base_to_json(c.site());
  out["degree"] = c.degree();
  out["coefficients"] = Json{{"factors", c.coefficients().factors()}};
  Json entries = Json::array();
  const bool group_base = c.site().is_group_base();
  for (Int i = 0; i < c.size(); ++i) {
    auto v = c.value_at(i);
    bool nz = false;
    for (Int x : v) nz = nz || x != 0;
    if (!nz) continue;
    int p;
    std::vector<int> args;
    tuple_decode(c.site(), c.degree(), i, p, args);
    Json e;
    Json ja = Json::array();
    if (!group_base) ja.push_back(p);
    for (int a : args) ja.push_back(a);
    e["args"] = std::move(ja);
    e["value"] = v;
    entries.push_back(std::move(e));
  }
  out["entries"] = std::move(entries);
  return out;
}

AbelianCochain abelian_cochain_from_json(const Json& j) {
  Site s = base_from_json(j.at("base"));
  int degree = j.at("degree").get<int>();
  FiniteAbelianGroup coeffs(j.at("coefficients").at("factors").get<std::vector<Int>>());
  AbelianCochain out(s, degree, coeffs);
  const bool group_base = s.is_group_base();
  for (const auto& e : j.value("entries", Json::array())) {
    auto args = e.at("args").get<std::vector<int>>();
    int p = 0;
    if (!group_base) {
      p = args.front();
      args.erase(args.begin());
    }
    out.set(p, args, e.at("value").get<std::vector<Int>>());
  }
  return out;
}

Json cohomology_to_json(const CohomologyGroup& h) {
  Json out;
  out["factors"] = h.factors;
  Json gens = Json::array();
  for (const auto& g : h.generators) gens.push_back(cochain_to_json(g));
  out["generators"] = std::move(gens);
  return out;
}

Json gerbe_to_json(const MultiplicativeGerbe& g) {
  Json out;
  out["group"] = group_to_json(*g.group);
  out["alpha"] = cochain_to_json(g.alpha);
  return out;
}

MultiplicativeGerbe gerbe_from_json(const Json& j) {
  GroupPtr g = group_from_json(j.at("group"));
  Cochain alpha = cochain_from_json(j.at("alpha"));
  if (!alpha.site().is_group_base() || !alpha.site().group().same_table(*g))
    fail(ErrorKind::InvalidInput, "gerbe cochain base does not match the group");
  return make_gerbe(g, std::move(alpha));
}

Json crossed_module_to_json(const CrossedModule& x) {
  Json out;
  out["n"] = group_to_json(*x.n);
  out["e"] = group_to_json(*x.e);
  out["phi"] = x.phi.image;
  out["action"] = matrix_to_json(x.action);
  return out;
}

CrossedModule crossed_module_from_json(const Json& j) {
  CrossedModule x;
  x.n = group_from_json(j.at("n"));
  x.e = group_from_json(j.at("e"));
  x.phi = GroupHom{x.n, x.e, j.at("phi").get<std::vector<int>>()};
  x.action = matrix_from_json(j.at("action"), "crossed module action");
  return x;
}

}  // namespace gerbes
