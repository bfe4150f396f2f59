#pragma once

#include <json.hpp>

#include "gerbes/crossmod.hpp"
#include "gerbes/duality.hpp"
#include "gerbes/spectral.hpp"

namespace gerbes {

using Json = nlohmann::ordered_json;

Json group_to_json(const FiniteGroup& g, const std::vector<int>* relabeling = nullptr);
GroupPtr group_from_json(const Json& j, std::vector<int>* relabeling = nullptr, Int max_order = 4096);

Json base_to_json(const Site& s);
Site base_from_json(const Json& j);

Json cochain_to_json(const Cochain& c);
Cochain cochain_from_json(const Json& j);

Json abelian_cochain_to_json(const AbelianCochain& c);
AbelianCochain abelian_cochain_from_json(const Json& j);

Json cohomology_to_json(const CohomologyGroup& h);

Json gerbe_to_json(const MultiplicativeGerbe& g);
MultiplicativeGerbe gerbe_from_json(const Json& j);

Json crossed_module_to_json(const CrossedModule& x);
CrossedModule crossed_module_from_json(const Json& j);

// Parses either a JSON document or raises InvalidInput with context.
Json parse_json(const std::string& text);

}  // namespace gerbes
