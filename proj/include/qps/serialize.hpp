#pragma once

#include <json.hpp>
#include <string>

#include "qps/flow.hpp"
#include "qps/ncalg.hpp"
#include "qps/structure.hpp"

namespace qps {

/// Interchange format: chart (names, pairs, kind), beta ("p/q" or
/// "symbolic"), bivector/casimir entries as term lists
/// [[exponents...], "re", "im"] with the exponent vector running over chart
/// names plus a trailing beta_inv slot.
nlohmann::json structure_to_json(const PoissonStructure& P);
PoissonStructure structure_from_json(const nlohmann::json& j);

nlohmann::json poly_to_json(const PolyExpr& p, const std::vector<std::string>& vars);
PolyExpr poly_from_json(const nlohmann::json& j, const std::vector<std::string>& vars);

nlohmann::json trajectory_to_json(const Trajectory& traj);

/// Rule system description: alphabet (normal order), optional dagger
/// permutation, rules as {pair: [hi, lo], terms: [{word, re, im}]}.
RewriteSystem system_from_json(const nlohmann::json& j);
nlohmann::json system_to_json(const RewriteSystem& R);

PoissonStructure load_structure_file(const std::string& path);

}  // namespace qps
