#ifndef MST_JSON_IO_HPP
#define MST_JSON_IO_HPP

#include <json.hpp>

#include "mst/checks.hpp"
#include "mst/global_type.hpp"
#include "mst/oracle.hpp"

namespace mst {

nlohmann::json verdict_to_json(const Verdict& v);

/// Re-read a violation from its JSON form (inverse of verdict_to_json's
/// per-violation encoding).
Violation violation_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const ExplorationReport& report, const Csm& csm);

nlohmann::json type_violations_to_json(const std::vector<TypeViolation>& vs);

nlohmann::json machine_to_json(const LocalMachine& m);

}  // namespace mst

#endif
