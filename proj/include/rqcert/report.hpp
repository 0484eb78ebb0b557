#pragma once

#include <string>

#include "json.hpp"
#include "rqcert/bounds.hpp"
#include "rqcert/experiments.hpp"

namespace rqcert {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "1.0.0";

/// {bound_name, lhs, rhs, holds, equality, skipped: false, reason: null, ingredients}
Json to_json(const BoundReport& r);

/// Same keys as an evaluated report, with null values and the reason set.
Json skipped_json(const std::string& bound_name, const std::string& reason);

/// {name, pass, notes, scalars, tallies}; reports are serialized separately.
Json to_json(const ExperimentResult& e);

Json to_json(const InvariantTally& t);

/// Indented dump with every float printed at 17 significant digits;
/// non-finite values become null.
std::string dump(const Json& j, int indent = 2);

}  // namespace rqcert
