#pragma once

#include <json.hpp>

#include "cubadv/bounds.hpp"
#include "cubadv/estimate.hpp"
#include "cubadv/verify.hpp"

namespace cubadv::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Finite doubles as numbers, everything else as null.
Json number_or_null(double v);

Json to_json(const BoundReport& report, bool log_only);
Json to_json(const MCEstimate& estimate);
Json to_json(const AttackReport& report);
Json to_json(const CheckOutcome& outcome);

/// {schema, subcommand, config, result}
Json envelope(const std::string& subcommand, Json config, Json result);

}  // namespace cubadv::cli
