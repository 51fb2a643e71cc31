#pragma once

#include "regcoreset/coreset.hpp"
#include "regcoreset/experiments.hpp"
#include "regcoreset/lowerbound.hpp"
#include "regcoreset/matrix.hpp"
#include "regcoreset/sensitivity.hpp"
#include "regcoreset/solvers.hpp"

#include <json.hpp>

namespace regcoreset {

using Json = nlohmann::json;

// Matrices are stored flat in row-major order next to their shape.
// Readers throw Error(schema_error) on missing keys or wrong shapes.

Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

Json instance_to_json(const RegressionInstance& instance);
RegressionInstance instance_from_json(const Json& j);

Json coreset_to_json(const Coreset& coreset);
Coreset coreset_from_json(const Json& j);

Json scores_to_json(const SensitivityScores& scores);
Json solver_result_to_json(const SolverResult& result);
Json solver_result_to_json(const MultiSolverResult& result);
Json verification_to_json(const CoresetVerificationReport& report);
Json transfer_to_json(const TransferReport& report);
Json witness_to_json(const CounterexampleWitness& witness);

Json table_to_json(const DataTable& table);
DataTable table_from_json(const Json& j);

/// Every field, including defaults, in a fixed key order.
Json config_to_json(const ExperimentConfig& config);
/// Starts from defaults and overrides the keys present; unknown keys are rejected.
ExperimentConfig config_from_json(const Json& j);

}  // namespace regcoreset
