#pragma once

#include <string>

#include <json.hpp>

#include "planted/harness.hpp"
#include "planted/instances.hpp"
#include "planted/reductions.hpp"
#include "planted/stats.hpp"
#include "planted/types.hpp"

namespace planted {

using nlohmann::json;

// Non-finite reals are written as the strings "inf", "-inf", "nan".
json real_to_json(double x);
double real_from_json(const json& j);

json to_json(const ProblemParams& p);
ProblemParams params_from_json(const json& j);

json to_json(const Support& s);
Support support_from_json(const json& j);

json to_json(const Graph& g);  // rows of '0'/'1'
Graph graph_from_json(const json& j);

json to_json(const RealMatrix& m);  // {rows, cols, entries (row-major)}
RealMatrix matrix_from_json(const json& j);

json to_json(const RealVector& v);
RealVector vector_from_json(const json& j);

json to_json(const PlantedGraphInstance& inst);
json to_json(const PlantedMatrixInstance& inst);
json to_json(const SpcaInstance& inst);
PlantedGraphInstance graph_instance_from_json(const json& j);
PlantedMatrixInstance matrix_instance_from_json(const json& j);
SpcaInstance spca_instance_from_json(const json& j);

json to_json(const Observation& obs);
// Accepts either a bare observation or any serialized instance.
Observation observation_from_json(const json& j);

json to_json(const Verdict& v);
json to_json(const RecoveryResult& r);
json to_json(const ReductionOutput& r);
json to_json(const TestReport& r);
json to_json(const ErrorReport& r);
json to_json(const ScheduleResult& r);

json to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const json& j);

}  // namespace planted
