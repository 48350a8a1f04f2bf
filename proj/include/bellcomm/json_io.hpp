#pragma once

#include <json.hpp>
#include <string>

#include "bellcomm/classical.hpp"
#include "bellcomm/experiments.hpp"
#include "bellcomm/quantum.hpp"
#include "bellcomm/scenario.hpp"

namespace bellcomm {

using Json = nlohmann::json;

// Integers round-trip losslessly: 64-bit values are JSON numbers, wider ones
// decimal strings. Reals round-trip bit-exactly through the decimal encoding.

Json to_json(const Scenario& sc);
Scenario scenario_from_json(const Json& j);

Json to_json(const BellFunctional& b);
BellFunctional functional_from_json(const Json& j);

Json to_json(const Behavior& p);
Behavior behavior_from_json(const Json& j);

Json to_json(const BoundResult& r);

Json to_json(const QuantumModel& m);
QuantumModel model_from_json(const Json& j);

Json to_json(const StructureReport& r);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace bellcomm
