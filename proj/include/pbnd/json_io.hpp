#pragma once

#include <json.hpp>

#include "pbnd/core.hpp"

namespace pbnd {

using Json = nlohmann::ordered_json;

/// Finite doubles as numbers, infinities as the string "inf".
Json number_or_inf(double v);
double read_number_or_inf(const Json& j, const char* field);

Json to_json(const Instance& inst);
Json to_json(const Solution& sol);

}  // namespace pbnd
