#pragma once

#include <string>

#include "json.hpp"

namespace flm {

using Json = nlohmann::ordered_json;

// Pretty-printed JSON with every floating-point number written as %.17g.
// Non-finite numbers become null.
std::string dump_json(const Json& value, int indent = 2);

}  // namespace flm
