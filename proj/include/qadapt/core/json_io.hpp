#pragma once

#include <string>

#include <json.hpp>

#include "qadapt/core/linalg.hpp"
#include "qadapt/core/state.hpp"

namespace qadapt::core {

using Json = nlohmann::json;

Json shape_to_json(const RegisterShape& shape);
RegisterShape shape_from_json(const Json& j);

/// {"re": [[...]], "im": [[...]]}
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

/// {"shape": [["A",2],["B",2]], "re": [[...]], "im": [[...]]}
Json state_to_json(const DensityOperator& rho);
/// Rejects payloads violating the density-operator invariants.
DensityOperator state_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace qadapt::core
