#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "qinfo/states.hpp"

namespace qinfo {

/// {"rows":R,"cols":C,"dims":[...],"re":[...],"im":[...]}, row-major; "dims" optional.
nlohmann::json matrix_to_json(const ComplexMatrix &m, const std::optional<Dims> &dims = std::nullopt);
ComplexMatrix matrix_from_json(const nlohmann::json &j, std::optional<Dims> *dims = nullptr);

/// {"amps_re":[...],"amps_im":[...],"dims":[...]}
nlohmann::json state_to_json(const PureState &psi);
nlohmann::json state_to_json(const DensityMatrix &rho);
PureState pure_state_from_json(const nlohmann::json &j);
/// Density matrices use the matrix format with "dims" required.
DensityMatrix density_from_json(const nlohmann::json &j);
/// Dispatches on the presence of "amps_re".
AnyState state_from_json(const nlohmann::json &j);

/// Reads a file, or parses the argument itself when it starts with '{'.
nlohmann::json load_json(const std::string &path_or_inline);

}  // namespace qinfo
