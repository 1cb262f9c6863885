#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "scc/currents.hpp"
#include "scc/surface.hpp"

namespace scc {

using Json = nlohmann::ordered_json;

// Matrices serialize as {"n": <half-dim>, "entries": [row-major reals]};
// complex entries as [re, im] pairs.
Json matrix_to_json(const RMat& m);
RMat matrix_from_json(const Json& j);
Json cmatrix_to_json(const CMat& m);
CMat cmatrix_from_json(const Json& j);

Domain domain_from_json(const Json& j);
Json domain_to_json(const Domain& d);

/// Builds a map from {"kind": "linear"|"shear"|"twist", ...params}.
SympMap map_from_json(const Json& j, const Domain& domain);

/// Grid from the config's domain + resolution; resolutions must be powers of two.
QuadratureGrid grid_from_json(const Json& domain, const Json& resolution);

struct TwistReportConfig {
    TwistSpec base;
    std::vector<double> eps_list;
    std::vector<HoleSpec> holes;
    TwistReportOptions options;
    std::optional<Json> lantern;  // {"sigma_v":[4], "sigma_w":[3], "a":[3], "b":x, "H":x}
};
TwistReportConfig twist_report_config_from_json(const Json& j);

std::string twist_report_to_csv(const TwistReport& rep, std::size_t hole_count,
                                std::optional<double> lantern_value);

}  // namespace scc
