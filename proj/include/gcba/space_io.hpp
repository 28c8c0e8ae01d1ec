#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "gcba/cone_space.hpp"
#include "gcba/validation.hpp"

namespace gcba {

using Json = nlohmann::json;

/// A loaded description: either a spherical graph or a cone over one.
struct Space {
  std::optional<SphericalGraph> graph;
  std::optional<ConeSpace> cone;

  bool is_cone() const { return cone.has_value(); }
  /// The graph itself, or the base of the cone.
  const SphericalGraph& base() const { return cone ? cone->base() : *graph; }
  const ConeSpace& as_cone() const;
};

/// Parses a JSON document; InputError on syntax errors.
Json parse_json_text(const std::string& text);
Json read_json_file(const std::string& path);

/// Builds the space without checking the CAT(1)/CAT(0) invariants.
Space parse_space(const Json& description);
SphericalGraph parse_graph(const Json& description);

ValidationReport validate_space(const Space& space);

/// parse_space + validate_space; InputError naming the failed invariant.
Space make_space(const Json& description);

/// {"vertex": v} or {"edge": e, "offset": t}, in description coordinates.
GraphPoint parse_graph_point(const SphericalGraph& g, const Json& j);
/// A graph point plus "radius"; radius 0 (or {"apex": true}) is the apex.
ConePoint parse_cone_point(const ConeSpace& k, const Json& j);

Json graph_point_json(const SphericalGraph& g, const GraphPoint& x);
Json cone_point_json(const ConeSpace& k, const ConePoint& p);

}  // namespace gcba
