#include "gcba/space_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace gcba {
namespace {

double number_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) throw InputError(std::string("missing numeric field '") + key + "'");
  const double v = j.at(key).get<double>();
  if (!std::isfinite(v)) throw InputError(std::string("field '") + key + "' is not finite");
  return v;
}

int int_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw InputError(std::string("missing integer field '") + key + "'");
  }
  return j.at(key).get<int>();
}

MetricMode parse_mode(const Json& j) {
  if (!j.contains("metric_mode")) return MetricMode::pi_truncated;
  const std::string mode = j.at("metric_mode").get<std::string>();
  if (mode == "pi_truncated") return MetricMode::pi_truncated;
  if (mode == "intrinsic") return MetricMode::intrinsic;
  throw InputError("unknown metric_mode '" + mode + "'");
}

}  // namespace

const ConeSpace& Space::as_cone() const {
  if (!cone) throw InputError("operation needs a cone space");
  return *cone;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("JSON parse error: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

SphericalGraph parse_graph(const Json& d) {
  if (!d.is_object() || !d.contains("type")) throw InputError("space description needs a 'type'");
  const std::string type = d.at("type").get<std::string>();
  const MetricMode mode = parse_mode(d);
  if (type == "circle") {
    const double len = number_field(d, "length");
    if (!(len > 0.0)) throw InputError("circle length must be positive");
    return SphericalGraph::circle(len, mode);
  }
  if (type == "suspension") {
    return SphericalGraph::suspension(int_field(d, "arcs"), mode);
  }
  if (type == "graph") {
    int n = 0;
    const Json& vs = d.at("vertices");
    if (vs.is_number_integer()) {
      n = vs.get<int>();
    } else if (vs.is_array()) {
      n = static_cast<int>(vs.size());
      for (int i = 0; i < n; ++i) {
        if (!vs[static_cast<std::size_t>(i)].is_number_integer() || vs[static_cast<std::size_t>(i)].get<int>() != i) {
          throw InputError("vertex ids must be 0..n-1 in order");
        }
      }
    } else {
      throw InputError("'vertices' must be a count or an id list");
    }
    if (n < 1) throw InputError("graph needs at least one vertex");
    std::vector<SphericalGraph::InputEdge> edges;
    for (const Json& e : d.at("edges")) {
      edges.push_back({int_field(e, "a"), int_field(e, "b"), number_field(e, "len")});
    }
    return SphericalGraph::from_edges(n, std::move(edges), mode);
  }
  throw InputError("unknown space type '" + type + "'");
}

Space parse_space(const Json& d) {
  try {
    Space s;
    if (d.is_object() && d.value("type", "") == "cone") {
      if (!d.contains("base")) throw InputError("cone description needs a 'base'");
      s.cone.emplace(parse_graph(d.at("base")));
    } else {
      s.graph.emplace(parse_graph(d));
    }
    return s;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed space description: ") + e.what());
  }
}

ValidationReport validate_space(const Space& space) {
  return space.is_cone() ? validate_space(*space.cone) : validate_space(*space.graph);
}

Space make_space(const Json& description) {
  Space s = parse_space(description);
  const ValidationReport report = validate_space(s);
  if (const CheckResult* bad = report.failure()) {
    throw InputError("space fails validation (" + bad->name + "): " + bad->detail);
  }
  return s;
}

GraphPoint parse_graph_point(const SphericalGraph& g, const Json& j) {
  if (!j.is_object()) throw InputError("point must be a JSON object");
  try {
    if (j.contains("vertex")) {
      const int v = int_field(j, "vertex");
      if (v < 0 || v >= g.num_input_vertices()) throw InputError("vertex id out of range");
      return GraphPoint::at_vertex(v);
    }
    const int e = int_field(j, "edge");
    if (e < 0 || e >= static_cast<int>(g.input_edges().size())) throw InputError("edge id out of range");
    return g.from_input(e, number_field(j, "offset"));
  } catch (const Json::exception& ex) {
    throw InputError(std::string("malformed point: ") + ex.what());
  }
}

ConePoint parse_cone_point(const ConeSpace& k, const Json& j) {
  if (!j.is_object()) throw InputError("point must be a JSON object");
  if (j.value("apex", false)) return ConePoint::apex();
  const double r = number_field(j, "radius");
  if (r < 0.0) throw InputError("cone radius must be nonnegative");
  if (r == 0.0) return ConePoint::apex();
  return k.normalize({parse_graph_point(k.base(), j), r});
}

Json graph_point_json(const SphericalGraph& g, const GraphPoint& x) {
  const auto loc = g.to_input(x);
  if (loc.is_vertex) return Json{{"vertex", loc.vertex}};
  return Json{{"edge", loc.edge}, {"offset", loc.offset}};
}

Json cone_point_json(const ConeSpace& k, const ConePoint& p) {
  if (p.is_apex()) return Json{{"apex", true}, {"radius", 0.0}};
  Json j = graph_point_json(k.base(), p.base);
  j["radius"] = p.radius;
  return j;
}

}  // namespace gcba
