#include "gcba/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "gcba/analysis.hpp"
#include "gcba/space_io.hpp"

namespace gcba {
namespace {

struct Request {
  std::string space_path;
  std::string out_path;
  double eps = 0.15;
  double delta = 0.2;
  double rho = 0.3;
  std::uint64_t seed = 1;
  std::optional<double> resolution;
  std::string x, y, xi, eta, p, a, b, r;
  int k = 2;
  int n = 16;
  int steps = 8;
  double theta_min = 0.0;
  double theta_max = 3.5;
  double step = 0.01;
};

double round12(double v) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

// Point coordinates keep full precision so echoed points re-parse exactly.
void round_report(Json& j, const std::string& key = "") {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) round_report(it.value(), it.key());
  } else if (j.is_array()) {
    for (auto& v : j) round_report(v, key);
  } else if (j.is_number_float() && key != "offset" && key != "radius") {
    j = round12(j.get<double>());
  }
}

void write_atomically(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
    if (!out) throw InputError("cannot write " + path);
  }
  std::filesystem::rename(tmp, path);
}

Json parse_arg(const std::string& text, const char* flag) {
  if (text.empty()) throw InputError(std::string("missing --") + flag);
  return parse_json_text(text);
}

std::vector<Json> json_list(const std::string& text, const char* flag) {
  Json j = parse_arg(text, flag);
  if (j.is_array()) return {j.begin(), j.end()};
  return {j};
}

std::vector<double> number_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  for (const Json& v : json_list(text, flag)) {
    if (!v.is_number()) throw InputError(std::string("--") + flag + " expects numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<GraphPoint> graph_points(const SphericalGraph& g, const std::string& text, const char* flag) {
  std::vector<GraphPoint> out;
  for (const Json& v : json_list(text, flag)) out.push_back(parse_graph_point(g, v));
  return out;
}

std::vector<ConePoint> cone_points(const ConeSpace& k, const std::string& text, const char* flag) {
  std::vector<ConePoint> out;
  for (const Json& v : json_list(text, flag)) out.push_back(parse_cone_point(k, v));
  return out;
}

Json margin_json(const MarginReport& r) {
  return {{"k", r.k},
          {"eps", r.eps},
          {"delta", r.delta},
          {"eps_margin", r.eps_margin},
          {"delta_margin", r.delta_margin},
          {"max_xi_xi", r.max_xi_xi},
          {"max_xi_eta", r.max_xi_eta},
          {"verdict", r.verdict},
          {"combinations", r.combinations},
          {"dimension_bound", r.dimension_bound},
          {"k_within_bound", r.k_within_bound},
          {"bound_slack", r.bound_slack}};
}

Json rho_json(const RhoReport& r) {
  return {{"rho", r.rho},
          {"h", r.h},
          {"samples", r.samples},
          {"worst_pair_sum", r.worst_pair_sum},
          {"worst_regular_sum", r.worst_regular_sum},
          {"delta_slack", r.delta_slack},
          {"eps_slack", r.eps_slack},
          {"worst_slack", r.worst_slack},
          {"verdict", r.verdict}};
}

Space load_space(const Request& req) {
  if (req.space_path.empty()) throw InputError("missing --space");
  return make_space(read_json_file(req.space_path));
}

FiberSpec fiber_spec(const ConeSpace& k, const Request& req) {
  FiberSpec spec;
  spec.p = parse_cone_point(k, parse_arg(req.p, "p"));
  spec.a_list = cone_points(k, req.a, "a");
  spec.b = parse_cone_point(k, parse_arg(req.b, "b"));
  spec.eps = req.eps;
  spec.delta = req.delta;
  spec.rho = req.rho;
  return spec;
}

double single_radius(const Request& req) {
  const auto rs = number_list(req.r, "r");
  if (rs.size() != 1) throw InputError("--r expects one radius");
  return rs.front();
}

Json cmd_validate(const Request& req) {
  if (req.space_path.empty()) throw InputError("missing --space");
  const Space space = parse_space(read_json_file(req.space_path));
  const ValidationReport rep = validate_space(space);
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"margin", c.margin}, {"detail", c.detail}});
  }
  Json j{{"kind", rep.kind}, {"passed", rep.passed()}, {"checks", checks}};
  if (space.is_cone()) {
    j["quadruples"] = rep.quadruples;
    j["worst_four_point"] = rep.worst_four_point;
  }
  return j;
}

Json cmd_distance(const Request& req) {
  const Space space = load_space(req);
  if (space.is_cone()) {
    const ConeSpace& k = *space.cone;
    const ConePoint x = parse_cone_point(k, parse_arg(req.x, "x"));
    const ConePoint y = parse_cone_point(k, parse_arg(req.y, "y"));
    const ConeGeodesic path = cone_geodesic(k, x, y);
    return {{"x", cone_point_json(k, x)},
            {"y", cone_point_json(k, y)},
            {"distance", path.length},
            {"through_apex", path.through_apex},
            {"base_angle", path.base_angle}};
  }
  const SphericalGraph& g = *space.graph;
  const GraphPoint x = parse_graph_point(g, parse_arg(req.x, "x"));
  const GraphPoint y = parse_graph_point(g, parse_arg(req.y, "y"));
  const double d = distance(g, x, y, false);
  const auto paths = geodesics(g, x, y, std::min(d, 2.0 * kPi));
  int shortest = 0;
  for (const auto& path : paths) shortest += path.length <= d + kTau ? 1 : 0;
  return {{"x", graph_point_json(g, x)},
          {"y", graph_point_json(g, y)},
          {"distance", d},
          {"truncated_distance", std::min(d, kPi)},
          {"shortest_paths", shortest}};
}

Json cmd_antipodes(const Request& req) {
  const Space space = load_space(req);
  const SphericalGraph& g = space.base();
  const GraphPoint xi = parse_graph_point(g, parse_arg(req.xi, "xi"));
  const AntipodeSet ant = antipode_set(g, xi);
  Json segments = Json::array();
  for (const auto& s : ant.segments) {
    const Edge& e = g.edge(s.edge);
    segments.push_back({{"edge", e.input_edge}, {"lo", e.input_offset + s.lo}, {"hi", e.input_offset + s.hi}});
  }
  Json points = Json::array();
  for (const auto& q : ant.points) points.push_back(graph_point_json(g, q));
  return {{"xi", graph_point_json(g, xi)}, {"segments", segments}, {"points", points}};
}

Json cmd_antipodal_distance(const Request& req) {
  const Space space = load_space(req);
  const SphericalGraph& g = space.base();
  const GraphPoint xi = parse_graph_point(g, parse_arg(req.xi, "xi"));
  const GraphPoint eta = parse_graph_point(g, parse_arg(req.eta, "eta"));
  const AntipodalDistance ad = antipodal_distance(g, xi, eta);
  return {{"xi", graph_point_json(g, xi)},
          {"eta", graph_point_json(g, eta)},
          {"value", ad.value},
          {"via_sup", ad.via_sup},
          {"method_gap", ad.method_gap}};
}

Json cmd_check_noncritical(const Request& req) {
  const Space space = load_space(req);
  if (!req.p.empty()) {
    const ConeSpace& k = space.as_cone();
    const FiberSpec spec = fiber_spec(k, req);
    Json j = margin_json(check_map_at_point(k, spec.p, spec.a_list, spec.b, req.eps, req.delta));
    j["p"] = cone_point_json(k, spec.p);
    if (req.resolution) {
      const double h = req.resolution.value_or(0.05);
      j["rho_check"] = rho_json(check_map_rho(k, spec.p, spec.a_list, spec.b, req.eps, req.delta, req.rho, h));
    }
    return j;
  }
  const SphericalGraph& g = space.base();
  const Collection coll{graph_points(g, req.xi, "xi"), parse_graph_point(g, parse_arg(req.eta, "eta"))};
  return margin_json(check_collection(DirectionModel::of_graph(g), coll, req.eps, req.delta));
}

Json cmd_search_eta(const Request& req) {
  const Space space = load_space(req);
  const SphericalGraph& g = space.base();
  const RegularDirection rd = search_regular_direction(DirectionModel::of_graph(g), graph_points(g, req.xi, "xi"));
  return {{"eta", graph_point_json(g, rd.eta)}, {"margin", rd.margin}, {"exists", rd.margin > 0.0}};
}

Json cmd_find_v(const Request& req) {
  const Space space = load_space(req);
  const SphericalGraph& g = space.base();
  const Collection coll{graph_points(g, req.xi, "xi"), parse_graph_point(g, parse_arg(req.eta, "eta"))};
  const FindVResult v = find_v(DirectionModel::of_graph(g), coll, req.eps, req.delta);
  return {{"v", graph_point_json(g, v.v)},
          {"m1", v.m1},
          {"m2", v.m2},
          {"max_level_residual", v.max_level_residual},
          {"used_fallback", v.used_fallback}};
}

Json constants_json(const RetractionConstants& c) { return {{"c", c.c}, {"s", c.s}, {"L", c.L}}; }

Json cmd_retract(const Request& req) {
  const Space space = load_space(req);
  const ConeSpace& k = space.as_cone();
  const Retraction ret(k, fiber_spec(k, req), single_radius(req), std::nullopt, req.resolution.value_or(0.05));
  const ConePoint x = parse_cone_point(k, parse_arg(req.x, "x"));
  const R1Result r1 = ret.r1(x);
  const R2Result r2 = ret.r2(r1.point);
  const PiClassification c = ret.classify(r2.point);
  const double d = cone_distance(k, ret.spec().p, r2.point);
  return {{"x", cone_point_json(k, x)},
          {"r1", {{"point", cone_point_json(k, r1.point)}, {"travel", r1.travel}, {"within_bound", r1.within_bound}}},
          {"point", cone_point_json(k, r2.point)},
          {"first_order_angle", r2.first_order_angle},
          {"residual", c.residual},
          {"on_fiber", c.on_fiber},
          {"distance_to_p", d},
          {"within_Lr", d <= ret.constants().L * ret.radius() + 1e-6},
          {"constants", constants_json(ret.constants())}};
}

Json cmd_sample_fiber(const Request& req) {
  const Space space = load_space(req);
  const ConeSpace& k = space.as_cone();
  const double r = single_radius(req);
  const Retraction ret(k, fiber_spec(k, req), r, std::nullopt, req.resolution.value_or(0.05));
  const FiberSample s = ret.sample_fiber(r, req.n);
  Json pts = Json::array();
  double residual = 0.0;
  for (const auto& y : s.points) {
    pts.push_back(cone_point_json(k, y));
    residual = std::max(residual, ret.f(y).cwiseAbs().maxCoeff());
  }
  return {{"points", pts},
          {"max_distance", s.max_distance},
          {"max_residual", residual},
          {"witness_bound", r / (2.0 * ret.constants().L)},
          {"constants", constants_json(ret.constants())}};
}

Json cmd_contract(const Request& req) {
  const Space space = load_space(req);
  const ConeSpace& k = space.as_cone();
  const Retraction ret(k, fiber_spec(k, req), single_radius(req), std::nullopt, req.resolution.value_or(0.05));
  const auto rows = ret.contract(req.n, req.steps);
  double residual = 0.0, dist = 0.0;
  for (const auto& row : rows) {
    residual = std::max(residual, row.residual);
    dist = std::max(dist, row.distance_to_p);
  }
  if (!req.out_path.empty()) {
    std::ostringstream csv;
    write_trace_csv(csv, k, rows);
    write_atomically(req.out_path, csv.str());
  }
  return {{"rows", rows.size()},
          {"max_residual", residual},
          {"max_distance", dist},
          {"bound", ret.constants().L * ret.radius()},
          {"constants", constants_json(ret.constants())}};
}

Json cmd_openness(const Request& req) {
  const Space space = load_space(req);
  const ConeSpace& k = space.as_cone();
  const FiberSpec spec = fiber_spec(k, req);
  OpennessOptions opt;
  opt.seed = req.seed;
  const OpennessReport o =
      openness_estimate(k, spec.p, spec.a_list, spec.b, req.eps, req.delta, number_list(req.r, "r"), opt);
  Json j{{"radii", o.radii},
         {"samples", o.samples},
         {"c_emp", o.c_emp},
         {"verify_c", o.verify_c},
         {"targets_checked", o.targets_checked},
         {"inclusion_failures", o.inclusion_failures},
         {"max_residual", o.max_residual},
         {"k_equals_dim", o.k_equals_dim}};
  if (o.k_equals_dim) {
    j["pairs"] = o.pairs;
    j["bilip_min"] = o.bilip_min;
    j["bilip_max"] = o.bilip_max;
    j["injective"] = o.injective;
  }
  return j;
}

Json cmd_fiber_sphere(const Request& req) {
  const Space space = load_space(req);
  const ConeSpace& k = space.as_cone();
  Json rows = Json::array();
  for (const auto& row : fiber_sphere_check(k, fiber_spec(k, req), number_list(req.r, "r"),
                                            req.resolution.value_or(0.05))) {
    rows.push_back({{"r", row.r},
                    {"points", row.points},
                    {"witness", cone_point_json(k, row.witness)},
                    {"delta_margin", row.delta_margin},
                    {"eps_margin", row.eps_margin},
                    {"verdict", row.verdict}});
  }
  return {{"rows", rows}};
}

Json cmd_example14(const Request& req) {
  const auto rows = example14_sweep(theta_grid(req.theta_min, req.theta_max, req.step), req.k);
  if (!req.out_path.empty()) {
    std::ostringstream csv;
    write_sweep_csv(csv, rows);
    write_atomically(req.out_path, csv.str());
  }
  Json j{{"k", req.k}, {"rows", rows.size()}};
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i - 1].best_margin > 0.0 && !(rows[i].best_margin > 0.0)) {
      j["sign_change"] = {rows[i - 1].theta, rows[i].theta};
      break;
    }
  }
  if (!rows.empty() && std::isfinite(rows.front().best_margin)) j["first_margin"] = rows.front().best_margin;
  return j;
}

Json cmd_sphere_map(const Request& req) {
  const Space space = load_space(req);
  const SphericalGraph& g = space.base();
  const SphereMapResult s = sphere_map(g, graph_points(g, req.xi, "xi"), parse_graph_point(g, parse_arg(req.eta, "eta")),
                                       req.eps, req.delta, req.resolution.value_or(1e-3));
  if (!req.out_path.empty()) {
    std::ostringstream csv;
    write_sphere_map_csv(csv, s);
    write_atomically(req.out_path, csv.str());
  }
  return {{"hypotheses", margin_json(s.hypotheses)},
          {"samples", s.table.size()},
          {"lip", s.lip},
          {"lip_inverse", s.lip_inverse},
          {"distortion", s.distortion},
          {"winding", s.winding},
          {"monotone", s.monotone},
          {"bijective", s.bijective},
          {"density", s.density},
          {"density_slack", s.density_slack}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Request req;
  CLI::App app{"Noncriticality toolkit for spherical graphs and Euclidean cones", "gcba_kit"};
  app.require_subcommand(1);
  app.add_option("--space", req.space_path, "space description (JSON)");
  app.add_option("--out", req.out_path, "CSV output path");
  app.add_option("--eps", req.eps, "regular-direction margin epsilon");
  app.add_option("--delta", req.delta, "pairwise tolerance delta");
  app.add_option("--rho", req.rho, "neighborhood radius rho");
  app.add_option("--seed", req.seed, "random seed");
  app.add_option("--resolution", req.resolution, "net spacing");
  app.fallthrough();

  struct Command {
    const char* name;
    const char* help;
    Json (*fn)(const Request&);
  };
  const std::vector<Command> commands{
      {"validate", "check the CAT(1)/CAT(0) invariants", cmd_validate},
      {"distance", "distance and shortest paths between --x and --y", cmd_distance},
      {"antipodes", "antipode set of --xi", cmd_antipodes},
      {"antipodal-distance", "antipodal distance of --xi and --eta", cmd_antipodal_distance},
      {"check-noncritical", "margins of a collection (--xi, --eta) or a map (--p, --a, --b)", cmd_check_noncritical},
      {"search-eta", "best regular direction for --xi", cmd_search_eta},
      {"find-v", "point v for the collection (--xi, --eta)", cmd_find_v},
      {"retract", "retract --x onto the fiber through --p", cmd_retract},
      {"sample-fiber", "fiber points near --p", cmd_sample_fiber},
      {"contract", "contraction trace of the fiber ball", cmd_contract},
      {"openness", "empirical openness constant", cmd_openness},
      {"fiber-sphere", "noncriticality on fiber spheres of radii --r", cmd_fiber_sphere},
      {"example14", "threshold sweep on circles of length 2pi + theta", cmd_example14},
      {"sphere-map", "normalized map of a circle direction space", cmd_sphere_map},
  };
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--x", req.x, "point (JSON)");
    sub->add_option("--y", req.y, "point (JSON)");
    sub->add_option("--xi", req.xi, "point or list of points (JSON)");
    sub->add_option("--eta", req.eta, "point (JSON)");
    sub->add_option("--p", req.p, "cone point (JSON)");
    sub->add_option("--a", req.a, "cone point or list (JSON)");
    sub->add_option("--b", req.b, "cone point (JSON)");
    sub->add_option("--r", req.r, "radius or list of radii (JSON)");
    sub->add_option("--k", req.k, "number of functions");
    sub->add_option("--n", req.n, "number of samples");
    sub->add_option("--steps", req.steps, "homotopy steps");
    sub->add_option("--theta-min", req.theta_min);
    sub->add_option("--theta-max", req.theta_max);
    sub->add_option("--step", req.step);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    for (const auto& c : commands) {
      if (!app.got_subcommand(c.name)) continue;
      Json report = c.fn(req);
      round_report(report);
      out << report.dump(2) << '\n';
      return 0;
    }
    err << "no subcommand\n";
    return 1;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return 1;
  } catch (const Json::exception& e) {
    err << "input error: " << e.what() << '\n';
    return 1;
  } catch (const ConsistencyError& e) {
    err << "consistency failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal failure: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace gcba
