#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gcba/cli.hpp"
#include "gcba/cone_geometry.hpp"
#include "gcba/space_io.hpp"

using namespace gcba;

namespace {

struct Outcome {
  int status = 0;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

std::string write_space(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("gcba_cli_" + name + ".json");
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("antipodal distance through the command line") {
  const std::string space = write_space("wide", R"({"type":"circle","length":6.7832})");
  const Outcome o = run({"antipodal-distance", "--space", space, "--xi", R"({"edge":0,"offset":0})", "--eta",
                         R"({"edge":0,"offset":2.8})"});
  REQUIRE(o.status == 0);
  const Json j = o.json();
  CHECK(j["value"].get<double>() == doctest::Approx(0.8416).epsilon(1e-4));
  CHECK(j["method_gap"].get<double>() <= 1e-9);
}

TEST_CASE("validation verdicts are data, not errors") {
  const std::string leaf =
      write_space("leaf", R"({"type":"graph","vertices":3,"edges":[{"a":0,"b":1,"len":4},{"a":1,"b":1,"len":7},{"a":1,"b":2,"len":1}]})");
  const Outcome o = run({"validate", "--space", leaf});
  CHECK(o.status == 0);
  CHECK_FALSE(o.json()["passed"].get<bool>());
  const Outcome bad = run({"distance", "--space", leaf, "--x", R"({"vertex":0})", "--y", R"({"vertex":1})"});
  CHECK(bad.status == 1);
  CHECK(run({"validate", "--space", "/nonexistent/space.json"}).status == 1);
  CHECK(run({"no-such-command"}).status == 1);
}

TEST_CASE("reports are deterministic and rounded") {
  const std::string space = write_space("cone", R"({"type":"cone","base":{"type":"circle","length":6.7832}})");
  const std::vector<std::string> args{"check-noncritical", "--space", space, "--p", R"({"apex":true})", "--a",
                                      R"([{"edge":0,"offset":0,"radius":1},{"edge":0,"offset":2.2,"radius":1}])",
                                      "--b", R"({"edge":0,"offset":4.45,"radius":1})"};
  const Outcome a = run(args);
  const Outcome b = run(args);
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.json()["verdict"].get<bool>());
  const double m = a.json()["delta_margin"].get<double>();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", m);
  CHECK(std::strtod(buf, nullptr) == m);
}

TEST_CASE("echoed points re-parse to the same point") {
  const std::string space = write_space("cone2", R"({"type":"cone","base":{"type":"circle","length":6.7832}})");
  const Outcome o = run({"distance", "--space", space, "--x", R"({"edge":0,"offset":1.234567890123456,"radius":0.3141592653589793})",
                         "--y", R"({"apex":true})"});
  REQUIRE(o.status == 0);
  const Space s = make_space(parse_json_text(R"({"type":"cone","base":{"type":"circle","length":6.7832}})"));
  const ConePoint original =
      parse_cone_point(*s.cone, parse_json_text(R"({"edge":0,"offset":1.234567890123456,"radius":0.3141592653589793})"));
  const ConePoint echoed = parse_cone_point(*s.cone, o.json()["x"]);
  CHECK(cone_distance(*s.cone, original, echoed) <= 1e-12);
}

TEST_CASE("sweep writes CSV") {
  const auto csv = std::filesystem::temp_directory_path() / "gcba_cli_sweep.csv";
  const Outcome o = run({"example14", "--k", "2", "--theta-min", "0", "--theta-max", "1.2", "--step", "0.01", "--out",
                         csv.string()});
  REQUIRE(o.status == 0);
  const Json j = o.json();
  CHECK(j["sign_change"][0].get<double>() == doctest::Approx(0.78));
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "theta,k,best_margin,xi1,xi2,eta");
  int lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  CHECK(lines == 121);
}

TEST_CASE("retract and sphere map commands") {
  const std::string plane = write_space("plane", R"({"type":"cone","base":{"type":"circle","length":6.283185307179586}})");
  const Outcome r = run({"retract", "--space", plane, "--p", R"({"apex":true})", "--a", R"({"vertex":0,"radius":3})",
                         "--b", R"({"edge":0,"offset":3.141592653589793,"radius":2})", "--x",
                         R"({"edge":0,"offset":0.9272952180016122,"radius":0.5})", "--r", "0.55", "--rho", "1.5",
                         "--eps", "0.3", "--delta", "0.4"});
  REQUIRE(r.status == 0);
  CHECK(r.json()["r1"]["travel"].get<double>() == doctest::Approx(0.2836).epsilon(1e-3));
  CHECK(r.json()["on_fiber"].get<bool>());

  const std::string round = write_space("round", R"({"type":"circle","length":6.283185307179586})");
  const Outcome s = run({"sphere-map", "--space", round, "--xi", R"([{"vertex":0},{"edge":0,"offset":1.5707963267948966}])",
                         "--eta", R"({"edge":0,"offset":3.9269908169872414})", "--eps", "0.7", "--delta", "0.01"});
  REQUIRE(s.status == 0);
  CHECK(s.json()["distortion"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));

  const std::string bad = write_space("narrow", R"({"type":"circle","length":9.5832})");
  CHECK(run({"sphere-map", "--space", bad, "--xi", R"([{"vertex":0},{"edge":0,"offset":2.2}])", "--eta",
             R"({"edge":0,"offset":4.45})"}).status == 1);
}
