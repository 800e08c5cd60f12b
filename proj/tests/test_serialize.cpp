#include <doctest.h>

#include <fstream>
#include <sstream>

#include "afenv/serialize.hpp"
#include "dot_parser.hpp"
#include "fixtures.hpp"

using namespace afenv;
using namespace afenv::testing;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Error error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  FAIL("no error raised");
  return Error(ErrorKind::SchemaError, "");
}

}  // namespace

TEST_CASE("digraph json") {
  const Json j = to_json(upper_triangular(2));
  CHECK(j.dump() == R"({"n":2,"edges":[[1,1],[1,2],[2,2]]})");
  CHECK(digraph_from_json(j) == upper_triangular(2));

  const Error missing = error_of([] { digraph_from_json(Json::parse(R"({"n":2})")); });
  CHECK(missing.kind() == ErrorKind::SchemaError);

  const Error range =
      error_of([] { digraph_from_json(Json::parse(R"({"n":2,"edges":[[1,1],[2,2],[1,3]]})")); });
  CHECK(range.kind() == ErrorKind::ValidationError);
  CHECK(range.cause() == ErrorKind::OutOfRange);
  CHECK(range.pointer() == "/edges/2");

  const Error loop = error_of([] { digraph_from_json(Json::parse(R"({"n":2,"edges":[[1,1]]})")); });
  CHECK(loop.cause() == ErrorKind::MissingLoop);
}

TEST_CASE("map json round trip keeps lexicographic keys") {
  const RegularMap f = doubling_map(3);
  const Json j = to_json(f);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j["images"].items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"1,1", "1,2", "1,3", "2,2", "2,3", "3,3"});
  CHECK(j["images"]["2,3"].dump() == "[[2,3],[4,5]]");
  CHECK(map_from_json(j) == f);

  Json bad = j;
  bad["images"]["3,1"] = Json::array();
  const Error e = error_of([&] { map_from_json(bad, "/maps/0"); });
  CHECK(e.cause() == ErrorKind::UnknownDomainEdge);
  CHECK(e.pointer() == "/maps/0/images/3,1");

  Json key = j;
  key["images"]["x"] = Json::array();
  CHECK(error_of([&] { map_from_json(key); }).kind() == ErrorKind::SchemaError);
}

TEST_CASE("system files") {
  const DirectSystem s = parse_system_file(data_path("example16.json"));
  CHECK(s.maps().size() == 3);
  CHECK(s.maps()[0] == doubling_map(3));
  CHECK(s.tail_mode() == TailMode::Stationary);
  CHECK(system_from_json(to_json(s)).maps() == s.maps());

  const DirectSystem iv = parse_system_file(data_path("interval_compression.json"));
  CHECK(iv.maps()[0] == interval_map(5, 3));

  try {
    parse_system_file(data_path("truncation3.json"));
    FAIL("expected ValidationError");
  } catch (const NotCompressionTypeError& e) {
    CHECK(e.kind() == ErrorKind::ValidationError);
    CHECK(e.cause() == ErrorKind::NotCompressionType);
    CHECK(e.pointer() == "/maps/0");
    CHECK(e.obstruction().cycle_vertices.size() >= 2);
  }

  CHECK(error_of([] { parse_system_file(data_path("no_such_file.json")); }).kind() ==
        ErrorKind::SchemaError);
  const Error tail = error_of([] {
    system_from_json(Json::parse(R"({"spaces":[],"maps":[],"tail":"forever"})"));
  });
  CHECK(tail.pointer() == "/tail");

  Json j = to_json(s);
  j["maps"][1] = to_json(doubling_map(4));
  const Error dom = error_of([&] { system_from_json(j); });
  CHECK(dom.kind() == ErrorKind::ValidationError);
  CHECK(dom.pointer() == "/maps/1/dom");
}

TEST_CASE("diagram json") {
  const auto text = slurp(golden_path("example16_diagram.json"));
  const BratteliDiagram d = diagram_from_json(Json::parse(text));
  CHECK(d.levels.size() == 3);
  CHECK(d.stationary_from == std::optional<std::size_t>(0));
  CHECK(dump(to_json(d)) == text);

  const Error shape = error_of([] {
    diagram_from_json(Json::parse(R"({"levels":[[{"dim":1}],[{"dim":1}]],"transitions":[[[1,1]]]})"));
  });
  CHECK(shape.cause() == ErrorKind::ShapeMismatch);
  CHECK(shape.pointer() == "/transitions/0");
}

TEST_CASE("envelope json against golden bytes") {
  const EnvelopeResult r = envelope_diagram(telescope(parse_system_file(data_path("example16.json"))));
  CHECK(dump(to_json(r.diagram)) == slurp(golden_path("example16_diagram.json")));
  CHECK(dump(to_json(r)) == slurp(golden_path("example16_envelope.json")));
}

TEST_CASE("empty removal differs only by the removed field") {
  const EnvelopeResult r =
      envelope_diagram(telescope(parse_system_file(data_path("interval_compression.json"))));
  Json env = to_json(r);
  CHECK(env["removed"] == Json::array());
  env.erase("removed");
  env.erase("uhf");
  CHECK(dump(env) == dump(to_json(r.diagram)));
}

TEST_CASE("norm reports use twelve significant digits") {
  const Json j = to_json(NormReport{1.7320508075688772, NormMethod::ExactSvd, 1e-17});
  CHECK(j.dump() == R"({"value":1.73205080757,"method":"exact_svd","residual":1e-17})");
  CHECK(round_sig(0.0) == 0.0);
  CHECK(round_sig(2.0 / 3.0) == 0.666666666667);
}

TEST_CASE("DOT output parses and carries the diagram") {
  const EnvelopeResult r = envelope_diagram(telescope(parse_system_file(data_path("example16.json"))));
  const DotGraph g = parse_dot(to_dot(r.diagram, &r.removed, "diagram"));
  CHECK(g.directed);
  CHECK(g.name == "diagram");
  CHECK(g.subgraphs.size() == 3);
  CHECK(g.nodes.size() == 6);
  REQUIRE(g.edges.size() == 4);
  int gray = 0, doubled = 0;
  for (const auto& [name, attrs] : g.nodes) {
    if (attrs.count("fillcolor") && attrs.at("fillcolor") == "gray") ++gray;
    if (attrs.count("peripheries") && attrs.at("peripheries") == "2") ++doubled;
  }
  CHECK(gray == 3);
  CHECK(doubled == 3);
  for (const auto& e : g.edges) {
    if (g.nodes.at(e.from).at("label") == "M1") CHECK(e.attrs.at("label") == "1");
    else CHECK(e.attrs.at("label") == "2");
  }

  const DotGraph q = parse_dot(to_dot(r.quotient));
  CHECK(q.nodes.size() == 3);
  CHECK(q.edges.size() == 2);

  CHECK_THROWS(parse_dot("digraph { a -> }"));
  CHECK_THROWS(parse_dot("digraph x { a [label=\"M1\" }"));
}

TEST_CASE("output is deterministic") {
  const DirectSystem s = parse_system_file(data_path("interval_compression.json"));
  const BratteliDiagram a = bratteli(telescope(s));
  const BratteliDiagram b = bratteli(telescope(parse_system_file(data_path("interval_compression.json"))));
  CHECK(dump(to_json(a)) == dump(to_json(b)));
  CHECK(to_dot(a) == to_dot(b));
}
