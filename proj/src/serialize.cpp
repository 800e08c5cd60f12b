#include "afenv/serialize.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace afenv {
namespace {

[[noreturn]] void schema(const std::string& pointer, const std::string& what) {
  throw Error(ErrorKind::SchemaError, what, pointer);
}

int as_int(const Json& j, const std::string& pointer) {
  if (!j.is_number_integer()) schema(pointer, "expected an integer");
  return j.get<int>();
}

Edge edge_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_array() || j.size() != 2) schema(pointer, "expected a pair [i, j]");
  return {as_int(j[0], pointer + "/0"), as_int(j[1], pointer + "/1")};
}

Json edge_json(Edge e) { return Json::array({e.row, e.col}); }

std::string edge_key(Edge e) { return std::to_string(e.row) + "," + std::to_string(e.col); }

Edge parse_key(const std::string& key, const std::string& pointer) {
  const auto comma = key.find(',');
  Edge e;
  const char* end = key.data() + key.size();
  if (comma == std::string::npos) schema(pointer, "image key must look like \"i,j\"");
  auto r1 = std::from_chars(key.data(), key.data() + comma, e.row);
  auto r2 = std::from_chars(key.data() + comma + 1, end, e.col);
  if (r1.ec != std::errc{} || r1.ptr != key.data() + comma || r2.ec != std::errc{} ||
      r2.ptr != end)
    schema(pointer, "image key must look like \"i,j\"");
  return e;
}

std::string escape_key(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

Json level_json(const std::vector<BratteliNode>& level) {
  Json out = Json::array();
  for (const auto& node : level) out.push_back({{"dim", node.dim}, {"maximal", node.maximal}});
  return out;
}

Json complex_json(std::complex<double> z) {
  return Json::array({round_sig(z.real()), round_sig(z.imag())});
}

}  // namespace

double round_sig(double x) {
  if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const Digraph& g) {
  Json edges = Json::array();
  for (Edge e : g.edges()) edges.push_back(edge_json(e));
  return {{"n", g.size()}, {"edges", std::move(edges)}};
}

Json to_json(const RegularMap& f) {
  Json images = Json::object();
  // Keys are emitted in lexicographic edge order, not string order.
  for (std::size_t k = 0; k < f.dom().edges().size(); ++k) {
    Json units = Json::array();
    for (Edge u : f.image_lists()[k]) units.push_back(edge_json(u));
    images[edge_key(f.dom().edges()[k])] = std::move(units);
  }
  return {{"dom", to_json(f.dom())}, {"cod", to_json(f.cod())}, {"images", std::move(images)}};
}

Json to_json(const BratteliDiagram& d) {
  Json levels = Json::array();
  for (const auto& level : d.levels) levels.push_back(level_json(level));
  Json transitions = Json::array();
  for (const auto& m : d.transitions) transitions.push_back(m.n);
  Json out = {{"levels", std::move(levels)}, {"transitions", std::move(transitions)}};
  out["stationary_from"] = d.stationary_from ? Json(*d.stationary_from) : Json(nullptr);
  return out;
}

Json to_json(const EnvelopeResult& r) {
  Json out = to_json(r.quotient);
  Json removed = Json::array();
  for (const NodeRef& v : r.removed.nodes) removed.push_back(Json::array({v.level, v.index}));
  out["removed"] = std::move(removed);
  out["uhf"] = r.uhf ? Json{{"base_dim", r.uhf->base_dim}, {"ratio", r.uhf->ratio}}
                     : Json(nullptr);
  return out;
}

Json to_json(const NormReport& r) {
  return {{"value", round_sig(r.value)},
          {"method", std::string(to_string(r.method))},
          {"residual", round_sig(r.residual)}};
}

Json to_json(const CompressionTypeDecomposition& d) {
  Json components = Json::array();
  for (const auto& c : d.components)
    components.push_back({{"q", c.q().members()}, {"rho", c.rho()}});
  Json summands = Json::array();
  for (const auto& s : image_summands(d).summands)
    summands.push_back({{"q", s.q.members()}, {"dim", s.dim}});
  return {{"compression_type", true},
          {"components", std::move(components)},
          {"summands", std::move(summands)}};
}

Json to_json(const SpaceElement& a) {
  Json out = Json::object();
  for (const auto& [e, z] : a.coeffs()) out[edge_key(e)] = complex_json(z);
  return out;
}

Json to_json(const CycleObstruction& o) {
  Json edges = Json::array();
  for (const auto& ce : o.cycle_edges)
    edges.push_back({{"edge", edge_json(ce.edge)}, {"forward", ce.forward}});
  return {{"compression_type", false},
          {"cycle", o.cycle_vertices},
          {"edges", std::move(edges)},
          {"same_direction", o.same_direction},
          {"orbit_path", o.orbit_path},
          {"witness", to_json(o.witness)}};
}

Json to_json(const DirectSystem& s) {
  Json spaces = Json::array();
  for (const auto& g : s.spaces()) spaces.push_back(to_json(g));
  Json maps = Json::array();
  for (const auto& f : s.maps()) maps.push_back(to_json(f));
  return {{"spaces", std::move(spaces)},
          {"maps", std::move(maps)},
          {"tail", s.tail_mode() == TailMode::Stationary ? "stationary" : "finite"}};
}

Digraph digraph_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_object()) schema(pointer, "expected a digraph object");
  if (!j.contains("n")) schema(pointer, "missing \"n\"");
  if (!j.contains("edges")) schema(pointer, "missing \"edges\"");
  const int n = as_int(j["n"], pointer + "/n");
  if (n < 1) throw Error(ErrorKind::ValidationError, Error(ErrorKind::OutOfRange, "n must be positive"),
                         pointer + "/n");
  const Json& edges = j["edges"];
  if (!edges.is_array()) schema(pointer + "/edges", "expected an array");
  std::vector<Edge> list;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::string at = pointer + "/edges/" + std::to_string(k);
    const Edge e = edge_from_json(edges[k], at);
    if (e.row < 1 || e.row > n || e.col < 1 || e.col > n)
      throw Error(ErrorKind::ValidationError,
                  Error(ErrorKind::OutOfRange, "edge vertex outside 1.." + std::to_string(n)), at);
    list.push_back(e);
  }
  try {
    return make_digraph(n, list);
  } catch (const Error& e) {
    throw Error(ErrorKind::ValidationError, e, pointer + "/edges");
  }
}

RegularMap map_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_object()) schema(pointer, "expected a map object");
  for (const char* key : {"dom", "cod", "images"})
    if (!j.contains(key)) schema(pointer, std::string("missing \"") + key + "\"");
  Digraph dom = digraph_from_json(j["dom"], pointer + "/dom");
  Digraph cod = digraph_from_json(j["cod"], pointer + "/cod");
  const Json& images = j["images"];
  if (!images.is_object()) schema(pointer + "/images", "expected an object");
  ImageTable table;
  for (const auto& [key, units] : images.items()) {
    const std::string at = pointer + "/images/" + escape_key(key);
    const Edge e = parse_key(key, at);
    if (!dom.has_edge(e))
      throw Error(ErrorKind::ValidationError,
                  Error(ErrorKind::UnknownDomainEdge, "image key is not a domain edge"), at);
    if (!units.is_array()) schema(at, "expected an array of units");
    auto& list = table[e];
    for (std::size_t k = 0; k < units.size(); ++k)
      list.push_back(edge_from_json(units[k], at + "/" + std::to_string(k)));
  }
  try {
    return make_regular_map(std::move(dom), std::move(cod), table);
  } catch (const Error& e) {
    throw Error(ErrorKind::ValidationError, e, pointer + "/images");
  }
}

SystemParts system_parts_from_json(const Json& j) {
  if (!j.is_object()) schema("", "expected a system object");
  for (const char* key : {"spaces", "maps", "tail"})
    if (!j.contains(key)) schema("", std::string("missing \"") + key + "\"");
  const Json& spaces_json = j["spaces"];
  const Json& maps_json = j["maps"];
  if (!spaces_json.is_array()) schema("/spaces", "expected an array");
  if (!maps_json.is_array()) schema("/maps", "expected an array");
  const Json& tail = j["tail"];
  if (!tail.is_string() || (tail != "stationary" && tail != "finite"))
    schema("/tail", "expected \"stationary\" or \"finite\"");

  std::vector<DigraphSpace> spaces;
  for (std::size_t k = 0; k < spaces_json.size(); ++k)
    spaces.push_back(digraph_from_json(spaces_json[k], "/spaces/" + std::to_string(k)));
  if (spaces.size() < 2 || maps_json.size() + 1 != spaces.size())
    throw Error(ErrorKind::ValidationError,
                Error(ErrorKind::ShapeMismatch, "a system of k+1 >= 2 spaces needs k maps"),
                "/maps");
  std::vector<RegularMap> maps;
  for (std::size_t k = 0; k < maps_json.size(); ++k) {
    const std::string at = "/maps/" + std::to_string(k);
    RegularMap f = map_from_json(maps_json[k], at);
    if (!(f.dom() == spaces[k]))
      throw Error(ErrorKind::ValidationError,
                  Error(ErrorKind::ShapeMismatch, "domain differs from the space it leaves"),
                  at + "/dom");
    if (!(f.cod() == spaces[k + 1]))
      throw Error(ErrorKind::ValidationError,
                  Error(ErrorKind::ShapeMismatch, "codomain differs from the space it enters"),
                  at + "/cod");
    maps.push_back(std::move(f));
  }
  return {std::move(spaces), std::move(maps),
          tail == "stationary" ? TailMode::Stationary : TailMode::Finite};
}

DirectSystem system_from_json(const Json& j) {
  SystemParts parts = system_parts_from_json(j);
  try {
    return make_system(std::move(parts.spaces), std::move(parts.maps), parts.tail);
  } catch (const NotCompressionTypeError& e) {
    throw NotCompressionTypeError(ErrorKind::ValidationError, e,
                                  "/maps/" + std::to_string(e.stage()));
  } catch (const Error& e) {
    throw Error(ErrorKind::ValidationError, e, "");
  }
}

BratteliDiagram diagram_from_json(const Json& j) {
  if (!j.is_object()) schema("", "expected a diagram object");
  for (const char* key : {"levels", "transitions"})
    if (!j.contains(key) || !j[key].is_array())
      schema(std::string("/") + key, "expected an array");
  BratteliDiagram d;
  for (std::size_t k = 0; k < j["levels"].size(); ++k) {
    const Json& level = j["levels"][k];
    const std::string at = "/levels/" + std::to_string(k);
    if (!level.is_array()) schema(at, "expected an array of nodes");
    std::vector<BratteliNode> nodes;
    for (std::size_t i = 0; i < level.size(); ++i) {
      const std::string node_at = at + "/" + std::to_string(i);
      const Json& node = level[i];
      if (!node.is_object() || !node.contains("dim")) schema(node_at, "expected {\"dim\": d}");
      BratteliNode b;
      b.dim = as_int(node["dim"], node_at + "/dim");
      if (node.contains("maximal")) {
        if (!node["maximal"].is_boolean()) schema(node_at + "/maximal", "expected a boolean");
        b.maximal = node["maximal"].get<bool>();
      }
      nodes.push_back(b);
    }
    d.levels.push_back(std::move(nodes));
  }
  for (std::size_t k = 0; k < j["transitions"].size(); ++k) {
    const Json& m = j["transitions"][k];
    const std::string at = "/transitions/" + std::to_string(k);
    if (!m.is_array()) schema(at, "expected a matrix");
    ConnectingMatrix c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i].is_array()) schema(at + "/" + std::to_string(i), "expected a row");
      std::vector<int> row;
      for (std::size_t r = 0; r < m[i].size(); ++r)
        row.push_back(as_int(m[i][r], at + "/" + std::to_string(i) + "/" + std::to_string(r)));
      c.n.push_back(std::move(row));
    }
    d.transitions.push_back(std::move(c));
  }
  if (d.levels.size() != d.transitions.size() + 1)
    throw Error(ErrorKind::ValidationError,
                Error(ErrorKind::ShapeMismatch, "need one more level than transitions"),
                "/transitions");
  for (std::size_t k = 0; k < d.transitions.size(); ++k) {
    const auto& m = d.transitions[k];
    bool ok = m.rows() == d.levels[k].size();
    for (const auto& row : m.n) ok = ok && row.size() == d.levels[k + 1].size();
    if (!ok)
      throw Error(ErrorKind::ValidationError,
                  Error(ErrorKind::ShapeMismatch, "matrix shape does not match its levels"),
                  "/transitions/" + std::to_string(k));
  }
  if (j.contains("stationary_from") && !j["stationary_from"].is_null()) {
    const int from = as_int(j["stationary_from"], "/stationary_from");
    if (from < 0 || static_cast<std::size_t>(from) >= d.levels.size())
      throw Error(ErrorKind::ValidationError,
                  Error(ErrorKind::OutOfRange, "stationary_from outside the levels"),
                  "/stationary_from");
    d.stationary_from = static_cast<std::size_t>(from);
  }
  return d;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) schema("", "cannot open " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    schema("", std::string("malformed JSON: ") + e.what());
  }
  return j;
}

DirectSystem parse_system_file(const std::filesystem::path& path) {
  return system_from_json(read_json_file(path));
}

std::string to_dot(const BratteliDiagram& d, const SilovGenerators* removed,
                   const std::string& name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  out << "  rankdir=TB;\n";
  out << "  node [shape=circle];\n";
  auto id = [](std::size_t k, std::size_t i) {
    return "n" + std::to_string(k) + "_" + std::to_string(i);
  };
  for (std::size_t k = 0; k < d.levels.size(); ++k) {
    out << "  { rank=same;";
    for (std::size_t i = 0; i < d.levels[k].size(); ++i) out << " " << id(k, i) << ";";
    out << " }\n";
    for (std::size_t i = 0; i < d.levels[k].size(); ++i) {
      const BratteliNode& node = d.levels[k][i];
      out << "  " << id(k, i) << " [label=\"M" << node.dim << "\"";
      if (node.maximal) out << ", peripheries=2";
      if (removed && removed->contains({k, i})) out << ", style=filled, fillcolor=gray";
      out << "];\n";
    }
  }
  for (std::size_t k = 0; k < d.transitions.size(); ++k) {
    const auto& m = d.transitions[k];
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (m.n[i][j] > 0)
          out << "  " << id(k, i) << " -> " << id(k + 1, j) << " [label=\"" << m.n[i][j]
              << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace afenv
