#include "afenv/cli.hpp"

#include <cmath>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "afenv/serialize.hpp"

namespace afenv::cli {
namespace {

constexpr std::pair<const char*, Verb> kVerbs[] = {
    {"validate", Verb::Validate}, {"decide", Verb::Decide},       {"telescope", Verb::Telescope},
    {"diagram", Verb::Diagram},   {"envelope", Verb::Envelope},   {"witness", Verb::Witness},
    {"probe", Verb::Probe},       {"roundtrip", Verb::Roundtrip}, {"norms", Verb::Norms},
};

const char* verb_name(Verb v) {
  for (const auto& [name, verb] : kVerbs)
    if (verb == v) return name;
  return "?";
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Output of one verb: the printed artifact plus extra files for --out.
struct Artifact {
  std::string text;
  std::string extension;
  std::vector<std::pair<std::string, std::string>> files;
  int status = kExitOk;
};

Json error_json(const Error& e) {
  Json j = {{"error", std::string(to_string(e.kind()))},
            {"cause", std::string(to_string(e.cause()))},
            {"pointer", e.pointer()},
            {"message", e.what()}};
  if (const auto* nct = dynamic_cast<const NotCompressionTypeError*>(&e)) {
    j["stage"] = nct->stage();
    j["obstruction"] = to_json(nct->obstruction());
  }
  return j;
}

bool is_rejection(const Error& e) {
  return e.kind() == ErrorKind::NotCompressionType || e.kind() == ErrorKind::NotEssentiallyUnital ||
         e.cause() == ErrorKind::NotCompressionType || e.cause() == ErrorKind::NotEssentiallyUnital;
}

void require_json(const Command& cmd) {
  if (cmd.format != Format::Json)
    throw UsageError(std::string("--format dot is not available for ") + verb_name(cmd.verb));
}

Json witness_norms(const RegularMap& f, const CycleObstruction& o, double tol) {
  const NormReport a = operator_norm(realize(o.witness), tol);
  const NormReport fa = operator_norm(realize(apply(f, o.witness)), tol);
  return {{"witness_norm", to_json(a)}, {"image_norm", to_json(fa)}};
}

Artifact do_validate(const Command& cmd) {
  require_json(cmd);
  const DirectSystem s = parse_system_file(cmd.input_path);
  Json j = {{"valid", true},
            {"spaces", s.spaces().size()},
            {"maps", s.maps().size()},
            {"tail", s.tail_mode() == TailMode::Stationary ? "stationary" : "finite"}};
  return {dump(j), "json", {}, kExitOk};
}

Artifact do_decide(const Command& cmd, bool witness_only) {
  require_json(cmd);
  const SystemParts parts = system_parts_from_json(read_json_file(cmd.input_path));
  Json results = Json::array();
  int status = kExitOk;
  for (std::size_t k = 0; k < parts.maps.size(); ++k) {
    const RegularMap& f = parts.maps[k];
    const DecisionResult r = decide_compression_type(f);
    if (const auto* d = std::get_if<CompressionTypeDecomposition>(&r)) {
      if (witness_only) continue;
      Json j = {{"map", k}};
      j.update(to_json(*d));
      results.push_back(std::move(j));
    } else {
      const auto& o = std::get<CycleObstruction>(r);
      Json j = {{"map", k}};
      j.update(to_json(o));
      j.update(witness_norms(f, o, cmd.tol));
      results.push_back(std::move(j));
      status = kExitRejected;
    }
  }
  return {dump(results), "json", {}, status};
}

Artifact do_telescope(const Command& cmd) {
  require_json(cmd);
  const TelescopedSystem t = telescope(parse_system_file(cmd.input_path));
  Json stages = Json::array();
  for (const auto& st : t.stages) {
    Json summands = Json::array();
    for (const auto& s : st.summands.summands)
      summands.push_back({{"q", s.q.members()}, {"dim", s.dim}});
    stages.push_back({{"index", st.index}, {"summands", std::move(summands)}});
  }
  Json stable = Json::array();
  for (bool b : t.stage_stable) stable.push_back(b);
  Json j = {{"start_index", t.start_index},
            {"stable", t.stable},
            {"stage_stable", std::move(stable)},
            {"stages", std::move(stages)}};
  return {dump(j), "json", {}, kExitOk};
}

Artifact do_diagram(const Command& cmd) {
  const BratteliDiagram d = bratteli(telescope(parse_system_file(cmd.input_path)));
  if (cmd.format == Format::Dot) return {to_dot(d), "dot", {}, kExitOk};
  return {dump(to_json(d)), "json", {}, kExitOk};
}

Artifact do_envelope(const Command& cmd) {
  const EnvelopeResult r = envelope_diagram(telescope(parse_system_file(cmd.input_path)));
  Artifact a;
  a.files = {{"diagram.json", dump(to_json(r.diagram))},
             {"diagram.dot", to_dot(r.diagram, &r.removed, "diagram")},
             {"envelope.json", dump(to_json(r))},
             {"envelope.dot", to_dot(r.quotient, nullptr, "envelope")}};
  if (cmd.format == Format::Dot) {
    a.text = to_dot(r.diagram, &r.removed, "diagram");
    a.extension = "dot";
  } else {
    a.text = dump(to_json(r));
    a.extension = "json";
  }
  return a;
}

Artifact do_probe(const Command& cmd) {
  require_json(cmd);
  if (cmd.trials < 0) throw UsageError("--trials must be non-negative");
  const SystemParts parts = system_parts_from_json(read_json_file(cmd.input_path));
  Json results = Json::array();
  int status = kExitOk;
  for (std::size_t k = 0; k < parts.maps.size(); ++k) {
    const ProbeReport p = contractivity_probe(parts.maps[k], cmd.trials, cmd.seed, cmd.tol);
    if (p.violated()) status = kExitRejected;
    results.push_back({{"map", k},
                       {"evaluated", p.evaluated},
                       {"max_ratio", round_sig(p.max_ratio)},
                       {"argmax", p.argmax},
                       {"violations", p.violations}});
  }
  Json j = {{"trials", cmd.trials}, {"seed", cmd.seed}, {"maps", std::move(results)}};
  return {dump(j), "json", {}, status};
}

Artifact do_roundtrip(const Command& cmd) {
  require_json(cmd);
  const BratteliDiagram input = diagram_from_json(read_json_file(cmd.input_path));
  std::vector<std::vector<int>> dims;
  for (const auto& level : input.levels) {
    dims.emplace_back();
    for (const auto& node : level) dims.back().push_back(node.dim);
  }
  const DirectSystem s = triangular_system_from_bratteli(dims, input.transitions);
  const EnvelopeResult r = envelope_diagram(telescope(s));

  Json diffs = Json::array();
  const auto& q = r.quotient;
  const std::size_t levels = std::min(q.levels.size(), input.levels.size());
  if (q.levels.size() < input.levels.size())
    diffs.push_back({{"what", "levels"}, {"expected", input.levels.size()}, {"got", q.levels.size()}});
  for (std::size_t k = 0; k < levels; ++k) {
    std::vector<int> got;
    for (const auto& node : q.levels[k]) got.push_back(node.dim);
    if (got != dims[k])
      diffs.push_back({{"what", "dims"}, {"level", k}, {"expected", dims[k]}, {"got", got}});
    if (k + 1 < levels && !(q.transitions[k] == input.transitions[k]))
      diffs.push_back({{"what", "transition"},
                       {"level", k},
                       {"expected", input.transitions[k].n},
                       {"got", q.transitions[k].n}});
  }
  const bool match = diffs.empty();
  Json j = {{"match", match}, {"removed", r.removed.nodes.size()}, {"diffs", std::move(diffs)}};
  return {dump(j), "json", {}, match ? kExitOk : kExitRejected};
}

Artifact do_norms(const Command& cmd) {
  require_json(cmd);
  if (!cmd.m_range) throw UsageError("norms needs --m a..b");
  const auto [lo, hi] = *cmd.m_range;
  if (lo < 2 || hi < lo) throw UsageError("--m needs 2 <= a <= b");
  Json rows = Json::array();
  for (int m = lo; m <= hi; ++m) {
    const NormReport cyc = operator_norm(cycle_matrix(m, false), cmd.tol);
    const NormReport tr = operator_norm(cycle_matrix(m, true), cmd.tol);
    const auto [c, t] = cycle_norm_pair(m);
    rows.push_back({{"m", m},
                    {"cycle", to_json(cyc)},
                    {"truncated", to_json(tr)},
                    {"cycle_formula", round_sig(c)},
                    {"truncated_formula", round_sig(t)}});
  }
  return {dump(rows), "json", {}, kExitOk};
}

Artifact dispatch(const Command& cmd) {
  if (cmd.verb != Verb::Norms && cmd.input_path.empty())
    throw UsageError(std::string(verb_name(cmd.verb)) + " needs an input file");
  switch (cmd.verb) {
    case Verb::Validate: return do_validate(cmd);
    case Verb::Decide: return do_decide(cmd, false);
    case Verb::Witness: return do_decide(cmd, true);
    case Verb::Telescope: return do_telescope(cmd);
    case Verb::Diagram: return do_diagram(cmd);
    case Verb::Envelope: return do_envelope(cmd);
    case Verb::Probe: return do_probe(cmd);
    case Verb::Roundtrip: return do_roundtrip(cmd);
    case Verb::Norms: return do_norms(cmd);
  }
  throw UsageError("unknown verb");
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path.string());
  f << text;
}

}  // namespace

std::optional<Verb> parse_verb(const std::string& name) {
  for (const auto& [n, verb] : kVerbs)
    if (name == n) return verb;
  return std::nullopt;
}

std::optional<std::pair<int, int>> parse_range(const std::string& text) {
  auto number = [](std::string_view s, int& v) {
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    return r.ec == std::errc{} && r.ptr == s.data() + s.size();
  };
  const auto dots = text.find("..");
  int a = 0, b = 0;
  if (dots == std::string::npos) {
    if (!number(text, a)) return std::nullopt;
    return std::pair{a, a};
  }
  std::string_view s(text);
  if (!number(s.substr(0, dots), a) || !number(s.substr(dots + 2), b)) return std::nullopt;
  return std::pair{a, b};
}

int run(const Command& cmd, std::ostream& out, std::ostream& err) {
  try {
    const Artifact a = dispatch(cmd);
    out << a.text;
    if (cmd.out_dir) {
      std::filesystem::create_directories(*cmd.out_dir);
      write_file(*cmd.out_dir / (std::string(verb_name(cmd.verb)) + "." + a.extension), a.text);
      for (const auto& [name, text] : a.files) write_file(*cmd.out_dir / name, text);
    }
    return a.status;
  } catch (const Error& e) {
    err << dump(error_json(e));
    return is_rejection(e) ? kExitRejected : kExitUsage;
  } catch (const UsageError& e) {
    err << dump(Json{{"error", "UsageError"}, {"message", e.what()}});
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << dump(Json{{"error", "IoError"}, {"message", e.what()}});
    return kExitUsage;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bratteli diagrams of C*-envelopes of regular limit spaces"};
  std::string verb;
  std::string input;
  std::string format = "json";
  std::string range;
  std::string out_dir;
  Command cmd;

  std::vector<std::string> names;
  for (const auto& [n, v] : kVerbs) names.emplace_back(n);
  app.add_option("verb", verb, "validate|decide|telescope|diagram|envelope|witness|probe|roundtrip|norms")
      ->required()
      ->check(CLI::IsMember(names));
  app.add_option("input", input, "system file (diagram file for roundtrip)");
  app.add_option("--tol", cmd.tol, "numeric tolerance")->capture_default_str();
  app.add_option("--trials", cmd.trials, "random trials per map for probe")->capture_default_str();
  app.add_option("--seed", cmd.seed, "random seed (AFENV_SEED overrides)")->capture_default_str();
  app.add_option("--format", format, "json or dot")
      ->check(CLI::IsMember({"json", "dot"}))
      ->capture_default_str();
  app.add_option("--m", range, "range a..b for norms");
  app.add_option("--out", out_dir, "directory for artifacts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << dump(Json{{"error", "UsageError"}, {"message", e.what()}});
    return kExitUsage;
  }

  cmd.verb = *parse_verb(verb);
  cmd.input_path = input;
  cmd.format = format == "dot" ? Format::Dot : Format::Json;
  if (!out_dir.empty()) cmd.out_dir = out_dir;
  if (!range.empty()) {
    cmd.m_range = parse_range(range);
    if (!cmd.m_range) {
      err << dump(Json{{"error", "UsageError"}, {"message", "--m expects a..b"}});
      return kExitUsage;
    }
  }
  if (const char* env = std::getenv("AFENV_SEED"); env && *env) {
    std::uint64_t seed = 0;
    const std::string_view s(env);
    auto r = std::from_chars(s.data(), s.data() + s.size(), seed);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) {
      err << dump(Json{{"error", "UsageError"}, {"message", "AFENV_SEED must be an integer"}});
      return kExitUsage;
    }
    cmd.seed = seed;
  }
  return run(cmd, out, err);
}

}  // namespace afenv::cli
