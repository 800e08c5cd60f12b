#ifndef AFENV_SERIALIZE_HPP
#define AFENV_SERIALIZE_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "afenv/digraph.hpp"
#include "afenv/direct_system.hpp"
#include "afenv/envelope.hpp"
#include "afenv/numeric.hpp"
#include "afenv/regular_map.hpp"

namespace afenv {

using Json = nlohmann::ordered_json;

Json to_json(const Digraph& g);
Json to_json(const RegularMap& f);
Json to_json(const BratteliDiagram& d);
Json to_json(const EnvelopeResult& r);
Json to_json(const NormReport& r);
Json to_json(const CompressionTypeDecomposition& d);
Json to_json(const CycleObstruction& o);
Json to_json(const SpaceElement& a);
Json to_json(const DirectSystem& s);

/// Readers throw SchemaError for malformed documents and ValidationError
/// (wrapping the module error) for well-formed but invalid content; both
/// carry the JSON pointer of the offending value.
Digraph digraph_from_json(const Json& j, const std::string& pointer = "");
RegularMap map_from_json(const Json& j, const std::string& pointer = "");
/// Spaces, maps and tail of a system file, checked for shape but not for
/// compression type.
struct SystemParts {
  std::vector<DigraphSpace> spaces;
  std::vector<RegularMap> maps;
  TailMode tail = TailMode::Finite;
};

SystemParts system_parts_from_json(const Json& j);
DirectSystem system_from_json(const Json& j);
BratteliDiagram diagram_from_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);
DirectSystem parse_system_file(const std::filesystem::path& path);

/// Fixed 12-significant-digit formatting used for every emitted float.
double round_sig(double x);

/// Canonical text: two-space indent and a trailing newline.
std::string dump(const Json& j);

/// One rank per level; edge labels carry multiplicities; maximal nodes get a
/// doubled border and removed nodes are filled gray.
std::string to_dot(const BratteliDiagram& d, const SilovGenerators* removed = nullptr,
                   const std::string& name = "bratteli");

}  // namespace afenv

#endif  // AFENV_SERIALIZE_HPP
