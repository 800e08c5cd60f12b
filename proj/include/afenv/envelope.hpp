#ifndef AFENV_ENVELOPE_HPP
#define AFENV_ENVELOPE_HPP

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "afenv/direct_system.hpp"

namespace afenv {

struct NodeRef {
  std::size_t level = 0;
  std::size_t index = 0;
  friend auto operator<=>(const NodeRef&, const NodeRef&) = default;
};

/// Nodes generating the boundary ideal: those from which no maximal node is
/// reachable at a strictly later level. Forward-closed.
struct SilovGenerators {
  std::set<NodeRef> nodes;
  /// Generator flags of the repeating tail level; applies to every level
  /// beyond the represented range.
  std::vector<bool> tail_pattern;

  bool contains(NodeRef v) const { return nodes.count(v) != 0; }
};

struct UhfDescriptor {
  int base_dim = 0;
  int ratio = 0;
  friend bool operator==(const UhfDescriptor&, const UhfDescriptor&) = default;
};

struct EnvelopeResult {
  BratteliDiagram diagram;   // pre-quotient, with maximality flags
  BratteliDiagram quotient;  // diagram of the envelope
  SilovGenerators removed;
  bool essentially_unital = false;
  std::optional<UhfDescriptor> uhf;
};

/// Recomputes the maximality flags from the nodes' projections. Throws
/// MissingQ, and NonStationary if the flags break the declared tail pattern.
BratteliDiagram mark_maximal(BratteliDiagram d);

/// Throws NonStationary when the diagram has no verified stationary tail.
SilovGenerators silov_generators(const BratteliDiagram& d);

/// Deletes the generator nodes and their edges.
BratteliDiagram quotient_diagram(const BratteliDiagram& d, const SilovGenerators& g);

/// Throws NotEssentiallyUnital (message carries the column-sum diagnostic),
/// NonStationary.
EnvelopeResult envelope_diagram(const TelescopedSystem& t);

/// Stationary single-node tail with transition [m]: the UHF algebra of
/// supernatural number base_dim * m^infinity.
std::optional<UhfDescriptor> classify_uhf(const BratteliDiagram& d);

}  // namespace afenv

#endif  // AFENV_ENVELOPE_HPP
