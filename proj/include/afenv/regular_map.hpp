#ifndef AFENV_REGULAR_MAP_HPP
#define AFENV_REGULAR_MAP_HPP

#include <map>
#include <variant>
#include <vector>

#include "afenv/digraph.hpp"

namespace afenv {

/// Image table of a linear map A(G) -> A(H) that sends every matrix unit of
/// the domain to a sum of matrix units of the codomain.
using ImageTable = std::map<Edge, std::vector<MatrixUnit>>;

/// Regular bimodule map between digraph spaces. Construction validates:
///   R1 diagonal units go to sums of diagonal units,
///   R2 images of distinct diagonal units have disjoint supports,
///   R3 every unit (a,b) in images(i,j) has (a,a) in images(i,i) and
///      (b,b) in images(j,j),
///   R4 the units of one image have pairwise distinct rows and columns,
///   R5 every image unit is an edge of the codomain.
class RegularMap {
public:
  RegularMap() = default;

  const DigraphSpace& dom() const noexcept { return dom_; }
  const DigraphSpace& cod() const noexcept { return cod_; }

  /// Sorted image units of a domain edge (empty for annihilated units).
  const std::vector<MatrixUnit>& images(Edge e) const;
  /// Images indexed like dom().edges().
  const std::vector<std::vector<MatrixUnit>>& image_lists() const noexcept { return images_; }

  ImageTable table() const;

  friend bool operator==(const RegularMap&, const RegularMap&) = default;

private:
  friend RegularMap make_regular_map(DigraphSpace, DigraphSpace, const ImageTable&);

  DigraphSpace dom_;
  DigraphSpace cod_;
  std::vector<std::vector<MatrixUnit>> images_;
};

/// Edges absent from `images` map to zero; keys that are not domain edges
/// raise UnknownDomainEdge. Each violated invariant has its own ErrorKind.
RegularMap make_regular_map(DigraphSpace dom, DigraphSpace cod, const ImageTable& images);

RegularMap identity_map(const DigraphSpace& s);

/// Compression to an irreducible diagonal projection Q followed by the
/// matrix-unit embedding i -> rho(i) into the codomain.
class ElementaryCompressionMap {
public:
  const DigraphSpace& dom() const noexcept { return dom_; }
  const DigraphSpace& cod() const noexcept { return cod_; }
  const VertexSet& q() const noexcept { return q_; }
  /// rho()[k] is the image of q().members()[k].
  const std::vector<int>& rho() const noexcept { return rho_; }
  int image_of(int v) const;
  /// The range projection P (image of rho) as a codomain vertex set.
  VertexSet range() const;

  friend bool operator==(const ElementaryCompressionMap&, const ElementaryCompressionMap&) = default;

private:
  friend ElementaryCompressionMap make_elementary(DigraphSpace, DigraphSpace, VertexSet,
                                                  std::vector<int>);
  DigraphSpace dom_;
  DigraphSpace cod_;
  VertexSet q_;
  std::vector<int> rho_;
};

/// Throws NotIrreducible, NotInjective, EdgeNotPreserved, RangeDisconnected.
ElementaryCompressionMap make_elementary(DigraphSpace dom, DigraphSpace cod, VertexSet q,
                                         std::vector<int> rho);

struct CompressionTypeDecomposition {
  DigraphSpace dom;
  DigraphSpace cod;
  /// Ordered by least range vertex.
  std::vector<ElementaryCompressionMap> components;
};

/// Direct sum of elementary maps with pairwise disjoint ranges. Throws
/// RangeOverlap, DomainMismatch.
RegularMap assemble(const DigraphSpace& dom, const DigraphSpace& cod,
                    const std::vector<ElementaryCompressionMap>& components);
inline RegularMap assemble(const CompressionTypeDecomposition& d) {
  return assemble(d.dom, d.cod, d.components);
}

struct CycleEdge {
  Edge edge;
  /// True when edge == (n_m, n_{m+1}), false when edge == (n_{m+1}, n_m).
  bool forward = true;
};

/// Certificate that a regular map is not contractive: a cycle n_1..n_l in the
/// domain graph whose image under the map is a broken path, together with
/// the element a supported on the cycle whose image has larger norm.
struct CycleObstruction {
  std::vector<int> cycle_vertices;    // n_1..n_l
  std::vector<CycleEdge> cycle_edges; // E_m joins n_m and n_{m+1 mod l}
  std::vector<int> same_direction;    // 1-based m with E_m, E_{m-1} aligned (E_0 = E_l)
  std::vector<int> orbit_path;        // codomain vertices q_1..q_l traced by E_1..E_{l-1}
  SpaceElement witness;
};

using DecisionResult = std::variant<CompressionTypeDecomposition, CycleObstruction>;

/// Splits f into elementary compression maps by growing orbits of codomain
/// vertices, or returns the cycle that prevents it.
DecisionResult decide_compression_type(const RegularMap& f);

inline bool is_compression_type(const DecisionResult& r) {
  return std::holds_alternative<CompressionTypeDecomposition>(r);
}

/// a = sum_{m<l} E_m + sum_{t in T} e_{n_t n_t} - E_l.
SpaceElement witness_element(const DigraphSpace& dom, const std::vector<int>& cycle_vertices,
                             const std::vector<CycleEdge>& cycle_edges);
inline const SpaceElement& witness_element(const CycleObstruction& o) { return o.witness; }

/// g o f. Throws DomainMismatch when f.cod() != g.dom().
RegularMap compose(const RegularMap& f, const RegularMap& g);

struct Summand {
  VertexSet q;
  int dim = 0;
  friend bool operator==(const Summand&, const Summand&) = default;
};

/// Summands of C*(f(A(G))): one M_{|Q|} per distinct compression projection.
struct SummandStructure {
  std::vector<Summand> summands;
  friend bool operator==(const SummandStructure&, const SummandStructure&) = default;
};

SummandStructure image_summands(const CompressionTypeDecomposition& d);

/// f (x) id_{M_m} on the ampliated spaces.
RegularMap ampliate_map(const RegularMap& f, int m);

}  // namespace afenv

#endif  // AFENV_REGULAR_MAP_HPP
