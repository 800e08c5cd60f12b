#ifndef AFENV_DIGRAPH_HPP
#define AFENV_DIGRAPH_HPP

#include <compare>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "afenv/error.hpp"

namespace afenv {

/// Ordered pair (row, col) of 1-based vertex labels. Doubles as the matrix
/// unit e_{row,col}.
struct Edge {
  int row = 0;
  int col = 0;

  bool is_diagonal() const noexcept { return row == col; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using MatrixUnit = Edge;

/// Reflexive digraph on vertices 1..n without multiple edges. Edges are kept
/// sorted, so edge_index() gives a stable coordinate system for the space
/// A(G) spanned by the matrix units of the edges.
class Digraph {
public:
  Digraph() = default;

  int size() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  bool has_edge(Edge e) const noexcept;
  bool has_edge(int i, int j) const noexcept { return has_edge(Edge{i, j}); }

  /// Position of e in edges(), or -1.
  std::ptrdiff_t edge_index(Edge e) const noexcept;

  friend bool operator==(const Digraph&, const Digraph&) = default;

private:
  friend Digraph make_digraph(int n, std::span<const Edge> edges);

  int n_ = 0;
  std::vector<Edge> edges_;
};

/// A digraph space A(G) is identified with its graph. Whether it is an
/// algebra is a property (is_transitive), not a type.
using DigraphSpace = Digraph;

/// Throws MissingLoop / OutOfRange. Duplicate pairs collapse.
Digraph make_digraph(int n, std::span<const Edge> edges);
inline Digraph make_digraph(int n, std::initializer_list<Edge> edges) {
  return make_digraph(n, std::span<const Edge>(edges.begin(), edges.size()));
}

/// Upper-triangular pattern T_n: edges (i,j) with i <= j.
Digraph upper_triangular(int n);
/// Complete reflexive digraph (the pattern of M_n).
Digraph complete_digraph(int n);
/// Reflexive m-cycle 1 -> 2 -> ... -> m -> 1.
Digraph cycle_digraph(int m);

bool is_transitive(const Digraph& g);

/// Subset of the vertices of an ambient graph; as an operator, the diagonal
/// projection onto those coordinates. Members are sorted and unique.
class VertexSet {
public:
  VertexSet() = default;
  VertexSet(int ambient, std::vector<int> members);

  int ambient() const noexcept { return ambient_; }
  const std::vector<int>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(int v) const noexcept;
  int front() const { return members_.front(); }

  /// Non-strict containment of member sets.
  bool is_subset_of(const VertexSet& other) const noexcept;

  friend bool operator==(const VertexSet& a, const VertexSet& b) noexcept {
    return a.members_ == b.members_;
  }
  /// Canonical order: least vertex first, then lexicographic.
  friend bool operator<(const VertexSet& a, const VertexSet& b) noexcept {
    return a.members_ < b.members_;
  }

private:
  int ambient_ = 0;
  std::vector<int> members_;
};

VertexSet all_vertices(const Digraph& g);

/// Connected components of the undirected graph underlying the subgraph
/// induced on q. Each component ascending; components ordered by least
/// member.
std::vector<VertexSet> underlying_components(const Digraph& g, const VertexSet& q);

bool is_irreducible(const Digraph& g, const VertexSet& q);

struct InducedSubspace {
  DigraphSpace space;
  /// relabel[k] is the original vertex of new vertex k+1.
  std::vector<int> relabel;
};

InducedSubspace induced_subspace(const DigraphSpace& s, const VertexSet& q);

/// A(G) (x) M_m; vertex (i, a) is encoded as (i-1)*m + a.
DigraphSpace ampliate_space(const DigraphSpace& s, int m);

inline int ampliated_vertex(int vertex, int fibre, int m) { return (vertex - 1) * m + fibre; }

/// Element of a digraph space: complex coefficients on edges.
class SpaceElement {
public:
  using Scalar = std::complex<double>;

  SpaceElement() = default;
  explicit SpaceElement(DigraphSpace space) : space_(std::move(space)) {}

  const DigraphSpace& space() const noexcept { return space_; }
  const std::map<Edge, Scalar>& coeffs() const noexcept { return coeffs_; }

  /// Throws OutOfRange if e is not an edge of the space. Zero erases.
  void set(Edge e, Scalar value);
  void add(Edge e, Scalar value);
  Scalar at(Edge e) const;

  SpaceElement& operator+=(const SpaceElement& other);
  friend SpaceElement operator+(SpaceElement a, const SpaceElement& b) { return a += b; }
  friend SpaceElement operator*(Scalar s, SpaceElement a);

  friend bool operator==(const SpaceElement&, const SpaceElement&) = default;

private:
  DigraphSpace space_;
  std::map<Edge, Scalar> coeffs_;
};

/// The matrix unit e_ij as an element of s.
SpaceElement unit_element(const DigraphSpace& s, Edge e);

}  // namespace afenv

#endif  // AFENV_DIGRAPH_HPP
