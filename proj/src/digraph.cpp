#include "afenv/digraph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace afenv {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MissingLoop: return "MissingLoop";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::EmptyProjection: return "EmptyProjection";
    case ErrorKind::UnknownDomainEdge: return "UnknownDomainEdge";
    case ErrorKind::DiagonalToOffDiagonal: return "DiagonalToOffDiagonal";
    case ErrorKind::DiagonalOverlap: return "DiagonalOverlap";
    case ErrorKind::UndominatedUnit: return "UndominatedUnit";
    case ErrorKind::NonOrthogonalSum: return "NonOrthogonalSum";
    case ErrorKind::UnitOutsideCodomain: return "UnitOutsideCodomain";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::NotInjective: return "NotInjective";
    case ErrorKind::EdgeNotPreserved: return "EdgeNotPreserved";
    case ErrorKind::RangeDisconnected: return "RangeDisconnected";
    case ErrorKind::RangeOverlap: return "RangeOverlap";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NumericMismatch: return "NumericMismatch";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotCompressionType: return "NotCompressionType";
    case ErrorKind::NotStabilized: return "NotStabilized";
    case ErrorKind::InconsistentJClass: return "InconsistentJClass";
    case ErrorKind::Indeterminate: return "Indeterminate";
    case ErrorKind::ZeroRow: return "ZeroRow";
    case ErrorKind::ZeroColumn: return "ZeroColumn";
    case ErrorKind::NonUnitalColumn: return "NonUnitalColumn";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::MissingQ: return "MissingQ";
    case ErrorKind::NonStationary: return "NonStationary";
    case ErrorKind::NotEssentiallyUnital: return "NotEssentiallyUnital";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

namespace {

std::string edge_str(Edge e) {
  return "(" + std::to_string(e.row) + "," + std::to_string(e.col) + ")";
}

}  // namespace

bool Digraph::has_edge(Edge e) const noexcept {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::ptrdiff_t Digraph::edge_index(Edge e) const noexcept {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return -1;
  return it - edges_.begin();
}

Digraph make_digraph(int n, std::span<const Edge> edges) {
  if (n < 1) throw Error(ErrorKind::OutOfRange, "digraph needs at least one vertex");
  Digraph g;
  g.n_ = n;
  g.edges_.assign(edges.begin(), edges.end());
  for (const Edge& e : g.edges_) {
    if (e.row < 1 || e.row > n || e.col < 1 || e.col > n)
      throw Error(ErrorKind::OutOfRange, "edge " + edge_str(e) + " outside 1.." + std::to_string(n));
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());
  for (int i = 1; i <= n; ++i) {
    if (!g.has_edge(i, i))
      throw Error(ErrorKind::MissingLoop, "vertex " + std::to_string(i) + " has no loop");
  }
  return g;
}

Digraph upper_triangular(int n) {
  std::vector<Edge> edges;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) edges.push_back({i, j});
  return make_digraph(n, edges);
}

Digraph complete_digraph(int n) {
  std::vector<Edge> edges;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) edges.push_back({i, j});
  return make_digraph(n, edges);
}

Digraph cycle_digraph(int m) {
  std::vector<Edge> edges;
  for (int i = 1; i <= m; ++i) {
    edges.push_back({i, i});
    edges.push_back({i, i % m + 1});
  }
  return make_digraph(m, edges);
}

bool is_transitive(const Digraph& g) {
  const auto& es = g.edges();
  for (const Edge& a : es) {
    // Edges leaving a.col form a contiguous run in the sorted list.
    auto it = std::lower_bound(es.begin(), es.end(), Edge{a.col, 0});
    for (; it != es.end() && it->row == a.col; ++it) {
      if (!g.has_edge(a.row, it->col)) return false;
    }
  }
  return true;
}

VertexSet::VertexSet(int ambient, std::vector<int> members)
    : ambient_(ambient), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (int v : members_) {
    if (v < 1 || v > ambient_)
      throw Error(ErrorKind::OutOfRange,
                  "vertex " + std::to_string(v) + " outside 1.." + std::to_string(ambient_));
  }
}

bool VertexSet::contains(int v) const noexcept {
  return std::binary_search(members_.begin(), members_.end(), v);
}

bool VertexSet::is_subset_of(const VertexSet& other) const noexcept {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                       members_.end());
}

VertexSet all_vertices(const Digraph& g) {
  std::vector<int> vs(static_cast<std::size_t>(g.size()));
  std::iota(vs.begin(), vs.end(), 1);
  return VertexSet(g.size(), std::move(vs));
}

std::vector<VertexSet> underlying_components(const Digraph& g, const VertexSet& q) {
  if (q.empty()) throw Error(ErrorKind::EmptyProjection, "empty projection");
  if (q.ambient() != g.size())
    throw Error(ErrorKind::OutOfRange, "projection belongs to a different ambient size");

  // Union-find over positions in q.members().
  const auto& ms = q.members();
  std::vector<std::size_t> parent(ms.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto pos = [&](int v) {
    return static_cast<std::size_t>(std::lower_bound(ms.begin(), ms.end(), v) - ms.begin());
  };
  for (const Edge& e : g.edges()) {
    if (e.is_diagonal() || !q.contains(e.row) || !q.contains(e.col)) continue;
    auto a = find(pos(e.row));
    auto b = find(pos(e.col));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }

  // Roots are the least position of each class, so iterating in order yields
  // components sorted by least member.
  std::vector<std::vector<int>> groups;
  std::vector<std::ptrdiff_t> slot(ms.size(), -1);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    auto r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<std::ptrdiff_t>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[r])].push_back(ms[i]);
  }
  std::vector<VertexSet> out;
  out.reserve(groups.size());
  for (auto& grp : groups) out.emplace_back(g.size(), std::move(grp));
  return out;
}

bool is_irreducible(const Digraph& g, const VertexSet& q) {
  return underlying_components(g, q).size() == 1;
}

InducedSubspace induced_subspace(const DigraphSpace& s, const VertexSet& q) {
  if (q.empty()) throw Error(ErrorKind::EmptyProjection, "empty projection");
  const auto& ms = q.members();
  auto relabel = [&](int v) {
    return static_cast<int>(std::lower_bound(ms.begin(), ms.end(), v) - ms.begin()) + 1;
  };
  std::vector<Edge> edges;
  for (const Edge& e : s.edges()) {
    if (q.contains(e.row) && q.contains(e.col)) edges.push_back({relabel(e.row), relabel(e.col)});
  }
  return {make_digraph(static_cast<int>(ms.size()), edges), ms};
}

DigraphSpace ampliate_space(const DigraphSpace& s, int m) {
  if (m < 1) throw Error(ErrorKind::OutOfRange, "ampliation order must be positive");
  std::vector<Edge> edges;
  edges.reserve(s.edge_count() * static_cast<std::size_t>(m * m));
  for (const Edge& e : s.edges())
    for (int a = 1; a <= m; ++a)
      for (int b = 1; b <= m; ++b)
        edges.push_back({ampliated_vertex(e.row, a, m), ampliated_vertex(e.col, b, m)});
  return make_digraph(s.size() * m, edges);
}

void SpaceElement::set(Edge e, Scalar value) {
  if (!space_.has_edge(e))
    throw Error(ErrorKind::OutOfRange, "coefficient on non-edge " + edge_str(e));
  if (value == Scalar{})
    coeffs_.erase(e);
  else
    coeffs_[e] = value;
}

void SpaceElement::add(Edge e, Scalar value) { set(e, at(e) + value); }

SpaceElement::Scalar SpaceElement::at(Edge e) const {
  auto it = coeffs_.find(e);
  return it == coeffs_.end() ? Scalar{} : it->second;
}

SpaceElement& SpaceElement::operator+=(const SpaceElement& other) {
  if (!(space_ == other.space_))
    throw Error(ErrorKind::DomainMismatch, "adding elements of different spaces");
  for (const auto& [e, v] : other.coeffs_) add(e, v);
  return *this;
}

SpaceElement operator*(SpaceElement::Scalar s, SpaceElement a) {
  if (s == SpaceElement::Scalar{}) {
    a.coeffs_.clear();
    return a;
  }
  for (auto& [e, v] : a.coeffs_) v *= s;
  return a;
}

SpaceElement unit_element(const DigraphSpace& s, Edge e) {
  SpaceElement a(s);
  a.set(e, 1.0);
  return a;
}

}  // namespace afenv
