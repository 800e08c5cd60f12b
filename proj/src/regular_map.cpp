#include "afenv/regular_map.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

namespace afenv {

namespace {

std::string edge_str(Edge e) {
  return "(" + std::to_string(e.row) + "," + std::to_string(e.col) + ")";
}

}  // namespace

const std::vector<MatrixUnit>& RegularMap::images(Edge e) const {
  auto idx = dom_.edge_index(e);
  if (idx < 0) throw Error(ErrorKind::UnknownDomainEdge, "not a domain edge: " + edge_str(e));
  return images_[static_cast<std::size_t>(idx)];
}

ImageTable RegularMap::table() const {
  ImageTable t;
  for (std::size_t k = 0; k < images_.size(); ++k) t.emplace(dom_.edges()[k], images_[k]);
  return t;
}

RegularMap make_regular_map(DigraphSpace dom, DigraphSpace cod, const ImageTable& images) {
  RegularMap f;
  f.images_.assign(dom.edge_count(), {});
  for (const auto& [e, units] : images) {
    auto idx = dom.edge_index(e);
    if (idx < 0)
      throw Error(ErrorKind::UnknownDomainEdge, "image given for non-edge " + edge_str(e));
    auto& slot = f.images_[static_cast<std::size_t>(idx)];
    slot = units;
    std::sort(slot.begin(), slot.end());
  }

  const auto& edges = dom.edges();
  // R1 and R5.
  for (std::size_t k = 0; k < edges.size(); ++k) {
    for (const MatrixUnit& u : f.images_[k]) {
      if (edges[k].is_diagonal() && !u.is_diagonal())
        throw Error(ErrorKind::DiagonalToOffDiagonal,
                    "diagonal unit " + edge_str(edges[k]) + " maps onto " + edge_str(u));
      if (!cod.has_edge(u))
        throw Error(ErrorKind::UnitOutsideCodomain,
                    "image unit " + edge_str(u) + " of " + edge_str(edges[k]) +
                        " is not a codomain edge");
    }
  }
  // R2: owner[k] is the domain vertex whose diagonal image contains f_kk.
  std::vector<int> owner(static_cast<std::size_t>(cod.size()) + 1, 0);
  for (int i = 1; i <= dom.size(); ++i) {
    for (const MatrixUnit& u : f.images_[static_cast<std::size_t>(dom.edge_index({i, i}))]) {
      int& o = owner[static_cast<std::size_t>(u.row)];
      if (o != 0)
        throw Error(ErrorKind::DiagonalOverlap, "images of e_" + std::to_string(o) +
                                                    std::to_string(o) + " and e_" +
                                                    std::to_string(i) + std::to_string(i) +
                                                    " share " + edge_str(u));
      o = i;
    }
  }
  // R4 and R3.
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto& units = f.images_[k];
    std::set<int> rows, cols;
    for (const MatrixUnit& u : units) {
      if (!rows.insert(u.row).second || !cols.insert(u.col).second)
        throw Error(ErrorKind::NonOrthogonalSum,
                    "image of " + edge_str(edges[k]) + " repeats a row or column at " +
                        edge_str(u));
      if (owner[static_cast<std::size_t>(u.row)] != edges[k].row ||
          owner[static_cast<std::size_t>(u.col)] != edges[k].col)
        throw Error(ErrorKind::UndominatedUnit,
                    "unit " + edge_str(u) + " in the image of " + edge_str(edges[k]) +
                        " is not dominated by the diagonal images");
    }
  }

  f.dom_ = std::move(dom);
  f.cod_ = std::move(cod);
  return f;
}

RegularMap identity_map(const DigraphSpace& s) {
  ImageTable t;
  for (const Edge& e : s.edges()) t[e] = {e};
  return make_regular_map(s, s, t);
}

int ElementaryCompressionMap::image_of(int v) const {
  const auto& ms = q_.members();
  auto it = std::lower_bound(ms.begin(), ms.end(), v);
  if (it == ms.end() || *it != v)
    throw Error(ErrorKind::OutOfRange, "vertex " + std::to_string(v) + " not in Q");
  return rho_[static_cast<std::size_t>(it - ms.begin())];
}

VertexSet ElementaryCompressionMap::range() const { return VertexSet(cod_.size(), rho_); }

ElementaryCompressionMap make_elementary(DigraphSpace dom, DigraphSpace cod, VertexSet q,
                                         std::vector<int> rho) {
  if (q.ambient() != dom.size())
    throw Error(ErrorKind::OutOfRange, "projection is not over the domain");
  if (rho.size() != q.size())
    throw Error(ErrorKind::NotInjective, "rho must assign one codomain vertex per member of Q");
  if (!is_irreducible(dom, q)) throw Error(ErrorKind::NotIrreducible, "Q is not irreducible");
  for (int r : rho) {
    if (r < 1 || r > cod.size())
      throw Error(ErrorKind::OutOfRange, "rho target " + std::to_string(r) + " out of range");
  }
  std::vector<int> sorted = rho;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorKind::NotInjective, "rho is not injective");

  ElementaryCompressionMap m;
  m.dom_ = std::move(dom);
  m.cod_ = std::move(cod);
  m.q_ = std::move(q);
  m.rho_ = std::move(rho);
  for (const Edge& e : m.dom_.edges()) {
    if (!m.q_.contains(e.row) || !m.q_.contains(e.col)) continue;
    Edge image{m.image_of(e.row), m.image_of(e.col)};
    if (!m.cod_.has_edge(image))
      throw Error(ErrorKind::EdgeNotPreserved,
                  "edge " + edge_str(e) + " maps to non-edge " + edge_str(image));
  }
  if (!is_irreducible(m.cod_, m.range()))
    throw Error(ErrorKind::RangeDisconnected, "range of rho is disconnected in the codomain");
  return m;
}

RegularMap assemble(const DigraphSpace& dom, const DigraphSpace& cod,
                    const std::vector<ElementaryCompressionMap>& components) {
  std::vector<int> used_by(static_cast<std::size_t>(cod.size()) + 1, -1);
  ImageTable t;
  for (std::size_t c = 0; c < components.size(); ++c) {
    const auto& comp = components[c];
    if (!(comp.dom() == dom) || !(comp.cod() == cod))
      throw Error(ErrorKind::DomainMismatch, "component " + std::to_string(c) +
                                                 " has a different domain or codomain");
    for (int r : comp.rho()) {
      int& u = used_by[static_cast<std::size_t>(r)];
      if (u >= 0)
        throw Error(ErrorKind::RangeOverlap, "components " + std::to_string(u) + " and " +
                                                 std::to_string(c) + " overlap at vertex " +
                                                 std::to_string(r));
      u = static_cast<int>(c);
    }
    for (const Edge& e : dom.edges()) {
      if (comp.q().contains(e.row) && comp.q().contains(e.col))
        t[e].push_back({comp.image_of(e.row), comp.image_of(e.col)});
    }
  }
  return make_regular_map(dom, cod, t);
}

namespace {

struct Link {
  int other;
  Edge dom_edge;
  friend auto operator<=>(const Link&, const Link&) = default;
};

// Tree path between two vertices of a BFS forest: vertices from `from` to
// `to`, and for each step the domain edge whose image realised it.
void tree_path(const std::vector<int>& parent, const std::vector<Edge>& parent_edge, int from,
               int to, std::vector<int>& path, std::vector<Edge>& steps) {
  std::vector<int> up_from{from};
  for (int v = from; parent[static_cast<std::size_t>(v)] != 0;)
    up_from.push_back(v = parent[static_cast<std::size_t>(v)]);
  std::vector<int> up_to{to};
  auto in_from = [&](int v) { return std::find(up_from.begin(), up_from.end(), v); };
  while (in_from(up_to.back()) == up_from.end())
    up_to.push_back(parent[static_cast<std::size_t>(up_to.back())]);
  auto lca_it = in_from(up_to.back());

  path.assign(up_from.begin(), lca_it + 1);
  steps.clear();
  for (auto it = up_from.begin(); it != lca_it; ++it)
    steps.push_back(parent_edge[static_cast<std::size_t>(*it)]);
  for (auto it = up_to.rbegin() + 1; it != up_to.rend(); ++it) {
    path.push_back(*it);
    steps.push_back(parent_edge[static_cast<std::size_t>(*it)]);
  }
}

std::vector<CycleEdge> orient(const std::vector<int>& vertices, const std::vector<Edge>& edges) {
  std::vector<CycleEdge> out;
  const std::size_t l = vertices.size();
  for (std::size_t m = 0; m < l; ++m) {
    Edge e = edges[m];
    out.push_back({e, e.row == vertices[m] && e.col == vertices[(m + 1) % l]});
  }
  return out;
}

CycleObstruction make_obstruction(const RegularMap& f, std::vector<int> vertices,
                                  std::vector<Edge> edges, std::vector<int> orbit_path) {
  CycleObstruction o;
  o.cycle_edges = orient(vertices, edges);
  o.cycle_vertices = std::move(vertices);
  o.orbit_path = std::move(orbit_path);
  const std::size_t l = o.cycle_edges.size();
  for (std::size_t m = 0; m < l; ++m) {
    const auto& prev = o.cycle_edges[(m + l - 1) % l];
    if (prev.forward == o.cycle_edges[m].forward) o.same_direction.push_back(static_cast<int>(m) + 1);
  }
  o.witness = witness_element(f.dom(), o.cycle_vertices, o.cycle_edges);
  return o;
}

}  // namespace

SpaceElement witness_element(const DigraphSpace& dom, const std::vector<int>& cycle_vertices,
                             const std::vector<CycleEdge>& cycle_edges) {
  SpaceElement a(dom);
  const std::size_t l = cycle_edges.size();
  for (std::size_t m = 0; m + 1 < l; ++m) a.add(cycle_edges[m].edge, 1.0);
  for (std::size_t m = 0; m < l; ++m) {
    if (cycle_edges[(m + l - 1) % l].forward == cycle_edges[m].forward)
      a.add({cycle_vertices[m], cycle_vertices[m]}, 1.0);
  }
  a.add(cycle_edges[l - 1].edge, -1.0);
  return a;
}

DecisionResult decide_compression_type(const RegularMap& f) {
  const DigraphSpace& dom = f.dom();
  const DigraphSpace& cod = f.cod();
  const auto m = static_cast<std::size_t>(cod.size());

  // Source label of every codomain vertex occurring in a diagonal image.
  std::vector<int> label(m + 1, 0);
  for (int j = 1; j <= dom.size(); ++j)
    for (const MatrixUnit& u : f.images({j, j})) label[static_cast<std::size_t>(u.row)] = j;

  std::vector<std::vector<Link>> links(m + 1);
  for (std::size_t k = 0; k < dom.edge_count(); ++k) {
    const Edge e = dom.edges()[k];
    if (e.is_diagonal()) continue;
    for (const MatrixUnit& u : f.image_lists()[k]) {
      links[static_cast<std::size_t>(u.row)].push_back({u.col, e});
      links[static_cast<std::size_t>(u.col)].push_back({u.row, e});
    }
  }
  for (auto& l : links) std::sort(l.begin(), l.end());

  std::vector<int> parent(m + 1, 0);
  std::vector<Edge> parent_edge(m + 1);
  std::vector<bool> visited(m + 1, false);
  CompressionTypeDecomposition result{dom, cod, {}};
  std::vector<int> path;
  std::vector<Edge> steps;

  for (int p = 1; p <= cod.size(); ++p) {
    if (label[static_cast<std::size_t>(p)] == 0 || visited[static_cast<std::size_t>(p)]) continue;

    std::map<int, int> by_label;  // source label -> orbit vertex
    std::deque<int> queue{p};
    visited[static_cast<std::size_t>(p)] = true;
    by_label[label[static_cast<std::size_t>(p)]] = p;
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (const Link& link : links[static_cast<std::size_t>(x)]) {
        const auto y = static_cast<std::size_t>(link.other);
        if (visited[y]) continue;
        visited[y] = true;
        parent[y] = x;
        parent_edge[y] = link.dom_edge;
        auto [it, fresh] = by_label.emplace(label[y], link.other);
        if (!fresh) {
          // Two orbit vertices with the same source: walk the tree path
          // between them and cut it at the first repeated label.
          tree_path(parent, parent_edge, it->second, link.other, path, steps);
          std::size_t i = 0, j = 1;
          for (;; ++j) {
            const int lj = label[static_cast<std::size_t>(path[j])];
            auto hit = std::find_if(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(j),
                                    [&](int q) { return label[static_cast<std::size_t>(q)] == lj; });
            if (hit != path.begin() + static_cast<std::ptrdiff_t>(j)) {
              i = static_cast<std::size_t>(hit - path.begin());
              break;
            }
          }
          std::vector<int> verts, orbit(path.begin() + static_cast<std::ptrdiff_t>(i),
                                        path.begin() + static_cast<std::ptrdiff_t>(j));
          for (int q : orbit) verts.push_back(label[static_cast<std::size_t>(q)]);
          std::vector<Edge> es(steps.begin() + static_cast<std::ptrdiff_t>(i),
                               steps.begin() + static_cast<std::ptrdiff_t>(j));
          return make_obstruction(f, std::move(verts), std::move(es), std::move(orbit));
        }
        queue.push_back(link.other);
      }
    }

    // Labels are injective on the orbit; every domain edge between two
    // labels must be realised inside the orbit.
    for (std::size_t k = 0; k < dom.edge_count(); ++k) {
      const Edge e = dom.edges()[k];
      if (e.is_diagonal()) continue;
      auto iu = by_label.find(e.row);
      auto iv = by_label.find(e.col);
      if (iu == by_label.end() || iv == by_label.end()) continue;
      const auto& units = f.image_lists()[k];
      if (std::binary_search(units.begin(), units.end(), MatrixUnit{iu->second, iv->second}))
        continue;
      tree_path(parent, parent_edge, iv->second, iu->second, path, steps);
      std::vector<int> verts;
      for (int q : path) verts.push_back(label[static_cast<std::size_t>(q)]);
      steps.push_back(e);
      return make_obstruction(f, std::move(verts), steps, path);
    }

    std::vector<int> q_members, rho;
    for (const auto& [src, target] : by_label) {
      q_members.push_back(src);
      rho.push_back(target);
    }
    result.components.push_back(
        make_elementary(dom, cod, VertexSet(dom.size(), std::move(q_members)), std::move(rho)));
  }

  std::sort(result.components.begin(), result.components.end(),
            [](const auto& a, const auto& b) { return a.range().front() < b.range().front(); });
  return result;
}

RegularMap compose(const RegularMap& f, const RegularMap& g) {
  if (!(f.cod() == g.dom()))
    throw Error(ErrorKind::DomainMismatch, "codomain of the first map is not the second's domain");
  ImageTable t;
  for (std::size_t k = 0; k < f.dom().edge_count(); ++k) {
    auto& out = t[f.dom().edges()[k]];
    for (const MatrixUnit& u : f.image_lists()[k]) {
      const auto& next = g.images(u);
      out.insert(out.end(), next.begin(), next.end());
    }
  }
  return make_regular_map(f.dom(), g.cod(), t);
}

SummandStructure image_summands(const CompressionTypeDecomposition& d) {
  std::vector<VertexSet> qs;
  for (const auto& c : d.components) qs.push_back(c.q());
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  SummandStructure s;
  for (auto& q : qs) {
    const int dim = static_cast<int>(q.size());
    s.summands.push_back({std::move(q), dim});
  }
  return s;
}

RegularMap ampliate_map(const RegularMap& f, int m) {
  DigraphSpace dom = ampliate_space(f.dom(), m);
  DigraphSpace cod = ampliate_space(f.cod(), m);
  ImageTable t;
  for (std::size_t k = 0; k < f.dom().edge_count(); ++k) {
    const Edge e = f.dom().edges()[k];
    for (int a = 1; a <= m; ++a) {
      for (int b = 1; b <= m; ++b) {
        auto& out = t[{ampliated_vertex(e.row, a, m), ampliated_vertex(e.col, b, m)}];
        for (const MatrixUnit& u : f.image_lists()[k])
          out.push_back({ampliated_vertex(u.row, a, m), ampliated_vertex(u.col, b, m)});
      }
    }
  }
  return make_regular_map(std::move(dom), std::move(cod), t);
}

}  // namespace afenv
