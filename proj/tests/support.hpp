#ifndef AFENV_TESTS_SUPPORT_HPP
#define AFENV_TESTS_SUPPORT_HPP

// Generators and oracles shared by the unit and acceptance suites. The
// oracles deliberately avoid the library's own algorithms.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Eigenvalues>

#include "afenv/direct_system.hpp"
#include "afenv/numeric.hpp"
#include "afenv/regular_map.hpp"

namespace afenv::testing {

inline int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool coin(std::mt19937_64& rng, double p) {
  return std::bernoulli_distribution(p)(rng);
}

inline Digraph random_digraph(std::mt19937_64& rng, int n, double p) {
  std::vector<Edge> edges;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i == j || coin(rng, p)) edges.push_back({i, j});
  return make_digraph(n, edges);
}

/// Norm from the eigenvalues of M* M.
inline double oracle_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  const Eigen::MatrixXcd gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

/// Dense image of a under f, entry by entry from the image table.
inline ComplexMatrix oracle_image(const RegularMap& f, const SpaceElement& a) {
  ComplexMatrix out = ComplexMatrix::Zero(f.cod().size(), f.cod().size());
  for (const auto& [e, z] : a.coeffs())
    for (Edge u : f.images(e)) out(u.row - 1, u.col - 1) += z;
  return out;
}

struct OracleVerdict {
  bool compression_type = false;
  /// Distinct compression projections, sorted, when compression_type.
  std::set<std::vector<int>> qs;
};

/// Union-find on codomain vertices joined by image units; each class must
/// carry distinct labels and contain the image of every domain edge whose
/// endpoints are labels of the class.
inline OracleVerdict oracle_compression_type(const RegularMap& f) {
  const int m = f.cod().size();
  std::vector<int> label(m + 1, 0);
  for (int i = 1; i <= f.dom().size(); ++i)
    for (Edge u : f.images({i, i})) label[u.row] = i;
  std::vector<int> parent(m + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t k = 0; k < f.dom().edges().size(); ++k)
    for (Edge u : f.image_lists()[k]) parent[find(u.row)] = find(u.col);

  std::map<int, std::map<int, int>> classes;  // root -> label -> vertex
  OracleVerdict v;
  for (int x = 1; x <= m; ++x) {
    if (label[x] == 0) continue;
    auto& cls = classes[find(x)];
    if (cls.count(label[x])) return v;
    cls[label[x]] = x;
  }
  for (const auto& [root, cls] : classes) {
    for (Edge e : f.dom().edges()) {
      if (e.is_diagonal()) continue;
      auto a = cls.find(e.row), b = cls.find(e.col);
      if (a == cls.end() || b == cls.end()) continue;
      const auto& img = f.images(e);
      if (std::find(img.begin(), img.end(), Edge{a->second, b->second}) == img.end()) return v;
    }
    std::vector<int> q;
    for (const auto& [lab, x] : cls) q.push_back(lab);
    v.qs.insert(q);
  }
  v.compression_type = true;
  return v;
}

/// Random connected subset of dom grown along undirected edges.
inline std::vector<int> random_connected_subset(std::mt19937_64& rng, const Digraph& g,
                                                int target) {
  std::vector<int> q{uniform(rng, 1, g.size())};
  while (static_cast<int>(q.size()) < target) {
    std::vector<int> frontier;
    for (Edge e : g.edges()) {
      const bool r = std::count(q.begin(), q.end(), e.row) > 0;
      const bool c = std::count(q.begin(), q.end(), e.col) > 0;
      if (r && !c) frontier.push_back(e.col);
      if (c && !r) frontier.push_back(e.row);
    }
    if (frontier.empty()) break;
    q.push_back(frontier[uniform(rng, 0, static_cast<int>(frontier.size()) - 1)]);
  }
  std::sort(q.begin(), q.end());
  q.erase(std::unique(q.begin(), q.end()), q.end());
  return q;
}

/// Direct sum of random elementary compressions out of `dom` into a fresh
/// codomain with at most max_cod vertices. With probability `perturb` one
/// off-diagonal image unit is dropped afterwards.
inline RegularMap random_compression_map(std::mt19937_64& rng, const Digraph& dom, int max_cod,
                                         double perturb = 0.0) {
  const int m = uniform(rng, 1, max_cod);
  std::vector<int> free(m);
  std::iota(free.begin(), free.end(), 1);
  std::shuffle(free.begin(), free.end(), rng);
  std::vector<std::pair<std::vector<int>, std::vector<int>>> comps;
  std::size_t used = 0;
  const int count = uniform(rng, 0, 4);
  for (int c = 0; c < count; ++c) {
    auto q = random_connected_subset(rng, dom, uniform(rng, 1, dom.size()));
    if (used + q.size() > free.size()) break;
    std::vector<int> rho(free.begin() + used, free.begin() + used + q.size());
    used += q.size();
    comps.push_back({q, rho});
  }
  std::set<Edge> cod_edges;
  for (int x = 1; x <= m; ++x) cod_edges.insert({x, x});
  ImageTable table;
  for (const auto& [q, rho] : comps)
    for (std::size_t a = 0; a < q.size(); ++a)
      for (std::size_t b = 0; b < q.size(); ++b)
        if (dom.has_edge(q[a], q[b])) {
          table[{q[a], q[b]}].push_back({rho[a], rho[b]});
          cod_edges.insert({rho[a], rho[b]});
        }
  for (int x = 1; x <= m; ++x)
    for (int y = 1; y <= m; ++y)
      if (x != y && coin(rng, 0.1)) cod_edges.insert({x, y});
  if (coin(rng, perturb)) {
    std::vector<std::pair<Edge, std::size_t>> offdiag;
    for (const auto& [e, units] : table)
      if (!e.is_diagonal())
        for (std::size_t k = 0; k < units.size(); ++k) offdiag.push_back({e, k});
    if (!offdiag.empty()) {
      const auto [e, k] = offdiag[uniform(rng, 0, static_cast<int>(offdiag.size()) - 1)];
      table[e].erase(table[e].begin() + static_cast<std::ptrdiff_t>(k));
    }
  }
  std::vector<Edge> list(cod_edges.begin(), cod_edges.end());
  return make_regular_map(dom, make_digraph(m, list), table);
}

/// Unstructured regular map: random labels on codomain vertices and random
/// partial matchings between label classes for each domain edge.
inline RegularMap random_regular_map(std::mt19937_64& rng, int max_dom, int max_cod) {
  const Digraph dom = random_digraph(rng, uniform(rng, std::min(3, max_dom), max_dom), 0.5);
  const int m = uniform(rng, 1, max_cod);
  std::vector<std::vector<int>> classes(dom.size() + 1);
  for (int x = 1; x <= m; ++x)
    if (coin(rng, 0.9)) classes[uniform(rng, 1, dom.size())].push_back(x);
  std::set<Edge> cod_edges;
  for (int x = 1; x <= m; ++x) cod_edges.insert({x, x});
  ImageTable table;
  for (Edge e : dom.edges()) {
    auto rows = classes[e.row];
    auto cols = classes[e.col];
    if (e.is_diagonal()) {
      for (int x : rows) table[e].push_back({x, x});
      continue;
    }
    std::shuffle(rows.begin(), rows.end(), rng);
    std::shuffle(cols.begin(), cols.end(), rng);
    for (std::size_t k = 0; k < std::min(rows.size(), cols.size()); ++k) {
      if (!coin(rng, 0.85)) continue;
      table[e].push_back({rows[k], cols[k]});
      cod_edges.insert({rows[k], cols[k]});
    }
  }
  std::vector<Edge> list(cod_edges.begin(), cod_edges.end());
  return make_regular_map(dom, make_digraph(m, list), table);
}

/// Mix of structured (mostly accepted) and unstructured (mostly rejected)
/// maps.
inline RegularMap random_mixed_map(std::mt19937_64& rng, int max_dom, int max_cod) {
  if (coin(rng, 0.5)) return random_regular_map(rng, max_dom, max_cod);
  const Digraph dom = random_digraph(rng, uniform(rng, 1, max_dom), 0.35);
  return random_compression_map(rng, dom, max_cod, 0.3);
}

inline SpaceElement gaussian_element(std::mt19937_64& rng, const DigraphSpace& s) {
  std::normal_distribution<double> n(0.0, 1.0);
  SpaceElement a(s);
  for (Edge e : s.edges()) a.set(e, {n(rng), n(rng)});
  return a;
}

/// Random unital stationary pattern: `levels` levels sharing one square
/// transition without zero rows or columns, every provided dim <= max_dim.
struct Pattern {
  std::vector<std::vector<int>> dims;
  std::vector<ConnectingMatrix> transitions;
};

inline Pattern random_stationary_pattern(std::mt19937_64& rng, int max_summands, int max_dim,
                                         int levels) {
  for (;;) {
    const int p = uniform(rng, 1, max_summands);
    ConnectingMatrix m;
    m.n.assign(p, std::vector<int>(p, 0));
    for (auto& row : m.n)
      for (int& x : row) x = coin(rng, 0.4) ? uniform(rng, 1, 2) : 0;
    bool ok = true;
    for (int i = 0; i < p && ok; ++i) {
      ok = std::any_of(m.n[i].begin(), m.n[i].end(), [](int x) { return x > 0; });
      bool col = false;
      for (int r = 0; r < p; ++r) col = col || m.n[r][i] > 0;
      ok = ok && col;
    }
    if (!ok) continue;
    Pattern pat;
    std::vector<int> dims(p);
    for (int& d : dims) d = uniform(rng, 1, max_dim);
    pat.dims.push_back(dims);
    for (int k = 1; k < levels && ok; ++k) {
      std::vector<int> next(p, 0);
      for (int j = 0; j < p; ++j)
        for (int i = 0; i < p; ++i) next[j] += m.n[i][j] * pat.dims.back()[i];
      ok = *std::max_element(next.begin(), next.end()) <= max_dim;
      pat.dims.push_back(next);
      pat.transitions.push_back(m);
    }
    if (ok) return pat;
  }
}

}  // namespace afenv::testing

#endif  // AFENV_TESTS_SUPPORT_HPP
