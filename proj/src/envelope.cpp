#include "afenv/envelope.hpp"

#include <string>

namespace afenv {

BratteliDiagram mark_maximal(BratteliDiagram d) {
  for (auto& level : d.levels) {
    const auto flags = same_level_maximality(level);
    for (std::size_t i = 0; i < level.size(); ++i) level[i].maximal = flags[i];
  }
  if (d.stationary_from) {
    const auto& last = d.levels.back();
    for (std::size_t k = *d.stationary_from; k < d.levels.size(); ++k) {
      bool same = d.levels[k].size() == last.size();
      for (std::size_t i = 0; same && i < last.size(); ++i)
        same = d.levels[k][i].maximal == last[i].maximal;
      if (!same)
        throw Error(ErrorKind::NonStationary,
                    "maximality flags change inside the stationary range at level " +
                        std::to_string(k));
    }
  }
  return d;
}

SilovGenerators silov_generators(const BratteliDiagram& d) {
  if (!d.stationary_from || d.levels.empty())
    throw Error(ErrorKind::NonStationary, "the envelope needs a verified stationary tail");

  const std::size_t last = d.levels.size() - 1;
  const auto& pattern = d.transitions.back();
  const auto& tail = d.levels[last];
  const std::size_t p = tail.size();

  // Tail: the last transition repeats on the last level forever, so a tail
  // node reaches a maximal node iff some maximal node is reachable in >= 1
  // steps of the folded pattern graph.
  std::vector<bool> reaches(p, false);
  for (std::size_t v = 0; v < p; ++v) {
    std::vector<bool> seen(p, false);
    std::vector<std::size_t> stack;
    for (std::size_t w = 0; w < p; ++w)
      if (pattern.n[v][w] > 0 && !seen[w]) seen[w] = true, stack.push_back(w);
    while (!stack.empty() && !reaches[v]) {
      const std::size_t w = stack.back();
      stack.pop_back();
      if (tail[w].maximal) reaches[v] = true;
      for (std::size_t x = 0; x < p; ++x)
        if (pattern.n[w][x] > 0 && !seen[x]) seen[x] = true, stack.push_back(x);
    }
  }

  SilovGenerators g;
  for (std::size_t v = 0; v < p; ++v) g.tail_pattern.push_back(!reaches[v]);

  std::vector<bool> next = reaches;
  for (std::size_t v = 0; v < p; ++v)
    if (!reaches[v]) g.nodes.insert({last, v});
  for (std::size_t k = last; k-- > 0;) {
    const auto& m = d.transitions[k];
    std::vector<bool> cur(d.levels[k].size(), false);
    for (std::size_t v = 0; v < cur.size(); ++v) {
      for (std::size_t w = 0; w < m.cols() && !cur[v]; ++w)
        cur[v] = m.n[v][w] > 0 && (d.levels[k + 1][w].maximal || next[w]);
      if (!cur[v]) g.nodes.insert({k, v});
    }
    next = std::move(cur);
  }

  for (const NodeRef& v : g.nodes) {
    if (v.level == last) continue;
    const auto& m = d.transitions[v.level];
    for (std::size_t w = 0; w < m.cols(); ++w)
      if (m.n[v.index][w] > 0 && !g.contains({v.level + 1, w}))
        throw Error(ErrorKind::InconsistentJClass, "generator set is not forward closed");
  }
  return g;
}

BratteliDiagram quotient_diagram(const BratteliDiagram& d, const SilovGenerators& g) {
  BratteliDiagram q;
  std::vector<std::vector<std::size_t>> kept(d.levels.size());
  for (std::size_t k = 0; k < d.levels.size(); ++k) {
    std::vector<BratteliNode> level;
    for (std::size_t i = 0; i < d.levels[k].size(); ++i) {
      if (g.contains({k, i})) continue;
      kept[k].push_back(i);
      level.push_back(d.levels[k][i]);
    }
    q.levels.push_back(std::move(level));
  }
  for (std::size_t k = 0; k < d.transitions.size(); ++k) {
    ConnectingMatrix m;
    for (std::size_t i : kept[k]) {
      std::vector<int> row;
      for (std::size_t j : kept[k + 1]) row.push_back(d.transitions[k].n[i][j]);
      m.n.push_back(std::move(row));
    }
    q.transitions.push_back(std::move(m));
  }
  if (d.stationary_from) q.stationary_from = detect_stationary(q);
  return q;
}

EnvelopeResult envelope_diagram(const TelescopedSystem& t) {
  EnvelopeResult r;
  const UnitalityReport unital = unitality_report(t);
  if (!unital.unital)
    throw Error(ErrorKind::NotEssentiallyUnital,
                "system is not essentially unital: " + unital.diagnostic());
  r.essentially_unital = true;
  r.diagram = mark_maximal(bratteli(t));
  r.removed = silov_generators(r.diagram);
  r.quotient = quotient_diagram(r.diagram, r.removed);
  r.uhf = classify_uhf(r.quotient);
  return r;
}

std::optional<UhfDescriptor> classify_uhf(const BratteliDiagram& d) {
  if (!d.stationary_from) return std::nullopt;
  const std::size_t from = *d.stationary_from;
  for (std::size_t k = from; k < d.levels.size(); ++k)
    if (d.levels[k].size() != 1) return std::nullopt;
  int ratio = 0;
  for (std::size_t k = from; k < d.transitions.size(); ++k) {
    const auto& m = d.transitions[k];
    if (m.rows() != 1 || m.cols() != 1 || m.n[0][0] < 1) return std::nullopt;
    if (ratio != 0 && m.n[0][0] != ratio) return std::nullopt;
    ratio = m.n[0][0];
  }
  if (ratio == 0) return std::nullopt;
  return UhfDescriptor{d.levels[from][0].dim, ratio};
}

}  // namespace afenv
