#include "afenv/direct_system.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "afenv/numeric.hpp"

namespace afenv {

namespace {

std::vector<VertexSet> q_set(const CompressionTypeDecomposition& d) {
  std::vector<VertexSet> out;
  for (const Summand& s : image_summands(d).summands) out.push_back(s.q);
  return out;
}

CompressionTypeDecomposition decompose_or_throw(const RegularMap& f, std::size_t stage) {
  auto r = decide_compression_type(f);
  if (auto* o = std::get_if<CycleObstruction>(&r))
    throw NotCompressionTypeError(ErrorKind::NotCompressionType, stage, *o,
                                  "map " + std::to_string(stage) + " is not of compression type");
  return std::get<CompressionTypeDecomposition>(std::move(r));
}

}  // namespace

DirectSystem make_system(std::vector<DigraphSpace> spaces, std::vector<RegularMap> maps,
                         TailMode tail) {
  if (spaces.size() < 2)
    throw Error(ErrorKind::ShapeMismatch, "a system needs at least two spaces");
  if (maps.size() + 1 != spaces.size())
    throw Error(ErrorKind::ShapeMismatch, "expected " + std::to_string(spaces.size() - 1) +
                                              " maps, got " + std::to_string(maps.size()));
  DirectSystem s;
  for (std::size_t k = 0; k < maps.size(); ++k) {
    if (!(maps[k].dom() == spaces[k]) || !(maps[k].cod() == spaces[k + 1]))
      throw Error(ErrorKind::ShapeMismatch,
                  "map " + std::to_string(k) + " does not connect spaces " + std::to_string(k) +
                      " and " + std::to_string(k + 1));
    s.decompositions_.push_back(decompose_or_throw(maps[k], k));
  }
  s.spaces_ = std::move(spaces);
  s.maps_ = std::move(maps);
  s.tail_ = tail;
  return s;
}

TelescopedSystem telescope(const DirectSystem& s) {
  const std::size_t count = s.maps().size();
  TelescopedSystem t{s, 0, {}, std::vector<bool>(count, true), false};

  for (std::size_t k = 0; k < count; ++k) {
    const auto own = q_set(s.decompositions()[k]);
    RegularMap composite = s.maps()[k];
    for (std::size_t l = k + 1; l < count; ++l) {
      composite = compose(composite, s.maps()[l]);
      if (q_set(decompose_or_throw(composite, k)) != own) {
        t.stage_stable[k] = false;
        break;
      }
    }
  }

  std::size_t start = count;
  while (start > 0 && t.stage_stable[start - 1]) --start;
  // The last map is trivially stable; under a stationary tail at least one
  // stable stage must be witnessed by a following map.
  if (s.tail_mode() == TailMode::Stationary && (count < 2 || start + 2 > count))
    throw Error(ErrorKind::NotStabilized,
                "stability is not witnessed within the provided prefix; supply more levels");
  t.start_index = start;
  t.stable = true;
  for (std::size_t k = start; k < count; ++k) {
    const auto& d = s.decompositions()[k];
    t.stages.push_back({k, d, image_summands(d)});
  }
  return t;
}

ConnectingMatrix connecting_matrix(const TelescopedSystem& t, std::size_t level) {
  if (level + 1 >= t.stages.size())
    throw Error(ErrorKind::OutOfRange, "level " + std::to_string(level) + " has no successor");
  const auto& src = t.stages[level];
  const auto& dst = t.stages[level + 1];
  const RegularMap& alpha = t.base.maps()[src.index];
  const auto& rows = src.summands.summands;
  const auto& cols = dst.summands.summands;

  auto index_of = [](const std::vector<Summand>& ss, const VertexSet& q) -> std::ptrdiff_t {
    for (std::size_t i = 0; i < ss.size(); ++i)
      if (ss[i].q == q) return static_cast<std::ptrdiff_t>(i);
    return -1;
  };

  ConnectingMatrix m{std::vector<std::vector<int>>(rows.size(), std::vector<int>(cols.size(), 0))};
  std::vector<bool> seen(cols.size(), false);
  for (const auto& eta : dst.decomposition.components) {
    const RegularMap eta_map = assemble(eta.dom(), eta.cod(), {eta});
    const auto parts = decompose_or_throw(compose(alpha, eta_map), src.index);
    std::vector<int> counts(rows.size(), 0);
    for (const auto& delta : parts.components) {
      auto i = index_of(rows, delta.q());
      if (i < 0)
        throw Error(ErrorKind::InconsistentJClass,
                    "composite projection at level " + std::to_string(level) +
                        " is not a projection of the source level");
      ++counts[static_cast<std::size_t>(i)];
    }
    const auto j = static_cast<std::size_t>(index_of(cols, eta.q()));
    if (seen[j]) {
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (m.n[i][j] != counts[i])
          throw Error(ErrorKind::InconsistentJClass,
                      "components sharing target summand " + std::to_string(j) + " at level " +
                          std::to_string(level + 1) + " disagree on multiplicities");
      }
    } else {
      seen[j] = true;
      for (std::size_t i = 0; i < rows.size(); ++i) m.n[i][j] = counts[i];
    }
  }
  return m;
}

std::vector<bool> same_level_maximality(const std::vector<BratteliNode>& level) {
  std::vector<bool> flags(level.size(), true);
  for (std::size_t i = 0; i < level.size(); ++i) {
    if (!level[i].q) throw Error(ErrorKind::MissingQ, "node without compression projection");
    for (std::size_t j = 0; j < level.size(); ++j) {
      if (!level[j].q) throw Error(ErrorKind::MissingQ, "node without compression projection");
      if (i != j && level[i].q->is_subset_of(*level[j].q) && !(*level[i].q == *level[j].q))
        flags[i] = false;
    }
  }
  return flags;
}

std::optional<std::size_t> detect_stationary(const BratteliDiagram& d) {
  const std::size_t count = d.transitions.size();
  if (count < 2) return std::nullopt;
  auto flags = [&](std::size_t level) {
    std::vector<bool> f;
    for (const auto& node : d.levels[level]) f.push_back(node.maximal);
    return f;
  };
  const auto& last = d.transitions.back();
  const auto last_flags = flags(d.levels.size() - 1);
  auto matches = [&](std::size_t k) {
    return d.transitions[k] == last && flags(k) == last_flags && flags(k + 1) == last_flags;
  };
  if (!matches(count - 2)) return std::nullopt;
  std::size_t from = count - 2;
  while (from > 0 && matches(from - 1)) --from;
  return from;
}

BratteliDiagram bratteli(const TelescopedSystem& t) {
  BratteliDiagram d;
  for (const auto& stage : t.stages) {
    std::vector<BratteliNode> level;
    for (const Summand& s : stage.summands.summands) level.push_back({s.dim, s.q, true});
    const auto flags = same_level_maximality(level);
    for (std::size_t i = 0; i < level.size(); ++i) level[i].maximal = flags[i];
    d.levels.push_back(std::move(level));
  }
  for (std::size_t k = 0; k + 1 < t.stages.size(); ++k) {
    ConnectingMatrix m = connecting_matrix(t, k);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      long long sum = 0;
      for (std::size_t i = 0; i < m.rows(); ++i)
        sum += static_cast<long long>(m.n[i][j]) * d.levels[k][i].dim;
      if (sum > d.levels[k + 1][j].dim)
        throw Error(ErrorKind::InconsistentJClass,
                    "dimension recursion violated at level " + std::to_string(k + 1));
    }
    d.transitions.push_back(std::move(m));
  }
  if (t.base.tail_mode() == TailMode::Stationary) d.stationary_from = detect_stationary(d);
  return d;
}

std::string UnitalityReport::diagnostic() const {
  if (unital) return "all connecting maps are unital";
  std::ostringstream os;
  for (std::size_t k = 0; k < defects.size(); ++k) {
    const auto& x = defects[k];
    if (k) os << "; ";
    os << "level " << x.level << " -> " << x.level + 1 << ", column " << x.column
       << ": sum n_ij*dim_i = " << x.column_sum << " != dim " << x.dim;
  }
  return os.str();
}

UnitalityReport unitality_report(const BratteliDiagram& d) {
  UnitalityReport r;
  for (std::size_t k = 0; k < d.transitions.size(); ++k) {
    const auto& m = d.transitions[k];
    for (std::size_t j = 0; j < m.cols(); ++j) {
      long long sum = 0;
      for (std::size_t i = 0; i < m.rows(); ++i)
        sum += static_cast<long long>(m.n[i][j]) * d.levels[k][i].dim;
      if (sum != d.levels[k + 1][j].dim) {
        r.unital = false;
        r.defects.push_back({k, j, sum, d.levels[k + 1][j].dim});
      }
    }
  }
  return r;
}

UnitalityReport unitality_report(const TelescopedSystem& t) {
  if (t.base.tail_mode() != TailMode::Stationary)
    throw Error(ErrorKind::Indeterminate,
                "essential unitality is undecidable for a finite tail");
  return unitality_report(bratteli(t));
}

double limit_norm(const TelescopedSystem& t, std::size_t stage, const SpaceElement& a,
                  double tol) {
  const auto& spaces = t.base.spaces();
  const auto& maps = t.base.maps();
  if (stage >= spaces.size() || !(a.space() == spaces[stage]))
    throw Error(ErrorKind::DomainMismatch, "element is not in space " + std::to_string(stage));
  if (stage == maps.size()) return element_norm(a, tol);

  SpaceElement x = a;
  std::size_t k = stage;
  for (; k < t.start_index; ++k) x = apply(maps[k], x);
  const auto& stages = t.stages;
  const std::size_t level = k - t.start_index;
  const double value = compression_norm(stages[level].decomposition, x, tol);
  if (level + 1 < stages.size()) {
    const double next = compression_norm(stages[level + 1].decomposition, apply(maps[k], x), tol);
    if (std::abs(next - value) > 2.0 * tol * std::max(1.0, value))
      throw Error(ErrorKind::NumericMismatch,
                  "norm changed under the next stage: telescoped map is not isometric");
  }
  return value;
}

DirectSystem triangular_system_from_bratteli(const std::vector<std::vector<int>>& dims,
                                             const std::vector<ConnectingMatrix>& transitions) {
  if (dims.empty() || transitions.size() + 1 != dims.size())
    throw Error(ErrorKind::ShapeMismatch, "need one transition between consecutive levels");
  for (const auto& level : dims) {
    if (level.empty()) throw Error(ErrorKind::ShapeMismatch, "empty level");
    for (int d : level)
      if (d < 1) throw Error(ErrorKind::OutOfRange, "summand dimensions must be positive");
  }
  for (std::size_t k = 0; k < transitions.size(); ++k) {
    const auto& m = transitions[k];
    if (m.rows() != dims[k].size() || m.cols() != dims[k + 1].size())
      throw Error(ErrorKind::ShapeMismatch, "transition " + std::to_string(k) + " has wrong shape");
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (m.n[i].size() != m.cols())
        throw Error(ErrorKind::ShapeMismatch, "ragged transition " + std::to_string(k));
      if (std::all_of(m.n[i].begin(), m.n[i].end(), [](int x) { return x == 0; }))
        throw Error(ErrorKind::ZeroRow, "transition " + std::to_string(k) + " has zero row " +
                                            std::to_string(i));
      for (int x : m.n[i])
        if (x < 0) throw Error(ErrorKind::OutOfRange, "negative multiplicity");
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
      long long sum = 0;
      bool any = false;
      for (std::size_t i = 0; i < m.rows(); ++i) {
        sum += static_cast<long long>(m.n[i][j]) * dims[k][i];
        any = any || m.n[i][j] != 0;
      }
      if (!any)
        throw Error(ErrorKind::ZeroColumn, "transition " + std::to_string(k) +
                                               " has zero column " + std::to_string(j));
      if (sum != dims[k + 1][j])
        throw Error(ErrorKind::NonUnitalColumn, "transition " + std::to_string(k) + " column " +
                                                    std::to_string(j) + " is not unital");
    }
  }

  // Close the last level with one more map: repeat the last transition when
  // it is square, otherwise embed identically.
  std::vector<std::vector<int>> levels = dims;
  std::vector<ConnectingMatrix> steps = transitions;
  const auto& tail = levels.back();
  ConnectingMatrix closing;
  if (!steps.empty() && steps.back().rows() == tail.size() && steps.back().cols() == tail.size()) {
    closing = steps.back();
  } else {
    closing.n.assign(tail.size(), std::vector<int>(tail.size(), 0));
    for (std::size_t i = 0; i < tail.size(); ++i) closing.n[i][i] = 1;
  }
  std::vector<int> next(closing.cols(), 0);
  for (std::size_t j = 0; j < closing.cols(); ++j)
    for (std::size_t i = 0; i < closing.rows(); ++i) next[j] += closing.n[i][j] * tail[i];
  levels.push_back(std::move(next));
  steps.push_back(std::move(closing));

  std::vector<DigraphSpace> spaces;
  std::vector<std::vector<int>> offsets;  // 1-based first vertex of each block
  for (const auto& level : levels) {
    long long total = 0;
    std::vector<int> off;
    for (int d : level) {
      off.push_back(static_cast<int>(total) + 1);
      total += d;
    }
    if (total > kMaxTriangularSize)
      throw Error(ErrorKind::Overflow, "level of total size " + std::to_string(total) +
                                           " exceeds " + std::to_string(kMaxTriangularSize));
    int size = 1;
    while (size < total) size *= 2;
    spaces.push_back(upper_triangular(size));
    offsets.push_back(std::move(off));
  }

  std::vector<RegularMap> maps;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const auto& m = steps[k];
    ImageTable table;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      int pos = offsets[k + 1][j];
      for (std::size_t i = 0; i < m.rows(); ++i) {
        const int base = offsets[k][i];
        const int d = levels[k][i];
        for (int copy = 0; copy < m.n[i][j]; ++copy, pos += d) {
          for (int u = 0; u < d; ++u)
            for (int v = u; v < d; ++v) table[{base + u, base + v}].push_back({pos + u, pos + v});
        }
      }
    }
    maps.push_back(make_regular_map(spaces[k], spaces[k + 1], table));
  }

  const bool stationary = transitions.size() >= 2 && transitions.back() == transitions[transitions.size() - 2];
  return make_system(std::move(spaces), std::move(maps),
                     stationary ? TailMode::Stationary : TailMode::Finite);
}

}  // namespace afenv
