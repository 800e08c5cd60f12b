#ifndef AFENV_DIRECT_SYSTEM_HPP
#define AFENV_DIRECT_SYSTEM_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "afenv/digraph.hpp"
#include "afenv/regular_map.hpp"

namespace afenv {

/// `Stationary` means the last observed transition pattern repeats forever.
enum class TailMode { Finite, Stationary };

class DirectSystem {
public:
  const std::vector<DigraphSpace>& spaces() const noexcept { return spaces_; }
  const std::vector<RegularMap>& maps() const noexcept { return maps_; }
  TailMode tail_mode() const noexcept { return tail_; }
  /// decompositions()[k] splits maps()[k].
  const std::vector<CompressionTypeDecomposition>& decompositions() const noexcept {
    return decompositions_;
  }

private:
  friend DirectSystem make_system(std::vector<DigraphSpace>, std::vector<RegularMap>, TailMode);

  std::vector<DigraphSpace> spaces_;
  std::vector<RegularMap> maps_;
  TailMode tail_ = TailMode::Finite;
  std::vector<CompressionTypeDecomposition> decompositions_;
};

/// Raised when a map of a system is not of compression type.
class NotCompressionTypeError : public Error {
public:
  NotCompressionTypeError(ErrorKind kind, std::size_t stage, CycleObstruction obstruction,
                          const std::string& message, std::string pointer = {})
      : Error(kind, message, std::move(pointer)), stage_(stage),
        obstruction_(std::move(obstruction)) {}

  /// Rewraps `inner` as `kind` (e.g. ValidationError) located at `pointer`.
  NotCompressionTypeError(ErrorKind kind, const NotCompressionTypeError& inner, std::string pointer)
      : Error(kind, inner, std::move(pointer)), stage_(inner.stage_),
        obstruction_(inner.obstruction_) {}

  std::size_t stage() const noexcept { return stage_; }
  const CycleObstruction& obstruction() const noexcept { return obstruction_; }

private:
  std::size_t stage_;
  CycleObstruction obstruction_;
};

/// Throws ShapeMismatch(k) and NotCompressionTypeError(k).
DirectSystem make_system(std::vector<DigraphSpace> spaces, std::vector<RegularMap> maps,
                         TailMode tail);

struct TelescopedStage {
  std::size_t index = 0;  // position in the base system
  CompressionTypeDecomposition decomposition;
  SummandStructure summands;
};

struct TelescopedSystem {
  DirectSystem base;
  std::size_t start_index = 0;
  std::vector<TelescopedStage> stages;
  /// stage_stable[k]: the compression projections of every available
  /// composite starting at base stage k coincide with those of map k.
  std::vector<bool> stage_stable;
  bool stable = false;
};

/// Drops the leading stages whose compression projections still shrink under
/// composition. Throws NotStabilized for a stationary tail that has no
/// stable stage witnessed by a later map.
TelescopedSystem telescope(const DirectSystem& s);

struct ConnectingMatrix {
  /// n[i][j]: multiplicity of source summand i inside target summand j.
  std::vector<std::vector<int>> n;

  std::size_t rows() const noexcept { return n.size(); }
  std::size_t cols() const noexcept { return n.empty() ? 0 : n.front().size(); }
  friend bool operator==(const ConnectingMatrix&, const ConnectingMatrix&) = default;
};

/// Multiplicities of the embedding of level `level` into level `level + 1`
/// (levels index TelescopedSystem::stages). Throws InconsistentJClass.
ConnectingMatrix connecting_matrix(const TelescopedSystem& t, std::size_t level);

struct BratteliNode {
  int dim = 0;
  /// Compression projection in the stage's domain; absent for diagrams read
  /// back from files.
  std::optional<VertexSet> q;
  bool maximal = true;
  friend bool operator==(const BratteliNode&, const BratteliNode&) = default;
};

struct BratteliDiagram {
  std::vector<std::vector<BratteliNode>> levels;
  std::vector<ConnectingMatrix> transitions;
  std::optional<std::size_t> stationary_from;
  friend bool operator==(const BratteliDiagram&, const BratteliDiagram&) = default;
};

/// A node is maximal unless its projection is properly contained in the
/// projection of another node of the same level. Throws MissingQ.
std::vector<bool> same_level_maximality(const std::vector<BratteliNode>& level);

/// First level from which every transition equals the last one and every
/// level carries the last level's maximality flags; needs two transitions.
std::optional<std::size_t> detect_stationary(const BratteliDiagram& d);

BratteliDiagram bratteli(const TelescopedSystem& t);

struct UnitalityDefect {
  std::size_t level = 0;  // transition from `level` to `level + 1`
  std::size_t column = 0;
  long long column_sum = 0;  // sum_i n_ij dim_i
  int dim = 0;               // dim_j at level + 1
};

struct UnitalityReport {
  bool unital = true;
  std::vector<UnitalityDefect> defects;
  std::string diagnostic() const;
};

UnitalityReport unitality_report(const BratteliDiagram& d);
/// Throws Indeterminate for a finite tail.
UnitalityReport unitality_report(const TelescopedSystem& t);
inline bool is_essentially_unital(const TelescopedSystem& t) { return unitality_report(t).unital; }

/// Norm of the image of a (an element of base space `stage`) in the limit.
/// Throws DomainMismatch, NumericMismatch.
double limit_norm(const TelescopedSystem& t, std::size_t stage, const SpaceElement& a,
                  double tol = 1e-9);

/// Realises a unital Bratteli pattern by block-diagonal compressions between
/// upper-triangular algebras T_{2^N}. dims[k][i] is the size of summand i at
/// level k; transitions[k] connects level k to k+1. One extra space is
/// appended after the last level so that every level is the image of a map.
/// Throws ZeroRow, ZeroColumn, NonUnitalColumn, ShapeMismatch, Overflow.
DirectSystem triangular_system_from_bratteli(const std::vector<std::vector<int>>& dims,
                                             const std::vector<ConnectingMatrix>& transitions);

inline constexpr int kMaxTriangularSize = 4096;

}  // namespace afenv

#endif  // AFENV_DIRECT_SYSTEM_HPP
