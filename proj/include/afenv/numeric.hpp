#ifndef AFENV_NUMERIC_HPP
#define AFENV_NUMERIC_HPP

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "afenv/digraph.hpp"
#include "afenv/regular_map.hpp"

namespace afenv {

using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kDefaultTol = 1e-9;
/// Largest dimension handled by a full SVD; bigger matrices use power
/// iteration on the Gram matrix.
inline constexpr Eigen::Index kExactSvdLimit = 64;

enum class NormMethod { ExactSvd, PowerIteration };
std::string_view to_string(NormMethod m) noexcept;

struct NormReport {
  double value = 0.0;
  NormMethod method = NormMethod::ExactSvd;
  /// max(|M v - s u|, |M* u - s v|) for the returned singular pair (u, v).
  double residual = 0.0;
};

/// n x n matrix of a with entry (i,j) = coefficient of e_ij.
ComplexMatrix realize(const SpaceElement& a);

/// Linear extension of the image table. Throws DomainMismatch.
SpaceElement apply(const RegularMap& f, const SpaceElement& a);

/// Largest singular value. Throws NonFinite.
NormReport operator_norm(const ComplexMatrix& m, double tol = kDefaultTol);

inline double element_norm(const SpaceElement& a, double tol = kDefaultTol) {
  return operator_norm(realize(a), tol).value;
}

/// The m x m matrix with ones on the diagonal and superdiagonal and -1 in
/// the bottom-left corner; `truncated` replaces the corner by 0.
ComplexMatrix cycle_matrix(int m, bool truncated);

/// (2 cos(pi/2m), 2 cos(pi/(2m+1))): norms of cycle_matrix(m, false) and
/// cycle_matrix(m, true).
std::pair<double, double> cycle_norm_pair(int m);

/// max over the distinct compression projections Q_k of |Q_k a Q_k|.
double compression_norm(const CompressionTypeDecomposition& d, const SpaceElement& a,
                        double tol = kDefaultTol);

/// Element with independent standard complex Gaussian coefficients on every
/// edge, seeded from (seed, index) only.
SpaceElement random_element(const DigraphSpace& s, std::uint64_t seed, std::uint64_t index);

struct ProbeReport {
  int evaluated = 0;
  double max_ratio = 0.0;
  int argmax = -1;
  /// Trial indices with |f(a)| > (1 + tol) |a|.
  std::vector<int> violations;

  bool violated() const noexcept { return !violations.empty(); }
};

/// Evaluates |f(a)| / |a| on the `leading` elements (trial indices 0..k-1)
/// followed by `trials` random elements.
ProbeReport contractivity_probe(const RegularMap& f, int trials, std::uint64_t seed,
                                double tol = kDefaultTol,
                                std::span<const SpaceElement> leading = {});

}  // namespace afenv

#endif  // AFENV_NUMERIC_HPP
