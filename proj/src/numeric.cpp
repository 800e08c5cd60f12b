#include "afenv/numeric.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace afenv {

std::string_view to_string(NormMethod m) noexcept {
  return m == NormMethod::ExactSvd ? "exact_svd" : "power_iteration";
}

ComplexMatrix realize(const SpaceElement& a) {
  const Eigen::Index n = a.space().size();
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (const auto& [e, v] : a.coeffs()) m(e.row - 1, e.col - 1) = v;
  return m;
}

SpaceElement apply(const RegularMap& f, const SpaceElement& a) {
  if (!(a.space() == f.dom()))
    throw Error(ErrorKind::DomainMismatch, "element does not belong to the map's domain");
  SpaceElement out(f.cod());
  for (const auto& [e, v] : a.coeffs())
    for (const MatrixUnit& u : f.images(e)) out.add(u, v);
  return out;
}

namespace {

template <class Svd>
NormReport singular_pair_report(const ComplexMatrix& m, const Svd& svd) {
  NormReport r;
  r.method = NormMethod::ExactSvd;
  r.value = svd.singularValues()(0);
  const auto u = svd.matrixU().col(0);
  const auto v = svd.matrixV().col(0);
  r.residual = std::max((m * v - r.value * u).norm(), (m.adjoint() * u - r.value * v).norm());
  return r;
}

NormReport exact_norm(const ComplexMatrix& m) {
  constexpr int kOptions = Eigen::ComputeThinU | Eigen::ComputeThinV;
  return singular_pair_report(m, Eigen::JacobiSVD<ComplexMatrix>(m, kOptions));
}

}  // namespace

NormReport operator_norm(const ComplexMatrix& m, double tol) {
  if (!m.allFinite()) throw Error(ErrorKind::NonFinite, "matrix has non-finite entries");
  if (m.size() == 0) return {};
  if (std::max(m.rows(), m.cols()) <= kExactSvdLimit) return exact_norm(m);

  const ComplexMatrix gram = m.adjoint() * m;
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd v(gram.rows());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = {gauss(rng), gauss(rng)};
  v.normalize();

  constexpr int kMaxIterations = 20000;
  for (int it = 0; it < kMaxIterations; ++it) {
    Eigen::VectorXcd w = gram * v;
    const double lambda = v.dot(w).real();
    if (lambda <= 0.0) return {};  // zero matrix
    const double sigma = std::sqrt(lambda);
    // With u = M v / sigma the singular-pair residual is |G v - lambda v| / sigma.
    const double residual = (w - lambda * v).norm() / sigma;
    if (residual <= tol) return {sigma, NormMethod::PowerIteration, residual};
    v = w.normalized();
  }
  // Not converged: fall back to the full decomposition.
  constexpr int kOptions = Eigen::ComputeThinU | Eigen::ComputeThinV;
  return singular_pair_report(m, Eigen::BDCSVD<ComplexMatrix>(m, kOptions));
}

ComplexMatrix cycle_matrix(int m, bool truncated) {
  ComplexMatrix a = ComplexMatrix::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    a(i, i) = 1.0;
    if (i + 1 < m) a(i, i + 1) = 1.0;
  }
  if (!truncated) a(m - 1, 0) = -1.0;
  return a;
}

std::pair<double, double> cycle_norm_pair(int m) {
  if (m < 2) throw Error(ErrorKind::OutOfRange, "cycle length must be at least 2");
  using std::numbers::pi;
  return {2.0 * std::cos(pi / (2.0 * m)), 2.0 * std::cos(pi / (2.0 * m + 1.0))};
}

double compression_norm(const CompressionTypeDecomposition& d, const SpaceElement& a, double tol) {
  if (!(a.space() == d.dom))
    throw Error(ErrorKind::DomainMismatch, "element does not belong to the map's domain");
  const ComplexMatrix full = realize(a);
  double best = 0.0;
  for (const Summand& s : image_summands(d).summands) {
    const auto& ms = s.q.members();
    const auto k = static_cast<Eigen::Index>(ms.size());
    ComplexMatrix block(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j)
        block(i, j) = full(ms[static_cast<std::size_t>(i)] - 1, ms[static_cast<std::size_t>(j)] - 1);
    best = std::max(best, operator_norm(block, tol).value);
  }
  return best;
}

SpaceElement random_element(const DigraphSpace& s, std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  // Standard complex normal: real and imaginary parts N(0, 1/2).
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  SpaceElement a(s);
  for (const Edge& e : s.edges()) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    a.set(e, {re, im});
  }
  return a;
}

ProbeReport contractivity_probe(const RegularMap& f, int trials, std::uint64_t seed, double tol,
                                std::span<const SpaceElement> leading) {
  ProbeReport report;
  auto evaluate = [&](const SpaceElement& a) {
    const int index = report.evaluated++;
    const double in = element_norm(a, tol);
    const double out = element_norm(apply(f, a), tol);
    const double ratio = in > 0.0 ? out / in : (out > 0.0 ? INFINITY : 0.0);
    if (report.argmax < 0 || ratio > report.max_ratio) {
      report.max_ratio = ratio;
      report.argmax = index;
    }
    if (ratio > 1.0 + tol) report.violations.push_back(index);
  };
  for (const SpaceElement& a : leading) evaluate(a);
  for (int t = 0; t < trials; ++t)
    evaluate(random_element(f.dom(), seed, static_cast<std::uint64_t>(t)));
  return report;
}

}  // namespace afenv
