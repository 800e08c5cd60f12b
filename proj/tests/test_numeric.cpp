#include <doctest.h>

#include <cmath>
#include <random>

#include "afenv/numeric.hpp"
#include "fixtures.hpp"
#include "support.hpp"

using namespace afenv;

namespace {

ComplexMatrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = {n(rng), n(rng)};
  return m;
}

}  // namespace

TEST_CASE("realize") {
  const Digraph t2 = upper_triangular(2);
  ComplexMatrix e12 = ComplexMatrix::Zero(2, 2);
  e12(0, 1) = 1.0;
  CHECK(realize(unit_element(t2, {1, 2})) == e12);
  CHECK(realize(SpaceElement(t2)) == ComplexMatrix::Zero(2, 2));

  const auto o = std::get<CycleObstruction>(decide_compression_type(testing::cycle_truncation(3)));
  const ComplexMatrix w = realize(o.witness);
  // Up to relabelling the witness is the 3x3 cycle pattern.
  CHECK(operator_norm(w).value == doctest::Approx(operator_norm(cycle_matrix(3, false)).value));
  ComplexMatrix expected(3, 3);
  expected << 1, 1, 0, 0, 1, 1, -1, 0, 1;
  CHECK(cycle_matrix(3, false) == expected);
}

TEST_CASE("apply") {
  const RegularMap f = testing::doubling_map(3);
  const SpaceElement img = apply(f, unit_element(f.dom(), {2, 3}));
  CHECK(img.coeffs().size() == 2);
  CHECK(img.at({2, 3}) == std::complex<double>(1.0));
  CHECK(img.at({4, 5}) == std::complex<double>(1.0));

  std::mt19937_64 rng(1);
  const SpaceElement a = testing::gaussian_element(rng, f.dom());
  const SpaceElement b = testing::gaussian_element(rng, f.dom());
  CHECK(apply(identity_map(f.dom()), a) == a);
  CHECK((realize(apply(f, a + b)) - realize(apply(f, a) + apply(f, b))).norm() < 1e-12);
  CHECK((realize(apply(f, a)) - testing::oracle_image(f, a)).norm() < 1e-12);
  try {
    apply(f, SpaceElement(f.cod()));
    FAIL("expected DomainMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DomainMismatch);
  }
}

TEST_CASE("operator_norm on known matrices") {
  CHECK(operator_norm(ComplexMatrix::Identity(2, 2)).value == doctest::Approx(1.0));
  CHECK(operator_norm(cycle_matrix(3, false)).value ==
        doctest::Approx(1.7320508075688772).epsilon(1e-12));
  CHECK(operator_norm(cycle_matrix(3, true)).value ==
        doctest::Approx(1.8019377358048383).epsilon(1e-12));
  CHECK(operator_norm(ComplexMatrix::Zero(3, 3)).value == 0.0);
  ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
  bad(0, 1) = std::nan("");
  try {
    operator_norm(bad);
    FAIL("expected NonFinite");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonFinite);
  }
}

TEST_CASE("operator_norm agrees with the eigenvalue oracle on both kernels") {
  std::mt19937_64 rng(2);
  for (int size : {1, 3, 10, 64, 65, 100, 150}) {
    const ComplexMatrix m = random_matrix(rng, size, size);
    const NormReport r = operator_norm(m);
    CHECK(r.method == (size <= kExactSvdLimit ? NormMethod::ExactSvd : NormMethod::PowerIteration));
    CHECK(r.value == doctest::Approx(testing::oracle_norm(m)).epsilon(1e-9));
    CHECK(r.residual <= 1e-9 * std::max(1.0, r.value));
  }
}

TEST_CASE("operator_norm is submultiplicative") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = testing::uniform(rng, 1, 12);
    const ComplexMatrix a = random_matrix(rng, n, n), b = random_matrix(rng, n, n);
    CHECK(operator_norm(a * b).value <= operator_norm(a).value * operator_norm(b).value + 1e-9);
  }
}

TEST_CASE("realize is injective") {
  std::mt19937_64 rng(8);
  const Digraph g = cycle_digraph(4);
  for (int trial = 0; trial < 20; ++trial) {
    const SpaceElement a = testing::gaussian_element(rng, g);
    SpaceElement b = a;
    b.add(g.edges()[testing::uniform(rng, 0, static_cast<int>(g.edge_count()) - 1)], 0.5);
    CHECK(realize(a) != realize(b));
  }
}

TEST_CASE("cycle_norm_pair") {
  const auto [c3, t3] = cycle_norm_pair(3);
  CHECK(c3 == doctest::Approx(1.7320508075688772).epsilon(1e-14));
  CHECK(t3 == doctest::Approx(1.8019377358048383).epsilon(1e-14));
  const auto [c2, t2] = cycle_norm_pair(2);
  CHECK(c2 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(t2 == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-14));
  double last = t2 / c2;
  for (int m = 2; m <= 12; ++m) {
    const auto [c, t] = cycle_norm_pair(m);
    CHECK(t > c);
    CHECK(std::abs(operator_norm(cycle_matrix(m, false)).value - c) <= 1e-9);
    CHECK(std::abs(operator_norm(cycle_matrix(m, true)).value - t) <= 1e-9);
    if (m > 2) CHECK(t / c < last);
    last = t / c;
  }
  CHECK(last < 1.01);
  try {
    cycle_norm_pair(1);
    FAIL("expected OutOfRange");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutOfRange);
  }
}

TEST_CASE("compression_norm") {
  const RegularMap f = testing::doubling_map(3);
  const auto d = std::get<CompressionTypeDecomposition>(decide_compression_type(f));
  SpaceElement a = unit_element(f.dom(), {1, 2}) + unit_element(f.dom(), {2, 3});
  CHECK(compression_norm(d, a) == doctest::Approx(1.0));
  CHECK(compression_norm(d, unit_element(f.dom(), {1, 3})) == 0.0);

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const Digraph dom = testing::random_digraph(rng, testing::uniform(rng, 1, 6), 0.4);
    const RegularMap g = testing::random_compression_map(rng, dom, 12);
    const auto dg = std::get<CompressionTypeDecomposition>(decide_compression_type(g));
    const SpaceElement x = testing::gaussian_element(rng, dom);
    CHECK(std::abs(compression_norm(dg, x) - testing::oracle_norm(testing::oracle_image(g, x))) <=
          1e-9 * std::max(1.0, compression_norm(dg, x)));
  }
}

TEST_CASE("random_element is reproducible") {
  const Digraph g = upper_triangular(4);
  CHECK(random_element(g, 3, 7) == random_element(g, 3, 7));
  CHECK_FALSE(random_element(g, 3, 7) == random_element(g, 3, 8));
  CHECK(random_element(g, 3, 7).coeffs().size() == g.edge_count());
}

TEST_CASE("contractivity_probe") {
  const RegularMap f = testing::doubling_map(3);
  const ProbeReport ok = contractivity_probe(f, 200, 1);
  CHECK(ok.evaluated == 200);
  CHECK_FALSE(ok.violated());
  CHECK(ok.max_ratio <= 1.0 + 1e-9);

  const RegularMap t = testing::cycle_truncation(3);
  const auto o = std::get<CycleObstruction>(decide_compression_type(t));
  const std::vector<SpaceElement> lead{o.witness};
  const ProbeReport bad = contractivity_probe(t, 50, 1, kDefaultTol, lead);
  CHECK(bad.evaluated == 51);
  REQUIRE(bad.violated());
  CHECK(bad.violations.front() == 0);
  CHECK(bad.max_ratio >= std::cos(M_PI / 7) / std::cos(M_PI / 6) - 1e-12);

  const RegularMap zero = assemble(f.dom(), f.cod(), {});
  const ProbeReport z = contractivity_probe(zero, 20, 1);
  CHECK(z.max_ratio == 0.0);

  const ProbeReport again = contractivity_probe(f, 200, 1);
  CHECK(again.max_ratio == ok.max_ratio);
  CHECK(again.argmax == ok.argmax);
}
