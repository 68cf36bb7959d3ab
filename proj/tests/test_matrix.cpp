#include "doctest.h"

#include <limits>

#include "asymspec/error.hpp"
#include "asymspec/matrix.hpp"
#include "support.hpp"

using namespace asymspec;

TEST_CASE("product matches naive triple loop") {
  std::mt19937_64 rng(11);
  for (std::size_t n : {1u, 2u, 5u, 8u}) {
    const auto a = testing::random(rng, n), b = testing::random(rng, n);
    const auto expect = oracle::matmul(testing::to_oracle(a), testing::to_oracle(b));
    CHECK(testing::max_diff(a * b, expect) <= 1e-13);
  }
}

TEST_CASE("power by squaring equals repeated product") {
  std::mt19937_64 rng(12);
  const auto a = testing::random(rng, 4, 0.5);
  for (unsigned n : {0u, 1u, 2u, 7u, 12u})
    CHECK(testing::max_diff(matrix_power(a, n), oracle::power(testing::to_oracle(a), n)) <= 1e-12);
}

TEST_CASE("dimension mismatch is reported") {
  ComplexMatrix a(2), b(3);
  CHECK_THROWS_AS(add(a, b), Error);
  try {
    mul(a, b);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("constructors") {
  const auto j = ComplexMatrix::jordan(3, Complex(2, 1));
  CHECK(j(0, 0) == Complex(2, 1));
  CHECK(j(0, 1) == Complex(1, 0));
  CHECK(j(0, 2) == Complex(0, 0));
  CHECK(j(2, 1) == Complex(0, 0));
  const auto d = ComplexMatrix::diagonal({1.0, 2.0});
  CHECK(d(1, 1) == Complex(2, 0));
  CHECK(d(0, 1) == Complex(0, 0));
  CHECK(ComplexMatrix::from_rows({{1.0, 2.0}, {3.0, 4.0}})(1, 0) == Complex(3, 0));
  CHECK(shifted(d, 5.0) == ComplexMatrix::diagonal({4.0, 3.0}));
}

TEST_CASE("spectral norm agrees with Jacobi on the Hermitian embedding") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const auto a = testing::random(rng, n);
    const double expect = oracle::spectral_norm(testing::to_oracle(a));
    const auto est = operator_norm(a);
    CHECK(est.converged);
    CHECK(est.value == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("spectral norm on known matrices") {
  CHECK(norm2(ComplexMatrix::zero(3)) == 0.0);
  CHECK(norm2(ComplexMatrix::identity(4)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(norm2(ComplexMatrix::diagonal({1.0, Complex(0, -3), 2.0})) == doctest::Approx(3.0).epsilon(1e-12));
  // Near-degenerate singular values: I + t E_13 has norms 1 and 1 + O(t).
  auto a = ComplexMatrix::identity(3);
  a(0, 2) = 1e-6;
  CHECK(norm2(a) == doctest::Approx(oracle::spectral_norm(testing::to_oracle(a))).epsilon(1e-12));
  // The nilpotent shift has norm 1 even though every eigenvalue is 0.
  CHECK(norm2(ComplexMatrix::jordan(5, 0.0)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("LU inverse agrees with Gauss-Jordan") {
  std::mt19937_64 rng(14);
  for (std::size_t n : {1u, 3u, 6u, 8u}) {
    const auto a = testing::random(rng, n);
    const auto inv = solve_inverse(a);
    REQUIRE_FALSE(inv.singular());
    CHECK(testing::max_diff(*inv.inverse, oracle::inverse(testing::to_oracle(a))) <= 1e-10);
    CHECK(inv.residual <= 1e-12);
    CHECK(inv.condition >= 1.0);
  }
}

TEST_CASE("singular matrices are flagged") {
  const auto inv = solve_inverse(ComplexMatrix::jordan(4, 0.0));
  CHECK(inv.singular());
  CHECK(inv.condition == std::numeric_limits<double>::infinity());
  const auto rows = ComplexMatrix::from_rows({{1.0, 2.0}, {2.0, 4.0}});
  CHECK(solve_inverse(rows).singular());
}

TEST_CASE("adjoint and max_abs") {
  const auto a = ComplexMatrix::from_rows({{Complex(1, 2), 3.0}, {0.0, Complex(0, -4)}});
  const auto h = a.adjoint();
  CHECK(h(0, 0) == Complex(1, -2));
  CHECK(h(1, 0) == Complex(3, 0));
  CHECK(h(1, 1) == Complex(0, 4));
  CHECK(a.max_abs() == 4.0);
}
