#include "doctest.h"

#include <algorithm>

#include "asymspec/bracket.hpp"
#include "asymspec/error.hpp"
#include "support.hpp"

using namespace asymspec;

TEST_CASE("binomials match Pascal's triangle") {
  const auto p = oracle::pascal(60);
  for (unsigned n = 0; n <= 60; ++n)
    for (unsigned k = 0; k <= n; ++k) CHECK(binom(n, k) == p[n][k]);
  CHECK_THROWS_AS(binom(61, 3), Error);
  CHECK_THROWS_AS(binom(5, 6), Error);
}

TEST_CASE("direct and recurrence brackets agree with the oracle sum") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const auto t = testing::random(rng, 4, 0.6), s = testing::random(rng, 4, 0.6);
    for (unsigned n = 0; n <= 8; ++n) {
      const auto expect = oracle::bracket(testing::to_oracle(t), testing::to_oracle(s), n);
      const double scale = 1.0 + oracle::max_abs(expect);
      CHECK(testing::max_diff(bracket_direct(t, s, n), expect) <= 1e-11 * scale);
      CHECK(testing::max_diff(bracket_recurrence(t, s, n), expect) <= 1e-11 * scale);
    }
  }
}

TEST_CASE("low-order brackets") {
  std::mt19937_64 rng(32);
  const auto t = testing::random(rng, 3), s = testing::random(rng, 3);
  CHECK(bracket_recurrence(t, s, 0) == ComplexMatrix::identity(3));
  CHECK(testing::max_diff(bracket_recurrence(t, s, 1),
                          oracle::lin(testing::to_oracle(t), 1.0, testing::to_oracle(s), -1.0)) <= 1e-15);
  // (T - S)^[2] = T^2 - 2TS + S^2
  const auto T = testing::to_oracle(t), S = testing::to_oracle(s);
  auto expect = oracle::lin(oracle::matmul(T, T), 1.0, oracle::matmul(T, S), -2.0);
  expect = oracle::lin(expect, 1.0, oracle::matmul(S, S), 1.0);
  CHECK(testing::max_diff(bracket_direct(t, s, 2), expect) <= 1e-14);
}

TEST_CASE("identities") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 5; ++trial) {
    const auto t = testing::random(rng, 3, 0.5), s = testing::random(rng, 3, 0.5),
               p = testing::random(rng, 3, 0.5);
    for (unsigned n = 0; n <= 6; ++n) {
      CHECK(bracket_compose_check(t, s, p, n) <= 1e-11);
      CHECK(bracket_swap_check(t, s, n) <= 1e-11);
    }
  }
  // Commuting operands collapse the bracket to an ordinary power.
  const auto a = ComplexMatrix::diagonal({0.3, Complex(0.1, 0.2), -0.4});
  const auto b = ComplexMatrix::diagonal({0.1, 0.5, Complex(0, -0.2)});
  for (unsigned n = 0; n <= 10; ++n)
    CHECK(testing::max_diff(bracket_recurrence(a, b, n), oracle::power(testing::to_oracle(a - b), n)) <= 1e-14);
}

TEST_CASE("bracket argument checks") {
  CHECK_THROWS_AS(bracket_direct(ComplexMatrix(2), ComplexMatrix(3), 1), Error);
  CHECK_THROWS_AS(bracket_direct(ComplexMatrix(2), ComplexMatrix(2), kMaxBracketOrder + 1), Error);
  const auto g = default_grid();
  CHECK_THROWS_AS(bracket_sequence(FamilySpec::jordan(2, 0.0), FamilySpec::jordan(2, 0.0), g, 0), Error);
  CHECK_THROWS_AS(bracket_sequence(FamilySpec::jordan(2, 0.0), FamilySpec::jordan(2, 0.0), g, 41), Error);
}

TEST_CASE("bracket sequence of a nilpotent difference") {
  const auto g = default_grid();
  const auto t = FamilySpec::diag_expr({"1", "2", "3"});
  const auto seq = bracket_sequence(t, t, g, 10);
  CHECK(seq.norms.size() == 10);
  for (double a : seq.norms) CHECK(a == 0.0);
  CHECK(root_limit(seq, 1e-3).kind == RootLimit::Kind::Zero);

  const auto pw = power_sequence(FamilySpec::jordan(3, 0.0), g, 10);
  CHECK(pw.norms[0] == doctest::Approx(1.0));
  CHECK(pw.norms[1] == doctest::Approx(1.0));
  for (unsigned n = 3; n <= 10; ++n) CHECK(pw.norms[n - 1] == 0.0);
}

TEST_CASE("root limit classification") {
  CHECK(root_limit(std::vector<double>{1, .9, .8, .7, .6, .5, .4, .3}, 0.1).kind ==
        RootLimit::Kind::Inconclusive);
  CHECK(root_limit(std::vector<double>{1, 1, 1, 1, .01, .01, .009, .008}, 0.05).kind ==
        RootLimit::Kind::Zero);
  // Roots growing by more than 10% are not settling at zero.
  CHECK(root_limit(std::vector<double>{1, 1, 1, 1, .001, .002, .004, .008}, 0.05).kind ==
        RootLimit::Kind::Inconclusive);
  const auto pos = root_limit(std::vector<double>{2, 1, .6, .52, .5, .5, .5, .5}, 0.05);
  CHECK(pos.kind == RootLimit::Kind::Positive);
  CHECK(pos.estimate == doctest::Approx(0.5));
  CHECK_THROWS_AS(root_limit(std::vector<double>{1, 1, 1}, 0.1), Error);
  CHECK(default_root_tol(default_grid(), 4) >= 1e-3);
}

TEST_CASE("bracket CSV") {
  const auto seq = power_sequence(FamilySpec::diag_expr({"0.5"}), default_grid(), 8);
  const auto csv = to_csv(seq);
  CHECK(csv.rfind("n,a_n,root\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
}
