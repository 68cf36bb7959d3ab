#include "doctest.h"

#include <cmath>
#include <limits>

#include "asymspec/error.hpp"
#include "asymspec/family.hpp"
#include "support.hpp"

using namespace asymspec;

TEST_CASE("geometric grid") {
  const auto g = default_grid();
  REQUIRE(g.size() == 20);
  CHECK(g.tail_window() == 6);
  CHECK(g.samples()[0] == 1.0);
  CHECK(g.samples()[19] == std::ldexp(1.0, -19));
  CHECK(g.tail().size() == 6);
  CHECK(g.tail()[0] == std::ldexp(1.0, -14));
  CHECK_THROWS_AS(hgrid_geometric(1.0, 1.0, 10, 3), Error);
  CHECK_THROWS_AS(hgrid_geometric(1.5, 0.5, 10, 3), Error);
  CHECK_THROWS_AS(hgrid_geometric(1.0, 0.5, 3, 2), Error);
  CHECK_THROWS_AS(hgrid_geometric(1.0, 0.5, 10, 0), Error);
  CHECK_THROWS_AS(hgrid_geometric(1.0, 0.5, 10, 11), Error);
  CHECK_THROWS_AS(HGrid({1.0, 0.5, 0.5, 0.1}, 2), Error);
}

TEST_CASE("node kinds evaluate as written") {
  const double h = 0.25;
  CHECK(family_eval(FamilySpec::jordan(3, 2.0), h) == ComplexMatrix::jordan(3, 2.0));
  const auto d = family_eval(FamilySpec::diag_expr({"1", "2 + h", "h^2 * i"}), h);
  CHECK(d(1, 1) == Complex(2.25, 0));
  CHECK(d(2, 2) == Complex(0, 0.0625));
  CHECK(d(0, 1) == Complex(0, 0));

  std::mt19937_64 rng(5);
  const auto a = testing::random(rng, 3), b = testing::random(rng, 3);
  const auto fa = FamilySpec::constant(a), fb = FamilySpec::constant(b);
  CHECK(testing::max_diff(family_eval(FamilySpec::h_scaled(fa), h),
                          oracle::lin(testing::to_oracle(a), h, testing::to_oracle(a), 0.0)) == 0.0);
  CHECK(testing::max_diff(family_eval(fa + fb, h),
                          oracle::lin(testing::to_oracle(a), 1.0, testing::to_oracle(b), 1.0)) <= 1e-15);
  CHECK(testing::max_diff(family_eval(fa * fb, h),
                          oracle::matmul(testing::to_oracle(a), testing::to_oracle(b))) <= 1e-14);
}

TEST_CASE("seeded random is reproducible and bounded") {
  const auto a = seeded_random_matrix(4, 42, 0.5), b = seeded_random_matrix(4, 42, 0.5);
  CHECK(a == b);
  CHECK(a != seeded_random_matrix(4, 43, 0.5));
  for (const Complex& z : a.entries()) {
    CHECK(std::abs(z.real()) <= 0.5);
    CHECK(std::abs(z.imag()) <= 0.5);
  }
  CHECK(family_eval(FamilySpec::seeded_random(4, 42, 0.5), 0.3) == a);
}

TEST_CASE("family validation") {
  CHECK_THROWS_AS(FamilySpec::diag_expr({"z"}), Error);
  CHECK_THROWS_AS(FamilySpec::sum({FamilySpec::jordan(2, 0.0), FamilySpec::jordan(3, 0.0)}), Error);
  CHECK_THROWS_AS(family_eval(FamilySpec::jordan(2, 0.0), 0.0), Error);
  CHECK_THROWS_AS(family_eval(FamilySpec::jordan(2, 0.0), 1.5), Error);
  try {
    family_eval(FamilySpec::diag_expr({"1 / (h - 0.5)"}), 0.5);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ExprError);
  }
}

TEST_CASE("samples follow grid order") {
  const auto g = hgrid_geometric(1.0, 0.5, 6, 2);
  const auto s = family_samples(FamilySpec::diag_expr({"h"}), g);
  REQUIRE(s.size() == 6);
  for (std::size_t j = 0; j < 6; ++j) CHECK(s[j](0, 0) == Complex(g.samples()[j], 0));
}

TEST_CASE("tail lim sup is the tail maximum") {
  const auto g = hgrid_geometric(1.0, 0.5, 8, 4);
  const std::vector<double> v{9, 9, 9, 9, 1, 3, 2, 1};
  const auto t = tail_limsup(v, g);
  CHECK(t.value == 3.0);
  CHECK(t.window_values == std::vector<double>{1, 3, 2, 1});
  CHECK_THROWS_AS(tail_limsup(std::vector<double>{1, 2}, g), Error);
}

TEST_CASE("trend classification") {
  const auto g = default_grid();
  std::vector<double> shrinking, growing, flat, noisy;
  for (double h : g.samples()) {
    shrinking.push_back(h);
    growing.push_back(1.0 / h);
    flat.push_back(2.0);
  }
  for (std::size_t j = 0; j < g.size(); ++j) noisy.push_back(1e-3 * ((j % 2) ? 1.0 : 2.0));
  CHECK(tail_limsup(shrinking, g).trend == Trend::Decreasing);
  CHECK(tail_limsup(growing, g).trend == Trend::Increasing);
  CHECK(tail_limsup(flat, g).trend == Trend::Flat);
  CHECK(tail_limsup(noisy, g).trend == Trend::Flat);
  std::vector<double> wobble;
  for (double h : g.samples()) wobble.push_back(3.0 + h * std::cos(1.0 / h));
  const auto w = tail_limsup(wobble, g);
  CHECK(w.trend != Trend::Increasing);
  CHECK(std::abs(w.value - 3.0) <= g.tail()[0]);
  auto singular = flat;
  singular.back() = std::numeric_limits<double>::infinity();
  CHECK(tail_limsup(singular, g).trend == Trend::Increasing);

  CHECK(vanishes(shrinking, g, 1e-3));
  CHECK_FALSE(vanishes(flat, g, 1e-3));
  CHECK(default_vanish_tol(flat) == doctest::Approx(3e-4));
}

TEST_CASE("scalar traces run in grid order and tag failures") {
  const auto g = default_grid();
  const auto v = scalar_trace([](double h) { return 2.0 * h; }, g);
  for (std::size_t j = 0; j < g.size(); ++j) CHECK(v[j] == 2.0 * g.samples()[j]);
  try {
    scalar_trace([](double h) -> double {
      if (h < 0.01) throw Error(ErrorCode::BadParameter, "boom");
      return h;
    }, g);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("at h=") != std::string::npos);
  }
}
