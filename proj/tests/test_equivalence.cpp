#include "doctest.h"

#include "asymspec/equivalence.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace asymspec;

namespace {

FamilySpec random_const(std::uint64_t seed, double scale = 1.0) {
  return FamilySpec::seeded_random(3, seed, scale);
}

}  // namespace

TEST_CASE("difference trace is the per-h spectral norm") {
  const auto g = default_grid();
  const auto s = random_const(1), b = random_const(2);
  const auto t = s + FamilySpec::h_scaled(b);
  const auto trace = difference_trace(s, t, g);
  const double nb = oracle::spectral_norm(testing::to_oracle(seeded_random_matrix(3, 2, 1.0)));
  for (std::size_t j = 0; j < g.size(); ++j)
    CHECK(trace[j] == doctest::Approx(g.samples()[j] * nb).epsilon(1e-9));
}

TEST_CASE("asymptotic equivalence") {
  const auto g = default_grid();
  const auto s = random_const(3);
  CHECK(asymptotic_equiv(s, s + FamilySpec::h_scaled(random_const(4)), g).holds());
  const auto far = asymptotic_equiv(s, s + random_const(5, 0.1), g);
  CHECK(far.result == VerdictResult::Fails);
  CHECK(far.kind == VerdictKind::AsymptoticEquiv);
  REQUIRE(far.tail.has_value());
  CHECK(far.tail->value > far.tol);
}

TEST_CASE("asymptotic commuting") {
  const auto g = default_grid();
  const auto a = FamilySpec::diag_expr({"1", "h", "2 + h"});
  const auto b = FamilySpec::diag_expr({"h^2", "3", "i"});
  CHECK(asymptotic_commuting(a, b, g).holds());
  CHECK(asymptotic_commuting(random_const(6), random_const(7), g).result == VerdictResult::Fails);
  // A commutator that is O(h) still vanishes.
  CHECK(asymptotic_commuting(a, b + FamilySpec::h_scaled(random_const(8)), g).holds());
}

TEST_CASE("quasinilpotent equivalence") {
  const auto g = default_grid();
  const auto n = FamilySpec::jordan(3, 0.0);
  const auto a = FamilySpec::jordan(3, 1.0) + FamilySpec::constant(-1.0 * ComplexMatrix::jordan(3, 0.0));
  // A and A + N with N nilpotent and commuting with A.
  const auto v = quasinilpotent_equiv(a, a + n, g);
  CHECK(v.holds());
  CHECK(v.both_directions);
  CHECK(v.directions.size() == 2);
  CHECK_FALSE(asymptotic_equiv(a, a + n, g).holds());

  const auto half = FamilySpec::diag_expr({"0.5", "0.5", "0.5"});
  const auto zero = FamilySpec::constant(ComplexMatrix::zero(3));
  const auto f = quasinilpotent_equiv(half, zero, g);
  CHECK(f.result == VerdictResult::Fails);
  CHECK(f.directions[0].limit.kind == RootLimit::Kind::Positive);
  CHECK(f.directions[0].limit.estimate == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("asymptotic quasinilpotence") {
  const auto g = default_grid();
  const auto j = FamilySpec::jordan(4, 0.0) + FamilySpec::h_scaled(FamilySpec::seeded_random(4, 42));
  const auto v = is_asymptotic_quasinilpotent(j, g);
  CHECK(v.holds());
  CHECK(v.kind == VerdictKind::QuasinilpotentSingle);
  CHECK(v.directions.size() == 1);
  CHECK(is_asymptotic_quasinilpotent(FamilySpec::diag_expr({"0.5"}), g).result == VerdictResult::Fails);
}

TEST_CASE("verdict JSON") {
  const auto g = default_grid();
  const auto v = quasinilpotent_equiv(FamilySpec::diag_expr({"0.5"}), FamilySpec::diag_expr({"0"}), g, 10);
  const auto j = nlohmann::json::parse(to_json(v));
  CHECK(j["kind"] == "QuasinilpotentEquiv");
  CHECK(j["result"] == "Fails");
  CHECK(j["both_directions"] == true);
  CHECK(j["evidence_summary"]["brackets"].contains("s_minus_t"));
  CHECK(j["evidence_summary"]["brackets"]["s_minus_t"]["n_max"] == 10);
  const auto e = nlohmann::json::parse(to_json(asymptotic_equiv(FamilySpec::diag_expr({"h"}),
                                                                FamilySpec::diag_expr({"0"}), g)));
  CHECK(e["result"] == "Holds");
  CHECK(e["evidence_summary"]["trace"]["trend"] == "Decreasing");
}
