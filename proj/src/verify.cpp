#include "asymspec/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "asymspec/bracket.hpp"
#include "asymspec/equivalence.hpp"
#include "asymspec/error.hpp"
#include "asymspec/funcalc.hpp"
#include "asymspec/spectrum.hpp"
#include "json_util.hpp"

namespace asymspec {

bool VerifySuite::passed() const noexcept {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

bool VerifyReport::passed() const noexcept {
  return std::all_of(suites.begin(), suites.end(), [](const VerifySuite& s) { return s.passed(); });
}

namespace {

constexpr double kIdentityTol = 1e-9;
const Complex kScalarBase{0.7, 0.2};

class Checks {
public:
  explicit Checks(VerifySuite& suite) : suite_(suite) {}

  void at_most(std::string name, double value, double threshold) {
    suite_.checks.push_back({std::move(name), value, threshold, VerifyCheck::Relation::AtMost,
                             value <= threshold});
  }
  void at_least(std::string name, double value, double threshold) {
    suite_.checks.push_back({std::move(name), value, threshold, VerifyCheck::Relation::AtLeast,
                             value >= threshold});
  }
  void holds(std::string name, bool ok) { at_least(std::move(name), ok ? 1.0 : 0.0, 1.0); }

private:
  VerifySuite& suite_;
};

struct Context {
  std::uint64_t seed;
  HGrid grid = default_grid();

  std::uint64_t sub(std::uint64_t k) const { return seed * 1000003ULL + k; }
  ComplexMatrix random(std::size_t dim, std::uint64_t k, double scale = 1.0) const {
    return seeded_random_matrix(dim, sub(k), scale);
  }
  FamilySpec perturbation(std::size_t dim, std::uint64_t k, double scale = 1.0) const {
    return FamilySpec::h_scaled(FamilySpec::seeded_random(dim, sub(k), scale));
  }
};

double bracket_scale(const ComplexMatrix& t, const ComplexMatrix& s, unsigned n) {
  return std::max(1.0, std::pow(norm2(t) + norm2(s), double(n)));
}

FamilySpec scalar_family(std::size_t dim) {
  return FamilySpec::constant(ComplexMatrix::identity(dim) * kScalarBase);
}

// --- bracket calculus -------------------------------------------------------

void bracket_recurrence_suite(const Context& cx, Checks& c) {
  double worst = 0.0;
  for (std::uint64_t k = 0; k < 20; ++k) {
    const ComplexMatrix t = cx.random(4, 2 * k), s = cx.random(4, 2 * k + 1);
    for (unsigned n = 0; n <= 10; ++n) {
      const double r = norm2(sub(bracket_direct(t, s, n), bracket_recurrence(t, s, n)));
      worst = std::max(worst, r / bracket_scale(t, s, n));
    }
  }
  c.at_most("direct_vs_recurrence_relative", worst, kIdentityTol);
}

void bracket_composition_suite(const Context& cx, Checks& c) {
  double worst = 0.0;
  for (std::uint64_t k = 0; k < 10; ++k) {
    const ComplexMatrix t = cx.random(4, 3 * k), s = cx.random(4, 3 * k + 1),
                        p = cx.random(4, 3 * k + 2);
    for (unsigned n = 0; n <= 6; ++n) {
      const double sc = std::max(1.0, std::pow(norm2(t) + norm2(s) + 2.0 * norm2(p), double(n)));
      worst = std::max(worst, bracket_compose_check(t, s, p, n) / sc);
    }
  }
  c.at_most("composition_residual_relative", worst, kIdentityTol);
}

void bracket_swap_suite(const Context& cx, Checks& c) {
  double worst = 0.0;
  for (std::uint64_t k = 0; k < 10; ++k) {
    const ComplexMatrix t = cx.random(3, 2 * k), s = cx.random(3, 2 * k + 1);
    for (unsigned n = 0; n <= 6; ++n)
      worst = std::max(worst, bracket_swap_check(t, s, n) / bracket_scale(t, s, n));
  }
  c.at_most("swap_residual_relative", worst, kIdentityTol);
}

void commuting_collapse_suite(const Context& cx, Checks& c) {
  double worst = 0.0;
  for (std::uint64_t k = 0; k < 10; ++k) {
    const ComplexMatrix a = cx.random(4, 2 * k), b = cx.random(4, 2 * k + 1);
    std::vector<Complex> da, db;
    for (std::size_t i = 0; i < 4; ++i) {
      da.push_back(a(i, i));
      db.push_back(b(i, i));
    }
    const ComplexMatrix t = ComplexMatrix::diagonal(da), s = ComplexMatrix::diagonal(db);
    for (unsigned n = 0; n <= 10; ++n) {
      const double r = norm2(sub(bracket_direct(t, s, n), matrix_power(sub(t, s), n)));
      worst = std::max(worst, r / bracket_scale(t, s, n));
    }
  }
  c.at_most("bracket_minus_power_relative", worst, kIdentityTol);
}

// --- equivalence --------------------------------------------------------------

void equivalence_relation_suite(const Context& cx, Checks& c) {
  const FamilySpec s = scalar_family(4) + cx.perturbation(4, 1);
  const FamilySpec t = s + cx.perturbation(4, 2);
  const FamilySpec u = t + cx.perturbation(4, 3);
  const auto& g = cx.grid;
  c.holds("equiv_reflexive", asymptotic_equiv(s, s, g).holds());
  c.holds("equiv_symmetric", asymptotic_equiv(s, t, g).holds() && asymptotic_equiv(t, s, g).holds());
  c.holds("equiv_transitive", asymptotic_equiv(s, t, g).holds() && asymptotic_equiv(t, u, g).holds() &&
                                  asymptotic_equiv(s, u, g).holds());
  c.holds("qequiv_reflexive", quasinilpotent_equiv(s, s, g).holds());
  c.holds("qequiv_symmetric",
          quasinilpotent_equiv(s, t, g).holds() && quasinilpotent_equiv(t, s, g).holds());
  c.holds("qequiv_transitive", quasinilpotent_equiv(s, t, g).holds() &&
                                   quasinilpotent_equiv(t, u, g).holds() &&
                                   quasinilpotent_equiv(s, u, g).holds());
}

void equivalence_implies_qequiv_suite(const Context& cx, Checks& c) {
  int held = 0;
  constexpr int kPairs = 4;
  for (int k = 0; k < kPairs; ++k) {
    const FamilySpec s = scalar_family(4) + cx.perturbation(4, 10 + 2 * k);
    const FamilySpec t = s + cx.perturbation(4, 11 + 2 * k);
    held += asymptotic_equiv(s, t, cx.grid).holds() && quasinilpotent_equiv(s, t, cx.grid).holds();
  }
  c.at_least("pairs_holding", held, kPairs);
}

void boundedness_transfer_suite(const Context& cx, Checks& c) {
  const FamilySpec s = FamilySpec::constant(cx.random(4, 1));
  const FamilySpec t = s + cx.perturbation(4, 2);
  const NormBounds bs = quotient_norm_bounds(s, cx.grid), bt = quotient_norm_bounds(t, cx.grid);
  c.holds("pair_equivalent", asymptotic_equiv(s, t, cx.grid).holds());
  c.at_most("upper_bound_ratio", bt.upper / (2.0 * bs.upper + 1.0), 1.0);
}

void commutator_transfer_suite(const Context& cx, Checks& c) {
  const FamilySpec s = FamilySpec::constant(ComplexMatrix::diagonal({1.0, 2.0, Complex(0.0, 1.0)}));
  const FamilySpec t = s + cx.perturbation(3, 1);
  const FamilySpec u = FamilySpec::constant(ComplexMatrix::diagonal({-1.0, 0.5, 3.0}));
  c.holds("u_commutes_with_s", asymptotic_commuting(u, s, cx.grid).holds());
  c.holds("u_commutes_with_t", asymptotic_commuting(u, t, cx.grid).holds());
  c.holds("equivalent_pairs_commute", asymptotic_commuting(s, t, cx.grid).holds());
}

void power_commutator_suite(const Context& cx, Checks& c) {
  const FamilySpec s = FamilySpec::constant(ComplexMatrix::diagonal({1.0, -0.5, Complex(0.0, 0.8)}));
  const FamilySpec t = FamilySpec::constant(ComplexMatrix::diagonal({0.3, 1.2, -1.0})) +
                       cx.perturbation(3, 1);
  c.holds("pair_commutes", asymptotic_commuting(s, t, cx.grid).holds());
  for (unsigned n = 2; n <= 3; ++n) {
    const auto trace = scalar_trace(
        [&](double h) {
          const ComplexMatrix sh = family_eval(s, h), th = family_eval(t, h);
          return norm2(sub(matrix_power(mul(sh, th), n), mul(matrix_power(sh, n), matrix_power(th, n))));
        },
        cx.grid);
    c.holds("power_defect_vanishes_n" + std::to_string(n),
            vanishes(trace, cx.grid, default_vanish_tol(trace)));
  }
}

struct NilpotentPair {
  FamilySpec a;
  FamilySpec b;
  ComplexMatrix n;
};

// A = I + h N^2 and A + N with N^3 = 0: commuting, quasinilpotent equivalent.
NilpotentPair nilpotent_pair() {
  const ComplexMatrix n = ComplexMatrix::jordan(3, 0.0);
  const FamilySpec a = FamilySpec::constant(ComplexMatrix::identity(3)) +
                       FamilySpec::h_scaled(FamilySpec::constant(mul(n, n)));
  return {a, a + FamilySpec::constant(n), n};
}

void qequiv_stability_suite(const Context& cx, Checks& c) {
  const auto [s, t, n] = nilpotent_pair();
  // af lies in the commutant of N, so it commutes with both families.
  const FamilySpec af = FamilySpec::constant(add(ComplexMatrix::identity(3) * Complex(0.5),
                                                 mul(n, n) * Complex(0.3))) +
                        FamilySpec::h_scaled(FamilySpec::constant(n * Complex(0.2)));
  c.holds("pair_qequiv", quasinilpotent_equiv(s, t, cx.grid).holds());
  c.holds("sum_qequiv", quasinilpotent_equiv(s + af, t + af, cx.grid).holds());
  c.holds("product_qequiv", quasinilpotent_equiv(s * af, t * af, cx.grid).holds());
}

// --- spectrum -------------------------------------------------------------------

struct SpectrumRun {
  NormBounds bounds;
  ResolventField field;
  SpectrumEstimate estimate;
};

SpectrumRun spectrum_of(const FamilySpec& f, const HGrid& grid, std::optional<ComplexRegion> region) {
  SpectrumRun run;
  run.bounds = quotient_norm_bounds(f, grid);
  run.field = resolvent_norm_field(f, region ? *region : default_region(run.bounds), grid);
  run.estimate = spectrum_estimate(run.field, default_epsilon(run.bounds));
  return run;
}

FamilySpec diag_one_two() { return FamilySpec::diag_expr({"1", "2+h"}); }
ComplexRegion diag_region() { return {Complex(0.0, 0.0), 2.5, 101}; }

void quotient_bounds_suite(const Context& cx, Checks& c) {
  const ComplexMatrix a = cx.random(3, 1);
  const NormBounds cb = quotient_norm_bounds(FamilySpec::constant(a), cx.grid);
  c.at_most("constant_lower_error", std::abs(cb.lower - norm2(a)), 1e-12 * norm2(a));
  c.at_most("constant_upper_error", std::abs(cb.upper - norm2(a)), 1e-12 * norm2(a));
  const NormBounds db = quotient_norm_bounds(FamilySpec::diag_expr({"2+h"}), cx.grid);
  c.at_most("shifted_lower_error", std::abs(db.lower - 2.0), 1e-3);
  c.at_most("shifted_upper_error", std::abs(db.upper - 3.0), 1e-12);
}

void spectrum_bound_suite(const Context& cx, Checks& c) {
  const FamilySpec fixtures[] = {
      diag_one_two(),
      FamilySpec::jordan(4, 0.0) + cx.perturbation(4, 1),
  };
  for (std::size_t k = 0; k < std::size(fixtures); ++k) {
    const SpectrumRun run = spectrum_of(fixtures[k], cx.grid, std::nullopt);
    const ComplexRegion& r = run.field.region;
    const std::size_t res = r.resolution;
    const std::string tag = "fixture" + std::to_string(k) + "_";

    double worst_radius = 0.0;
    for (const Complex& z : run.estimate.flagged) worst_radius = std::max(worst_radius, std::abs(z));
    c.at_most(tag + "flagged_radius", worst_radius, run.bounds.upper + r.spacing());

    // Resolved points carry a resolved neighborhood of radius 0.5 / field.
    std::size_t open_violations = 0, floor_violations = 0;
    for (std::size_t iy = 0; iy < res; ++iy) {
      for (std::size_t ix = 0; ix < res; ++ix) {
        const double v = run.field.values[iy * res + ix];
        if (!std::isfinite(v)) continue;
        const Complex z = r.point(ix, iy);
        if (v < 1.0 / (std::abs(z) + run.bounds.upper)) ++floor_violations;
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            const long nx = long(ix) + dx, ny = long(iy) + dy;
            if (nx < 0 || ny < 0 || nx >= long(res) || ny >= long(res)) continue;
            if (std::abs(r.point(std::size_t(nx), std::size_t(ny)) - z) > 0.5 / v) continue;
            if (!std::isfinite(run.field.values[std::size_t(ny) * res + std::size_t(nx)]))
              ++open_violations;
          }
      }
    }
    c.at_most(tag + "openness_violations", double(open_violations), 0.0);
    c.at_most(tag + "nonvanishing_violations", double(floor_violations), 0.0);
  }
}

void spectrum_diag_suite(const Context& cx, Checks& c) {
  const ComplexRegion region = diag_region();
  const SpectrumRun run = spectrum_of(diag_one_two(), cx.grid, region);
  c.at_most("cluster_count_minus_two", std::abs(double(run.estimate.clusters.size()) - 2.0), 0.0);
  c.holds("centroids_at_one_and_two",
          match_clusters(run.estimate.clusters, std::vector<Complex>{1.0, 2.0}, region.spacing()));
  const SpectrumEstimate far =
      spectrum_estimate(resolvent_norm_field(diag_one_two(), {Complex(10.0, 0.0), 2.0, 21}, cx.grid),
                        default_epsilon(run.bounds));
  c.at_most("flags_outside_norm_disk", double(far.flagged.size()), 0.0);
}

void perturbation_invariance_suite(const Context& cx, Checks& c) {
  struct Fixture {
    const char* name;
    FamilySpec family;
    ComplexRegion region;
  };
  const Fixture fixtures[] = {
      {"diag_one_two", diag_one_two(), diag_region()},
      {"diag_real_imag", FamilySpec::constant(ComplexMatrix::diagonal({-1.0, Complex(0.0, 1.0)})),
       diag_region()},
      {"triangular", FamilySpec::constant(ComplexMatrix::from_rows(
                         {{0.5, 1.0, 0.0}, {0.0, -0.5, 1.0}, {0.0, 0.0, Complex(0.0, 1.5)}})),
       diag_region()},
  };
  std::uint64_t k = 0;
  for (const auto& f : fixtures) {
    const SpectrumRun base = spectrum_of(f.family, cx.grid, f.region);
    const FamilySpec perturbed = f.family + cx.perturbation(f.family.dim(), ++k);
    const SpectrumRun moved = spectrum_of(perturbed, cx.grid, f.region);
    c.holds(std::string(f.name) + "_clusters_agree",
            !base.estimate.clusters.empty() &&
                match_clusters(base.estimate.clusters, moved.estimate.clusters, f.region.spacing()));
  }
}

void series_transport_suite(const Context& cx, Checks& c) {
  const auto [s, t, n] = nilpotent_pair();
  const ComplexRegion region{Complex(1.0, 0.0), 1.5, 101};
  const SpectrumRun rs = spectrum_of(s, cx.grid, region), rt = spectrum_of(t, cx.grid, region);
  c.holds("pair_qequiv", quasinilpotent_equiv(s, t, cx.grid).holds());
  c.holds("clusters_agree", !rs.estimate.clusters.empty() &&
                                match_clusters(rs.estimate.clusters, rt.estimate.clusters,
                                               region.spacing()));
  constexpr double kDefectTol = 1e-6;
  int k = 0;
  for (Complex lambda : {Complex(2.5, 0.0), Complex(1.0, 1.2), Complex(-0.3, 0.0)}) {
    const SeriesResolvent sr = series_resolvent(s, t, lambda, cx.grid, 6, kDefectTol);
    const std::string tag = "lambda" + std::to_string(k++) + "_";
    const auto& d = sr.defects;
    c.holds(tag + "left_defect_vanishes", d.left.value <= kDefectTol && d.left.trend != Trend::Increasing);
    c.holds(tag + "right_defect_vanishes", d.right.value <= kDefectTol && d.right.trend != Trend::Increasing);
    double excess = 0.0;
    for (std::size_t m = 0; m < sr.term_norms.size(); ++m)
      excess = std::max(excess, sr.term_norms[m] - sr.term_envelope[m] * (1.0 + 1e-9));
    c.at_most(tag + "term_envelope_excess", excess, 0.0);
  }
}

void spectral_mapping_suite(const Context& cx, Checks& c) {
  const ContourSpec contour{Complex(1.5, 0.0), 2.0, kDefaultContourNodes};
  const SpectrumRun base = spectrum_of(diag_one_two(), cx.grid, diag_region());
  c.holds("contour_encloses",
          contour_encloses(enclosure_estimate(base.field, default_epsilon(base.bounds)), contour));

  const double e1 = std::exp(1.0), e2 = std::exp(2.0), es = (e2 - e1) / 40.0;
  struct Case {
    const char* name;
    const char* expr;
    ComplexRegion region;
  };
  const Case cases[] = {
      {"square", "z^2", {Complex(0.0, 0.0), 5.0, 101}},
      {"cube", "z^3", {Complex(0.0, 0.0), 10.0, 101}},
      {"exp", "exp(z)", {Complex((e1 + e2) / 2.0, 0.0), 50.0 * es, 101}},
  };
  for (const auto& k : cases) {
    const FuncExpr f = parse_expr(k.expr);
    std::vector<Complex> targets;
    for (const auto& cl : base.estimate.clusters) targets.push_back(eval_at(f, cl.centroid));
    const SpectrumRun mapped = spectrum_of(family_funcalc(diag_one_two(), f, contour), cx.grid, k.region);
    c.holds(std::string(k.name) + "_clusters_match",
            match_clusters(mapped.estimate.clusters, targets, k.region.spacing()));
  }
}

void quasinilpotent_spectrum_suite(const Context& cx, Checks& c) {
  const FamilySpec u = FamilySpec::jordan(4, 0.0) + cx.perturbation(4, 1);
  const SpectrumRun ru = spectrum_of(u, cx.grid, std::nullopt);
  c.holds("nilpotent_qnil_holds", is_asymptotic_quasinilpotent(u, cx.grid).holds());
  c.at_most("nilpotent_cluster_count_minus_one", std::abs(double(ru.estimate.clusters.size()) - 1.0), 0.0);
  c.holds("nilpotent_cluster_at_origin", match_clusters(ru.estimate.clusters, std::vector<Complex>{0.0},
                                                         ru.field.region.spacing()));

  const FamilySpec half = FamilySpec::diag_expr({"0.5"});
  const SpectrumRun rh = spectrum_of(half, cx.grid, std::nullopt);
  c.holds("half_qnil_fails",
          is_asymptotic_quasinilpotent(half, cx.grid).result == VerdictResult::Fails);
  c.holds("half_cluster_at_half", match_clusters(rh.estimate.clusters, std::vector<Complex>{0.5},
                                                  rh.field.region.spacing()));
}

ComplexMatrix taylor_exp(const ComplexMatrix& t) {
  ComplexMatrix acc = ComplexMatrix::identity(t.dim());
  ComplexMatrix term = acc;
  for (int k = 1; k < 40; ++k) {
    term = scale(mul(term, t), 1.0 / double(k));
    acc += term;
  }
  return acc;
}

void functional_calculus_suite(const Context& cx, Checks& c) {
  const ComplexMatrix d = ComplexMatrix::diagonal({1.0, 2.0});
  const ContourSpec around{Complex(1.5, 0.0), 2.0, kDefaultContourNodes};
  const FuncExpr z = parse_expr("z"), one = parse_expr("z^0"), ex = parse_expr("exp(z)");
  c.at_most("identity_error", sub(contour_funcalc(d, z, around), d).max_abs(), 1e-8);
  c.at_most("constant_error", sub(contour_funcalc(d, one, around), ComplexMatrix::identity(2)).max_abs(), 1e-8);
  c.at_most("exp_diag_error", sub(contour_funcalc(d, ex, around), taylor_exp(d)).max_abs(), 1e-6);

  ComplexMatrix m = cx.random(4, 1, 0.3);
  for (std::size_t i = 0; i + 1 < 4; ++i) m(i, i + 1) += 0.5;
  const ContourSpec wide{Complex(0.0, 0.0), 3.0, kDefaultContourNodes};
  const SpectrumRun rm = spectrum_of(FamilySpec::constant(m), cx.grid, std::nullopt);
  c.holds("nonnormal_contour_encloses",
          contour_encloses(enclosure_estimate(rm.field, default_epsilon(rm.bounds)), wide));
  c.at_most("exp_nonnormal_error", sub(contour_funcalc(m, ex, wide), taylor_exp(m)).max_abs(), 1e-6);

  const FuncExpr sq = parse_expr("z^2"), cube = parse_expr("z^3");
  ContourSpec coarse = wide;
  coarse.nodes = 128;
  c.at_most("node_doubling_change",
            sub(contour_funcalc(m, cube, coarse), contour_funcalc(m, cube, wide)).max_abs(), 1e-9);
  ContourSpec wider = wide;
  wider.radius = 4.0;
  c.at_most("radius_change", sub(contour_funcalc(m, cube, wide), contour_funcalc(m, cube, wider)).max_abs(), 1e-8);
  const ComplexMatrix fz = contour_funcalc(m, z, wide), fsq = contour_funcalc(m, sq, wide);
  c.at_most("homomorphism_error", sub(mul(fz, fsq), contour_funcalc(m, cube, wide)).max_abs(), 1e-7);
  const ComplexMatrix fex = contour_funcalc(m, ex, wide);
  c.at_most("commutation_error", sub(mul(fsq, fex), mul(fex, fsq)).max_abs(), 1e-8);
}

// --- resolvent identities ------------------------------------------------------

std::vector<ComplexMatrix> perturb(const std::vector<ComplexMatrix>& rf, const HGrid& grid,
                                   const ComplexMatrix& b) {
  std::vector<ComplexMatrix> out;
  const auto hs = grid.samples();
  for (std::size_t j = 0; j < rf.size(); ++j) out.push_back(add(rf[j], scale(b, hs[j])));
  return out;
}

// Left and right defect traces of a candidate family, per grid sample.
std::pair<std::vector<double>, std::vector<double>> defect_traces(const FamilySpec& sf,
                                                                  const std::vector<ComplexMatrix>& rf,
                                                                  Complex lambda, const HGrid& grid) {
  const auto hs = grid.samples();
  std::vector<double> left(hs.size()), right(hs.size());
  for (std::size_t j = 0; j < hs.size(); ++j) {
    const ComplexMatrix a = shifted(family_eval(sf, hs[j]), lambda);
    const ComplexMatrix id = ComplexMatrix::identity(a.dim());
    left[j] = norm2(sub(mul(a, rf[j]), id));
    right[j] = norm2(sub(mul(rf[j], a), id));
  }
  return {left, right};
}

bool defects_vanish(const FamilySpec& sf, const std::vector<ComplexMatrix>& rf, Complex lambda,
                    const HGrid& grid) {
  const auto [left, right] = defect_traces(sf, rf, lambda, grid);
  return vanishes(left, grid, default_vanish_tol(left)) &&
         vanishes(right, grid, default_vanish_tol(right));
}

void resolvent_identity_suite(const Context& cx, Checks& c) {
  const auto& g = cx.grid;
  const FamilySpec s = FamilySpec::constant(cx.random(4, 1, 0.5)) + cx.perturbation(4, 2, 0.5);
  const NormBounds b = quotient_norm_bounds(s, g);
  const Complex lambda = std::polar(1.5 * b.upper + 0.1, 0.3);
  const Complex mu = std::polar(1.2 * b.upper + 0.1, 2.0);
  const auto rl = exact_resolvents(s, lambda, g), rm = exact_resolvents(s, mu, g);
  const double nl = resolvent_at(s, lambda, g).tail.value, nm = resolvent_at(s, mu, g).tail.value;
  const double sc = std::max(1.0, nl * nm * (1.0 + std::abs(mu - lambda)));

  c.at_most("equation_exact", resolvent_equation_residual(s, lambda, mu, g).value, kIdentityTol * sc);
  c.at_most("equation_same_point", resolvent_equation_residual(s, lambda, lambda, g).value, kIdentityTol * sc);
  c.at_most("commutation_exact", resolvent_commutation_residual(s, lambda, mu, g).value, kIdentityTol * sc);
  c.at_most("operator_commutation_exact", resolvent_commutation_residual(s, lambda, g).value,
            kIdentityTol * std::max(1.0, nl * b.upper));

  const auto pl = perturb(rl, g, cx.random(4, 3)), pm = perturb(rm, g, cx.random(4, 4));
  const auto eq = resolvent_equation_trace(pl, pm, lambda, mu);
  c.holds("equation_perturbed_vanishes", vanishes(eq, g, default_vanish_tol(eq)));
  std::vector<double> comm(pl.size()), diff(pl.size()), sep(pl.size());
  for (std::size_t j = 0; j < pl.size(); ++j) {
    comm[j] = norm2(sub(mul(pl[j], pm[j]), mul(pm[j], pl[j])));
    diff[j] = norm2(sub(pl[j], rl[j]));
    sep[j] = norm2(sub(rl[j], rm[j]));
  }
  c.holds("commutation_perturbed_vanishes", vanishes(comm, g, default_vanish_tol(comm)));

  c.holds("perturbed_defects_vanish", defects_vanish(s, pl, lambda, g));
  c.holds("candidates_agree", vanishes(diff, g, default_vanish_tol(diff)));
  c.at_least("separation_tail", tail_limsup(sep, g).value, 1e-6);

  const FamilySpec t = s + cx.perturbation(4, 5);
  c.holds("transfer_defects_vanish", defects_vanish(t, rl, lambda, g));
}

struct SuiteDef {
  const char* name;
  void (*run)(const Context&, Checks&);
};

constexpr SuiteDef kSuites[] = {
    {"bracket_recurrence", bracket_recurrence_suite},
    {"bracket_composition", bracket_composition_suite},
    {"bracket_swap", bracket_swap_suite},
    {"commuting_collapse", commuting_collapse_suite},
    {"equivalence_relation", equivalence_relation_suite},
    {"equivalence_implies_qequiv", equivalence_implies_qequiv_suite},
    {"boundedness_transfer", boundedness_transfer_suite},
    {"commutator_transfer", commutator_transfer_suite},
    {"power_commutators", power_commutator_suite},
    {"qequiv_stability", qequiv_stability_suite},
    {"quotient_bounds", quotient_bounds_suite},
    {"spectrum_bound", spectrum_bound_suite},
    {"spectrum_diag", spectrum_diag_suite},
    {"perturbation_invariance", perturbation_invariance_suite},
    {"series_transport", series_transport_suite},
    {"spectral_mapping", spectral_mapping_suite},
    {"quasinilpotent_spectrum", quasinilpotent_spectrum_suite},
    {"functional_calculus", functional_calculus_suite},
    {"resolvent_identities", resolvent_identity_suite},
};

}  // namespace

std::vector<std::string> verify_suite_names() {
  std::vector<std::string> out;
  for (const auto& s : kSuites) out.emplace_back(s.name);
  return out;
}

VerifyReport run_verify(std::uint64_t seed, std::string_view only) {
  if (!only.empty() &&
      std::none_of(std::begin(kSuites), std::end(kSuites), [&](const SuiteDef& s) { return only == s.name; }))
    throw Error(ErrorCode::BadParameter, "unknown verify suite '" + std::string(only) + "'");

  const Context cx{seed};
  VerifyReport report;
  report.seed = seed;
  for (const auto& def : kSuites) {
    if (!only.empty() && only != def.name) continue;
    VerifySuite suite{def.name, {}};
    Checks checks(suite);
    try {
      def.run(cx, checks);
    } catch (const std::exception& e) {
      checks.holds(std::string("error: ") + e.what(), false);
    }
    report.suites.push_back(std::move(suite));
  }
  return report;
}

std::string to_json(const VerifyReport& report) {
  nlohmann::json suites = nlohmann::json::array();
  for (const auto& s : report.suites) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : s.checks) {
      checks.push_back({{"name", c.name},
                        {"value", detail::number(c.value)},
                        {"threshold", detail::number(c.threshold)},
                        {"relation", c.relation == VerifyCheck::Relation::AtMost ? "<=" : ">="},
                        {"passed", c.passed}});
    }
    suites.push_back({{"name", s.name}, {"passed", s.passed()}, {"checks", std::move(checks)}});
  }
  nlohmann::json out = {{"seed", report.seed}, {"passed", report.passed()}, {"suites", std::move(suites)}};
  return out.dump(2);
}

}  // namespace asymspec
