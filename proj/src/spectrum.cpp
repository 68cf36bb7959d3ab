#include "asymspec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>

#include "asymspec/error.hpp"
#include "asymspec/parallel.hpp"
#include "json_util.hpp"

namespace asymspec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double inverse_norm(const Inversion& inv) { return inv.singular() ? kInf : norm2(*inv.inverse); }

TailEstimate tail_of(const std::vector<double>& trace, const HGrid& grid) {
  return tail_limsup(trace, grid);
}

void require_grid_length(std::size_t n, const HGrid& grid, const char* what) {
  if (n != grid.size())
    throw Error(ErrorCode::LengthMismatch, std::string(what) + ": " + std::to_string(n) +
                                               " matrices for " + std::to_string(grid.size()) +
                                               " grid samples");
}

std::string point_str(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

}  // namespace

Complex ComplexRegion::point(std::size_t ix, std::size_t iy) const noexcept {
  const double m = double(resolution / 2);
  const double s = spacing();
  return center + Complex((double(ix) - m) * s, (double(iy) - m) * s);
}

void validate(const ComplexRegion& region) {
  if (!(region.half_width > 0.0) || !std::isfinite(region.half_width))
    throw Error(ErrorCode::BadParameter, "region half_width must be positive");
  if (region.resolution < kMinResolution || region.resolution % 2 == 0)
    throw Error(ErrorCode::BadParameter, "region resolution must be odd and >= 21");
  if (!std::isfinite(region.center.real()) || !std::isfinite(region.center.imag()))
    throw Error(ErrorCode::BadParameter, "region center must be finite");
}

bool ResolventSample::resolved() const noexcept { return std::isfinite(tail.value); }

ResolventSample resolvent_at(const FamilySpec& sf, Complex lambda, const HGrid& grid) {
  const auto samples = grid.samples();
  ResolventSample out;
  out.inversions.resize(samples.size());
  out.norms.resize(samples.size());
  parallel_for(samples.size(), [&](std::size_t j) {
    out.inversions[j] = solve_inverse(shifted(family_eval(sf, samples[j]), lambda));
    out.norms[j] = inverse_norm(out.inversions[j]);
  });
  out.tail = tail_of(out.norms, grid);
  return out;
}

DefectPair resolvent_defect(const FamilySpec& sf, const std::vector<ComplexMatrix>& rf,
                            Complex lambda, const HGrid& grid) {
  require_grid_length(rf.size(), grid, "resolvent_defect");
  const auto samples = grid.samples();
  std::vector<double> left(samples.size()), right(samples.size());
  parallel_for(samples.size(), [&](std::size_t j) {
    const ComplexMatrix a = shifted(family_eval(sf, samples[j]), lambda);
    if (rf[j].dim() != a.dim())
      throw Error(ErrorCode::DimensionMismatch, "resolvent candidate has the wrong dimension");
    const ComplexMatrix id = ComplexMatrix::identity(a.dim());
    left[j] = norm2(sub(mul(a, rf[j]), id));
    right[j] = norm2(sub(mul(rf[j], a), id));
  });
  return {tail_of(left, grid), tail_of(right, grid)};
}

ResolventField resolvent_norm_field(const FamilySpec& sf, const ComplexRegion& region,
                                    const HGrid& grid) {
  validate(region);
  std::vector<ComplexMatrix> tail;
  for (double h : grid.tail()) tail.push_back(family_eval(sf, h));

  ResolventField field;
  field.region = region;
  const std::size_t res = region.resolution;
  field.values.assign(res * res, 0.0);
  parallel_for(res * res, [&](std::size_t idx) {
    const Complex lambda = region.point(idx % res, idx / res);
    double worst = 0.0;
    for (const ComplexMatrix& m : tail) {
      worst = std::max(worst, inverse_norm(solve_inverse(shifted(m, lambda))));
      if (std::isinf(worst)) break;
    }
    field.values[idx] = worst;
  });
  return field;
}

SpectrumEstimate spectrum_estimate(const ResolventField& field, double epsilon) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::BadParameter, "epsilon must be positive");
  const ComplexRegion& region = field.region;
  const std::size_t res = region.resolution;
  if (field.values.size() != res * res)
    throw Error(ErrorCode::LengthMismatch, "field does not match its region");

  const double threshold = 1.0 / epsilon;
  std::vector<char> flag(res * res, 0);
  SpectrumEstimate est;
  est.epsilon = epsilon;
  for (std::size_t idx = 0; idx < flag.size(); ++idx) {
    if (field.values[idx] >= threshold) {
      flag[idx] = 1;
      est.flagged.push_back(region.point(idx % res, idx / res));
    }
  }

  std::vector<char> seen(res * res, 0);
  for (std::size_t start = 0; start < flag.size(); ++start) {
    if (!flag[start] || seen[start]) continue;
    std::vector<std::size_t> members;
    std::deque<std::size_t> queue{start};
    seen[start] = 1;
    while (!queue.empty()) {
      const std::size_t idx = queue.front();
      queue.pop_front();
      members.push_back(idx);
      const long ix = long(idx % res), iy = long(idx / res);
      for (long dy = -1; dy <= 1; ++dy) {
        for (long dx = -1; dx <= 1; ++dx) {
          const long nx = ix + dx, ny = iy + dy;
          if (nx < 0 || ny < 0 || nx >= long(res) || ny >= long(res)) continue;
          const std::size_t n = std::size_t(ny) * res + std::size_t(nx);
          if (flag[n] && !seen[n]) {
            seen[n] = 1;
            queue.push_back(n);
          }
        }
      }
    }
    SpectrumCluster c;
    c.cell_count = members.size();
    Complex sum{0.0, 0.0};
    for (std::size_t idx : members) sum += region.point(idx % res, idx / res);
    c.centroid = sum / double(members.size());
    for (std::size_t idx : members)
      c.radius = std::max(c.radius, std::abs(region.point(idx % res, idx / res) - c.centroid));
    est.clusters.push_back(c);
  }
  std::sort(est.clusters.begin(), est.clusters.end(), [](const auto& a, const auto& b) {
    if (a.centroid.real() != b.centroid.real()) return a.centroid.real() < b.centroid.real();
    return a.centroid.imag() < b.centroid.imag();
  });
  return est;
}

NormBounds quotient_norm_bounds(const FamilySpec& sf, const HGrid& grid) {
  const std::vector<double> norms =
      scalar_trace([&](double h) { return norm2(family_eval(sf, h)); }, grid);
  return {tail_of(norms, grid).value, *std::max_element(norms.begin(), norms.end())};
}

double default_epsilon(const NormBounds& bounds) {
  return bounds.upper > 0.0 ? 1e-3 * bounds.upper : 1e-3;
}

ComplexRegion default_region(const NormBounds& bounds) {
  return {Complex(0.0, 0.0), bounds.upper > 0.0 ? 1.25 * bounds.upper : 1.0, kDefaultResolution};
}

std::vector<ComplexMatrix> exact_resolvents(const FamilySpec& sf, Complex lambda,
                                            const HGrid& grid) {
  ResolventSample rs = resolvent_at(sf, lambda, grid);
  if (!rs.resolved())
    throw Error(ErrorCode::UnresolvedPoint,
                "lambda = " + point_str(lambda) + " is singular in the tail window");
  std::vector<ComplexMatrix> out;
  out.reserve(rs.inversions.size());
  for (auto& inv : rs.inversions)
    out.push_back(inv.singular() ? ComplexMatrix::zero(sf.dim()) : std::move(*inv.inverse));
  return out;
}

std::vector<double> resolvent_equation_trace(const std::vector<ComplexMatrix>& rl,
                                             const std::vector<ComplexMatrix>& rm, Complex lambda,
                                             Complex mu) {
  if (rl.size() != rm.size())
    throw Error(ErrorCode::LengthMismatch, "resolvent families differ in length");
  std::vector<double> out(rl.size());
  parallel_for(rl.size(), [&](std::size_t j) {
    out[j] = norm2(sub(sub(rl[j], rm[j]), scale(mul(rl[j], rm[j]), mu - lambda)));
  });
  return out;
}

TailEstimate resolvent_equation_residual(const FamilySpec& sf, Complex lambda, Complex mu,
                                         const HGrid& grid) {
  const auto rl = exact_resolvents(sf, lambda, grid);
  const auto rm = exact_resolvents(sf, mu, grid);
  return tail_of(resolvent_equation_trace(rl, rm, lambda, mu), grid);
}

TailEstimate resolvent_commutation_residual(const FamilySpec& sf, Complex lambda, Complex mu,
                                            const HGrid& grid) {
  const auto rl = exact_resolvents(sf, lambda, grid);
  const auto rm = exact_resolvents(sf, mu, grid);
  std::vector<double> trace(rl.size());
  parallel_for(rl.size(), [&](std::size_t j) {
    trace[j] = norm2(sub(mul(rl[j], rm[j]), mul(rm[j], rl[j])));
  });
  return tail_of(trace, grid);
}

TailEstimate resolvent_commutation_residual(const FamilySpec& sf, Complex lambda,
                                            const HGrid& grid) {
  const auto rl = exact_resolvents(sf, lambda, grid);
  const auto samples = grid.samples();
  std::vector<double> trace(rl.size());
  parallel_for(rl.size(), [&](std::size_t j) {
    const ComplexMatrix s = family_eval(sf, samples[j]);
    trace[j] = norm2(sub(mul(s, rl[j]), mul(rl[j], s)));
  });
  return tail_of(trace, grid);
}

SeriesResolvent series_resolvent(const FamilySpec& sf, const FamilySpec& tf, Complex lambda,
                                 const HGrid& grid, unsigned n_terms, double tol) {
  if (sf.dim() != tf.dim())
    throw Error(ErrorCode::DimensionMismatch, "series_resolvent: families differ in dimension");
  if (n_terms > kMaxSeriesTerms)
    throw Error(ErrorCode::OutOfRange, "n_terms must be <= 30");
  const auto rt = exact_resolvents(tf, lambda, grid);
  const auto samples = grid.samples();
  const std::size_t terms = n_terms + 1;

  SeriesResolvent out;
  out.candidates.assign(samples.size(), ComplexMatrix::zero(sf.dim()));
  std::vector<std::vector<double>> term_by_h(samples.size(), std::vector<double>(terms));
  std::vector<std::vector<double>> env_by_h(samples.size(), std::vector<double>(terms));
  parallel_for(samples.size(), [&](std::size_t j) {
    const ComplexMatrix s = family_eval(sf, samples[j]);
    const ComplexMatrix t = family_eval(tf, samples[j]);
    const double r_norm = norm2(rt[j]);
    ComplexMatrix d = ComplexMatrix::identity(s.dim());
    ComplexMatrix r_pow = rt[j];
    ComplexMatrix acc = ComplexMatrix::zero(s.dim());
    for (std::size_t n = 0; n < terms; ++n) {
      const ComplexMatrix term = mul(d, r_pow);
      acc += term;
      term_by_h[j][n] = norm2(term);
      env_by_h[j][n] = norm2(d) * std::pow(r_norm, double(n + 1));
      if (n + 1 < terms) {
        d = sub(mul(s, d), mul(d, t));
        r_pow = mul(r_pow, rt[j]);
      }
    }
    out.candidates[j] = std::move(acc);
  });

  std::vector<double> trace(samples.size());
  for (std::size_t n = 0; n < terms; ++n) {
    for (std::size_t j = 0; j < samples.size(); ++j) trace[j] = term_by_h[j][n];
    out.term_norms.push_back(tail_of(trace, grid).value);
    for (std::size_t j = 0; j < samples.size(); ++j) trace[j] = env_by_h[j][n];
    out.term_envelope.push_back(tail_of(trace, grid).value);
  }
  out.truncation_warning = n_terms > 0 && out.term_norms.back() > tol;
  out.defects = resolvent_defect(sf, out.candidates, lambda, grid);
  return out;
}

namespace {

template <class Pos>
bool match_points(const std::vector<SpectrumCluster>& a, const std::vector<Complex>& b,
                  double distance, Pos pos) {
  if (a.size() != b.size()) return false;
  std::vector<char> used(b.size(), 0);
  for (const auto& c : a) {
    std::size_t best = b.size();
    double best_d = kInf;
    for (std::size_t k = 0; k < b.size(); ++k) {
      const double d = std::abs(pos(c) - b[k]);
      if (!used[k] && d <= distance && d < best_d) {
        best = k;
        best_d = d;
      }
    }
    if (best == b.size()) return false;
    used[best] = 1;
  }
  return true;
}

}  // namespace

bool match_clusters(const std::vector<SpectrumCluster>& a, const std::vector<Complex>& targets,
                    double distance) {
  return match_points(a, targets, distance, [](const SpectrumCluster& c) { return c.centroid; });
}

bool match_clusters(const std::vector<SpectrumCluster>& a, const std::vector<SpectrumCluster>& b,
                    double distance) {
  std::vector<Complex> targets;
  for (const auto& c : b) targets.push_back(c.centroid);
  return match_clusters(a, targets, distance);
}

std::string to_csv(const ResolventField& field) {
  const ComplexRegion& region = field.region;
  const std::size_t res = region.resolution;
  std::string out = "re,im,field_value\n";
  char buf[160];
  for (std::size_t idx = 0; idx < field.values.size(); ++idx) {
    const Complex z = region.point(idx % res, idx / res);
    const double v = field.values[idx];
    if (std::isinf(v))
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,inf\n", z.real(), z.imag());
    else
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", z.real(), z.imag(), v);
    out += buf;
  }
  return out;
}

std::string to_json(const SpectrumEstimate& est) {
  nlohmann::json clusters = nlohmann::json::array();
  for (const auto& c : est.clusters) {
    clusters.push_back({{"centroid_re", detail::number(c.centroid.real())},
                        {"centroid_im", detail::number(c.centroid.imag())},
                        {"radius", detail::number(c.radius)},
                        {"cell_count", c.cell_count}});
  }
  nlohmann::json out = {{"epsilon", detail::number(est.epsilon)}, {"clusters", std::move(clusters)}};
  return out.dump(2);
}

}  // namespace asymspec
