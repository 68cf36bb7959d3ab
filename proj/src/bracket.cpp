#include "asymspec/bracket.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "asymspec/error.hpp"
#include "asymspec/parallel.hpp"

namespace asymspec {

std::uint64_t binom(unsigned n, unsigned k) {
  if (n > kMaxBinomial) throw Error(ErrorCode::OutOfRange, "binom: n must be <= 60");
  if (k > n) throw Error(ErrorCode::OutOfRange, "binom: k must lie in [0, n]");
  k = std::min(k, n - k);
  // result * (n - k + i) / i stays exact: the running value is C(n-k+i, i).
  std::uint64_t result = 1;
  for (unsigned i = 1; i <= k; ++i) {
    const std::uint64_t num = n - k + i;
    const std::uint64_t g = std::gcd(result, std::uint64_t(i));
    const std::uint64_t r = result / g;
    const std::uint64_t d = i / g;
    if (r > std::numeric_limits<std::uint64_t>::max() / num)
      throw Error(ErrorCode::OutOfRange, "binom: overflow");
    result = r * num / d;
  }
  return result;
}

namespace {

void check_order(const ComplexMatrix& t, const ComplexMatrix& s, unsigned n, unsigned cap) {
  if (t.dim() != s.dim())
    throw Error(ErrorCode::DimensionMismatch, "bracket: operands differ in dimension");
  if (n > cap)
    throw Error(ErrorCode::OutOfRange, "bracket order must be <= " + std::to_string(cap));
}

}  // namespace

ComplexMatrix bracket_direct(const ComplexMatrix& t, const ComplexMatrix& s, unsigned n) {
  check_order(t, s, n, kMaxBracketOrder);
  ComplexMatrix acc(t.dim());
  for (unsigned k = 0; k <= n; ++k) {
    const double sign = ((n - k) % 2 == 0) ? 1.0 : -1.0;
    const double c = sign * double(binom(n, k));
    acc += scale(mul(matrix_power(t, k), matrix_power(s, n - k)), c);
  }
  return acc;
}

ComplexMatrix bracket_recurrence(const ComplexMatrix& t, const ComplexMatrix& s, unsigned n) {
  check_order(t, s, n, kMaxBracketOrder);
  ComplexMatrix x = ComplexMatrix::identity(t.dim());
  for (unsigned m = 0; m < n; ++m) x = sub(mul(t, x), mul(x, s));
  return x;
}

double bracket_compose_check(const ComplexMatrix& t, const ComplexMatrix& s,
                             const ComplexMatrix& p, unsigned n) {
  check_order(t, s, n, kMaxComposeOrder);
  check_order(t, p, n, kMaxComposeOrder);
  const ComplexMatrix lhs = bracket_recurrence(t, s, n);
  ComplexMatrix rhs(t.dim());
  for (unsigned k = 0; k <= n; ++k) {
    rhs += scale(mul(bracket_recurrence(t, p, k), bracket_recurrence(p, s, n - k)),
                 double(binom(n, k)));
  }
  return norm2(sub(lhs, rhs));
}

double bracket_swap_check(const ComplexMatrix& t, const ComplexMatrix& s, unsigned n) {
  check_order(t, s, n, kMaxBracketOrder);
  const ComplexMatrix lhs = bracket_direct(t, s, n);
  ComplexMatrix rhs = scale(bracket_direct(s, t, n), (n % 2 == 0) ? 1.0 : -1.0);
  for (unsigned k = 0; k < n; ++k) {
    const ComplexMatrix tk = matrix_power(t, k);
    const ComplexMatrix snk = matrix_power(s, n - k);
    const double sign = ((n - k) % 2 == 0) ? 1.0 : -1.0;
    rhs += scale(sub(mul(tk, snk), mul(snk, tk)), sign * double(binom(n, k)));
  }
  return norm2(sub(lhs, rhs));
}

BracketSequence bracket_sequence(const FamilySpec& sf, const FamilySpec& tf, const HGrid& grid,
                                 unsigned n_max) {
  if (sf.dim() != tf.dim())
    throw Error(ErrorCode::DimensionMismatch, "bracket_sequence: families differ in dimension");
  if (n_max < 1 || n_max > kMaxSequenceLength)
    throw Error(ErrorCode::OutOfRange, "n_max must lie in [1, 40]");

  const auto samples = grid.samples();
  // norms_by_h[j][n-1] = |(S_h - T_h)^[n]| at h = samples[j]
  std::vector<std::vector<double>> norms_by_h(samples.size(), std::vector<double>(n_max));
  parallel_for(samples.size(), [&](std::size_t j) {
    const ComplexMatrix s = family_eval(sf, samples[j]);
    const ComplexMatrix t = family_eval(tf, samples[j]);
    ComplexMatrix x = ComplexMatrix::identity(s.dim());
    for (unsigned n = 1; n <= n_max; ++n) {
      x = sub(mul(s, x), mul(x, t));
      norms_by_h[j][n - 1] = norm2(x);
    }
  });

  BracketSequence seq;
  seq.n_max = n_max;
  std::vector<double> trace(samples.size());
  for (unsigned n = 1; n <= n_max; ++n) {
    for (std::size_t j = 0; j < samples.size(); ++j) trace[j] = norms_by_h[j][n - 1];
    TailEstimate est = tail_limsup(trace, grid);
    seq.norms.push_back(est.value);
    seq.roots.push_back(std::pow(est.value, 1.0 / double(n)));
    seq.tails.push_back(std::move(est));
  }
  return seq;
}

BracketSequence power_sequence(const FamilySpec& uf, const HGrid& grid, unsigned n_max) {
  return bracket_sequence(uf, FamilySpec::constant(ComplexMatrix::zero(uf.dim())), grid, n_max);
}

const char* to_string(RootLimit::Kind k) noexcept {
  switch (k) {
    case RootLimit::Kind::Zero: return "Zero";
    case RootLimit::Kind::Positive: return "Positive";
    case RootLimit::Kind::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

RootLimit root_limit(const std::vector<double>& roots, double tol) {
  if (roots.size() < kMinRootSequence)
    throw Error(ErrorCode::BadParameter, "root_limit needs at least 8 roots");
  const auto last = std::span<const double>(roots).last(kRootTailLength);

  const double top = *std::max_element(last.begin(), last.end());
  bool settled = true;
  for (std::size_t k = 1; k < last.size(); ++k) settled = settled && last[k] <= (1.0 + kRootBand) * last[k - 1];
  if (top <= tol && settled) return {RootLimit::Kind::Zero, top};

  double mean = 0.0;
  for (double r : last) mean += r;
  mean /= double(last.size());
  if (std::isfinite(mean) && mean > tol) {
    const bool banded = std::all_of(last.begin(), last.end(),
                                    [&](double r) { return std::abs(r - mean) <= kRootBand * mean; });
    if (banded) return {RootLimit::Kind::Positive, mean};
  }
  return {RootLimit::Kind::Inconclusive, top};
}

RootLimit root_limit(const BracketSequence& seq, double tol) { return root_limit(seq.roots, tol); }

double default_root_tol(const HGrid& grid, std::size_t dim) {
  const double h_top = grid.tail().front();
  return std::max(1e-3, 2.0 * std::pow(h_top, 1.0 / double(std::max<std::size_t>(dim, 1))));
}

std::string to_csv(const BracketSequence& seq) {
  std::string out = "n,a_n,root\n";
  char buf[128];
  for (unsigned n = 1; n <= seq.n_max; ++n) {
    std::snprintf(buf, sizeof buf, "%u,%.17g,%.17g\n", n, seq.norms[n - 1], seq.roots[n - 1]);
    out += buf;
  }
  return out;
}

}  // namespace asymspec
