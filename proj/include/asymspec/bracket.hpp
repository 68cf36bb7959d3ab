#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "asymspec/family.hpp"
#include "asymspec/matrix.hpp"

namespace asymspec {

inline constexpr unsigned kMaxBinomial = 60;
inline constexpr unsigned kMaxBracketOrder = 60;
inline constexpr unsigned kMaxComposeOrder = 30;
inline constexpr unsigned kDefaultSequenceLength = 24;
inline constexpr unsigned kMaxSequenceLength = 40;

/// Exact C(n, k) for 0 <= k <= n <= 60; OutOfRange otherwise.
std::uint64_t binom(unsigned n, unsigned k);

/// (t - s)^[n] = sum_k (-1)^(n-k) C(n,k) t^k s^(n-k), straight from the sum.
ComplexMatrix bracket_direct(const ComplexMatrix& t, const ComplexMatrix& s, unsigned n);

/// (t - s)^[n] from X_0 = I, X_{m+1} = t X_m - X_m s.
ComplexMatrix bracket_recurrence(const ComplexMatrix& t, const ComplexMatrix& s, unsigned n);

/// |(t-s)^[n] - sum_k C(n,k) (t-p)^[k] (p-s)^[n-k]| in the spectral norm.
double bracket_compose_check(const ComplexMatrix& t, const ComplexMatrix& s,
                             const ComplexMatrix& p, unsigned n);

/// |(t-s)^[n] - (-1)^n (s-t)^[n] - sum_{k<n} (-1)^(n-k) C(n,k) (t^k s^(n-k) - s^(n-k) t^k)|
double bracket_swap_check(const ComplexMatrix& t, const ComplexMatrix& s, unsigned n);

/// a_n = tail lim sup of |(S_h - T_h)^[n]| for n = 1..n_max, with the n-th
/// roots alongside. Index 0 holds n = 1.
struct BracketSequence {
  unsigned n_max = 0;
  std::vector<double> norms;
  std::vector<double> roots;
  /// Tail diagnostics for each n.
  std::vector<TailEstimate> tails;
};

BracketSequence bracket_sequence(const FamilySpec& sf, const FamilySpec& tf, const HGrid& grid,
                                 unsigned n_max = kDefaultSequenceLength);

/// |U_h^n| tails: the bracket sequence against the zero family.
BracketSequence power_sequence(const FamilySpec& uf, const HGrid& grid,
                               unsigned n_max = kDefaultSequenceLength);

struct RootLimit {
  enum class Kind { Zero, Positive, Inconclusive };
  Kind kind = Kind::Inconclusive;
  /// Mean of the last roots for Positive; their max otherwise.
  double estimate = 0.0;
};

const char* to_string(RootLimit::Kind k) noexcept;

inline constexpr std::size_t kRootTailLength = 4;
inline constexpr double kRootBand = 0.10;
inline constexpr unsigned kMinRootSequence = 8;

/// Zero: the last 4 roots are <= tol and none exceeds its predecessor by more
/// than the 10% band. Positive(r): the last 4 roots lie within 10% of their
/// mean r > tol. Otherwise Inconclusive. Requires n_max >= 8.
RootLimit root_limit(const BracketSequence& seq, double tol);
RootLimit root_limit(const std::vector<double>& roots, double tol);

/// Resolution floor of the n-th-root limit on this grid: a family that is
/// O(h) away from a nilpotent of index `dim` shows roots near
/// (largest tail h)^(1/dim). Twice that floor (at least 1e-3) is the default
/// root tolerance.
double default_root_tol(const HGrid& grid, std::size_t dim);

/// CSV with columns n,a_n,root.
std::string to_csv(const BracketSequence& seq);

}  // namespace asymspec
