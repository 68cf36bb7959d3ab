#pragma once

#include <optional>
#include <string>
#include <vector>

#include "asymspec/family.hpp"
#include "asymspec/matrix.hpp"

namespace asymspec {

/// Square lambda grid, resolution x resolution, centered on `center`.
struct ComplexRegion {
  Complex center{0.0, 0.0};
  double half_width = 1.0;
  std::size_t resolution = 101;

  double spacing() const noexcept { return 2.0 * half_width / double(resolution - 1); }
  /// Cell (ix, iy); ix runs along the real axis.
  Complex point(std::size_t ix, std::size_t iy) const noexcept;
};

inline constexpr std::size_t kMinResolution = 21;
inline constexpr std::size_t kDefaultResolution = 101;

/// BadParameter unless half_width > 0 and resolution is odd and >= 21.
void validate(const ComplexRegion& region);

/// Per-h inverses of (lambda I - S_h) and the tail estimate of their norms.
/// A singular tail entry makes the tail value +inf.
struct ResolventSample {
  std::vector<Inversion> inversions;
  std::vector<double> norms;  // +inf where singular
  TailEstimate tail;

  bool resolved() const noexcept;
};

ResolventSample resolvent_at(const FamilySpec& sf, Complex lambda, const HGrid& grid);

struct DefectPair {
  TailEstimate left;   // |(lambda I - S_h) R_h - I|
  TailEstimate right;  // |R_h (lambda I - S_h) - I|
};

/// rf holds one candidate per grid sample.
DefectPair resolvent_defect(const FamilySpec& sf, const std::vector<ComplexMatrix>& rf,
                            Complex lambda, const HGrid& grid);

struct ResolventField {
  ComplexRegion region;
  /// Row-major over (iy, ix): values[iy * resolution + ix]. +inf marks a
  /// singular tail entry.
  std::vector<double> values;
};

ResolventField resolvent_norm_field(const FamilySpec& sf, const ComplexRegion& region,
                                    const HGrid& grid);

struct SpectrumCluster {
  Complex centroid;
  /// Largest distance from the centroid to a member cell.
  double radius = 0.0;
  std::size_t cell_count = 0;
};

struct SpectrumEstimate {
  double epsilon = 0.0;
  std::vector<Complex> flagged;
  /// Sorted by centroid (real, then imaginary part).
  std::vector<SpectrumCluster> clusters;
};

/// Flags cells whose field value is >= 1/epsilon and groups them into
/// 8-connected clusters.
SpectrumEstimate spectrum_estimate(const ResolventField& field, double epsilon);

struct NormBounds {
  double lower = 0.0;  // tail lim sup |S_h|
  double upper = 0.0;  // max over the grid
};

NormBounds quotient_norm_bounds(const FamilySpec& sf, const HGrid& grid);

/// 1e-3 * upper norm bound (1e-3 when the family vanishes).
double default_epsilon(const NormBounds& bounds);
/// Center 0, half width 1.25 * upper bound, resolution 101.
ComplexRegion default_region(const NormBounds& bounds);

/// |R(l) - R(m) - (m - l) R(l) R(m)| per h, for candidate families rl, rm.
std::vector<double> resolvent_equation_trace(const std::vector<ComplexMatrix>& rl,
                                             const std::vector<ComplexMatrix>& rm, Complex lambda,
                                             Complex mu);

/// Exact per-h inverses at both points. UnresolvedPoint if either has a
/// singular tail entry.
TailEstimate resolvent_equation_residual(const FamilySpec& sf, Complex lambda, Complex mu,
                                         const HGrid& grid);

/// Two-point form |R(l) R(m) - R(m) R(l)|.
TailEstimate resolvent_commutation_residual(const FamilySpec& sf, Complex lambda, Complex mu,
                                            const HGrid& grid);
/// Operator form |S_h R(l) - R(l) S_h|.
TailEstimate resolvent_commutation_residual(const FamilySpec& sf, Complex lambda,
                                            const HGrid& grid);

/// Exact inverses of lambda I - S_h at every grid sample. UnresolvedPoint if a
/// tail entry is singular; a singular entry before the tail becomes the zero
/// matrix, since only the tail defines the family.
std::vector<ComplexMatrix> exact_resolvents(const FamilySpec& sf, Complex lambda,
                                            const HGrid& grid);

inline constexpr unsigned kMaxSeriesTerms = 30;

struct SeriesResolvent {
  /// Partial sums, one per grid sample.
  std::vector<ComplexMatrix> candidates;
  /// term_norms[n] = tail lim sup of the n-th term norm, n = 0..n_terms.
  std::vector<double> term_norms;
  /// |(S-T)^[n]|_tail * |R_T|_tail^(n+1), the a priori bound on each term.
  std::vector<double> term_envelope;
  DefectPair defects;
  /// Set when the last term norm exceeds tol.
  bool truncation_warning = false;
};

/// R(lambda) = sum_{n=0}^{N} (S_h - T_h)^[n] R(lambda, T_h)^(n+1).
/// UnresolvedPoint if lambda is not resolved for tf.
SeriesResolvent series_resolvent(const FamilySpec& sf, const FamilySpec& tf, Complex lambda,
                                 const HGrid& grid, unsigned n_terms, double tol = 1e-6);

/// Pairs every cluster of `a` with a cluster of `b` whose centroid lies
/// within `distance`, one to one. True when both sets pair off completely.
bool match_clusters(const std::vector<SpectrumCluster>& a, const std::vector<SpectrumCluster>& b,
                    double distance);
/// Same, against bare target points.
bool match_clusters(const std::vector<SpectrumCluster>& a, const std::vector<Complex>& targets,
                    double distance);

/// Columns re,im,field_value; "inf" for the sentinel.
std::string to_csv(const ResolventField& field);
/// {epsilon, clusters: [{centroid_re, centroid_im, radius, cell_count}]}
std::string to_json(const SpectrumEstimate& est);

}  // namespace asymspec
