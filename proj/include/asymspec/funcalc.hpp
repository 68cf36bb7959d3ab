#pragma once

#include "asymspec/contour.hpp"
#include "asymspec/expr.hpp"
#include "asymspec/family.hpp"
#include "asymspec/matrix.hpp"
#include "asymspec/spectrum.hpp"

namespace asymspec {

/// f(t) = (1/2 pi i) \oint f(l) (l I - t)^{-1} dl over the circle, by the
/// trapezoid rule. Terms are summed in node order, so the result does not
/// depend on threading.
///
/// Throws NonEnclosing when `enclosure_validated` is false, SingularOnContour
/// when a node hits the spectrum, and the expression errors of f.
ComplexMatrix contour_funcalc(const ComplexMatrix& t, const FuncExpr& f, const ContourSpec& contour,
                              bool enclosure_validated = true);

/// h -> f(T_h), memoized per h.
FamilySpec family_funcalc(const FamilySpec& tf, const FuncExpr& f, const ContourSpec& contour);

inline constexpr double kEnclosureMargin = 0.95;

/// Spectrum estimate for enclosure checks, flagged at max(epsilon, spacing).
/// Since |(l I - T)^{-1}| >= 1 / dist(l, Sp T) and every point of the region
/// lies within spacing / sqrt(2) of a cell, each eigenvalue inside the region
/// gets a flagged neighbour even when it falls between grid points.
SpectrumEstimate enclosure_estimate(const ResolventField& field, double epsilon);

/// Every flagged point lies strictly within margin * radius of the center.
/// False when nothing is flagged: a matrix family always has spectrum, so an
/// empty estimate means the region missed it, not that it is enclosed.
bool contour_encloses(const SpectrumEstimate& est, const ContourSpec& contour,
                      double margin = kEnclosureMargin);

}  // namespace asymspec
