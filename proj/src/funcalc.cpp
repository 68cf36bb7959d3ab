#include "asymspec/funcalc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "asymspec/error.hpp"

namespace asymspec {

void validate(const ContourSpec& contour) {
  if (!(contour.radius > 0.0) || !std::isfinite(contour.radius))
    throw Error(ErrorCode::BadParameter, "contour radius must be positive");
  if (contour.nodes < kMinContourNodes || !std::has_single_bit(contour.nodes))
    throw Error(ErrorCode::BadParameter, "contour nodes must be a power of two >= 64");
  if (!std::isfinite(contour.center.real()) || !std::isfinite(contour.center.imag()))
    throw Error(ErrorCode::BadParameter, "contour center must be finite");
}

ComplexMatrix contour_funcalc(const ComplexMatrix& t, const FuncExpr& f, const ContourSpec& contour,
                              bool enclosure_validated) {
  validate(contour);
  if (!enclosure_validated)
    throw Error(ErrorCode::NonEnclosing, "contour was not validated to enclose the spectrum");
  if (f.uses(Variable::H))
    throw Error(ErrorCode::UnboundVariable, "functional calculus expressions cannot use h");

  // (1/2 pi i) * f(l_k) R(l_k) * i r e^{i theta_k} * (2 pi / N) = f(l_k) R(l_k) (l_k - c) / N
  const std::size_t n = contour.nodes;
  ComplexMatrix acc(t.dim());
  for (std::size_t k = 0; k < n; ++k) {
    const double theta = 2.0 * std::numbers::pi * double(k) / double(n);
    const Complex w = contour.radius * std::polar(1.0, theta);
    const Complex lambda = contour.center + w;
    Inversion inv = solve_inverse(shifted(t, lambda));
    if (inv.singular())
      throw Error(ErrorCode::SingularOnContour, "resolvent is singular at contour node " +
                                                    std::to_string(k));
    acc += scale(*inv.inverse, eval_at(f, lambda) * w / double(n));
  }
  return acc;
}

FamilySpec family_funcalc(const FamilySpec& tf, const FuncExpr& f, const ContourSpec& contour) {
  return FamilySpec::funcalc(tf, f, contour);
}

SpectrumEstimate enclosure_estimate(const ResolventField& field, double epsilon) {
  return spectrum_estimate(field, std::max(epsilon, field.region.spacing()));
}

bool contour_encloses(const SpectrumEstimate& est, const ContourSpec& contour, double margin) {
  if (est.flagged.empty()) return false;
  for (const Complex& z : est.flagged)
    if (!(std::abs(z - contour.center) < margin * contour.radius)) return false;
  return true;
}

}  // namespace asymspec
