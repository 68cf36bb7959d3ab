#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "asymspec/contour.hpp"
#include "asymspec/expr.hpp"
#include "asymspec/matrix.hpp"

namespace asymspec {

/// Strictly decreasing samples in (0, 1] approaching 0. The last
/// `tail_window` samples stand in for the h -> 0 limit.
class HGrid {
public:
  HGrid(std::vector<double> samples, std::size_t tail_window);

  std::span<const double> samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  std::size_t tail_window() const noexcept { return tail_window_; }
  std::size_t tail_begin() const noexcept { return samples_.size() - tail_window_; }
  std::span<const double> tail() const noexcept {
    return std::span<const double>(samples_).subspan(tail_begin());
  }

  friend bool operator==(const HGrid&, const HGrid&) = default;

private:
  std::vector<double> samples_;
  std::size_t tail_window_;
};

inline constexpr std::size_t kMinGridCount = 4;

/// samples[j] = h0 * ratio^j
HGrid hgrid_geometric(double h0, double ratio, std::size_t count, std::size_t tail_window);

/// h0 = 1, ratio = 1/2, 20 samples, tail window 6.
HGrid default_grid();

struct FamilyNode;

/// Declarative h -> matrix generator of fixed dimension. Cheap to copy; the
/// node tree is shared and immutable.
class FamilySpec {
public:
  static FamilySpec constant(ComplexMatrix m);
  static FamilySpec jordan(std::size_t dim, Complex eigenvalue);
  /// Diagonal whose entries are expressions in h.
  static FamilySpec diag_expr(const std::vector<std::string>& entries);
  /// h * inner(h)
  static FamilySpec h_scaled(FamilySpec inner);
  static FamilySpec sum(std::vector<FamilySpec> terms);
  /// Left-to-right matrix product.
  static FamilySpec product(std::vector<FamilySpec> factors);
  /// Constant matrix with entries uniform in [-scale, scale] + i[-scale, scale].
  static FamilySpec seeded_random(std::size_t dim, std::uint64_t seed, double scale = 1.0);
  /// h -> f(inner(h)) through the contour functional calculus, memoized per h.
  static FamilySpec funcalc(FamilySpec inner, FuncExpr f, const ContourSpec& contour);

  std::size_t dim() const noexcept { return dim_; }
  const FamilyNode& node() const noexcept { return *node_; }
  std::shared_ptr<const FamilyNode> node_ptr() const noexcept { return node_; }

  FamilySpec(std::size_t dim, std::shared_ptr<const FamilyNode> node)
      : dim_(dim), node_(std::move(node)) {}

private:
  std::size_t dim_;
  std::shared_ptr<const FamilyNode> node_;
};

struct FunCalcMemo;

struct ConstantNode { ComplexMatrix matrix; };
struct JordanNode { Complex eigenvalue; };
struct DiagExprNode { std::vector<FuncExpr> entries; };
struct HScaledNode { FamilySpec inner; };
struct SumNode { std::vector<FamilySpec> terms; };
struct ProductNode { std::vector<FamilySpec> factors; };
struct RandomNode {
  std::uint64_t seed;
  double scale;
  ComplexMatrix matrix;
};
struct FunCalcNode {
  FamilySpec inner;
  FuncExpr f;
  ContourSpec contour;
  std::shared_ptr<FunCalcMemo> memo;
};

struct FamilyNode {
  std::variant<ConstantNode, JordanNode, DiagExprNode, HScaledNode, SumNode, ProductNode,
               RandomNode, FunCalcNode>
      node;
};

inline FamilySpec operator+(const FamilySpec& a, const FamilySpec& b) { return FamilySpec::sum({a, b}); }
inline FamilySpec operator*(const FamilySpec& a, const FamilySpec& b) { return FamilySpec::product({a, b}); }

/// The matrix of the constant seeded-random family.
ComplexMatrix seeded_random_matrix(std::size_t dim, std::uint64_t seed, double scale);

/// Throws BadParameter when h is outside (0, 1], ExprError when a diagonal
/// expression fails to evaluate.
ComplexMatrix family_eval(const FamilySpec& spec, double h);

/// Evaluates the family at every grid sample, in grid order.
std::vector<ComplexMatrix> family_samples(const FamilySpec& spec, const HGrid& grid);

enum class Trend { Decreasing, Flat, Increasing };
const char* to_string(Trend t) noexcept;

/// Numerical stand-in for lim sup_{h->0}: the max over the tail window.
struct TailEstimate {
  double value = 0.0;
  Trend trend = Trend::Flat;
  std::vector<double> window_values;
};

inline constexpr double kTrendDeadBand = 1e-10;
/// A least-squares slope only counts as a trend when the window's Kendall
/// rank correlation with log h agrees in sign with at least this magnitude.
inline constexpr double kTrendRankAgreement = 0.5;

/// Evaluates f at every grid sample concurrently; values returned in grid
/// order. Failures are rethrown with the offending h in the message.
std::vector<double> scalar_trace(const std::function<double(double)>& f, const HGrid& grid);

TailEstimate tail_limsup(std::span<const double> values, const HGrid& grid);

/// tail value <= tol and the trend is not Increasing.
bool vanishes(std::span<const double> values, const HGrid& grid, double tol);

/// 1e-4 * (1 + |trace at h0|)
double default_vanish_tol(std::span<const double> values);

}  // namespace asymspec
