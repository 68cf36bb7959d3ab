#include "asymspec/family.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <sstream>

#include "asymspec/error.hpp"
#include "asymspec/funcalc.hpp"
#include "asymspec/parallel.hpp"

namespace asymspec {

struct FunCalcMemo {
  std::mutex mu;
  std::map<double, ComplexMatrix> cache;
};

HGrid::HGrid(std::vector<double> samples, std::size_t tail_window)
    : samples_(std::move(samples)), tail_window_(tail_window) {
  if (samples_.size() < kMinGridCount)
    throw Error(ErrorCode::BadParameter, "h-grid needs at least 4 samples");
  if (tail_window_ == 0 || tail_window_ > samples_.size())
    throw Error(ErrorCode::BadParameter, "tail window must be in [1, count]");
  if (!(samples_.front() <= 1.0))
    throw Error(ErrorCode::BadParameter, "h-grid samples must lie in (0, 1]");
  for (std::size_t j = 0; j + 1 < samples_.size(); ++j) {
    if (!(samples_[j + 1] > 0.0 && samples_[j + 1] < samples_[j]))
      throw Error(ErrorCode::BadParameter, "h-grid samples must be strictly decreasing and positive");
  }
}

HGrid hgrid_geometric(double h0, double ratio, std::size_t count, std::size_t tail_window) {
  if (!(h0 > 0.0 && h0 <= 1.0)) throw Error(ErrorCode::BadParameter, "h0 must lie in (0, 1]");
  if (!(ratio > 0.0 && ratio < 1.0)) throw Error(ErrorCode::BadParameter, "ratio must lie in (0, 1)");
  if (count < kMinGridCount) throw Error(ErrorCode::BadParameter, "count must be at least 4");
  std::vector<double> samples(count);
  double h = h0;
  for (std::size_t j = 0; j < count; ++j) {
    samples[j] = h;
    h *= ratio;
  }
  return HGrid(std::move(samples), tail_window);
}

HGrid default_grid() { return hgrid_geometric(1.0, 0.5, 20, 6); }

namespace {

template <class Node>
FamilySpec make_spec(std::size_t dim, Node node) {
  return FamilySpec(dim, std::make_shared<const FamilyNode>(FamilyNode{std::move(node)}));
}

std::size_t common_dim(const std::vector<FamilySpec>& parts, const char* what) {
  if (parts.empty()) throw Error(ErrorCode::BadParameter, std::string(what) + " needs at least one child");
  const std::size_t dim = parts.front().dim();
  for (const FamilySpec& p : parts) {
    if (p.dim() != dim)
      throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": children differ in dimension");
  }
  return dim;
}

}  // namespace

FamilySpec FamilySpec::constant(ComplexMatrix m) {
  const std::size_t dim = m.dim();
  return make_spec(dim, ConstantNode{std::move(m)});
}

FamilySpec FamilySpec::jordan(std::size_t dim, Complex eigenvalue) {
  if (dim == 0) throw Error(ErrorCode::BadParameter, "jordan block dimension must be positive");
  return make_spec(dim, JordanNode{eigenvalue});
}

FamilySpec FamilySpec::diag_expr(const std::vector<std::string>& entries) {
  if (entries.empty()) throw Error(ErrorCode::BadParameter, "diag_expr needs at least one entry");
  DiagExprNode node;
  for (const std::string& src : entries) {
    FuncExpr e = parse_expr(src);
    if (e.uses(Variable::Lambda))
      throw Error(ErrorCode::ExprError, "diag_expr entry '" + src + "' may only use h");
    node.entries.push_back(std::move(e));
  }
  return make_spec(entries.size(), std::move(node));
}

FamilySpec FamilySpec::h_scaled(FamilySpec inner) {
  const std::size_t dim = inner.dim();
  return make_spec(dim, HScaledNode{std::move(inner)});
}

FamilySpec FamilySpec::sum(std::vector<FamilySpec> terms) {
  const std::size_t dim = common_dim(terms, "sum");
  return make_spec(dim, SumNode{std::move(terms)});
}

FamilySpec FamilySpec::product(std::vector<FamilySpec> factors) {
  const std::size_t dim = common_dim(factors, "product");
  return make_spec(dim, ProductNode{std::move(factors)});
}

FamilySpec FamilySpec::seeded_random(std::size_t dim, std::uint64_t seed, double scale) {
  if (!(scale >= 0.0) || !std::isfinite(scale))
    throw Error(ErrorCode::BadParameter, "random scale must be finite and nonnegative");
  return make_spec(dim, RandomNode{seed, scale, seeded_random_matrix(dim, seed, scale)});
}

FamilySpec FamilySpec::funcalc(FamilySpec inner, FuncExpr f, const ContourSpec& contour) {
  validate(contour);
  if (f.uses(Variable::H))
    throw Error(ErrorCode::ExprError, "functional-calculus expression may only use z");
  const std::size_t dim = inner.dim();
  return make_spec(dim, FunCalcNode{std::move(inner), std::move(f), contour,
                                    std::make_shared<FunCalcMemo>()});
}

ComplexMatrix seeded_random_matrix(std::size_t dim, std::uint64_t seed, double scale) {
  std::mt19937_64 gen(seed);
  // 53-bit uniform in [0,1) from the raw engine output; std distributions are
  // not bit-stable across standard libraries.
  auto uniform = [&] { return double(gen() >> 11) * 0x1.0p-53; };
  std::vector<Complex> data(dim * dim);
  for (Complex& z : data) {
    const double re = scale * (2.0 * uniform() - 1.0);
    const double im = scale * (2.0 * uniform() - 1.0);
    z = Complex(re, im);
  }
  return ComplexMatrix(dim, std::move(data));
}

namespace {

ComplexMatrix eval_node(const FamilySpec& spec, double h) {
  const std::size_t dim = spec.dim();
  return std::visit(
      [&](const auto& node) -> ComplexMatrix {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ConstantNode>) {
          return node.matrix;
        } else if constexpr (std::is_same_v<T, JordanNode>) {
          return ComplexMatrix::jordan(dim, node.eigenvalue);
        } else if constexpr (std::is_same_v<T, DiagExprNode>) {
          ComplexMatrix m(dim);
          for (std::size_t i = 0; i < dim; ++i) {
            Complex v;
            try {
              v = eval_expr(node.entries[i], Bindings{std::nullopt, Complex(h, 0.0)});
            } catch (const Error& e) {
              throw Error(ErrorCode::ExprError, "diag_expr entry '" + node.entries[i].source() +
                                                    "': " + e.what());
            }
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
              throw Error(ErrorCode::ExprError,
                          "diag_expr entry '" + node.entries[i].source() + "' is not finite");
            m(i, i) = v;
          }
          return m;
        } else if constexpr (std::is_same_v<T, HScaledNode>) {
          return scale(eval_node(node.inner, h), h);
        } else if constexpr (std::is_same_v<T, SumNode>) {
          ComplexMatrix acc = eval_node(node.terms.front(), h);
          for (std::size_t k = 1; k < node.terms.size(); ++k) acc += eval_node(node.terms[k], h);
          return acc;
        } else if constexpr (std::is_same_v<T, ProductNode>) {
          ComplexMatrix acc = eval_node(node.factors.front(), h);
          for (std::size_t k = 1; k < node.factors.size(); ++k)
            acc = mul(acc, eval_node(node.factors[k], h));
          return acc;
        } else if constexpr (std::is_same_v<T, RandomNode>) {
          return node.matrix;
        } else {
          {
            std::lock_guard lock(node.memo->mu);
            if (auto it = node.memo->cache.find(h); it != node.memo->cache.end()) return it->second;
          }
          ComplexMatrix value = contour_funcalc(eval_node(node.inner, h), node.f, node.contour);
          std::lock_guard lock(node.memo->mu);
          return node.memo->cache.try_emplace(h, std::move(value)).first->second;
        }
      },
      spec.node().node);
}

std::string h_tag(double h) {
  std::ostringstream os;
  os.precision(17);
  os << " (at h=" << h << ")";
  return os.str();
}

}  // namespace

ComplexMatrix family_eval(const FamilySpec& spec, double h) {
  if (!(h > 0.0 && h <= 1.0)) throw Error(ErrorCode::BadParameter, "h must lie in (0, 1]");
  try {
    return eval_node(spec, h);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    const std::string msg = e.what();
    if (msg.find("(at h=") != std::string::npos) throw;
    throw Error(e.code(), msg + h_tag(h));
  }
}

std::vector<ComplexMatrix> family_samples(const FamilySpec& spec, const HGrid& grid) {
  std::vector<ComplexMatrix> out;
  out.reserve(grid.size());
  for (double h : grid.samples()) out.push_back(family_eval(spec, h));
  return out;
}

const char* to_string(Trend t) noexcept {
  switch (t) {
    case Trend::Decreasing: return "Decreasing";
    case Trend::Flat: return "Flat";
    case Trend::Increasing: return "Increasing";
  }
  return "Flat";
}

std::vector<double> scalar_trace(const std::function<double(double)>& f, const HGrid& grid) {
  const auto samples = grid.samples();
  std::vector<double> values(samples.size());
  parallel_for(samples.size(), [&](std::size_t j) {
    try {
      values[j] = f(samples[j]);
    } catch (const Error& e) {
      const std::string msg = e.what();
      if (msg.find("(at h=") != std::string::npos) throw;
      throw Error(e.code(), msg + h_tag(samples[j]));
    }
  });
  return values;
}

namespace {

Trend classify_trend(std::span<const double> x, std::span<const double> v) {
  const std::size_t n = v.size();
  for (double y : v) {
    if (!std::isfinite(y)) return Trend::Increasing;
  }
  if (n < 2) return Trend::Flat;

  double xm = 0.0, vm = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    xm += x[k];
    vm += v[k];
  }
  xm /= double(n);
  vm /= double(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxy += (x[k] - xm) * (v[k] - vm);
    sxx += (x[k] - xm) * (x[k] - xm);
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;

  long concordant = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const double dx = x[b] - x[a];
      const double dv = v[b] - v[a];
      if (dx * dv > 0) ++concordant;
      else if (dx * dv < 0) --concordant;
    }
  const double tau = double(concordant) / (double(n) * double(n - 1) / 2.0);

  // Values growing with log h shrink as h -> 0.
  if (slope > kTrendDeadBand && tau >= kTrendRankAgreement) return Trend::Decreasing;
  if (slope < -kTrendDeadBand && tau <= -kTrendRankAgreement) return Trend::Increasing;
  return Trend::Flat;
}

}  // namespace

TailEstimate tail_limsup(std::span<const double> values, const HGrid& grid) {
  if (values.size() != grid.size())
    throw Error(ErrorCode::LengthMismatch, "trace has " + std::to_string(values.size()) +
                                               " values for " + std::to_string(grid.size()) +
                                               " grid samples");
  TailEstimate est;
  const std::size_t begin = grid.tail_begin();
  est.window_values.assign(values.begin() + std::ptrdiff_t(begin), values.end());
  est.value = -std::numeric_limits<double>::infinity();
  for (double v : est.window_values) {
    if (std::isnan(v)) throw Error(ErrorCode::BadParameter, "trace value is NaN");
    est.value = std::max(est.value, v);
  }
  std::vector<double> logs;
  for (double h : grid.tail()) logs.push_back(std::log(h));
  est.trend = classify_trend(logs, est.window_values);
  return est;
}

bool vanishes(std::span<const double> values, const HGrid& grid, double tol) {
  const TailEstimate est = tail_limsup(values, grid);
  return est.value <= tol && est.trend != Trend::Increasing;
}

double default_vanish_tol(std::span<const double> values) {
  const double head = values.empty() ? 0.0 : std::abs(values.front());
  return 1e-4 * (1.0 + (std::isfinite(head) ? head : 0.0));
}

}  // namespace asymspec
