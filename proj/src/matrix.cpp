#include "asymspec/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "asymspec/error.hpp"

namespace asymspec {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(op) + ": dimension " + std::to_string(a.dim()) + " vs " +
                    std::to_string(b.dim()));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
  if (dim == 0) throw Error(ErrorCode::BadParameter, "matrix dimension must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), data_(std::move(entries)) {
  if (dim == 0) throw Error(ErrorCode::BadParameter, "matrix dimension must be positive");
  if (data_.size() != dim * dim) {
    throw Error(ErrorCode::LengthMismatch, "expected " + std::to_string(dim * dim) +
                                               " entries, got " + std::to_string(data_.size()));
  }
  for (const Complex& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorCode::BadParameter, "matrix entries must be finite");
    }
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<Complex> diag) {
  return diagonal(std::span<const Complex>(diag.begin(), diag.size()));
}

ComplexMatrix ComplexMatrix::jordan(std::size_t dim, Complex eigenvalue) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    m(i, i) = eigenvalue;
    if (i + 1 < dim) m(i, i + 1) = 1.0;
  }
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t n = rows.size();
  std::vector<Complex> data;
  data.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) throw Error(ErrorCode::LengthMismatch, "from_rows: matrix must be square");
    data.insert(data.end(), row.begin(), row.end());
  }
  return ComplexMatrix(n, std::move(data));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

double ComplexMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (const Complex& z : data_) m = std::max(m, std::abs(z));
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "add");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "sub");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex factor) noexcept {
  for (Complex& z : data_) z *= factor;
  return *this;
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = a;
  out += b;
  return out;
}

ComplexMatrix sub(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = a;
  out -= b;
  return out;
}

ComplexMatrix mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "mul");
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  // i-k-j order keeps the inner loop contiguous in both b and out.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix scale(const ComplexMatrix& a, Complex factor) {
  ComplexMatrix out = a;
  out *= factor;
  return out;
}

ComplexMatrix matrix_power(const ComplexMatrix& a, unsigned n) {
  ComplexMatrix result = ComplexMatrix::identity(a.dim());
  ComplexMatrix base = a;
  while (n > 0) {
    if (n & 1u) result = mul(result, base);
    n >>= 1u;
    if (n > 0) base = mul(base, base);
  }
  return result;
}

ComplexMatrix shifted(const ComplexMatrix& a, Complex lambda) {
  ComplexMatrix out = scale(a, -1.0);
  for (std::size_t i = 0; i < a.dim(); ++i) out(i, i) += lambda;
  return out;
}

namespace {

double one_norm(const ComplexMatrix& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.dim(); ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) col += std::abs(a(i, j));
    best = std::max(best, col);
  }
  return best;
}

}  // namespace

Inversion solve_inverse(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  const double row_scale = a.max_abs();
  Inversion result;
  result.condition = std::numeric_limits<double>::infinity();
  if (row_scale == 0.0) return result;
  const double pivot_floor = kSingularPivotRatio * row_scale;

  ComplexMatrix lu = a;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(lu(i, k));
      if (v > best) {
        best = v;
        pivot = i;
      }
    }
    if (best < pivot_floor) return result;
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(pivot, j));
      std::swap(perm[k], perm[pivot]);
    }
    const Complex inv_pivot = 1.0 / lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex factor = lu(i, k) * inv_pivot;
      lu(i, k) = factor;
      if (factor == Complex{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= factor * lu(k, j);
    }
  }

  ComplexMatrix inv(n);
  std::vector<Complex> col(n);
  for (std::size_t c = 0; c < n; ++c) {
    // P a = L U, so solve L U x = P e_c.
    for (std::size_t i = 0; i < n; ++i) col[i] = (perm[i] == c) ? Complex{1.0} : Complex{};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) col[i] -= lu(i, j) * col[j];
    for (std::size_t ii = n; ii-- > 0;) {
      for (std::size_t j = ii + 1; j < n; ++j) col[ii] -= lu(ii, j) * col[j];
      col[ii] /= lu(ii, ii);
    }
    for (std::size_t i = 0; i < n; ++i) inv(i, c) = col[i];
  }

  ComplexMatrix check = mul(a, inv);
  double residual = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      residual = std::max(residual, std::abs(check(i, j) - (i == j ? 1.0 : 0.0)));

  result.residual = residual;
  result.condition = one_norm(a) * one_norm(inv);
  result.inverse = std::move(inv);
  return result;
}

NormEstimate operator_norm(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  if (a.max_abs() == 0.0) return {0.0, true, 0};

  ComplexMatrix gram(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Complex acc{};
      for (std::size_t k = 0; k < n; ++k) acc += std::conj(a(k, i)) * a(k, j);
      gram(i, j) = acc;
      gram(j, i) = std::conj(acc);
    }

  // p = (gram / scale)^(2^k): every column is a power-iteration iterate, and
  // squaring separates even nearly tied top eigenvalues within a few dozen steps.
  ComplexMatrix p = scale(gram, 1.0 / gram.max_abs());
  NormEstimate est;
  est.converged = false;
  for (int it = 1; it <= kNormMaxSquarings; ++it) {
    ComplexMatrix q = mul(p, p);
    q *= 1.0 / q.max_abs();
    const double change = sub(q, p).max_abs();
    p = std::move(q);
    est.iterations = it;
    if (change <= kNormRelTol) {
      est.converged = true;
      break;
    }
  }

  // Rayleigh quotient of gram at the heaviest column.
  std::size_t best = 0;
  double best_w = -1.0;
  for (std::size_t j = 0; j < n; ++j) {
    double w = 0.0;
    for (std::size_t i = 0; i < n; ++i) w += std::norm(p(i, j));
    if (w > best_w) {
      best_w = w;
      best = j;
    }
  }
  double num = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    Complex gv{};
    for (std::size_t k = 0; k < n; ++k) gv += gram(i, k) * p(k, best);
    num += (std::conj(p(i, best)) * gv).real();
  }
  est.value = std::sqrt(std::max(num / best_w, 0.0));
  return est;
}

double norm2(const ComplexMatrix& a) { return operator_norm(a).value; }

}  // namespace asymspec
