#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace asymspec {

using Complex = std::complex<double>;

/// Dense square complex matrix stored row-major.
///
/// Entries are finite on construction; arithmetic results are not re-checked.
class ComplexMatrix {
public:
  /// dim x dim zero matrix.
  explicit ComplexMatrix(std::size_t dim);
  /// Takes ownership of dim*dim row-major entries.
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix zero(std::size_t dim) { return ComplexMatrix(dim); }
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  static ComplexMatrix diagonal(std::initializer_list<Complex> diag);
  /// Jordan block with the given eigenvalue on the diagonal and ones above it.
  static ComplexMatrix jordan(std::size_t dim, Complex eigenvalue);
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<Complex> entries() noexcept { return data_; }

  /// Conjugate transpose.
  ComplexMatrix adjoint() const;
  /// Largest entry modulus.
  double max_abs() const noexcept;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex factor) noexcept;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
  std::size_t dim_;
  std::vector<Complex> data_;
};

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix sub(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix mul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(const ComplexMatrix& a, Complex factor);

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) { return add(a, b); }
inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) { return sub(a, b); }
inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return mul(a, b); }
inline ComplexMatrix operator*(Complex c, const ComplexMatrix& a) { return scale(a, c); }
inline ComplexMatrix operator*(const ComplexMatrix& a, Complex c) { return scale(a, c); }

/// a^n by binary exponentiation, a^0 = I.
ComplexMatrix matrix_power(const ComplexMatrix& a, unsigned n);

/// lambda*I - a
ComplexMatrix shifted(const ComplexMatrix& a, Complex lambda);

/// Result of an LU inversion. `inverse` is empty when the matrix was
/// numerically singular.
struct Inversion {
  std::optional<ComplexMatrix> inverse;
  /// max-entry residual |a * inv - I|, 0 when singular.
  double residual = 0.0;
  /// 1-norm condition estimate |a|_1 * |inv|_1, +inf when singular.
  double condition = 0.0;

  bool singular() const noexcept { return !inverse.has_value(); }
};

/// Pivot magnitudes below this fraction of the largest row scale mark the
/// matrix singular.
inline constexpr double kSingularPivotRatio = 1e-14;

/// LU with partial pivoting.
Inversion solve_inverse(const ComplexMatrix& a);

struct NormEstimate {
  double value = 0.0;
  bool converged = true;
  int iterations = 0;
};

inline constexpr double kNormRelTol = 1e-12;
inline constexpr int kNormMaxSquarings = 64;

/// Spectral norm by power iteration on a^H a, run on all basis vectors at
/// once through repeated squaring of the Gram matrix. Using every column as a
/// start vector avoids the blind spot of a single start orthogonal to the top
/// singular vector; squaring keeps near-degenerate gaps cheap.
NormEstimate operator_norm(const ComplexMatrix& a);

/// Convenience: operator_norm(a).value
double norm2(const ComplexMatrix& a);

}  // namespace asymspec
