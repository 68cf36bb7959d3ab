#pragma once

// Reference implementations used as test oracles. They share no code with the
// library: plain loops, textbook algorithms, nothing clever.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Mat = std::vector<std::vector<C>>;

inline Mat zeros(std::size_t n) { return Mat(n, std::vector<C>(n)); }

inline Mat eye(std::size_t n) {
  Mat m = zeros(n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
  return m;
}

inline Mat matmul(const Mat& a, const Mat& b) {
  const std::size_t n = a.size();
  Mat c = zeros(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      C acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += a[i][k] * b[k][j];
      c[i][j] = acc;
    }
  return c;
}

inline Mat lin(const Mat& a, C x, const Mat& b, C y) {
  Mat c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) c[i][j] = x * a[i][j] + y * b[i][j];
  return c;
}

inline Mat power(const Mat& a, unsigned n) {
  Mat r = eye(a.size());
  for (unsigned k = 0; k < n; ++k) r = matmul(r, a);
  return r;
}

inline double max_abs(const Mat& a) {
  double m = 0.0;
  for (const auto& row : a)
    for (const C& z : row) m = std::max(m, std::abs(z));
  return m;
}

// Pascal's triangle, computed additively.
inline std::vector<std::vector<std::uint64_t>> pascal(unsigned rows) {
  std::vector<std::vector<std::uint64_t>> p(rows + 1);
  for (unsigned n = 0; n <= rows; ++n) {
    p[n].assign(n + 1, 1);
    for (unsigned k = 1; k < n; ++k) p[n][k] = p[n - 1][k - 1] + p[n - 1][k];
  }
  return p;
}

// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.
inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  return ev;
}

// Largest singular value: sqrt of the top eigenvalue of a^H a, through the
// real 2n x 2n embedding [[Re, -Im], [Im, Re]].
inline double spectral_norm(const Mat& a) {
  const std::size_t n = a.size();
  Mat g = zeros(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) g[i][j] += std::conj(a[k][i]) * a[k][j];
  std::vector<std::vector<double>> r(2 * n, std::vector<double>(2 * n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      r[i][j] = g[i][j].real();
      r[i + n][j + n] = g[i][j].real();
      r[i][j + n] = -g[i][j].imag();
      r[i + n][j] = g[i][j].imag();
    }
  const auto ev = jacobi_eigenvalues(r);
  return std::sqrt(std::max(0.0, *std::max_element(ev.begin(), ev.end())));
}

// Gauss-Jordan elimination with full pivoting. Throws on a zero pivot.
inline Mat inverse(const Mat& a) {
  const std::size_t n = a.size();
  Mat m = a, inv = eye(n);
  std::vector<std::size_t> col(n);
  for (std::size_t i = 0; i < n; ++i) col[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k, pc = k;
    double best = -1.0;
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (std::abs(m[i][j]) > best) {
          best = std::abs(m[i][j]);
          pr = i;
          pc = j;
        }
    if (best == 0.0) throw std::runtime_error("singular");
    std::swap(m[k], m[pr]);
    std::swap(inv[k], inv[pr]);
    for (auto& row : m) std::swap(row[k], row[pc]);
    std::swap(col[k], col[pc]);
    const C piv = m[k][k];
    for (std::size_t j = 0; j < n; ++j) {
      m[k][j] /= piv;
      inv[k][j] /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const C f = m[i][k];
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] -= f * m[k][j];
        inv[i][j] -= f * inv[k][j];
      }
    }
  }
  // Undo the column permutation: row k of inv belongs to variable col[k].
  Mat out = zeros(n);
  for (std::size_t k = 0; k < n; ++k) out[col[k]] = inv[k];
  return out;
}

// exp(t) as the first 40 Taylor terms.
inline Mat taylor_exp(const Mat& t) {
  Mat acc = eye(t.size()), term = eye(t.size());
  for (int k = 1; k < 40; ++k) {
    term = matmul(term, t);
    for (auto& row : term)
      for (C& z : row) z /= double(k);
    acc = lin(acc, 1.0, term, 1.0);
  }
  return acc;
}

// (t - s)^[n] straight from the alternating binomial sum.
inline Mat bracket(const Mat& t, const Mat& s, unsigned n) {
  const auto p = pascal(n);
  Mat acc = zeros(t.size());
  for (unsigned k = 0; k <= n; ++k) {
    const double sign = (n - k) % 2 ? -1.0 : 1.0;
    acc = lin(acc, 1.0, matmul(power(t, k), power(s, n - k)), sign * double(p[n][k]));
  }
  return acc;
}

// Direct string evaluator by precedence climbing; no AST.
class Evaluator {
public:
  Evaluator(std::string src, C z, C h) : s_(std::move(src)), z_(z), h_(h) {}

  C run() {
    C v = sum();
    skip();
    if (i_ != s_.size()) throw std::runtime_error("trailing input");
    return v;
  }

private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  C sum() {
    C v = product();
    for (;;) {
      if (eat('+')) v += product();
      else if (eat('-')) v -= product();
      else return v;
    }
  }
  C product() {
    C v = neg();
    for (;;) {
      if (eat('*')) v *= neg();
      else if (eat('/')) v /= neg();
      else return v;
    }
  }
  C neg() {
    if (eat('-')) return -neg();
    C b = atom();
    if (eat('^')) {
      skip();
      unsigned e = 0;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) e = e * 10 + unsigned(s_[i_++] - '0');
      C r = 1.0;
      for (unsigned k = 0; k < e; ++k) r *= b;
      return r;
    }
    return b;
  }
  C atom() {
    skip();
    if (eat('(')) {
      C v = sum();
      if (!eat(')')) throw std::runtime_error("missing )");
      return v;
    }
    if (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.')) {
      std::size_t used = 0;
      const double x = std::stod(s_.substr(i_), &used);
      i_ += used;
      if (i_ < s_.size() && s_[i_] == 'i' && (i_ + 1 >= s_.size() || !std::isalnum(static_cast<unsigned char>(s_[i_ + 1])))) {
        ++i_;
        return C(0.0, x);
      }
      return C(x, 0.0);
    }
    std::string id;
    while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) id += s_[i_++];
    if (id == "z" || id == "lambda") return z_;
    if (id == "h") return h_;
    if (id == "i") return C(0.0, 1.0);
    if (id == "exp") {
      if (!eat('(')) throw std::runtime_error("exp needs (");
      C v = sum();
      if (!eat(')')) throw std::runtime_error("missing )");
      return std::exp(v);
    }
    throw std::runtime_error("bad token");
  }

  std::string s_;
  C z_, h_;
  std::size_t i_ = 0;
};

inline C evaluate(const std::string& src, C z, C h = 0.0) { return Evaluator(src, z, h).run(); }

// Random well-formed expression text over z and h, without division.
inline std::string random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 9);
  auto number = [&] {
    std::uniform_int_distribution<int> d(1, 30);
    return std::to_string(d(rng)) + "." + std::to_string(d(rng) % 10);
  };
  switch (pick(rng)) {
    case 0: return "z";
    case 1: return number();
    case 2: return number() + "i";
    case 3: return "(" + random_expr(rng, depth - 1) + " + " + random_expr(rng, depth - 1) + ")";
    case 4: return random_expr(rng, depth - 1) + " - " + random_expr(rng, depth - 1);
    case 5: return random_expr(rng, depth - 1) + " * " + random_expr(rng, depth - 1);
    case 6: return "-" + random_expr(rng, depth - 1);
    case 7: return "(" + random_expr(rng, depth - 1) + ")^" + std::to_string(rng() % 4);
    case 8: return "exp(" + random_expr(rng, 0) + " * 0.1)";
    default: return "h * " + random_expr(rng, depth - 1);
  }
}

inline Mat random_matrix(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Mat m = zeros(n);
  for (auto& row : m)
    for (C& z : row) z = C(u(rng), u(rng));
  return m;
}

}  // namespace oracle
