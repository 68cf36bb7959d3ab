#pragma once

#include <random>

#include "asymspec/matrix.hpp"
#include "oracles.hpp"

namespace testing {

inline oracle::Mat to_oracle(const asymspec::ComplexMatrix& m) {
  oracle::Mat out = oracle::zeros(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out[i][j] = m(i, j);
  return out;
}

inline asymspec::ComplexMatrix from_oracle(const oracle::Mat& m) {
  asymspec::ComplexMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out(i, j) = m[i][j];
  return out;
}

inline double max_diff(const asymspec::ComplexMatrix& a, const oracle::Mat& b) {
  return oracle::max_abs(oracle::lin(to_oracle(a), 1.0, b, -1.0));
}

inline asymspec::ComplexMatrix random(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
  return from_oracle(oracle::random_matrix(rng, n, scale));
}

}  // namespace testing
