#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "tropispec/core.hpp"

namespace testutil {

using tropispec::ConeMatrix;
using tropispec::ConeVector;
using tropispec::Semiring;

inline ConeMatrix random_matrix(std::mt19937_64& rng, int n, Semiring sr, double lo, double hi,
                                double pZero) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  ConeMatrix M(n, sr);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (uni(rng) < pZero) continue;
      M(i, j) = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * uni(rng));
    }
  return M;
}

inline ConeVector random_vector(std::mt19937_64& rng, int n, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> uni(lo, hi);
  std::vector<double> e(static_cast<size_t>(n));
  for (double& v : e) v = uni(rng);
  return ConeVector(std::move(e));
}

inline double sup_dist(const ConeVector& a, const ConeVector& b) {
  double m = 0.0;
  for (int i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// reference operator norm by dense grid over the unit box, n <= 3
inline double grid_op_norm(const ConeMatrix& A, int G) {
  const int n = A.dim();
  double best = 0.0;
  std::vector<double> x(static_cast<size_t>(n));
  const int total = static_cast<int>(std::pow(G + 1, n));
  for (int cell = 0; cell < total; ++cell) {
    int rem = cell;
    for (int c = 0; c < n; ++c) {
      x[static_cast<size_t>(c)] = static_cast<double>(rem % (G + 1)) / G;
      rem /= (G + 1);
    }
    const ConeVector y = mat_apply(A, ConeVector(x));
    best = std::max(best, y.sup_norm());
  }
  return best;
}

// reference minimum modulus by dense grid over the unit sphere, n <= 3
inline double grid_min_modulus(const ConeMatrix& A, int G) {
  const int n = A.dim();
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> x(static_cast<size_t>(n));
  for (int pivot = 0; pivot < n; ++pivot) {
    const int total = static_cast<int>(std::pow(G + 1, n - 1));
    for (int cell = 0; cell < total; ++cell) {
      int rem = cell;
      for (int c = 0; c < n; ++c) {
        if (c == pivot) {
          x[static_cast<size_t>(c)] = 1.0;
        } else {
          x[static_cast<size_t>(c)] = static_cast<double>(rem % (G + 1)) / G;
          rem /= (G + 1);
        }
      }
      const ConeVector y = mat_apply(A, ConeVector(x));
      best = std::min(best, y.sup_norm());
    }
  }
  return best;
}

// reference power by repeated linear products (small n, mild entries)
inline ConeMatrix linear_power(const ConeMatrix& A, int n) {
  ConeMatrix P = A;
  for (int k = 1; k < n; ++k) P = mat_mul(P, A);
  return P;
}

}  // namespace testutil
