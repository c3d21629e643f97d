#pragma once

#include <vector>

#include "tropispec/core.hpp"

namespace tropispec {

// Affine band edge s -> clamp(c0 + c1 s, 0, a).
struct BandEdge {
  double c0 = 0.0;
  double c1 = 0.0;
};

// Continuous kernel on [0,a]^2 with band functions alpha <= beta:
// (Ax)(s) = max over t in [alpha(s), beta(s)] of k(s,t) x(t).
struct KernelSpec {
  enum class Family { Constant, Product, Bump, Table };

  double a = 1.0;
  Family family = Family::Constant;
  double c = 1.0;  // Constant value, Product/Bump scale
  double p = 1.0, q = 1.0;       // Product: k(s,t) = c s^p t^q
  double w = 1.0;                // Bump: k(s,t) = c exp(-(s-t)^2 / w)
  std::vector<std::vector<double>> table;  // Table: uniform samples, bilinear
  BandEdge alpha, beta;

  double band_lo(double s) const;
  double band_hi(double s) const;
  double eval(double s, double t) const;

  // alpha <= beta on a dense grid; throws InputError otherwise
  void validate() const;
};

struct DiscretizationResult {
  int N = 0;
  ConeMatrix matrix;  // MaxTimes
  std::vector<double> nodes;
};

// Collocation on uniform nodes s_i = a i/(N-1) with the band rounded
// outward by half a grid step.
DiscretizationResult discretize(const KernelSpec& spec, int N);

// b_n: maximum n-step in-band path product, by direct dynamic
// programming over path length (independent of the squaring route).
double path_norm(const DiscretizationResult& D, int n);

struct RefinementRow {
  int N = 0;
  double r = 0.0;
  double d = 0.0;
  double rDelta = 0.0;  // change from the previous grid
  double dDelta = 0.0;
};

// Discretize at each N and report the spectral estimates.
std::vector<RefinementRow> radius_refinement(const KernelSpec& spec, const std::vector<int>& Ns);

}  // namespace tropispec
