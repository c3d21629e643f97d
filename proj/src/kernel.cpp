#include "tropispec/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "tropispec/spectral.hpp"

namespace tropispec {

namespace {

double clamp01a(double v, double a) { return std::clamp(v, 0.0, a); }

}  // namespace

double KernelSpec::band_lo(double s) const { return clamp01a(alpha.c0 + alpha.c1 * s, a); }
double KernelSpec::band_hi(double s) const { return clamp01a(beta.c0 + beta.c1 * s, a); }

double KernelSpec::eval(double s, double t) const {
  switch (family) {
    case Family::Constant:
      return c;
    case Family::Product:
      return c * std::pow(s, p) * std::pow(t, q);
    case Family::Bump:
      return c * std::exp(-(s - t) * (s - t) / w);
    case Family::Table: {
      const int R = static_cast<int>(table.size());
      if (R == 1) return table[0][0];
      const double fs = s / a * (R - 1), ft = t / a * (R - 1);
      const int i0 = std::min(R - 2, static_cast<int>(fs));
      const int j0 = std::min(R - 2, static_cast<int>(ft));
      const double ds = fs - i0, dt = ft - j0;
      return table[static_cast<size_t>(i0)][static_cast<size_t>(j0)] * (1 - ds) * (1 - dt) +
             table[static_cast<size_t>(i0) + 1][static_cast<size_t>(j0)] * ds * (1 - dt) +
             table[static_cast<size_t>(i0)][static_cast<size_t>(j0) + 1] * (1 - ds) * dt +
             table[static_cast<size_t>(i0) + 1][static_cast<size_t>(j0) + 1] * ds * dt;
    }
  }
  return 0.0;
}

void KernelSpec::validate() const {
  if (!(a > 0.0)) throw InputError("kernel: domain endpoint a must be > 0");
  if (family == Family::Constant || family == Family::Product || family == Family::Bump) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw InputError("kernel: scale must be finite and >= 0");
  }
  if (family == Family::Product && (p < 0.0 || q < 0.0))
    throw InputError("kernel: product exponents must be >= 0");
  if (family == Family::Bump && !(w > 0.0)) throw InputError("kernel: bump width must be > 0");
  if (family == Family::Table) {
    const size_t R = table.size();
    if (R < 1) throw InputError("kernel: table must be nonempty");
    for (const auto& row : table) {
      if (row.size() != R) throw InputError("kernel: table must be square");
      for (double v : row)
        if (!std::isfinite(v) || v < 0.0) throw InputError("kernel: table entries must be finite and >= 0");
    }
  }
  const int dense = 512;
  for (int i = 0; i <= dense; ++i) {
    const double s = a * i / dense;
    if (band_lo(s) > band_hi(s) + 1e-12 * a)
      throw InputError("kernel: band functions must satisfy alpha <= beta");
  }
}

DiscretizationResult discretize(const KernelSpec& spec, int N) {
  if (N < 2) throw InputError("discretize: N must be >= 2");
  spec.validate();
  DiscretizationResult out;
  out.N = N;
  out.nodes.resize(static_cast<size_t>(N));
  for (int i = 0; i < N; ++i) out.nodes[static_cast<size_t>(i)] = spec.a * i / (N - 1);
  const double half = 0.5 * spec.a / (N - 1);

  ConeMatrix M(N, Semiring::MaxTimes);
  for (int i = 0; i < N; ++i) {
    const double s = out.nodes[static_cast<size_t>(i)];
    const double lo = spec.band_lo(s) - half, hi = spec.band_hi(s) + half;  // outward rounding
    for (int j = 0; j < N; ++j) {
      const double t = out.nodes[static_cast<size_t>(j)];
      if (t >= lo && t <= hi) M(i, j) = spec.eval(s, t);
    }
  }
  out.matrix = std::move(M);
  return out;
}

double path_norm(const DiscretizationResult& D, int n) {
  if (n < 1) throw InputError("path_norm: n must be >= 1");
  const int N = D.matrix.dim();
  const auto logW = D.matrix.log_entries();
  // v[j] = max log weight of a k-step path ending at j
  std::vector<double> v(static_cast<size_t>(N), 0.0), nxt(static_cast<size_t>(N));
  for (int step = 0; step < n; ++step) {
    for (int j = 0; j < N; ++j) {
      double best = kNegInf;
      for (int i = 0; i < N; ++i) {
        const double w = logW[static_cast<size_t>(i) * N + j];
        if (w != kNegInf && v[static_cast<size_t>(i)] != kNegInf)
          best = std::max(best, v[static_cast<size_t>(i)] + w);
      }
      nxt[static_cast<size_t>(j)] = best;
    }
    v.swap(nxt);
  }
  double m = kNegInf;
  for (double x : v) m = std::max(m, x);
  return m == kNegInf ? 0.0 : std::exp(m);
}

std::vector<RefinementRow> radius_refinement(const KernelSpec& spec, const std::vector<int>& Ns) {
  for (size_t i = 1; i < Ns.size(); ++i)
    if (Ns[i] < Ns[i - 1]) throw InputError("radius_refinement: grid list must be nondecreasing");
  std::vector<RefinementRow> rows;
  for (int N : Ns) {
    const DiscretizationResult D = discretize(spec, N);
    RefinementRow row;
    row.N = N;
    row.r = bonsall_radius(D.matrix).r;
    row.d = lower_radius(D.matrix).d;
    if (!rows.empty()) {
      row.rDelta = row.r - rows.back().r;
      row.dDelta = row.d - rows.back().d;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace tropispec
