#include "tropispec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "tropispec/rng.hpp"

namespace tropispec {

const char* to_string(LowerMethod m) {
  switch (m) {
    case LowerMethod::SigmaPMin: return "sigma-p-min";
    case LowerMethod::FeketeLowerBound: return "fekete-lower-bound";
    case LowerMethod::ZeroMatrix: return "zero-matrix";
  }
  return "?";
}

namespace {

constexpr double kLog4 = 1.3862943611198906;

// log-range of the positive entries (0 when at most one distinct value)
double log_spread(const ConeMatrix& A) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  bool any = false;
  for (double v : A.entries())
    if (v > 0.0) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      any = true;
    }
  if (!any || hi <= lo) return 0.0;
  return std::log(hi / lo);
}

struct ClassData {
  SccResult scc;
  std::vector<std::optional<CycleInfo>> cycles;  // per class
  std::vector<double> lambdaLog;                 // -inf for trivial classes
  std::vector<char> accepted;                    // spectral classes
};

ClassData analyze_classes(const ConeMatrix& A, const std::vector<double>& logW) {
  const int n = A.dim();
  ClassData cd;
  const auto adj = support_digraph(A);
  cd.scc = tarjan_scc(n, adj);
  const int C = cd.scc.count;
  cd.cycles.resize(static_cast<size_t>(C));
  cd.lambdaLog.assign(static_cast<size_t>(C), kNegInf);
  for (int c = 0; c < C; ++c) {
    cd.cycles[static_cast<size_t>(c)] = karp_max_mean_cycle(cd.scc.members[static_cast<size_t>(c)], n, logW, A.entries());
    if (cd.cycles[static_cast<size_t>(c)])
      cd.lambdaLog[static_cast<size_t>(c)] = cd.cycles[static_cast<size_t>(c)]->log_mean;
  }

  // bestAbove[c] = max class mean over c and every class with a directed
  // path into c.  Tarjan ids: cross edges go from higher id to lower id.
  std::vector<std::vector<int>> preds(static_cast<size_t>(C));
  for (int u = 0; u < n; ++u)
    for (int v : adj[static_cast<size_t>(u)]) {
      const int cu = cd.scc.comp[static_cast<size_t>(u)], cv = cd.scc.comp[static_cast<size_t>(v)];
      if (cu != cv) preds[static_cast<size_t>(cv)].push_back(cu);
    }
  std::vector<double> bestAbove = cd.lambdaLog;
  for (int c = C - 1; c >= 0; --c)
    for (int p : preds[static_cast<size_t>(c)])
      bestAbove[static_cast<size_t>(c)] = std::max(bestAbove[static_cast<size_t>(c)], bestAbove[static_cast<size_t>(p)]);

  cd.accepted.assign(static_cast<size_t>(C), 0);
  for (int c = 0; c < C; ++c) {
    if (!cd.cycles[static_cast<size_t>(c)]) continue;
    const double own = cd.lambdaLog[static_cast<size_t>(c)];
    const double tol = 1e-12 * std::max(1.0, std::abs(bestAbove[static_cast<size_t>(c)]));
    cd.accepted[static_cast<size_t>(c)] = own >= bestAbove[static_cast<size_t>(c)] - tol;
  }
  return cd;
}

// Running k -> A^{2^k} in log domain.
struct DoublingState {
  int n;
  Semiring sr;
  std::vector<double> m;
  double scale = 0.0;
  bool zero = false;
  std::vector<double> tmp;

  explicit DoublingState(const ConeMatrix& A)
      : n(A.dim()), sr(A.semiring()), m(A.log_entries()), tmp(m.size()) {
    zero = detail::log_normalize(m, scale);
  }
  void square() {
    if (zero) return;
    detail::log_mat_mul(sr, n, m.data(), m.data(), tmp.data());
    m.swap(tmp);
    scale *= 2.0;
    zero = detail::log_normalize(m, scale);
  }
  double norm_log() const { return zero ? kNegInf : scale + detail::log_op_norm(sr, n, m.data()); }
  double min_modulus_log() const { return zero ? kNegInf : scale + detail::log_min_modulus(n, m.data()); }
};

std::vector<double> root_sequence(const ConeMatrix& A, int K, bool useNorm) {
  if (K < 0 || K > 40) throw InputError("root sequence: K must lie in [0, 40]");
  std::vector<double> out;
  out.reserve(static_cast<size_t>(K) + 1);
  out.push_back(useNorm ? op_norm(A) : min_modulus(A));
  DoublingState st(A);
  for (int k = 1; k <= K; ++k) {
    st.square();
    const double l = useNorm ? st.norm_log() : st.min_modulus_log();
    out.push_back(l == kNegInf ? 0.0 : std::exp(l / std::ldexp(1.0, k)));
  }
  return out;
}

double plus_times_radius(const ConeMatrix& A) {
  // ||A^{2^K}||^{1/2^K}; at K = 37 the finite-power bias is below 1e-9
  // for admissible entry ranges, and every sequence element stays >= r.
  constexpr int K = 37;
  DoublingState st(A);
  for (int k = 1; k <= K; ++k) st.square();
  const double l = st.norm_log();
  return l == kNegInf ? 0.0 : std::exp(l / std::ldexp(1.0, K));
}

int smallest_zero_column(const ConeMatrix& A) {
  const int n = A.dim();
  for (int j = 0; j < n; ++j) {
    bool zero = true;
    for (int i = 0; i < n && zero; ++i)
      if (A(i, j) > 0.0) zero = false;
    if (zero) return j;
  }
  return -1;
}

double eigen_residual(const ConeMatrix& A, double lambda, const ConeVector& x) {
  const ConeVector Ax = mat_apply(A, x);
  double r = 0.0;
  for (int i = 0; i < x.size(); ++i) r = std::max(r, std::abs(Ax[i] - lambda * x[i]));
  return r;
}

}  // namespace

RadiusResult bonsall_radius(const ConeMatrix& A) {
  if (A.semiring() == Semiring::PlusTimes) return {plus_times_radius(A), std::nullopt};
  const auto logW = A.log_entries();
  const ClassData cd = analyze_classes(A, logW);
  RadiusResult res;
  double bestLog = kNegInf;
  for (int c = 0; c < cd.scc.count; ++c) {
    const auto& cyc = cd.cycles[static_cast<size_t>(c)];
    if (cyc && cyc->log_mean > bestLog) {
      bestLog = cyc->log_mean;
      res.r = cyc->geometric_mean;
      res.certificate = CycleCertificate{cyc->nodes, cyc->geometric_mean};
    }
  }
  return res;  // r = 0, no certificate when the digraph is acyclic
}

std::vector<double> norm_root_sequence(const ConeMatrix& A, int K) { return root_sequence(A, K, true); }

std::vector<double> min_modulus_root_sequence(const ConeMatrix& A, int K) {
  return root_sequence(A, K, false);
}

PointSpectrumResult point_spectrum_detailed(const ConeMatrix& A) {
  if (A.semiring() != Semiring::MaxTimes)
    throw UnsupportedError("point_spectrum: only the max-times semiring is supported");
  const int n = A.dim();
  const auto logW = A.log_entries();
  const ClassData cd = analyze_classes(A, logW);

  PointSpectrumResult out;

  const int zc = smallest_zero_column(A);
  if (zc >= 0) out.pairs.push_back({0.0, ConeVector::basis(n, zc), std::nullopt});

  std::vector<double> lx(static_cast<size_t>(n)), nxt(static_cast<size_t>(n));
  for (int c = 0; c < cd.scc.count; ++c) {
    if (!cd.accepted[static_cast<size_t>(c)]) continue;
    const CycleInfo& cyc = *cd.cycles[static_cast<size_t>(c)];
    const double lambda = cyc.geometric_mean;
    const int critical = cyc.nodes.front();

    // x_i = max over paths i -> critical of the A/lambda path weight; the
    // empty path contributes 1 at the critical node.  Bellman relaxation
    // in log domain, n-1 rounds.
    std::fill(lx.begin(), lx.end(), kNegInf);
    lx[static_cast<size_t>(critical)] = 0.0;
    for (int round = 0; round + 1 < n; ++round) {
      bool changed = false;
      for (int i = 0; i < n; ++i) {
        double best = lx[static_cast<size_t>(i)];
        for (int j = 0; j < n; ++j) {
          const double w = logW[static_cast<size_t>(i) * n + j];
          if (w == kNegInf || lx[static_cast<size_t>(j)] == kNegInf) continue;
          best = std::max(best, w - cyc.log_mean + lx[static_cast<size_t>(j)]);
        }
        nxt[static_cast<size_t>(i)] = best;
        if (best != lx[static_cast<size_t>(i)]) changed = true;
      }
      lx.swap(nxt);
      if (!changed) break;
    }
    double mx = kNegInf;
    for (double v : lx) mx = std::max(mx, v);
    std::vector<double> xe(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
      if (lx[static_cast<size_t>(i)] != kNegInf) xe[static_cast<size_t>(i)] = std::exp(lx[static_cast<size_t>(i)] - mx);
    ConeVector x(std::move(xe));

    const double res = eigen_residual(A, lambda, x);
    if (res <= 1e-9 * x.sup_norm()) {
      out.pairs.push_back({lambda, std::move(x), CycleCertificate{cyc.nodes, lambda}});
    } else {
      out.rejected.push_back({lambda, res, critical});
    }
  }

  std::sort(out.pairs.begin(), out.pairs.end(),
            [](const Eigenpair& a, const Eigenpair& b) { return a.lambda < b.lambda; });
  std::vector<Eigenpair> dedup;
  for (auto& p : out.pairs) {
    if (!dedup.empty() && std::abs(p.lambda - dedup.back().lambda) <= 1e-9 * std::max(1.0, p.lambda))
      continue;
    dedup.push_back(std::move(p));
  }
  out.pairs = std::move(dedup);
  return out;
}

std::vector<Eigenpair> point_spectrum(const ConeMatrix& A) { return point_spectrum_detailed(A).pairs; }

LowerRadiusResult lower_radius(const ConeMatrix& A) {
  if (A.semiring() == Semiring::PlusTimes) {
    const auto seq = min_modulus_root_sequence(A, 20);
    return {seq.back(), LowerMethod::FeketeLowerBound};
  }
  const auto ps = point_spectrum_detailed(A);
  if (ps.pairs.empty()) return {0.0, LowerMethod::ZeroMatrix};
  const double d = ps.pairs.front().lambda;

  const auto seq = min_modulus_root_sequence(A, 20);
  const double last = seq.back();
  if (d == 0.0) {
    if (last > 1e-12)
      throw ConsistencyError("lower_radius: sequence positive but eigen-minimum is 0");
    return {0.0, LowerMethod::SigmaPMin};
  }
  // Fekete: every sequence element is a certified lower bound for d.
  if (last > d * (1.0 + 1e-9))
    throw ConsistencyError("lower_radius: doubling sequence exceeds the eigen-minimum");
  // finite-power bias of the k = 20 element is at most (n+2)*spread/2^20
  const double gap = (d - last) / d;
  const double bias = std::expm1((A.dim() + 2) * log_spread(A) / 1048576.0);
  if (gap > std::max(1e-4, 2.0 * bias))
    throw ConsistencyError("lower_radius: eigen-minimum and doubling sequence disagree");
  return {d, LowerMethod::SigmaPMin};
}

double local_radius(const ConeMatrix& A, const ConeVector& x, int K) {
  if (x.size() != A.dim()) throw InputError("local_radius: dimension mismatch");
  if (x.is_zero()) throw InputError("local_radius: x must be nonzero");
  if (K < 0 || K > 40) throw InputError("local_radius: K must lie in [0, 40]");
  if (K == 0) {
    const ConeVector y = mat_apply(A, x);
    return y.sup_norm() / x.sup_norm();
  }
  const ScaledPower P = mat_power(A, std::uint64_t{1} << K);
  std::vector<double> xl(static_cast<size_t>(x.size()));
  for (int i = 0; i < x.size(); ++i) xl[static_cast<size_t>(i)] = x[i] > 0.0 ? std::log(x[i]) : kNegInf;
  const auto yl = P.apply_log(xl);
  double m = kNegInf;
  for (double v : yl) m = std::max(m, v);
  if (m == kNegInf) return 0.0;
  const double xn = std::log(x.sup_norm());
  return std::exp((m - xn) / std::ldexp(1.0, K));
}

namespace {

// Exact minimization of phi(u) = max_i |h_i(u)| / max(M, u) over u in
// [0,1], where row i of h is the residual with coordinate t replaced by
// u.  Piecewise linear over piecewise linear-fractional: the optimum is
// attained at a breakpoint or a pairwise line intersection, so we
// enumerate candidates and evaluate.
struct CoordinateProblem {
  const ConeMatrix& A;
  double s;
  int t;
  std::vector<double> rest;  // row residual contribution without coordinate t
  std::vector<double> xfix;  // current x (entry t ignored)
  double M;                  // max_{j != t} x_j

  CoordinateProblem(const ConeMatrix& A_, double s_, int t_, const std::vector<double>& x)
      : A(A_), s(s_), t(t_), rest(static_cast<size_t>(A_.dim())), xfix(x) {
    const int n = A.dim();
    M = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != t) M = std::max(M, x[static_cast<size_t>(j)]);
    for (int i = 0; i < n; ++i) {
      double r;
      if (A.semiring() == Semiring::MaxTimes) {
        r = 0.0;
        for (int j = 0; j < n; ++j)
          if (j != t) r = std::max(r, A(i, j) * x[static_cast<size_t>(j)]);
      } else {
        r = 0.0;
        for (int j = 0; j < n; ++j)
          if (j != t) r += A(i, j) * x[static_cast<size_t>(j)];
      }
      rest[static_cast<size_t>(i)] = r;
    }
  }

  double h(int i, double u) const {
    const double ait = A(i, t);
    const double row = A.semiring() == Semiring::MaxTimes
                           ? std::max(rest[static_cast<size_t>(i)], ait * u)
                           : rest[static_cast<size_t>(i)] + ait * u;
    const double xi = i == t ? u : xfix[static_cast<size_t>(i)];
    return row - s * xi;
  }

  double g(double u) const {
    double m = 0.0;
    for (int i = 0; i < A.dim(); ++i) m = std::max(m, std::abs(h(i, u)));
    return m;
  }

  double phi(double u) const {
    const double den = std::max(M, u);
    if (den <= 0.0) return std::numeric_limits<double>::infinity();
    return g(u) / den;
  }

  // linear form of h_i on a segment with midpoint mid
  void line(int i, double mid, double& a, double& b) const {
    const double ait = A(i, t);
    if (A.semiring() == Semiring::MaxTimes) {
      if (ait * mid >= rest[static_cast<size_t>(i)]) {
        a = ait;
        b = 0.0;
      } else {
        a = 0.0;
        b = rest[static_cast<size_t>(i)];
      }
    } else {
      a = ait;
      b = rest[static_cast<size_t>(i)];
    }
    if (i == t)
      a -= s;
    else
      b -= s * xfix[static_cast<size_t>(i)];
  }
};

double minimize_coordinate(const CoordinateProblem& cp, double& bestU) {
  const int n = cp.A.dim();
  std::vector<double> cand{0.0, 1.0};
  if (cp.M > 0.0 && cp.M < 1.0) cand.push_back(cp.M);
  if (cp.A.semiring() == Semiring::MaxTimes) {
    for (int i = 0; i < n; ++i) {
      const double ait = cp.A(i, cp.t);
      if (ait > 0.0) {
        const double k = cp.rest[static_cast<size_t>(i)] / ait;
        if (k > 0.0 && k < 1.0) cand.push_back(k);
      }
    }
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  // refine each segment with zero crossings and pairwise intersections
  std::vector<double> full = cand;
  std::vector<double> a(static_cast<size_t>(n)), b(static_cast<size_t>(n));
  for (size_t si = 0; si + 1 < cand.size(); ++si) {
    const double p = cand[si], q = cand[si + 1];
    const double mid = 0.5 * (p + q);
    for (int i = 0; i < n; ++i) cp.line(i, mid, a[static_cast<size_t>(i)], b[static_cast<size_t>(i)]);
    for (int i = 0; i < n; ++i) {
      if (a[static_cast<size_t>(i)] != 0.0) {
        const double z = -b[static_cast<size_t>(i)] / a[static_cast<size_t>(i)];
        if (z > p && z < q) full.push_back(z);
      }
      for (int j = i + 1; j < n; ++j)
        for (int si1 = -1; si1 <= 1; si1 += 2)
          for (int sj1 = -1; sj1 <= 1; sj1 += 2) {
            const double da = si1 * a[static_cast<size_t>(i)] - sj1 * a[static_cast<size_t>(j)];
            if (da == 0.0) continue;
            const double z = (sj1 * b[static_cast<size_t>(j)] - si1 * b[static_cast<size_t>(i)]) / da;
            if (z > p && z < q) full.push_back(z);
          }
    }
  }
  std::sort(full.begin(), full.end());
  full.erase(std::unique(full.begin(), full.end()), full.end());

  double best = std::numeric_limits<double>::infinity();
  bestU = 1.0;
  for (double u : full) {  // sorted: ties resolve to the smallest u
    const double v = cp.phi(u);
    if (v < best) {
      best = v;
      bestU = u;
    }
  }
  return best;
}

double residual_phi(const ConeMatrix& A, double s, const std::vector<double>& x) {
  const int n = A.dim();
  double nrm = 0.0;
  for (double v : x) nrm = std::max(nrm, v);
  if (nrm <= 0.0) return std::numeric_limits<double>::infinity();
  double m = 0.0;
  for (int i = 0; i < n; ++i) {
    double row;
    if (A.semiring() == Semiring::MaxTimes) {
      row = 0.0;
      for (int j = 0; j < n; ++j) row = std::max(row, A(i, j) * x[static_cast<size_t>(j)]);
    } else {
      row = 0.0;
      for (int j = 0; j < n; ++j) row += A(i, j) * x[static_cast<size_t>(j)];
    }
    m = std::max(m, std::abs(row - s * x[static_cast<size_t>(i)]));
  }
  return m / nrm;
}

void normalize_sup(std::vector<double>& x) {
  double nrm = 0.0;
  for (double v : x) nrm = std::max(nrm, v);
  if (nrm > 0.0)
    for (double& v : x) v /= nrm;
}

double descend_from(const ConeMatrix& A, double s, std::vector<double> x, std::vector<double>& bestX) {
  const int n = A.dim();
  normalize_sup(x);
  double cur = residual_phi(A, s, x);
  for (int pass = 0; pass < 100; ++pass) {
    const double before = cur;
    for (int t = 0; t < n; ++t) {
      CoordinateProblem cp(A, s, t, x);
      if (cp.M <= 0.0) {
        // x supported on coordinate t alone; scale-invariant, pin to 1
        x[static_cast<size_t>(t)] = 1.0;
        cur = residual_phi(A, s, x);
        continue;
      }
      double u;
      const double v = minimize_coordinate(cp, u);
      if (v < cur) {
        x[static_cast<size_t>(t)] = u;
        normalize_sup(x);
        cur = v;
      }
    }
    if (before - cur < 1e-12) break;
  }
  bestX = std::move(x);
  return cur;
}

}  // namespace

ApResidualResult ap_residual(const ConeMatrix& A, double s, int restarts, std::uint64_t seed) {
  if (s < 0.0) throw InputError("ap_residual: s must be >= 0");
  if (restarts < 1) throw InputError("ap_residual: restarts must be >= 1");
  const int n = A.dim();

  std::vector<std::vector<double>> starts;
  for (int j = 0; j < n; ++j) {
    std::vector<double> e(static_cast<size_t>(n), 0.0);
    e[static_cast<size_t>(j)] = 1.0;
    starts.push_back(std::move(e));
  }
  if (A.semiring() == Semiring::MaxTimes) {
    for (const auto& p : point_spectrum(A)) starts.push_back(p.x.entries());
  }
  std::mt19937_64 rng(derive_seed(seed, 0x61707265u));
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  while (static_cast<int>(starts.size()) < restarts) {
    std::vector<double> x(static_cast<size_t>(n));
    for (double& v : x) v = uni(rng);
    normalize_sup(x);
    if (x == std::vector<double>(static_cast<size_t>(n), 0.0)) x[0] = 1.0;
    starts.push_back(std::move(x));
  }

  double best = std::numeric_limits<double>::infinity();
  std::vector<double> bestX(static_cast<size_t>(n), 0.0);
  bestX[0] = 1.0;
  for (auto& st : starts) {
    std::vector<double> outX;
    const double v = descend_from(A, s, st, outX);
    if (v < best) {
      best = v;
      bestX = std::move(outX);
    }
  }
  return {best, ConeVector(std::move(bestX))};
}

std::vector<ScanPoint> ap_scan(const ConeMatrix& A, int gridPoints, double tol, std::uint64_t seed) {
  if (gridPoints < 2) throw InputError("ap_scan: gridPoints must be >= 2");
  const double d = lower_radius(A).d;
  const double r = bonsall_radius(A).r;
  const double lo = 0.9 * d, hi = 1.1 * r;

  std::vector<double> ss;
  for (int k = 0; k < gridPoints; ++k)
    ss.push_back(gridPoints == 1 ? lo : lo + (hi - lo) * k / (gridPoints - 1));
  ss.push_back(d);
  ss.push_back(r);
  if (A.semiring() == Semiring::MaxTimes)
    for (const auto& p : point_spectrum(A)) ss.push_back(p.lambda);
  std::sort(ss.begin(), ss.end());
  ss.erase(std::unique(ss.begin(), ss.end()), ss.end());

  std::vector<ScanPoint> out;
  out.reserve(ss.size());
  for (size_t i = 0; i < ss.size(); ++i) {
    const double rho = ap_residual(A, ss[i], 32, derive_seed(seed, i)).rho;
    out.push_back({ss[i], rho});
  }
  (void)tol;
  return out;
}

namespace {

struct LogOrbit {
  // single A' step in log domain
  const std::vector<double>& logAprime;
  Semiring sr;
  int n;
  std::vector<double> buf;

  LogOrbit(const std::vector<double>& la, Semiring s, int n_) : logAprime(la), sr(s), n(n_), buf(static_cast<size_t>(n_)) {}
  void step(std::vector<double>& v) {
    detail::log_mat_vec(sr, n, logAprime.data(), v.data(), buf.data());
    v.swap(buf);
  }
};

double log_sup(const std::vector<double>& v) {
  double m = kNegInf;
  for (double x : v) m = std::max(m, x);
  return m;
}

// log(a + b) given log a, log b
double log_add(double la, double lb) {
  if (la == kNegInf) return lb;
  if (lb == kNegInf) return la;
  const double hi = std::max(la, lb), lo = std::min(la, lb);
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace

ApproxEigenvectorResult approx_eigenvector(const ConeMatrix& A, double eps, std::uint64_t seed) {
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("approx_eigenvector: eps must lie in (0,1)");
  const double d = lower_radius(A).d;
  if (!(d > 0.0))
    throw UnsupportedError("approx_eigenvector: requires d(A) > 0 (normalization by d undefined)");
  const int dim = A.dim();
  const bool maxTimes = A.semiring() == Semiring::MaxTimes;
  const double factor = maxTimes ? 16.0 : 32.0;  // normality constant M = 1 on the sup-norm cone
  const std::uint64_t nn = static_cast<std::uint64_t>(std::max(3.0, std::floor(factor / (eps * eps)) + 1.0));

  ConeMatrix Aprime(dim, A.semiring());
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) Aprime(i, j) = A(i, j) / d;
  const auto logAprime = Aprime.log_entries();
  const ScaledPower P = mat_power(Aprime, nn);

  // start at the minimizing column of a deep power
  int startCol = 0;
  {
    const ScaledPower deep = mat_power(Aprime, 1024);
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < dim; ++j) {
      double colMax = kNegInf;
      for (int i = 0; i < dim; ++i)
        colMax = std::max(colMax, deep.base()(i, j) > 0.0 ? std::log(deep.base()(i, j)) : kNegInf);
      if (colMax < best) {
        best = colMax;
        startCol = j;
      }
    }
  }

  const double spread = log_spread(Aprime);
  const int horizon = static_cast<int>(std::min(
      100000.0, std::max(16.0, std::ceil((dim + 2) * spread / kLog4) + 8.0)));

  std::mt19937_64 rng(derive_seed(seed, 0x61706569u));
  std::uniform_real_distribution<double> uni(-3.0, 0.0);

  for (int attempt = 0; attempt < 9; ++attempt) {
    std::vector<double> x0(static_cast<size_t>(dim), kNegInf);
    if (attempt == 0) {
      x0[static_cast<size_t>(startCol)] = 0.0;
    } else {
      for (double& v : x0) v = uni(rng);
      const double m = log_sup(x0);
      for (double& v : x0) v -= m;
    }

    // a_j = ||A'^{jn} x||, running in log domain
    std::deque<std::vector<double>> z;  // z[k] = log A'^{(j-?)n} x
    std::deque<double> la;
    z.push_back(x0);
    la.push_back(log_sup(x0));
    int m = -1;
    for (int j = 1; j <= horizon + 1; ++j) {
      auto next = P.apply_log(z.back());
      z.push_back(std::move(next));
      la.push_back(log_sup(z.back()));
      if (z.size() > 3) {
        z.pop_front();
        la.pop_front();
      }
      if (j >= 2) {
        // test block index j-1: a_m >= max(a_{m-1}, a_{m+1}) / 4
        if (la[1] + kLog4 >= std::max(la[0], la[2])) {
          m = j - 1;
          break;
        }
      }
    }
    if (m < 0) continue;  // stall: retry from a random start

    // rebuild the orbit from A'^{(m-1)n} x and accumulate y and u
    LogOrbit orbit(logAprime, A.semiring(), dim);
    std::vector<double> v = z.front();  // log A'^{(m-1)n} x
    const double lam = la[1];           // log a_m
    std::vector<double> y(static_cast<size_t>(dim), kNegInf), u(static_cast<size_t>(dim), kNegInf);
    const std::uint64_t steps = 2 * nn;  // exponents (m-1)n .. (m+1)n-1
    for (std::uint64_t stp = 0; stp < steps; ++stp) {
      for (int i = 0; i < dim; ++i) {
        const double vi = v[static_cast<size_t>(i)];
        if (maxTimes)
          y[static_cast<size_t>(i)] = std::max(y[static_cast<size_t>(i)], vi);
        else
          y[static_cast<size_t>(i)] = log_add(y[static_cast<size_t>(i)], vi);
      }
      if (stp <= steps - 2) {  // the tent stops at exponent (m+1)n-2
        const double w = stp < nn ? static_cast<double>(stp + 1) / static_cast<double>(nn)
                                  : static_cast<double>(2 * nn - 1 - stp) / static_cast<double>(nn);
        const double lw = std::log(w);
        for (int i = 0; i < dim; ++i) {
          const double vi = v[static_cast<size_t>(i)];
          if (vi == kNegInf) continue;
          if (maxTimes)
            u[static_cast<size_t>(i)] = std::max(u[static_cast<size_t>(i)], lw + vi);
          else
            u[static_cast<size_t>(i)] = log_add(u[static_cast<size_t>(i)], lw + vi);
        }
      }
      if (stp + 1 < steps) orbit.step(v);
    }

    const bool useY = log_sup(y) >= std::log(8.0 / eps) + lam;
    const std::vector<double>& wlog = useY ? y : u;
    const double wmax = log_sup(wlog);
    std::vector<double> we(static_cast<size_t>(dim), 0.0);
    for (int i = 0; i < dim; ++i)
      if (wlog[static_cast<size_t>(i)] != kNegInf) we[static_cast<size_t>(i)] = std::exp(wlog[static_cast<size_t>(i)] - wmax);
    ConeVector w(std::move(we));

    const ConeVector Aw = mat_apply(Aprime, w);
    double res = 0.0;
    for (int i = 0; i < dim; ++i) res = std::max(res, std::abs(Aw[i] - w[i]));
    res /= w.sup_norm();

    if (res <= eps) {
      ApproxEigenvectorResult out;
      out.vector = std::move(w);
      out.epsilon = eps;
      out.residual = res;
      out.trace = {nn, static_cast<std::uint64_t>(m + 1) * nn, m, useY ? 'y' : 'u'};
      return out;
    }
  }
  throw ConsistencyError("approx_eigenvector: no admissible block index within the provable horizon");
}

// ---------------------------------------------------------------------------
// brute force oracle (n <= 3)

namespace {

struct OracleCycle {
  std::vector<int> nodes;
  double mean;
};

std::vector<OracleCycle> enumerate_cycles(const ConeMatrix& A) {
  const int n = A.dim();
  std::vector<OracleCycle> cycles;
  for (int i = 0; i < n; ++i)
    if (A(i, i) > 0.0) cycles.push_back({{i}, A(i, i)});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (A(i, j) > 0.0 && A(j, i) > 0.0) cycles.push_back({{i, j}, std::sqrt(A(i, j) * A(j, i))});
  if (n == 3) {
    const int perms[2][3] = {{0, 1, 2}, {0, 2, 1}};
    for (const auto& p : perms) {
      const double w = A(p[0], p[1]) * A(p[1], p[2]) * A(p[2], p[0]);
      if (w > 0.0) cycles.push_back({{p[0], p[1], p[2]}, std::cbrt(w)});
    }
  }
  return cycles;
}

// compass-search refinement over the free coordinates; diagonal moves
// matter because the residual surface is a max of |linear| terms whose
// valleys need not align with the axes
double refine_residual(const ConeMatrix& A, double s, std::vector<double>& x,
                       const std::vector<int>& freeCoords, double width) {
  double best = residual_phi(A, s, x);
  const int f = static_cast<int>(freeCoords.size());
  std::vector<std::vector<double>> dirs;
  for (int c = 0; c < f; ++c) {
    std::vector<double> d(static_cast<size_t>(f), 0.0);
    d[static_cast<size_t>(c)] = 1.0;
    dirs.push_back(d);
  }
  for (int c1 = 0; c1 < f; ++c1)
    for (int c2 = c1 + 1; c2 < f; ++c2)
      for (double sgn : {1.0, -1.0}) {
        std::vector<double> d(static_cast<size_t>(f), 0.0);
        d[static_cast<size_t>(c1)] = 1.0;
        d[static_cast<size_t>(c2)] = sgn;
        dirs.push_back(d);
      }

  double w = width;
  std::vector<double> cand = x;
  for (int iter = 0; iter < 400 && w > 1e-16; ++iter) {
    bool improved = false;
    for (const auto& d : dirs)
      for (double step : {w, -w, 0.5 * w, -0.5 * w}) {
        cand = x;
        for (int c = 0; c < f; ++c)
          cand[static_cast<size_t>(freeCoords[static_cast<size_t>(c)])] = std::clamp(
              x[static_cast<size_t>(freeCoords[static_cast<size_t>(c)])] + step * d[static_cast<size_t>(c)], 0.0,
              1.0);
        const double v = residual_phi(A, s, cand);
        if (v < best - 1e-18) {
          best = v;
          x = cand;
          improved = true;
        }
      }
    if (!improved) w *= 0.5;
  }
  return best;
}

struct SphereMin {
  double value;
  std::vector<double> x;
};

// min of ||Ax - sx|| / ||x|| over the positive part of the sup-norm sphere
SphereMin sphere_minimum(const ConeMatrix& A, double s, int G) {
  const int n = A.dim();
  SphereMin out{std::numeric_limits<double>::infinity(), std::vector<double>(static_cast<size_t>(n), 0.0)};
  std::vector<int> freeCoords;
  std::vector<double> x(static_cast<size_t>(n), 0.0);

  for (int pivot = 0; pivot < n; ++pivot) {
    freeCoords.clear();
    for (int c = 0; c < n; ++c)
      if (c != pivot) freeCoords.push_back(c);
    std::fill(x.begin(), x.end(), 0.0);
    x[static_cast<size_t>(pivot)] = 1.0;

    // coarse grid over the free coordinates, keep the best few cells
    const int f = static_cast<int>(freeCoords.size());
    std::vector<std::pair<double, std::vector<double>>> top;
    std::vector<int> idx(static_cast<size_t>(f), 0);
    const int total = static_cast<int>(std::pow(G + 1, f));
    for (int cell = 0; cell < total; ++cell) {
      int rem = cell;
      for (int a = 0; a < f; ++a) {
        idx[static_cast<size_t>(a)] = rem % (G + 1);
        rem /= (G + 1);
      }
      for (int a = 0; a < f; ++a)
        x[static_cast<size_t>(freeCoords[static_cast<size_t>(a)])] =
            static_cast<double>(idx[static_cast<size_t>(a)]) / G;
      const double v = residual_phi(A, s, x);
      top.emplace_back(v, x);
      std::sort(top.begin(), top.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      if (top.size() > 4) top.pop_back();
    }
    for (auto& [v0, xc] : top) {
      std::vector<double> xr = xc;
      const double v = refine_residual(A, s, xr, freeCoords, 1.0 / G);
      if (v < out.value) {
        out.value = v;
        out.x = xr;
      }
    }
  }
  return out;
}

}  // namespace

double brute_force_residual(const ConeMatrix& A, double s, int gridResolution) {
  if (A.dim() > 3) throw InputError("brute_force_residual: n must be <= 3");
  return sphere_minimum(A, s, std::max(2, gridResolution)).value;
}

SpectrumReport brute_force_oracle(const ConeMatrix& A, int gridResolution) {
  if (A.dim() > 3) throw InputError("brute_force_oracle: n must be <= 3");
  if (A.semiring() != Semiring::MaxTimes)
    throw InputError("brute_force_oracle: max-times only");
  const int n = A.dim();
  const int G = std::max(2, gridResolution);

  SpectrumReport rep;

  const auto cycles = enumerate_cycles(A);
  for (const auto& c : cycles) {
    if (c.mean > rep.r) {
      rep.r = c.mean;
      rep.certificate = CycleCertificate{c.nodes, c.mean};
    }
  }

  // candidate eigenvalues: 0 and every cycle geometric mean
  std::vector<double> cand{0.0};
  for (const auto& c : cycles) cand.push_back(c.mean);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end(),
                         [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, a); }),
             cand.end());

  const double acceptTol = 1e-9 * std::max(1.0, op_norm(A));

  // solve Ax = lambda x over every support pattern by grid + refinement
  for (double lambda : cand) {
    double bestRes = std::numeric_limits<double>::infinity();
    std::vector<double> bestX;
    for (int mask = 1; mask < (1 << n); ++mask) {
      std::vector<int> support;
      for (int c = 0; c < n; ++c)
        if (mask & (1 << c)) support.push_back(c);
      for (int pivot : support) {
        std::vector<int> freeCoords;
        for (int c : support)
          if (c != pivot) freeCoords.push_back(c);
        std::vector<double> x(static_cast<size_t>(n), 0.0);
        x[static_cast<size_t>(pivot)] = 1.0;
        const int f = static_cast<int>(freeCoords.size());
        std::vector<std::pair<double, std::vector<double>>> top;
        std::vector<int> idx(static_cast<size_t>(f), 0);
        const int total = static_cast<int>(std::pow(G, f));
        for (int cell = 0; cell < total; ++cell) {
          int rem = cell;
          for (int a2 = 0; a2 < f; ++a2) {
            idx[static_cast<size_t>(a2)] = rem % G;
            rem /= G;
          }
          for (int a2 = 0; a2 < f; ++a2)
            x[static_cast<size_t>(freeCoords[static_cast<size_t>(a2)])] =
                static_cast<double>(idx[static_cast<size_t>(a2)] + 1) / G;
          const double v = residual_phi(A, lambda, x);
          top.emplace_back(v, x);
          std::sort(top.begin(), top.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });
          if (top.size() > 4) top.pop_back();
        }
        for (auto& [v0, xc] : top) {
          std::vector<double> xr = xc;
          const double v = refine_residual(A, lambda, xr, freeCoords, 1.0 / G);
          if (v < bestRes) {
            bestRes = v;
            bestX = xr;
          }
        }
      }
    }
    if (bestRes <= acceptTol) {
      normalize_sup(bestX);
      rep.sigma_p.push_back({lambda, ConeVector(bestX), std::nullopt});
    }
  }
  std::sort(rep.sigma_p.begin(), rep.sigma_p.end(),
            [](const Eigenpair& a, const Eigenpair& b) { return a.lambda < b.lambda; });

  rep.d = rep.sigma_p.empty() ? 0.0 : rep.sigma_p.front().lambda;
  rep.d_method = LowerMethod::SigmaPMin;

  const double lo = 0.9 * rep.d, hi = 1.1 * rep.r;
  for (int k = 0; k < 11; ++k) {
    const double s = lo + (hi - lo) * k / 10.0;
    rep.scan.push_back({s, sphere_minimum(A, s, G).value});
  }

  // local radii by direct normalized iteration
  for (int j = 0; j < n; ++j) {
    std::vector<double> v(static_cast<size_t>(n), 0.0);
    v[static_cast<size_t>(j)] = 1.0;
    double logAcc = 0.0;
    const int steps = 4096;
    bool dead = false;
    for (int k = 0; k < steps; ++k) {
      ConeVector nv = mat_apply(A, ConeVector(v));
      const double nrm = nv.sup_norm();
      if (nrm == 0.0) {
        dead = true;
        break;
      }
      logAcc += std::log(nrm);
      v = nv.entries();
      for (double& t : v) t /= nrm;
    }
    rep.local_radii.push_back(dead ? 0.0 : std::exp(logAcc / steps));
  }
  return rep;
}

SpectrumReport compute_spectrum(const ConeMatrix& A, const SpectrumOptions& opt) {
  SpectrumReport rep;
  const RadiusResult rr = bonsall_radius(A);
  rep.r = rr.r;
  rep.certificate = rr.certificate;
  const LowerRadiusResult lr = lower_radius(A);
  rep.d = lr.d;
  rep.d_method = lr.method;
  if (A.semiring() == Semiring::MaxTimes) {
    auto ps = point_spectrum_detailed(A);
    rep.sigma_p = std::move(ps.pairs);
    rep.rejected = std::move(ps.rejected);
  }
  rep.scan = ap_scan(A, opt.grid_points, opt.tol, opt.seed);
  for (int j = 0; j < A.dim(); ++j)
    rep.local_radii.push_back(local_radius(A, ConeVector::basis(A.dim(), j), opt.K));

  // report invariants
  const double scale = std::max(1.0, rep.r);
  for (const auto& p : rep.sigma_p) {
    if (eigen_residual(A, p.lambda, p.x) > 1e-9 * p.x.sup_norm())
      throw ConsistencyError("spectrum report: eigenpair residual above bound");
    if (p.lambda < rep.d - 1e-9 * scale || p.lambda > rep.r + 1e-9 * scale)
      throw ConsistencyError("spectrum report: eigenvalue outside [d, r]");
  }
  if (rep.d > rep.r + 1e-9 * scale)
    throw ConsistencyError("spectrum report: d exceeds r");
  return rep;
}

}  // namespace tropispec
