#include "tropispec/hadamard.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>

#include "tropispec/rng.hpp"
#include "tropispec/spectral.hpp"

namespace tropispec {

namespace {

void require_max_times(const std::vector<ConeMatrix>& As) {
  if (As.empty()) throw InputError("operator list must be nonempty");
  const int n = As.front().dim();
  for (const auto& A : As) {
    if (A.semiring() != Semiring::MaxTimes)
      throw UnsupportedError("Hadamard inequalities require the max-times semiring");
    if (A.dim() != n) throw InputError("operator dimensions must agree");
  }
}

double norm_slack(double lhs, double rhs) { return (rhs - lhs) / std::max(1.0, rhs); }

struct CheckRow {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  bool equality = false;
  bool informational = false;
};

std::vector<CheckRow> check_cor53(const std::vector<ConeMatrix>& As) {
  require_max_times(As);
  const int m = static_cast<int>(As.size());
  const auto Ps = cyclic_products(As);

  ConeMatrix hadA = As.front();
  for (int i = 1; i < m; ++i) hadA = hadamard_product(hadA, As[static_cast<size_t>(i)]);
  ConeMatrix hadP = Ps.front();
  for (int i = 1; i < m; ++i) hadP = hadamard_product(hadP, Ps[static_cast<size_t>(i)]);
  ConeMatrix chain = As.front();
  for (int i = 1; i < m; ++i) chain = mat_mul(chain, As[static_cast<size_t>(i)]);

  const double rHadA = bonsall_radius(hadA).r;
  const double rHadP = std::pow(bonsall_radius(hadP).r, 1.0 / m);
  const double rChain = bonsall_radius(chain).r;

  std::vector<CheckRow> rows{{"cor5.3-eq14-left", rHadA, rHadP, false, false},
                             {"cor5.3-eq14-right", rHadP, rChain, false, false}};
  if (m == 2) {
    rows.push_back({"cor5.3-eq15-left", rHadA, rHadP, false, false});
    rows.push_back({"cor5.3-eq15-right", rHadP, rChain, false, false});
    const ConeMatrix AB = mat_mul(As[0], As[1]);
    const ConeMatrix BA = mat_mul(As[1], As[0]);
    const ConeMatrix A2B2 = mat_mul(mat_mul(As[0], As[0]), mat_mul(As[1], As[1]));
    const double rMix = bonsall_radius(hadamard_product(AB, BA)).r;
    const double rA2B2 = bonsall_radius(A2B2).r;
    const double rAB = bonsall_radius(AB).r;
    const double rBA = bonsall_radius(BA).r;
    rows.push_back({"cor5.3-eq16", rMix, rA2B2, false, false});
    rows.push_back({"eq17-commute", rAB, rBA, true, false});
    // surfaced only: whether the eq16 route beats the eq15 route
    rows.push_back({"remark5.4-eq16-vs-eq15", rA2B2, rAB * rAB, false, true});
  }
  return rows;
}

std::vector<CheckRow> check_thm55(const PosPolynomial& q, const std::vector<ConeMatrix>& As) {
  require_max_times(As);
  const int m = static_cast<int>(As.size());
  const auto Ps = cyclic_products(As);

  ConeMatrix hadA = As.front();
  for (int i = 1; i < m; ++i) hadA = hadamard_product(hadA, As[static_cast<size_t>(i)]);
  ConeMatrix hadP = Ps.front();
  for (int i = 1; i < m; ++i) hadP = hadamard_product(hadP, Ps[static_cast<size_t>(i)]);
  ConeMatrix chain = As.front();
  for (int i = 1; i < m; ++i) chain = mat_mul(chain, As[static_cast<size_t>(i)]);

  const PosPolynomial qm = power_coeffs(q, m);
  const double lhs = bonsall_radius(eval_operator(q, hadA)).r;
  const double mid = std::pow(bonsall_radius(eval_operator(qm, hadP)).r, 1.0 / m);
  const double rhs = bonsall_radius(eval_operator(q, chain)).r;

  std::vector<CheckRow> rows{{"thm5.5-eq18-left", lhs, mid, false, false},
                             {"thm5.5-eq18-right", mid, rhs, false, false}};
  if (m == 2) {
    rows.push_back({"thm5.5-eq19-left", lhs, mid, false, false});
    rows.push_back({"thm5.5-eq19-right", mid, rhs, false, false});
    const ConeMatrix AB = mat_mul(As[0], As[1]);
    const ConeMatrix BA = mat_mul(As[1], As[0]);
    const ConeMatrix A2B2 = mat_mul(mat_mul(As[0], As[0]), mat_mul(As[1], As[1]));
    const double l20 = bonsall_radius(eval_operator(q, hadamard_product(AB, BA))).r;
    const double r20 = bonsall_radius(eval_operator(q, A2B2)).r;
    rows.push_back({"thm5.5-eq20", l20, r20, false, false});
  }
  return rows;
}

std::vector<CheckRow> check_thm51(const std::vector<std::vector<ConeMatrix>>& grid,
                                  const std::vector<double>& alphas) {
  if (grid.empty()) throw InputError("thm5.1: grid must be nonempty");
  const size_t m = alphas.size();
  for (const auto& row : grid) {
    if (row.size() != m) throw InputError("thm5.1: grid rows must match the alpha count");
    require_max_times(row);
  }
  for (double a : alphas)
    if (!(a > 0.0)) throw InputError("thm5.1: alphas must be > 0");
  const int dim = grid.front().front().dim();
  for (const auto& row : grid)
    for (const auto& Aij : row)
      if (Aij.dim() != dim) throw InputError("thm5.1: operator dimensions must agree");

  // lhs: product over rows of the Hadamard-weighted row composite
  ConeMatrix lhsM = ConeMatrix::identity(dim, Semiring::MaxTimes);
  for (const auto& row : grid) {
    ConeMatrix comp = hadamard_power(row[0], alphas[0]);
    for (size_t j = 1; j < m; ++j)
      comp = hadamard_product(comp, hadamard_power(row[j], alphas[j]));
    lhsM = mat_mul(lhsM, comp);
  }
  // rhs: Hadamard product of the powered column chains
  std::vector<ConeMatrix> colChains;
  for (size_t j = 0; j < m; ++j) {
    ConeMatrix chain = grid.front()[j];
    for (size_t i = 1; i < grid.size(); ++i) chain = mat_mul(chain, grid[i][j]);
    colChains.push_back(chain);
  }
  ConeMatrix rhsM = hadamard_power(colChains[0], alphas[0]);
  for (size_t j = 1; j < m; ++j)
    rhsM = hadamard_product(rhsM, hadamard_power(colChains[j], alphas[j]));

  // entrywise inequality: record the entry pair with the least slack
  double entrySlack = std::numeric_limits<double>::infinity();
  double worstL = 0.0, worstR = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const double s = norm_slack(lhsM(i, j), rhsM(i, j));
      if (s < entrySlack) {
        entrySlack = s;
        worstL = lhsM(i, j);
        worstR = rhsM(i, j);
      }
    }

  double radiusRhs = 1.0;
  for (size_t j = 0; j < m; ++j)
    radiusRhs *= std::pow(bonsall_radius(colChains[j]).r, alphas[j]);
  const double radiusLhs = bonsall_radius(lhsM).r;

  std::vector<CheckRow> rows{{"thm5.1-entrywise", worstL, worstR, false, false},
                             {"thm5.1-eq13", radiusLhs, radiusRhs, false, false}};
  return rows;
}

class ReportAccumulator {
 public:
  void add(const std::vector<CheckRow>& rows, std::uint64_t seed, const std::string& digest) {
    for (const auto& row : rows) {
      InequalityReport& rep = get(row.id);
      rep.equality = row.equality;
      rep.informational = row.informational;
      const double slack = norm_slack(row.lhs, row.rhs);
      rep.instances += 1;
      rep.minSlack = std::min(rep.minSlack, slack);
      rep.rows.push_back({seed, row.lhs, row.rhs, slack});
      if (!row.informational) {
        const bool violated = row.equality ? std::abs(slack) > 1e-9 : slack < -1e-9;
        if (violated) {
          rep.violations.push_back(digest);
          rep.seeds.push_back(seed);
        }
        if (slack > 1e-6) rep.strictCount += 1;
        if (slack < 1e-6) rep.nearTightCount += 1;
      }
    }
  }

  std::vector<InequalityReport> finish() {
    std::vector<InequalityReport> out;
    for (auto& [id, rep] : reports_) {
      if (!rep.equality && !rep.informational)
        rep.ensembleInsufficient = rep.strictCount < 1 || rep.nearTightCount < 1;
      out.push_back(std::move(rep));
    }
    return out;
  }

  InequalityReport& get(const std::string& id) {
    auto [it, inserted] = reports_.try_emplace(id);
    if (inserted) it->second.name = id;
    return it->second;
  }

 private:
  std::map<std::string, InequalityReport> reports_;
};

std::vector<InequalityReport> single_instance(const std::vector<CheckRow>& rows,
                                              const std::string& digest) {
  ReportAccumulator acc;
  acc.add(rows, 0, digest);
  return acc.finish();
}

}  // namespace

std::vector<ConeMatrix> cyclic_products(const std::vector<ConeMatrix>& As) {
  require_max_times(As);
  const int m = static_cast<int>(As.size());
  std::vector<ConeMatrix> out;
  out.reserve(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    ConeMatrix P = As[static_cast<size_t>(i)];
    for (int k = 1; k < m; ++k) P = mat_mul(P, As[static_cast<size_t>((i + k) % m)]);
    out.push_back(std::move(P));
  }
  return out;
}

std::vector<InequalityReport> verify_thm51(const std::vector<std::vector<ConeMatrix>>& grid,
                                           const std::vector<double>& alphas) {
  std::vector<ConeMatrix> all;
  for (const auto& row : grid) all.insert(all.end(), row.begin(), row.end());
  return single_instance(check_thm51(grid, alphas), instance_digest(all, alphas));
}

std::vector<InequalityReport> verify_cor53(const std::vector<ConeMatrix>& As) {
  return single_instance(check_cor53(As), instance_digest(As, {}));
}

std::vector<InequalityReport> verify_thm55(const PosPolynomial& q, const std::vector<ConeMatrix>& As) {
  return single_instance(check_thm55(q, As), instance_digest(As, q.coeffs()));
}

bool any_violation(const std::vector<InequalityReport>& reports) {
  for (const auto& rep : reports)
    if (!rep.violations.empty()) return true;
  return false;
}

std::string instance_digest(const std::vector<ConeMatrix>& mats, const std::vector<double>& extra) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](double v) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    std::memcpy(&bits, &v, sizeof(bits));
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffu;
      h *= 0x100000001b3ull;
    }
  };
  for (const auto& M : mats) {
    mix(static_cast<double>(M.dim()));
    for (double v : M.entries()) mix(v);
  }
  for (double v : extra) mix(v);
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<InequalityReport> ensemble_run(const EnsembleConfig& cfg) {
  if (cfg.trials < 0) throw InputError("ensemble: trials must be >= 0");
  if (cfg.nMin < 1 || cfg.nMax < cfg.nMin) throw InputError("ensemble: bad dimension range");
  if (cfg.mMin < 1 || cfg.mMax < cfg.mMin) throw InputError("ensemble: bad m range");
  if (cfg.degMin < 0 || cfg.degMax < cfg.degMin) throw InputError("ensemble: bad degree range");
  if (cfg.gridRowsMin < 1 || cfg.gridRowsMax < cfg.gridRowsMin)
    throw InputError("ensemble: bad grid row range");
  if (!(cfg.entry.low > 0.0) || cfg.entry.high < cfg.entry.low)
    throw InputError("ensemble: bad entry magnitude range");
  if (cfg.entry.pZero < 0.0 || cfg.entry.pZero >= 1.0)
    throw InputError("ensemble: pZero must lie in [0, 1)");

  ReportAccumulator acc;
  // keep the standard ids present even for trials = 0
  for (const char* id :
       {"thm5.1-entrywise", "thm5.1-eq13", "cor5.3-eq14-left", "cor5.3-eq14-right", "thm5.5-eq18-left",
        "thm5.5-eq18-right"})
    acc.get(id);

  for (int t = 0; t < cfg.trials; ++t) {
    const std::uint64_t seed = derive_seed(cfg.masterSeed, static_cast<std::uint64_t>(t));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::uniform_int_distribution<int> dimDist(cfg.nMin, cfg.nMax);
    std::uniform_int_distribution<int> mDist(cfg.mMin, cfg.mMax);
    std::uniform_int_distribution<int> degDist(cfg.degMin, cfg.degMax);
    std::uniform_int_distribution<int> rowsDist(cfg.gridRowsMin, cfg.gridRowsMax);

    const int dim = dimDist(rng);
    const int m = mDist(rng);
    const bool equalityProne = t % 10 == 7;

    auto drawEntry = [&]() {
      if (uni(rng) < cfg.entry.pZero) return 0.0;
      const double lo = std::log(cfg.entry.low), hi = std::log(cfg.entry.high);
      return std::exp(lo + (hi - lo) * uni(rng));
    };
    auto drawMatrix = [&]() {
      ConeMatrix M(dim, Semiring::MaxTimes);
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) M(i, j) = drawEntry();
      return M;
    };
    auto drawDiagonal = [&]() {
      ConeMatrix M(dim, Semiring::MaxTimes);
      for (int i = 0; i < dim; ++i) M(i, i) = drawEntry();
      return M;
    };

    std::vector<ConeMatrix> As;
    if (equalityProne) {
      const ConeMatrix D = drawDiagonal();
      As.assign(static_cast<size_t>(m), D);
    } else {
      for (int i = 0; i < m; ++i) As.push_back(drawMatrix());
    }

    const int rows = rowsDist(rng);
    std::vector<std::vector<ConeMatrix>> grid(static_cast<size_t>(rows));
    std::vector<double> alphas(static_cast<size_t>(m));
    for (double& a : alphas) a = 0.2 + 1.8 * uni(rng);
    for (int i = 0; i < rows; ++i) {
      if (equalityProne)
        grid[static_cast<size_t>(i)] = As;
      else
        for (int j = 0; j < m; ++j) grid[static_cast<size_t>(i)].push_back(drawMatrix());
    }

    const int deg = degDist(rng);
    std::vector<double> coeffs(static_cast<size_t>(deg) + 1, 0.0);
    for (double& c : coeffs)
      if (uni(rng) >= 0.3) c = std::exp(std::log(0.25) + (std::log(4.0) - std::log(0.25)) * uni(rng));
    const PosPolynomial q{coeffs};

    std::vector<ConeMatrix> all = As;
    for (const auto& row : grid) all.insert(all.end(), row.begin(), row.end());
    const std::string digest = instance_digest(all, coeffs);

    acc.add(check_cor53(As), seed, digest);
    acc.add(check_thm55(q, As), seed, digest);
    acc.add(check_thm51(grid, alphas), seed, digest);
  }
  return acc.finish();
}

}  // namespace tropispec
