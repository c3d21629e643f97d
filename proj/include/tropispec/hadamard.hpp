#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tropispec/core.hpp"
#include "tropispec/maxpoly.hpp"

namespace tropispec {

// One evaluated inequality instance: slack = (rhs - lhs) / max(1, rhs).
struct InequalityInstance {
  std::uint64_t seed = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
};

struct InequalityReport {
  std::string name;
  int instances = 0;
  double minSlack = std::numeric_limits<double>::infinity();
  std::vector<std::string> violations;  // digests of offending inputs
  std::vector<std::uint64_t> seeds;     // seeds of offending inputs
  bool equality = false;       // |slack| is the violation measure
  bool informational = false;  // surfaced comparison, never a violation
  int strictCount = 0;         // slack > 1e-6
  int nearTightCount = 0;      // slack < 1e-6
  bool ensembleInsufficient = false;
  std::vector<InequalityInstance> rows;
};

// P_i = A_i A_{i+1} ... A_m A_1 ... A_{i-1}.
std::vector<ConeMatrix> cyclic_products(const std::vector<ConeMatrix>& As);

// Hadamard-weighted chain bound: the entrywise inequality and the
// spectral-radius product bound, for an n x m grid of operators.
std::vector<InequalityReport> verify_thm51(const std::vector<std::vector<ConeMatrix>>& grid,
                                           const std::vector<double>& alphas);

// Cyclic-product chain r(A_1 o...o A_m) <= r(P_1 o...o P_m)^{1/m} <= r(A_1...A_m);
// for m = 2 additionally the mixed-product bounds and the commutation
// identity r(AB) = r(BA).
std::vector<InequalityReport> verify_cor53(const std::vector<ConeMatrix>& As);

// Maxpolynomial extension of the chain via q^[m].
std::vector<InequalityReport> verify_thm55(const PosPolynomial& q, const std::vector<ConeMatrix>& As);

struct EntryDistribution {
  double low = 1e-2;
  double high = 1e2;
  double pZero = 0.2;
};

struct EnsembleConfig {
  int trials = 500;
  std::uint64_t masterSeed = 0;
  int nMin = 2, nMax = 6;        // matrix dimension
  int mMin = 1, mMax = 4;        // Hadamard factor count
  int degMin = 0, degMax = 4;    // polynomial degree
  int gridRowsMin = 1, gridRowsMax = 3;
  EntryDistribution entry;
};

// Deterministic randomized sweep; reports merged per inequality id.
std::vector<InequalityReport> ensemble_run(const EnsembleConfig& cfg);

bool any_violation(const std::vector<InequalityReport>& reports);

// FNV-1a digest of the raw double entries, for violation records.
std::string instance_digest(const std::vector<ConeMatrix>& mats, const std::vector<double>& extra);

}  // namespace tropispec
