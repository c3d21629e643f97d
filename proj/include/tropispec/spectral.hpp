#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tropispec/core.hpp"
#include "tropispec/graph.hpp"

namespace tropispec {

// Witnessing cycle for a cycle-geometric-mean value.
struct CycleCertificate {
  std::vector<int> nodes;
  double geometric_mean = 0.0;
};

struct Eigenpair {
  double lambda = 0.0;
  ConeVector x;  // sup-norm 1
  std::optional<CycleCertificate> certificate;
};

struct RejectedCandidate {
  double lambda = 0.0;
  double residual = 0.0;
  int class_node = -1;  // representative node of the offending class
};

struct PointSpectrumResult {
  std::vector<Eigenpair> pairs;  // sorted by eigenvalue, deduplicated
  std::vector<RejectedCandidate> rejected;
};

struct RadiusResult {
  double r = 0.0;
  std::optional<CycleCertificate> certificate;
};

enum class LowerMethod { SigmaPMin, FeketeLowerBound, ZeroMatrix };
const char* to_string(LowerMethod m);

struct LowerRadiusResult {
  double d = 0.0;
  LowerMethod method = LowerMethod::SigmaPMin;
};

struct ApResidualResult {
  double rho = 0.0;
  ConeVector argmin;
};

struct ScanPoint {
  double s = 0.0;
  double rho = 0.0;
};

struct ApproxEigenvectorResult {
  ConeVector vector;       // sup-norm 1
  double epsilon = 0.0;    // requested bound
  double residual = 0.0;   // achieved ||A'w - w|| / ||w||, A' = A / d(A)
  struct Trace {
    std::uint64_t n = 0;   // block length from the target bound
    std::uint64_t N = 0;   // total orbit steps examined
    int m = 0;             // accepted block index
    char branch = 'u';     // 'y' or 'u'
  } trace;
};

struct SpectrumReport {
  double r = 0.0;
  std::optional<CycleCertificate> certificate;
  double d = 0.0;
  LowerMethod d_method = LowerMethod::SigmaPMin;
  std::vector<Eigenpair> sigma_p;
  std::vector<RejectedCandidate> rejected;
  std::vector<ScanPoint> scan;
  std::vector<double> local_radii;
};

// Bonsall cone spectral radius.  MaxTimes: maximum cycle geometric mean
// over the support digraph (Karp per strongly connected component), with
// a witnessing cycle; no cycles -> r = 0.  PlusTimes: Perron root
// estimated from the doubling norm sequence (no certificate).
RadiusResult bonsall_radius(const ConeMatrix& A);

// [op_norm(A^{2^k})^{1/2^k}] for k = 0..K (K <= 40).
std::vector<double> norm_root_sequence(const ConeMatrix& A, int K);

// [min_modulus(A^{2^k})^{1/2^k}] for k = 0..K (K <= 40).
std::vector<double> min_modulus_root_sequence(const ConeMatrix& A, int K);

// Exact max-times point spectrum via spectral classes; every returned
// pair is verified directly against ||Ax - lambda x|| <= 1e-9 ||x||.
PointSpectrumResult point_spectrum_detailed(const ConeMatrix& A);
std::vector<Eigenpair> point_spectrum(const ConeMatrix& A);

// Lower spectral radius d(A).  MaxTimes: min of the point spectrum,
// cross-checked against the doubling minimum-modulus sequence.
// PlusTimes: Fekete-certified lower bound from the sequence at k = 20.
LowerRadiusResult lower_radius(const ConeMatrix& A);

// Estimate of r_x(A) = limsup ||A^n x||^{1/n} at n = 2^K.
double local_radius(const ConeMatrix& A, const ConeVector& x, int K);

// Upper bound on rho(s) = min { ||Ax - sx|| : x >= 0, ||x|| = 1 } by
// multi-start projected coordinate descent with exact line search.
// Deterministic for a fixed seed.
ApResidualResult ap_residual(const ConeMatrix& A, double s, int restarts = 32,
                             std::uint64_t seed = 0);

// Residual scan over a grid on [0.9 d(A), 1.1 r(A)], with d, r and all
// point-spectrum values injected as exact grid points.
std::vector<ScanPoint> ap_scan(const ConeMatrix& A, int gridPoints, double tol,
                               std::uint64_t seed);

// Constructive approximate eigenvector for A' = A / d(A): finds a block
// index m with a_m >= max(a_{m-1}, a_{m+1}) / 4 and returns either the
// plain orbit join/sum y or the tent-weighted vector u, guaranteeing
// ||A'w - w|| / ||w|| <= eps.  Requires d(A) > 0 and eps in (0,1).
ApproxEigenvectorResult approx_eigenvector(const ConeMatrix& A, double eps,
                                           std::uint64_t seed = 0);

// Independent verification oracle for n <= 3 MaxTimes matrices: cycles
// by enumeration, eigenpairs by support-pattern grid search with local
// refinement, residuals by sphere grid.  Test use only.
SpectrumReport brute_force_oracle(const ConeMatrix& A, int gridResolution);

// Residual minimization by sphere grid + pattern refinement (the oracle's
// independent route to rho(s)); n <= 3.
double brute_force_residual(const ConeMatrix& A, double s, int gridResolution);

struct SpectrumOptions {
  int K = 20;
  int grid_points = 21;
  double tol = 1e-9;
  int restarts = 32;
  std::uint64_t seed = 0;
};

// Full report; throws ConsistencyError if the assembled report violates
// the ordering chain d <= min sigma_p <= max sigma_p <= r or an
// eigenpair residual bound.
SpectrumReport compute_spectrum(const ConeMatrix& A, const SpectrumOptions& opt = {});

}  // namespace tropispec
