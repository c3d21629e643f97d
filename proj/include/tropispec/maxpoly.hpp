#pragma once

#include <vector>

#include "tropispec/core.hpp"
#include "tropispec/spectral.hpp"

namespace tropispec {

// Polynomial with nonnegative coefficients; q_max(t) = max_j a_j t^j is
// the induced maxpolynomial.
class PosPolynomial {
 public:
  PosPolynomial() = default;
  explicit PosPolynomial(std::vector<double> coeffs);

  // largest index with a positive coefficient; -1 for the zero polynomial
  int degree() const;
  const std::vector<double>& coeffs() const { return c_; }
  double coeff(int j) const { return j >= 0 && j < static_cast<int>(c_.size()) ? c_[static_cast<size_t>(j)] : 0.0; }

 private:
  std::vector<double> c_;
};

// q_max(t) = max_j a_j t^j with 0^0 = 1, so the constant term counts at t = 0.
double eval_scalar(const PosPolynomial& q, double t);

// Matrix of the operator x -> join_j a_j A^j x: the entrywise maximum of
// the scaled powers a_j A^j (A^0 = I).  MaxTimes only.
ConeMatrix eval_operator(const PosPolynomial& q, const ConeMatrix& A);

// q^[m]: every coefficient raised to the m-th power.
PosPolynomial power_coeffs(const PosPolynomial& q, int m);

struct MappingReport {
  std::vector<double> lhsSet;  // q_max(sigma_p(A)), sorted
  std::vector<double> rhsSet;  // sigma_p(q_max(A)), sorted
  bool containsForward = false;   // lhsSet subset of rhsSet
  bool containsBackward = false;  // rhsSet subset of lhsSet u {a_0}
  bool equalityRequired = false;  // a_0 = 0: the sets must coincide
  bool equalityHolds = false;
  double slack = 0.0;  // largest unmatched set distance over the two inclusions
};

// Point-spectrum mapping check: q_max(sigma_p(A)) vs sigma_p(q_max(A)).
MappingReport verify_point_mapping(const ConeMatrix& A, const PosPolynomial& q);

struct RadiusMapping {
  double lhs = 0.0;  // r(q_max(A)) resp. d(q_max(A))
  double rhs = 0.0;  // q_max(r(A))  resp. q_max(d(A))
  bool pass = false;
};

RadiusMapping verify_radius_mapping(const ConeMatrix& A, const PosPolynomial& q);
RadiusMapping verify_lower_mapping(const ConeMatrix& A, const PosPolynomial& q);

}  // namespace tropispec
