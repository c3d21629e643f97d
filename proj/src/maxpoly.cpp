#include "tropispec/maxpoly.hpp"

#include <algorithm>
#include <cmath>

namespace tropispec {

PosPolynomial::PosPolynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {
  for (double a : c_)
    if (!std::isfinite(a) || a < 0.0)
      throw InputError("polynomial coefficients must be finite and >= 0");
}

int PosPolynomial::degree() const {
  for (int j = static_cast<int>(c_.size()) - 1; j >= 0; --j)
    if (c_[static_cast<size_t>(j)] > 0.0) return j;
  return -1;
}

double eval_scalar(const PosPolynomial& q, double t) {
  if (t < 0.0) throw InputError("eval_scalar: t must be >= 0");
  double best = 0.0;
  double tp = 1.0;  // t^j with 0^0 = 1
  for (size_t j = 0; j < q.coeffs().size(); ++j) {
    best = std::max(best, q.coeffs()[j] * tp);
    tp *= t;
  }
  return best;
}

ConeMatrix eval_operator(const PosPolynomial& q, const ConeMatrix& A) {
  if (A.semiring() != Semiring::MaxTimes)
    throw UnsupportedError("eval_operator: maxpolynomials require the max-times semiring");
  const int n = A.dim();
  ConeMatrix Q(n, Semiring::MaxTimes);
  ConeMatrix power = ConeMatrix::identity(n, Semiring::MaxTimes);
  for (size_t j = 0; j < q.coeffs().size(); ++j) {
    if (j > 0) power = mat_mul(power, A);
    const double a = q.coeffs()[j];
    if (a == 0.0) continue;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) Q(r, c) = std::max(Q(r, c), a * power(r, c));
  }
  return Q;
}

PosPolynomial power_coeffs(const PosPolynomial& q, int m) {
  if (m < 1) throw InputError("power_coeffs: m must be >= 1");
  std::vector<double> out(q.coeffs().size());
  for (size_t j = 0; j < out.size(); ++j)
    out[j] = q.coeffs()[j] > 0.0 ? std::pow(q.coeffs()[j], static_cast<double>(m)) : 0.0;
  return PosPolynomial(std::move(out));
}

namespace {

double set_distance(double v, const std::vector<double>& set) {
  double best = std::numeric_limits<double>::infinity();
  for (double u : set) best = std::min(best, std::abs(u - v));
  return best;
}

bool subset_within(const std::vector<double>& sub, const std::vector<double>& super, double tolScale,
                   double& worst) {
  bool ok = true;
  for (double v : sub) {
    const double dist = set_distance(v, super);
    worst = std::max(worst, dist);
    if (dist > 1e-9 * std::max(tolScale, std::abs(v))) ok = false;
  }
  return ok;
}

}  // namespace

MappingReport verify_point_mapping(const ConeMatrix& A, const PosPolynomial& q) {
  MappingReport rep;
  const auto sigmaA = point_spectrum(A);
  const ConeMatrix Q = eval_operator(q, A);
  const auto sigmaQ = point_spectrum(Q);

  for (const auto& p : sigmaA) rep.lhsSet.push_back(eval_scalar(q, p.lambda));
  for (const auto& p : sigmaQ) rep.rhsSet.push_back(p.lambda);
  std::sort(rep.lhsSet.begin(), rep.lhsSet.end());
  std::sort(rep.rhsSet.begin(), rep.rhsSet.end());

  double worst = 0.0;
  rep.containsForward = subset_within(rep.lhsSet, rep.rhsSet, 1.0, worst);

  std::vector<double> lhsPlusConstant = rep.lhsSet;
  lhsPlusConstant.push_back(q.coeff(0));
  std::sort(lhsPlusConstant.begin(), lhsPlusConstant.end());
  rep.containsBackward = subset_within(rep.rhsSet, lhsPlusConstant, 1.0, worst);
  rep.slack = worst;

  rep.equalityRequired = q.coeff(0) == 0.0;
  if (rep.equalityRequired) {
    double w2 = 0.0;
    rep.equalityHolds = subset_within(rep.lhsSet, rep.rhsSet, 1.0, w2) &&
                        subset_within(rep.rhsSet, rep.lhsSet, 1.0, w2);
  } else {
    rep.equalityHolds = rep.containsForward && rep.containsBackward;
  }
  return rep;
}

RadiusMapping verify_radius_mapping(const ConeMatrix& A, const PosPolynomial& q) {
  RadiusMapping m;
  m.lhs = bonsall_radius(eval_operator(q, A)).r;
  m.rhs = eval_scalar(q, bonsall_radius(A).r);
  m.pass = std::abs(m.lhs - m.rhs) <= 1e-9 * std::max(1.0, m.rhs);
  return m;
}

RadiusMapping verify_lower_mapping(const ConeMatrix& A, const PosPolynomial& q) {
  RadiusMapping m;
  m.lhs = lower_radius(eval_operator(q, A)).d;
  m.rhs = eval_scalar(q, lower_radius(A).d);
  m.pass = std::abs(m.lhs - m.rhs) <= 1e-6 * std::max(1.0, m.rhs);
  return m;
}

}  // namespace tropispec
