#include "tropispec/core.hpp"

#include <algorithm>
#include <cmath>

namespace tropispec {

const char* to_string(Semiring sr) {
  return sr == Semiring::MaxTimes ? "max-times" : "plus-times";
}

Semiring semiring_from_string(const std::string& s) {
  if (s == "max-times") return Semiring::MaxTimes;
  if (s == "plus-times") return Semiring::PlusTimes;
  throw InputError("unknown semiring: \"" + s + "\" (expected max-times or plus-times)");
}

namespace {

void check_entry(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0)
    throw InputError(std::string(what) + " entries must be finite and >= 0");
}

void check_same_shape(const ConeMatrix& A, const ConeMatrix& B) {
  if (A.dim() != B.dim()) throw InputError("matrix dimension mismatch");
  if (A.semiring() != B.semiring()) throw InputError("semiring mismatch");
}

}  // namespace

ConeVector::ConeVector(std::vector<double> entries) : e_(std::move(entries)) {
  for (double v : e_) check_entry(v, "vector");
}

ConeVector ConeVector::zeros(int n) { return ConeVector(std::vector<double>(static_cast<size_t>(n), 0.0)); }

ConeVector ConeVector::basis(int n, int j) {
  if (j < 0 || j >= n) throw InputError("basis index out of range");
  std::vector<double> e(static_cast<size_t>(n), 0.0);
  e[static_cast<size_t>(j)] = 1.0;
  return ConeVector(std::move(e));
}

double ConeVector::sup_norm() const {
  double m = 0.0;
  for (double v : e_) m = std::max(m, v);
  return m;
}

bool ConeVector::is_zero() const { return sup_norm() == 0.0; }

ConeMatrix::ConeMatrix(int n, Semiring sr) : n_(n), e_(static_cast<size_t>(n) * n, 0.0), sr_(sr) {
  if (n <= 0) throw InputError("matrix dimension must be positive");
}

ConeMatrix::ConeMatrix(const std::vector<std::vector<double>>& rows, Semiring sr)
    : n_(static_cast<int>(rows.size())), sr_(sr) {
  if (n_ == 0) throw InputError("matrix dimension must be positive");
  e_.reserve(static_cast<size_t>(n_) * n_);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n_) throw InputError("matrix must be square");
    e_.insert(e_.end(), row.begin(), row.end());
  }
  validate();
}

ConeMatrix::ConeMatrix(int n, std::vector<double> rowMajor, Semiring sr)
    : n_(n), e_(std::move(rowMajor)), sr_(sr) {
  if (n <= 0) throw InputError("matrix dimension must be positive");
  if (e_.size() != static_cast<size_t>(n) * n) throw InputError("matrix must be square");
  validate();
}

void ConeMatrix::validate() const {
  for (double v : e_) check_entry(v, "matrix");
}

ConeMatrix ConeMatrix::identity(int n, Semiring sr) {
  ConeMatrix I(n, sr);
  for (int i = 0; i < n; ++i) I(i, i) = 1.0;
  return I;
}

bool ConeMatrix::is_zero() const {
  for (double v : e_)
    if (v != 0.0) return false;
  return true;
}

std::vector<double> ConeMatrix::log_entries() const {
  std::vector<double> out(e_.size());
  for (size_t i = 0; i < e_.size(); ++i) out[i] = e_[i] > 0.0 ? std::log(e_[i]) : kNegInf;
  return out;
}

ConeVector mat_apply(const ConeMatrix& A, const ConeVector& x) {
  const int n = A.dim();
  if (x.size() != n) throw InputError("mat_apply: dimension mismatch");
  std::vector<double> y(static_cast<size_t>(n), 0.0);
  if (A.semiring() == Semiring::MaxTimes) {
    for (int i = 0; i < n; ++i) {
      double m = 0.0;
      for (int j = 0; j < n; ++j) m = std::max(m, A(i, j) * x[j]);
      y[static_cast<size_t>(i)] = m;
    }
  } else {
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += A(i, j) * x[j];
      y[static_cast<size_t>(i)] = s;
    }
  }
  return ConeVector(std::move(y));
}

ConeMatrix mat_mul(const ConeMatrix& A, const ConeMatrix& B) {
  check_same_shape(A, B);
  const int n = A.dim();
  ConeMatrix C(n, A.semiring());
  if (A.semiring() == Semiring::MaxTimes) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double m = 0.0;
        for (int k = 0; k < n; ++k) m = std::max(m, A(i, k) * B(k, j));
        C(i, j) = m;
      }
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += A(i, k) * B(k, j);
        C(i, j) = s;
      }
  }
  for (double v : C.entries())
    if (!std::isfinite(v)) throw InputError("mat_mul: product exceeds double range");
  return C;
}

double op_norm(const ConeMatrix& A) {
  const int n = A.dim();
  double m = 0.0;
  if (A.semiring() == Semiring::MaxTimes) {
    for (double v : A.entries()) m = std::max(m, v);
  } else {
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += A(i, j);
      m = std::max(m, s);
    }
  }
  return m;
}

double min_modulus(const ConeMatrix& A) {
  const int n = A.dim();
  double m = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    double colMax = 0.0;
    for (int i = 0; i < n; ++i) colMax = std::max(colMax, A(i, j));
    m = std::min(m, colMax);
  }
  return m;
}

ConeMatrix hadamard_product(const ConeMatrix& A, const ConeMatrix& B) {
  check_same_shape(A, B);
  const int n = A.dim();
  ConeMatrix C(n, A.semiring());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) C(i, j) = A(i, j) * B(i, j);
  for (double v : C.entries())
    if (!std::isfinite(v)) throw InputError("hadamard_product: product exceeds double range");
  return C;
}

ConeMatrix hadamard_power(const ConeMatrix& A, double gamma) {
  if (!(gamma > 0.0)) throw InputError("hadamard_power: gamma must be > 0");
  const int n = A.dim();
  ConeMatrix C(n, A.semiring());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) C(i, j) = A(i, j) > 0.0 ? std::pow(A(i, j), gamma) : 0.0;
  for (double v : C.entries())
    if (!std::isfinite(v)) throw InputError("hadamard_power: power exceeds double range");
  return C;
}

ConeVector vec_join(const std::vector<ConeVector>& xs) {
  if (xs.empty()) throw InputError("vec_join: empty list");
  const int n = xs.front().size();
  std::vector<double> y(static_cast<size_t>(n), 0.0);
  for (const auto& x : xs) {
    if (x.size() != n) throw InputError("vec_join: dimension mismatch");
    for (int i = 0; i < n; ++i) y[static_cast<size_t>(i)] = std::max(y[static_cast<size_t>(i)], x[i]);
  }
  return ConeVector(std::move(y));
}

bool lemma_good_holds(const ConeVector& x, const ConeVector& y, double s, double tol) {
  if (!(s > 1.0)) throw InputError("lemma_good_holds: requires s > 1");
  if (tol < 0.0) throw InputError("lemma_good_holds: tol must be >= 0");
  if (x.size() != y.size()) throw InputError("lemma_good_holds: dimension mismatch");
  double premise = 0.0, conclusion = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    premise = std::max(premise, std::abs(std::max(x[i], y[i]) - s * x[i]));
    conclusion = std::max(conclusion, std::abs(y[i] - s * x[i]));
  }
  return !(premise <= tol) || (conclusion <= tol * (1.0 + s));
}

namespace detail {

double log_sum_exp(const double* t, int n) {
  double m = kNegInf;
  for (int i = 0; i < n; ++i) m = std::max(m, t[i]);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    if (t[i] != kNegInf) s += std::exp(t[i] - m);
  return m + std::log(s);
}

void log_mat_mul(Semiring sr, int n, const double* a, const double* b, double* out) {
  std::vector<double> terms(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (sr == Semiring::MaxTimes) {
        double m = kNegInf;
        for (int k = 0; k < n; ++k) {
          const double aik = a[static_cast<size_t>(i) * n + k];
          const double bkj = b[static_cast<size_t>(k) * n + j];
          if (aik != kNegInf && bkj != kNegInf) m = std::max(m, aik + bkj);
        }
        out[static_cast<size_t>(i) * n + j] = m;
      } else {
        for (int k = 0; k < n; ++k) {
          const double aik = a[static_cast<size_t>(i) * n + k];
          const double bkj = b[static_cast<size_t>(k) * n + j];
          terms[static_cast<size_t>(k)] = (aik == kNegInf || bkj == kNegInf) ? kNegInf : aik + bkj;
        }
        out[static_cast<size_t>(i) * n + j] = log_sum_exp(terms.data(), n);
      }
    }
}

void log_mat_vec(Semiring sr, int n, const double* a, const double* x, double* out) {
  std::vector<double> terms(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (sr == Semiring::MaxTimes) {
      double m = kNegInf;
      for (int j = 0; j < n; ++j) {
        const double aij = a[static_cast<size_t>(i) * n + j];
        if (aij != kNegInf && x[j] != kNegInf) m = std::max(m, aij + x[j]);
      }
      out[i] = m;
    } else {
      for (int j = 0; j < n; ++j) {
        const double aij = a[static_cast<size_t>(i) * n + j];
        terms[static_cast<size_t>(j)] = (aij == kNegInf || x[j] == kNegInf) ? kNegInf : aij + x[j];
      }
      out[i] = log_sum_exp(terms.data(), n);
    }
  }
}

bool log_normalize(std::vector<double>& m, double& scale) {
  double mx = kNegInf;
  for (double v : m) mx = std::max(mx, v);
  if (mx == kNegInf) return true;
  for (double& v : m)
    if (v != kNegInf) v -= mx;
  scale += mx;
  return false;
}

double log_op_norm(Semiring sr, int n, const double* a) {
  double m = kNegInf;
  if (sr == Semiring::MaxTimes) {
    for (int i = 0; i < n * n; ++i) m = std::max(m, a[i]);
  } else {
    for (int i = 0; i < n; ++i) m = std::max(m, log_sum_exp(a + static_cast<size_t>(i) * n, n));
  }
  return m;
}

double log_min_modulus(int n, const double* a) {
  double m = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    double colMax = kNegInf;
    for (int i = 0; i < n; ++i) colMax = std::max(colMax, a[static_cast<size_t>(i) * n + j]);
    m = std::min(m, colMax);
  }
  return m;
}

}  // namespace detail

void ScaledPower::rebuild_base() {
  std::vector<double> lin(logBase_.size(), 0.0);
  if (!zero_) {
    for (size_t i = 0; i < logBase_.size(); ++i)
      lin[i] = logBase_[i] == kNegInf ? 0.0 : std::exp(logBase_[i]);
  }
  base_ = ConeMatrix(n_, std::move(lin), sr_);
}

double ScaledPower::op_norm_log() const {
  if (zero_) return kNegInf;
  return logScale_ + detail::log_op_norm(sr_, n_, logBase_.data());
}

double ScaledPower::min_modulus_log() const {
  if (zero_) return kNegInf;
  return logScale_ + detail::log_min_modulus(n_, logBase_.data());
}

double ScaledPower::op_norm() const {
  const double l = op_norm_log();
  return l == kNegInf ? 0.0 : std::exp(l);
}

double ScaledPower::min_modulus() const {
  const double l = min_modulus_log();
  return l == kNegInf ? 0.0 : std::exp(l);
}

ConeMatrix ScaledPower::to_matrix() const {
  ConeMatrix M(n_, sr_);
  if (zero_) return M;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      const double l = logBase_[static_cast<size_t>(i) * n_ + j];
      if (l == kNegInf) continue;
      const double v = std::exp(l + logScale_);
      if (!std::isfinite(v)) throw InputError("ScaledPower::to_matrix: entry exceeds double range");
      M(i, j) = v;
    }
  return M;
}

std::vector<double> ScaledPower::apply_log(const std::vector<double>& xLog) const {
  if (static_cast<int>(xLog.size()) != n_) throw InputError("ScaledPower::apply_log: dimension mismatch");
  std::vector<double> y(static_cast<size_t>(n_), kNegInf);
  if (zero_) return y;
  std::vector<double> terms(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    if (sr_ == Semiring::MaxTimes) {
      double m = kNegInf;
      for (int j = 0; j < n_; ++j) {
        const double a = logBase_[static_cast<size_t>(i) * n_ + j];
        if (a != kNegInf && xLog[static_cast<size_t>(j)] != kNegInf)
          m = std::max(m, a + xLog[static_cast<size_t>(j)]);
      }
      y[static_cast<size_t>(i)] = m == kNegInf ? kNegInf : m + logScale_;
    } else {
      for (int j = 0; j < n_; ++j) {
        const double a = logBase_[static_cast<size_t>(i) * n_ + j];
        terms[static_cast<size_t>(j)] =
            (a == kNegInf || xLog[static_cast<size_t>(j)] == kNegInf) ? kNegInf : a + xLog[static_cast<size_t>(j)];
      }
      const double l = detail::log_sum_exp(terms.data(), n_);
      y[static_cast<size_t>(i)] = l == kNegInf ? kNegInf : l + logScale_;
    }
  }
  return y;
}

ScaledPower mat_power(const ConeMatrix& A, std::uint64_t n) {
  if (n < 1) throw InputError("mat_power: exponent must be >= 1");
  ScaledPower P;
  P.n_ = A.dim();
  P.sr_ = A.semiring();
  P.exponent_ = n;

  // running square in log domain
  std::vector<double> sq = A.log_entries();
  double sqScale = 0.0;
  bool sqZero = detail::log_normalize(sq, sqScale);

  std::vector<double> acc;  // empty until the first contributing bit
  double accScale = 0.0;
  bool accZero = false;
  std::vector<double> tmp(sq.size());

  std::uint64_t rem = n;
  while (true) {
    if (rem & 1u) {
      if (acc.empty()) {
        acc = sq;
        accScale = sqScale;
        accZero = sqZero;
      } else if (accZero || sqZero) {
        accZero = true;
      } else {
        detail::log_mat_mul(P.sr_, P.n_, acc.data(), sq.data(), tmp.data());
        acc.swap(tmp);
        accScale += sqScale;
        accZero = detail::log_normalize(acc, accScale);
      }
    }
    rem >>= 1;
    if (rem == 0) break;
    if (!sqZero) {
      detail::log_mat_mul(P.sr_, P.n_, sq.data(), sq.data(), tmp.data());
      sq.swap(tmp);
      sqScale *= 2.0;
      sqZero = detail::log_normalize(sq, sqScale);
    }
  }

  if (accZero) {
    P.zero_ = true;
    P.logScale_ = kNegInf;
    P.logBase_.assign(static_cast<size_t>(P.n_) * P.n_, kNegInf);
  } else {
    P.zero_ = false;
    P.logScale_ = accScale;
    P.logBase_ = std::move(acc);
  }
  P.rebuild_base();
  return P;
}

}  // namespace tropispec
