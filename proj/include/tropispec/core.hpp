#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tropispec {

// Thrown for malformed or out-of-contract inputs (CLI exit code 2).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an operation is not defined for the given semiring/state.
class UnsupportedError : public InputError {
 public:
  explicit UnsupportedError(const std::string& what) : InputError(what) {}
};

// Thrown when two internal computation routes disagree beyond their
// certified error bounds (CLI exit code 1).
class ConsistencyError : public std::runtime_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// MaxTimes: (max, *) on [0, inf) -- suprema preserving operators.
// PlusTimes: (+, *) on [0, inf) -- additive operators on the positive cone.
enum class Semiring { MaxTimes, PlusTimes };

const char* to_string(Semiring sr);
Semiring semiring_from_string(const std::string& s);

class ConeVector {
 public:
  ConeVector() = default;
  explicit ConeVector(std::vector<double> entries);

  static ConeVector zeros(int n);
  static ConeVector basis(int n, int j);

  int size() const { return static_cast<int>(e_.size()); }
  double operator[](int i) const { return e_[static_cast<size_t>(i)]; }
  double& operator[](int i) { return e_[static_cast<size_t>(i)]; }
  const std::vector<double>& entries() const { return e_; }

  double sup_norm() const;
  bool is_zero() const;

 private:
  std::vector<double> e_;
};

// Square nonnegative matrix over a declared semiring; the finite
// realization of a cone operator A : C -> C on the sup-norm cone.
class ConeMatrix {
 public:
  ConeMatrix() = default;
  ConeMatrix(int n, Semiring sr);  // zero matrix
  ConeMatrix(const std::vector<std::vector<double>>& rows, Semiring sr);
  ConeMatrix(int n, std::vector<double> rowMajor, Semiring sr);

  static ConeMatrix identity(int n, Semiring sr);

  int dim() const { return n_; }
  Semiring semiring() const { return sr_; }
  double operator()(int i, int j) const { return e_[static_cast<size_t>(i) * n_ + j]; }
  double& operator()(int i, int j) { return e_[static_cast<size_t>(i) * n_ + j]; }
  const std::vector<double>& entries() const { return e_; }

  bool is_zero() const;
  // log of entries, 0 mapped to -inf; row-major
  std::vector<double> log_entries() const;

 private:
  void validate() const;

  int n_ = 0;
  std::vector<double> e_;
  Semiring sr_ = Semiring::MaxTimes;
};

// y = Ax.  MaxTimes: y_i = max_j A_ij x_j; PlusTimes: y_i = sum_j A_ij x_j.
ConeVector mat_apply(const ConeMatrix& A, const ConeVector& x);

// Matrix of the composition: mat_apply(mat_mul(A,B), x) == mat_apply(A, mat_apply(B, x)).
ConeMatrix mat_mul(const ConeMatrix& A, const ConeMatrix& B);

// Operator norm on the cone: sup { ||Ax|| : x in C, ||x|| <= 1 }.
// MaxTimes: max entry; PlusTimes: max row sum.
double op_norm(const ConeMatrix& A);

// Minimum modulus m(A) = inf { ||Ax|| : x in C, ||x|| = 1 }.
// On the sup-norm cone this is min over columns of the column maximum,
// for both semirings.
double min_modulus(const ConeMatrix& A);

ConeMatrix hadamard_product(const ConeMatrix& A, const ConeMatrix& B);
ConeMatrix hadamard_power(const ConeMatrix& A, double gamma);

// Elementwise maximum of a nonempty list of equal-dimension vectors.
ConeVector vec_join(const std::vector<ConeVector>& xs);

// Tolerance-relaxed instance check of the implication
//   x v y = s x  (s > 1)  =>  y = s x.
// True iff the premise fails at tol or the conclusion holds at tol*(1+s).
bool lemma_good_holds(const ConeVector& x, const ConeVector& y, double s, double tol);

// Overflow-safe representation of A^n: exp(logScale) * base entrywise,
// with base held at sup-norm 1 (all powers and renormalizations run in
// log domain, so entry ratios far beyond double range survive).
class ScaledPower {
 public:
  ScaledPower() = default;

  const ConeMatrix& base() const { return base_; }
  double log_scale() const { return logScale_; }
  std::uint64_t exponent() const { return exponent_; }
  Semiring semiring() const { return sr_; }
  bool is_zero() const { return zero_; }
  int dim() const { return n_; }

  double op_norm_log() const;      // log of op_norm of the represented matrix
  double min_modulus_log() const;  // log of min_modulus of the represented matrix
  double op_norm() const;
  double min_modulus() const;

  // Represented matrix in linear domain.  Entries whose log falls outside
  // double range clamp to 0 / throw on overflow.
  ConeMatrix to_matrix() const;

  // log of (A^n x) for x given by log entries (-inf allowed); result may
  // contain -inf.  Dimension checked.
  std::vector<double> apply_log(const std::vector<double>& xLog) const;

 private:
  friend ScaledPower mat_power(const ConeMatrix& A, std::uint64_t n);

  int n_ = 0;
  Semiring sr_ = Semiring::MaxTimes;
  std::uint64_t exponent_ = 0;
  double logScale_ = 0.0;
  bool zero_ = false;
  std::vector<double> logBase_;  // row-major, normalized: max entry log = 0
  ConeMatrix base_;              // exp(logBase_), clamped

  void rebuild_base();
};

// Repeated squaring with sup-norm renormalization after every multiply.
ScaledPower mat_power(const ConeMatrix& A, std::uint64_t n);

namespace detail {

// Log-domain product: MaxTimes = max-plus, PlusTimes = log-sum-exp-plus.
// a, b, out are n*n row-major log matrices (entries may be -inf).
void log_mat_mul(Semiring sr, int n, const double* a, const double* b, double* out);

// Log-domain matrix-vector product, one step.
void log_mat_vec(Semiring sr, int n, const double* a, const double* x, double* out);

// Shift a log matrix so its max entry is 0, accumulating the shift into
// scale.  Returns true when the matrix is identically -inf.
bool log_normalize(std::vector<double>& m, double& scale);

// Max entry (MaxTimes norm) or max of row log-sum-exp (PlusTimes norm).
double log_op_norm(Semiring sr, int n, const double* a);

// min over columns of the column max, in log domain (both semirings).
double log_min_modulus(int n, const double* a);

double log_sum_exp(const double* t, int n);

}  // namespace detail

}  // namespace tropispec
