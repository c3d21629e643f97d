#include "tropispec/spectral.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "tropispec/rng.hpp"

using namespace tropispec;
using testutil::random_matrix;

namespace {

ConeMatrix mt(const std::vector<std::vector<double>>& rows) {
  return ConeMatrix(rows, Semiring::MaxTimes);
}

bool proportional(const ConeVector& a, const ConeVector& b, double tol) {
  // both nonzero, equal up to positive scale
  double ratio = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] > 0.0 && b[i] > 0.0) {
      ratio = a[i] / b[i];
      break;
    }
  }
  if (ratio == 0.0) return false;
  for (int i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - ratio * b[i]) > tol * std::max(1.0, ratio * b[i])) return false;
  return true;
}

}  // namespace

TEST_CASE("bonsall radius on the frozen examples") {
  const RadiusResult id = bonsall_radius(ConeMatrix::identity(3, Semiring::MaxTimes));
  CHECK(id.r == 1.0);
  REQUIRE(id.certificate.has_value());
  CHECK(id.certificate->nodes == std::vector<int>{0});

  const RadiusResult swap2 = bonsall_radius(mt({{0, 2}, {3, 0}}));
  CHECK(swap2.r == doctest::Approx(std::sqrt(6.0)).epsilon(1e-12));
  REQUIRE(swap2.certificate.has_value());
  CHECK(swap2.certificate->nodes == std::vector<int>{0, 1});

  const RadiusResult tri = bonsall_radius(mt({{1, 4}, {0, 2}}));
  CHECK(tri.r == 2.0);
  REQUIRE(tri.certificate.has_value());
  CHECK(tri.certificate->nodes == std::vector<int>{1});

  const RadiusResult zero = bonsall_radius(ConeMatrix(2, Semiring::MaxTimes));
  CHECK(zero.r == 0.0);
  CHECK(!zero.certificate.has_value());

  const RadiusResult nil = bonsall_radius(mt({{0, 1}, {0, 0}}));
  CHECK(nil.r == 0.0);
  CHECK(!nil.certificate.has_value());
}

TEST_CASE("certificate mean is recomputable from the matrix") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 7);
    const ConeMatrix A = random_matrix(rng, n, Semiring::MaxTimes, 1e-2, 1e2, 0.3);
    const RadiusResult rr = bonsall_radius(A);
    if (!rr.certificate) {
      CHECK(rr.r == 0.0);
      continue;
    }
    const auto& nodes = rr.certificate->nodes;
    double logSum = 0.0;
    for (size_t k = 0; k < nodes.size(); ++k) {
      const double w = A(nodes[k], nodes[(k + 1) % nodes.size()]);
      REQUIRE(w > 0.0);
      logSum += std::log(w);
    }
    const double mean = std::exp(logSum / static_cast<double>(nodes.size()));
    CHECK(rr.certificate->geometric_mean == doctest::Approx(mean).epsilon(1e-12));
    CHECK(rr.r == doctest::Approx(mean).epsilon(1e-12));
  }
}

TEST_CASE("norm root sequence") {
  const auto ones = norm_root_sequence(ConeMatrix::identity(2, Semiring::MaxTimes), 6);
  for (double v : ones) CHECK(v == 1.0);

  const auto seq = norm_root_sequence(mt({{0, 2}, {3, 0}}), 6);
  CHECK(seq[0] == 3.0);
  for (size_t k = 1; k < seq.size(); ++k)
    CHECK(seq[k] == doctest::Approx(std::sqrt(6.0)).epsilon(1e-12));

  const auto nil = norm_root_sequence(mt({{0, 1}, {0, 0}}), 4);
  CHECK(nil[0] == 1.0);
  for (size_t k = 1; k < nil.size(); ++k) CHECK(nil[k] == 0.0);

  CHECK_THROWS_AS(norm_root_sequence(ConeMatrix::identity(2, Semiring::MaxTimes), 41), InputError);
}

TEST_CASE("min modulus root sequence") {
  const auto ones = min_modulus_root_sequence(ConeMatrix::identity(2, Semiring::MaxTimes), 6);
  for (double v : ones) CHECK(v == 1.0);

  const auto seq = min_modulus_root_sequence(mt({{0, 2}, {3, 0}}), 6);
  CHECK(seq[0] == 2.0);
  for (size_t k = 1; k < seq.size(); ++k)
    CHECK(seq[k] == doctest::Approx(std::sqrt(6.0)).epsilon(1e-12));

  const auto diag = min_modulus_root_sequence(mt({{2, 0}, {0, 3}}), 8);
  for (double v : diag) CHECK(v == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("sequences are monotone and sandwich the radii") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 7);
    const ConeMatrix A = random_matrix(rng, n, Semiring::MaxTimes, 0.05, 20.0, 0.3);
    const double r = bonsall_radius(A).r;
    const double d = lower_radius(A).d;
    const auto up = norm_root_sequence(A, 16);
    const auto lo = min_modulus_root_sequence(A, 16);
    for (size_t k = 0; k < up.size(); ++k) {
      if (k > 0) {
        CHECK(up[k] <= up[k - 1] + 1e-9 * std::max(1.0, up[k - 1]));
        CHECK(lo[k] >= lo[k - 1] - 1e-9 * std::max(1.0, lo[k - 1]));
      }
      CHECK(up[k] >= r - 1e-9 * std::max(1.0, r));
      CHECK(lo[k] <= d + 1e-9 * std::max(1.0, d));
    }
  }
}

TEST_CASE("point spectrum on the frozen examples") {
  const auto diag = point_spectrum(mt({{2, 0}, {0, 3}}));
  REQUIRE(diag.size() == 2);
  CHECK(diag[0].lambda == 2.0);
  CHECK(diag[1].lambda == 3.0);
  CHECK(proportional(diag[0].x, ConeVector({1, 0}), 1e-12));
  CHECK(proportional(diag[1].x, ConeVector({0, 1}), 1e-12));

  const auto upper = point_spectrum(mt({{1, 4}, {0, 2}}));
  REQUIRE(upper.size() == 2);
  CHECK(upper[0].lambda == 1.0);
  CHECK(upper[1].lambda == 2.0);
  CHECK(proportional(upper[0].x, ConeVector({1, 0}), 1e-12));
  CHECK(proportional(upper[1].x, ConeVector({2, 1}), 1e-12));

  const auto lowerTri = point_spectrum(mt({{1, 0}, {4, 2}}));
  REQUIRE(lowerTri.size() == 1);
  CHECK(lowerTri[0].lambda == 2.0);
  CHECK(proportional(lowerTri[0].x, ConeVector({0, 1}), 1e-12));

  const auto nil = point_spectrum(mt({{0, 1}, {0, 0}}));
  REQUIRE(nil.size() == 1);
  CHECK(nil[0].lambda == 0.0);

  CHECK_THROWS_AS(point_spectrum(ConeMatrix::identity(2, Semiring::PlusTimes)), UnsupportedError);
}

TEST_CASE("every reported eigenpair satisfies the residual bound") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const ConeMatrix A = random_matrix(rng, n, Semiring::MaxTimes, 1e-2, 1e2, 0.35);
    const auto ps = point_spectrum_detailed(A);
    CHECK(ps.rejected.empty());
    REQUIRE(!ps.pairs.empty());
    for (const auto& p : ps.pairs) {
      const ConeVector Ax = mat_apply(A, p.x);
      double res = 0.0;
      for (int i = 0; i < n; ++i) res = std::max(res, std::abs(Ax[i] - p.lambda * p.x[i]));
      CHECK(res <= 1e-9 * p.x.sup_norm());
    }
  }
}

TEST_CASE("lower radius on the frozen examples") {
  CHECK(lower_radius(ConeMatrix::identity(3, Semiring::MaxTimes)).d == 1.0);
  CHECK(lower_radius(mt({{2, 0}, {0, 3}})).d == 2.0);
  CHECK(lower_radius(mt({{1, 4}, {0, 2}})).d == 1.0);
  CHECK(lower_radius(ConeMatrix(2, Semiring::MaxTimes)).d == 0.0);
  CHECK(lower_radius(mt({{0, 1}, {0, 0}})).d == 0.0);

  const auto plus = lower_radius(ConeMatrix({{2, 0}, {0, 3}}, Semiring::PlusTimes));
  CHECK(plus.method == LowerMethod::FeketeLowerBound);
  CHECK(plus.d == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("extremality: point spectrum spans [d, r]") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const ConeMatrix A = random_matrix(rng, n, Semiring::MaxTimes, 0.1, 10.0, 0.3);
    const auto ps = point_spectrum(A);
    REQUIRE(!ps.empty());
    const double r = bonsall_radius(A).r;
    const double d = lower_radius(A).d;
    CHECK(std::abs(ps.back().lambda - r) <= 1e-9 * std::max(1.0, r));
    CHECK(std::abs(ps.front().lambda - d) <= 1e-9 * std::max(1.0, d));
  }
}

TEST_CASE("local radius") {
  CHECK(local_radius(ConeMatrix::identity(3, Semiring::MaxTimes), ConeVector({1, 0.5, 0}), 10) == 1.0);
  CHECK(local_radius(mt({{2, 0}, {0, 3}}), ConeVector::basis(2, 0), 12) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(local_radius(mt({{1, 4}, {0, 2}}), ConeVector::basis(2, 1), 20) ==
        doctest::Approx(2.0).epsilon(1e-4));
  CHECK_THROWS_AS(local_radius(mt({{1, 0}, {0, 1}}), ConeVector::zeros(2), 10), InputError);
}

TEST_CASE("ordering chain d <= min local <= max local <= r") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const ConeMatrix A = random_matrix(rng, n, Semiring::MaxTimes, 0.8, 1.25, 0.25);
    const double r = bonsall_radius(A).r;
    const double d = lower_radius(A).d;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (int j = 0; j < n; ++j) {
      const double rx = local_radius(A, ConeVector::basis(n, j), 20);
      lo = std::min(lo, rx);
      hi = std::max(hi, rx);
    }
    CHECK(d <= lo + 1e-6 * std::max(1.0, lo));
    CHECK(hi <= r + 1e-6 * std::max(1.0, r));
    CHECK(std::abs(hi - r) <= 1e-6 * std::max(1.0, r));
  }
}

TEST_CASE("ap_residual frozen examples") {
  const auto id = ap_residual(ConeMatrix::identity(2, Semiring::MaxTimes), 1.0, 8, 0);
  CHECK(id.rho <= 1e-15);

  const auto mid = ap_residual(mt({{2, 0}, {0, 3}}), 2.5, 8, 0);
  CHECK(mid.rho == doctest::Approx(0.5).epsilon(1e-9));

  // eigenvalues give zero residual, witnessed by the eigenvector start
  for (double lam : {2.0, 3.0}) {
    const auto at = ap_residual(mt({{2, 0}, {0, 3}}), lam, 8, 0);
    CHECK(at.rho <= 1e-12);
  }
  CHECK_THROWS_AS(ap_residual(mt({{1, 0}, {0, 1}}), -0.5, 8, 0), InputError);
}

TEST_CASE("ap_residual is deterministic and matches the sphere oracle") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const ConeMatrix A = random_matrix(rng, n, Semiring::MaxTimes, 0.1, 10.0, 0.3);
    std::uniform_real_distribution<double> sdist(0.0, 1.2 * op_norm(A) + 0.1);
    const double s = sdist(rng);
    const auto a = ap_residual(A, s, 32, 7);
    const auto b = ap_residual(A, s, 32, 7);
    CHECK(a.rho == b.rho);
    for (int i = 0; i < n; ++i) CHECK(a.argmin[i] == b.argmin[i]);
    // both routes upper-bound the true minimum; descent never undercuts
    // the near-exhaustive sphere oracle, and stays within a modest factor
    const double oracle = brute_force_residual(A, s, 60);
    CHECK(a.rho >= oracle - 1e-7 * std::max(1.0, oracle));
    CHECK(a.rho <= 1.25 * oracle + 1e-9);
  }
}

TEST_CASE("ap_scan flags the spectrum") {
  const ConeMatrix D = mt({{2, 0}, {0, 3}});
  const auto scan = ap_scan(D, 21, 1e-9, 0);
  bool sawTwo = false, sawThree = false, sawMid = false;
  for (const auto& pt : scan) {
    if (pt.s == 2.0) {
      sawTwo = true;
      CHECK(pt.rho <= 1e-9);
    }
    if (pt.s == 3.0) {
      sawThree = true;
      CHECK(pt.rho <= 1e-9);
    }
    if (std::abs(pt.s - 2.5) < 0.05) {
      sawMid = true;
      CHECK(pt.rho > 0.05);
    }
  }
  CHECK(sawTwo);
  CHECK(sawThree);
  CHECK(sawMid);

  const auto zero = ap_scan(ConeMatrix(2, Semiring::MaxTimes), 5, 1e-9, 0);
  REQUIRE(!zero.empty());
  CHECK(zero.front().s == 0.0);
  CHECK(zero.front().rho <= 1e-15);

  CHECK_THROWS_AS(ap_scan(D, 1, 1e-9, 0), InputError);
}

TEST_CASE("approx eigenvector on the frozen examples") {
  const auto id = approx_eigenvector(ConeMatrix::identity(3, Semiring::MaxTimes), 0.25, 0);
  CHECK(id.residual == 0.0);

  const auto diag = approx_eigenvector(mt({{2, 0}, {0, 3}}), 0.1, 0);
  CHECK(diag.residual <= 0.1);

  const auto swap2 = approx_eigenvector(mt({{0, 2}, {3, 0}}), 0.05, 0);
  CHECK(swap2.residual <= 0.05);
  // cross-check: the exact eigenvector of A / sqrt(6)
  const ConeMatrix A = mt({{0, 2}, {3, 0}});
  const ConeVector exact({std::sqrt(2.0 / 3.0), 1.0});
  const ConeVector Ax = mat_apply(A, exact);
  for (int i = 0; i < 2; ++i)
    CHECK(Ax[i] == doctest::Approx(std::sqrt(6.0) * exact[i]).epsilon(1e-12));

  CHECK_THROWS_AS(approx_eigenvector(mt({{0, 1}, {0, 0}}), 0.1, 0), UnsupportedError);
  CHECK_THROWS_AS(approx_eigenvector(A, 0.0, 0), InputError);
  CHECK_THROWS_AS(approx_eigenvector(A, 1.0, 0), InputError);
}

TEST_CASE("approx eigenvector satisfies its bound on random instances") {
  std::mt19937_64 rng(67);
  int done = 0;
  for (int trial = 0; done < 25 && trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const ConeMatrix A = random_matrix(rng, n, Semiring::MaxTimes, 0.1, 10.0, 0.25);
    if (lower_radius(A).d <= 0.0) continue;
    ++done;
    for (double eps : {0.3, 0.1}) {
      const auto res = approx_eigenvector(A, eps, 11);
      CHECK(res.residual <= eps);
      CHECK((res.trace.branch == 'y' || res.trace.branch == 'u'));
    }
  }
  CHECK(done == 25);
}

TEST_CASE("plus-times approx eigenvector") {
  const ConeMatrix A({{2, 1}, {0, 3}}, Semiring::PlusTimes);
  const auto res = approx_eigenvector(A, 0.2, 0);
  CHECK(res.residual <= 0.2);
}

TEST_CASE("oracle agreement on random small matrices") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const ConeMatrix A = random_matrix(rng, n, Semiring::MaxTimes, 1e-2, 1e2, 0.3);
    const SpectrumReport oracle = brute_force_oracle(A, 40);

    const double r = bonsall_radius(A).r;
    CHECK(std::abs(r - oracle.r) <= 1e-6 * std::max(1.0, oracle.r));

    const double d = lower_radius(A).d;
    CHECK(std::abs(d - oracle.d) <= 1e-6 * std::max(1.0, oracle.d));

    const auto ps = point_spectrum(A);
    REQUIRE(ps.size() == oracle.sigma_p.size());
    for (size_t i = 0; i < ps.size(); ++i)
      CHECK(std::abs(ps[i].lambda - oracle.sigma_p[i].lambda) <=
            1e-6 * std::max(1.0, oracle.sigma_p[i].lambda));
  }
}

TEST_CASE("oracle frozen examples") {
  const SpectrumReport diag = brute_force_oracle(mt({{2, 0}, {0, 3}}), 40);
  REQUIRE(diag.sigma_p.size() == 2);
  CHECK(diag.sigma_p[0].lambda == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(diag.sigma_p[1].lambda == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(diag.r == 3.0);
  CHECK(diag.d == doctest::Approx(2.0).epsilon(1e-9));

  const SpectrumReport id = brute_force_oracle(ConeMatrix::identity(2, Semiring::MaxTimes), 40);
  REQUIRE(id.sigma_p.size() == 1);
  CHECK(id.sigma_p[0].lambda == 1.0);
  CHECK(id.r == 1.0);
  CHECK(id.d == 1.0);

  const SpectrumReport nil = brute_force_oracle(mt({{0, 1}, {0, 0}}), 40);
  REQUIRE(nil.sigma_p.size() == 1);
  CHECK(nil.sigma_p[0].lambda == 0.0);
  CHECK(nil.r == 0.0);
  CHECK(nil.d == 0.0);

  CHECK_THROWS_AS(brute_force_oracle(ConeMatrix::identity(4, Semiring::MaxTimes), 40), InputError);
}

TEST_CASE("r(AB) equals r(BA)") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const ConeMatrix A = random_matrix(rng, n, Semiring::MaxTimes, 1e-2, 1e2, 0.3);
    const ConeMatrix B = random_matrix(rng, n, Semiring::MaxTimes, 1e-2, 1e2, 0.3);
    const double rab = bonsall_radius(mat_mul(A, B)).r;
    const double rba = bonsall_radius(mat_mul(B, A)).r;
    CHECK(std::abs(rab - rba) <= 1e-9 * std::max(1.0, rab));
  }
}

TEST_CASE("plus-times radius basics") {
  const ConeMatrix D({{2, 0}, {0, 3}}, Semiring::PlusTimes);
  CHECK(bonsall_radius(D).r == doctest::Approx(3.0).epsilon(1e-9));
  // Jordan-type block: r = 1 despite polynomial norm growth
  const ConeMatrix J({{1, 1}, {0, 1}}, Semiring::PlusTimes);
  CHECK(bonsall_radius(J).r == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(bonsall_radius(ConeMatrix(2, Semiring::PlusTimes)).r == 0.0);
}

TEST_CASE("compute_spectrum assembles a consistent report") {
  const ConeMatrix A = mt({{1, 4}, {0, 2}});
  SpectrumOptions opt;
  opt.grid_points = 11;
  const SpectrumReport rep = compute_spectrum(A, opt);
  CHECK(rep.r == 2.0);
  CHECK(rep.d == 1.0);
  REQUIRE(rep.sigma_p.size() == 2);
  CHECK(rep.local_radii.size() == 2);
  CHECK(!rep.scan.empty());
  // scan contains the eigenvalues as exact grid points with zero residual
  int hits = 0;
  for (const auto& pt : rep.scan)
    if ((pt.s == 1.0 || pt.s == 2.0) && pt.rho <= 1e-9) ++hits;
  CHECK(hits >= 2);
}
