#include "doctest.h"
#include "oracles.hpp"
#include "spectral_chroma/errors.hpp"
#include "spectral_chroma/linalg.hpp"

using namespace spectral_chroma;

namespace {

SymMatrix random_sym(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m.set(i, j, g(rng));
  return m;
}

}  // namespace

TEST_CASE("eigh reproduces the cycle spectrum") {
  for (std::size_t n : {3, 5, 8, 11}) {
    SymMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) a.set(i, (i + 1) % n, 1.0);
    const auto got = eigvalsh(a);
    const auto want = oracle::cycle_spectrum(n);
    REQUIRE(got.size() == n);
    for (std::size_t i = 0; i < n; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
  }
}

TEST_CASE("eigh vectors are orthonormal and reconstruct the matrix") {
  std::mt19937_64 rng(7);
  for (std::size_t n : {1, 2, 6, 15}) {
    const SymMatrix m = random_sym(n, rng);
    const auto e = eigh(m);
    CHECK(std::is_sorted(e.values.rbegin(), e.values.rend()));
    CHECK((e.reconstruct() - m).max_abs() < 1e-11);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double d = dot(e.vector(i), e.vector(j));
        CHECK(d == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12).scale(1.0));
      }
    // trace = sum of eigenvalues
    double s = 0.0;
    for (double v : e.values) s += v;
    CHECK(s == doctest::Approx(m.trace()).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("eigh handles repeated eigenvalues") {
  // J_n has spectrum {n, 0, ..., 0}
  const std::vector<double> ones(6, 1.0);
  const auto e = eigvalsh(SymMatrix::outer(ones));
  CHECK(e[0] == doctest::Approx(6.0));
  for (std::size_t i = 1; i < 6; ++i) CHECK(std::abs(e[i]) < 1e-12);
  CHECK(min_eigenvalue(SymMatrix::identity(4)) == doctest::Approx(1.0));
}

TEST_CASE("cholesky solves SPD systems and rejects indefinite ones") {
  SymMatrix m(3);
  m.set(0, 0, 4);
  m.set(0, 1, 2);
  m.set(1, 1, 3);
  m.set(1, 2, 1);
  m.set(2, 2, 2);
  const std::vector<double> x{1.0, -2.0, 0.5};
  const auto b = m * std::span<const double>(x);
  const auto got = solve_spd(m, b);
  for (std::size_t i = 0; i < 3; ++i) CHECK(got[i] == doctest::Approx(x[i]));
  const Matrix l = cholesky_spd(m);
  const SymMatrix inv = cholesky_inverse(l);
  const Matrix prod = m * inv;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(prod(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).scale(1.0));

  SymMatrix bad(2);
  bad.set(0, 1, 1.0);
  CHECK_THROWS_AS(cholesky_spd(bad), SolverError);
}

TEST_CASE("kyfan sums interpolate between integer levels") {
  const std::vector<double> d{5.0, 3.0, -1.0};
  CHECK(kyfan_sum_sorted(d, 0.0) == 0.0);
  CHECK(kyfan_sum_sorted(d, 1.0) == doctest::Approx(5.0));
  CHECK(kyfan_sum_sorted(d, 1.5) == doctest::Approx(6.5));
  CHECK(kyfan_sum_sorted(d, 3.0) == doctest::Approx(7.0));
  CHECK(kyfan_sum(SymMatrix::diagonal(std::vector<double>{3.0, 5.0, -1.0}), 2.25) == doctest::Approx(7.75));
  CHECK_THROWS_AS(kyfan_sum_sorted(d, 3.5), InputError);
  CHECK_THROWS_AS(kyfan_sum_sorted(d, -0.1), InputError);
}

TEST_CASE("congruence and products agree with explicit loops") {
  std::mt19937_64 rng(3);
  const SymMatrix m = random_sym(4, rng);
  Matrix q(4, 4);
  std::normal_distribution<double> g;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) q(i, j) = g(rng);
  const SymMatrix c = congruence(q, m);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      double s = 0.0;
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) s += q(i, a) * m(a, b) * q(j, b);
      CHECK(c(i, j) == doctest::Approx(s).scale(1.0));
    }
  double ip = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) ip += m(i, j) * c(i, j);
  CHECK(inner(m, c) == doctest::Approx(ip));
}

TEST_CASE("symmetric mutations keep both triangles equal") {
  SymMatrix m(3);
  m.add(0, 2, 1.5);
  m.add(2, 0, 0.5);
  m.add(1, 1, 2.0);
  CHECK(m(0, 2) == 2.0);
  CHECK(m(2, 0) == 2.0);
  CHECK(m(1, 1) == 2.0);
  Matrix u(2, 2);
  u(0, 1) = 4.0;
  u(1, 0) = -7.0;
  CHECK(SymMatrix::from_upper(u)(1, 0) == 4.0);
  CHECK(SymMatrix::symmetrized(u)(0, 1) == -1.5);
}
