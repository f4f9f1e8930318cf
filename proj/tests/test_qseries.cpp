#include <functional>
#include <random>
#include <vector>

#include "catch_amalgamated.hpp"

#include "cmpp/qseries.hpp"

using namespace cmpp;

namespace {

QPolynomial poly(int Q, std::vector<int> c) {
  std::vector<BigInt> b(c.begin(), c.end());
  return QPolynomial(Q, std::move(b));
}

// Partitions of d fitting in a rows x w columns box.
long long box_partitions(int d, int rows, int w) {
  if (d == 0) return 1;
  if (rows == 0 || w == 0) return 0;
  long long s = 0;
  for (int first = 1; first <= std::min(w, d); ++first) s += box_partitions(d - first, rows - 1, first);
  return s;
}

// Partitions of n into j parts, consecutive parts differing by >= 2, smallest >= lo.
long long gap2(int n, int j, int lo) {
  if (j == 0) return n == 0 ? 1 : 0;
  long long s = 0;
  for (int p = lo; p <= n; ++p) s += gap2(n - p, j - 1, p + 2);
  return s;
}

}  // namespace

TEST_CASE("truncated multiplication", "[qseries]") {
  CHECK(poly_mul_truncated(poly(5, {1, -1}), poly(5, {1, 1})) == poly(5, {1, 0, -1}));
  CHECK(poly_mul_truncated(poly(2, {1, 1, 1}), poly(2, {1, 1, 1})) == poly(2, {1, 2, 3}));
  CHECK_THROWS_AS(poly_mul_truncated(poly(3, {1}), poly(4, {1})), usage_error);
  CHECK_THROWS_AS(poly(3, {1}) + poly(4, {1}), usage_error);
}

TEST_CASE("inverse of a unit series", "[qseries]") {
  const int Q = 12;
  const QPolynomial inv = poly_inverse_unit(poly_mul_truncated(poly(Q, {1, -1}), poly(Q, {1, 0, -1})));
  for (int d = 0; d <= Q; ++d) CHECK(inv[d] == d / 2 + 1);  // partitions into 1s and 2s
  CHECK(inv[4] == 3);
  CHECK_THROWS_AS(poly_inverse_unit(poly(4, {2, 1})), usage_error);
  CHECK(poly_inverse_unit(poly(4, {-1, 1})) == poly(4, {-1, -1, -1, -1, -1}));
}

TEST_CASE("inverse is two-sided on random units", "[qseries][property]") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    const int Q = 1 + trial % 15;
    std::vector<int> c(Q + 1);
    for (int& x : c) x = coef(rng);
    c[0] = trial % 2 ? 1 : -1;
    const QPolynomial p = poly(Q, c);
    const QPolynomial inv = poly_inverse_unit(p);
    CHECK(poly_mul_truncated(p, inv) == QPolynomial::one(Q));
    CHECK(poly_mul_truncated(inv, p) == QPolynomial::one(Q));
  }
}

TEST_CASE("pochhammer products", "[qseries]") {
  CHECK(pochhammer(1, 2, 6) == poly(6, {1, -1, -1, 1}));
  CHECK(pochhammer(1, 0, 3) == QPolynomial::one(3));
  CHECK(pochhammer(2, 2, 6) == poly(6, {1, 0, -1, 0, -1, 0, 1}));
  CHECK(pochhammer(3, 5, 4) == poly(4, {1, 0, 0, -1}));
  CHECK_THROWS_AS(pochhammer(0, 1, 3), usage_error);
}

TEST_CASE("gaussian binomials", "[qseries]") {
  CHECK(gaussian_binomial(4, 2, 10) == poly(10, {1, 1, 2, 1, 1}));
  CHECK(gaussian_binomial(0, 1, 10).is_zero());
  CHECK(gaussian_binomial(3, -1, 10).is_zero());
  CHECK(gaussian_binomial(5, 0, 10) == QPolynomial::one(10));
  CHECK(gaussian_binomial(-2, 0, 10).is_zero());
}

TEST_CASE("gaussian binomials count partitions in a box", "[qseries][property]") {
  const int Q = 40;
  for (int a = 0; a <= 10; ++a)
    for (int b = 0; b <= a; ++b) {
      const QPolynomial g = gaussian_binomial(a, b, Q);
      CHECK(g == gaussian_binomial(a, a - b, Q));
      for (int d = 0; d <= Q; ++d) {
        const long long expect = d <= b * (a - b) ? box_partitions(d, b, a - b) : 0;
        CHECK(g[d] == expect);
      }
    }
}

TEST_CASE("truncation is explicit", "[qseries]") {
  const QPolynomial p = poly(6, {1, 2, 3, 4, 5, 6, 7});
  CHECK(p.truncated(3) == poly(3, {1, 2, 3, 4}));
  CHECK_THROWS_AS(p.truncated(7), usage_error);
  CHECK_THROWS_AS(p[7], usage_error);
  CHECK(p.shifted(2) == poly(6, {0, 0, 1, 2, 3, 4, 5}));
}

TEST_CASE("position index", "[qseries]") {
  CHECK(position_index(3, 2) == 4);
  CHECK(position_index(3, 0) == 1);
  CHECK(position_index(1, 1) == 2);
  CHECK_THROWS_AS(position_index(3, 4), usage_error);
  for (int ell = 1; ell <= 8; ++ell) {
    std::vector<int> seen;
    for (int i = 0; i <= ell; ++i) seen.push_back(position_index(ell, i));
    std::sort(seen.begin(), seen.end());
    for (int a = 1; a <= ell + 1; ++a) CHECK(seen[a - 1] == a);  // a bijection onto 1..l+1
  }
}

TEST_CASE("linear forms", "[qseries]") {
  const std::vector<int> N{6, 4, 2};
  CHECK(linear_form(Family::main, 3, 2, N) == 0);
  CHECK(linear_form(Family::main, 3, 0, N) == 12);
  CHECK(linear_form(Family::main, 3, 3, N) == 6);
  CHECK(linear_form(Family::main, 3, 1, N) == 2);
  CHECK(linear_form(Family::star_star, 3, 0, N) == 18);
  CHECK(linear_form(Family::star, 3, 3, N) == 12);
  CHECK(linear_form(Family::star, 3, 1, N) == 2);
  CHECK(linear_form(Family::star_star, 3, 2, N) == 0);
  CHECK(linear_form(Family::star_star, 3, 1, N) == 6);
  CHECK_THROWS_AS(linear_form(Family::ag, 3, 1, N), usage_error);
  CHECK_THROWS_AS(linear_form(Family::main, 3, 1, std::vector<int>{1, 1}), usage_error);
}

TEST_CASE("main linear form is the residue-index tail", "[qseries][property]") {
  for (int ell = 1; ell <= 7; ++ell)
    for (int i = 0; i <= ell; ++i) {
      std::vector<int> N(ell);
      for (int s = 0; s < ell; ++s) N[s] = 1 << (ell - s);  // distinct subset sums
      CHECK(linear_form(Family::main, ell, i, N) == ag_linear_form(ell, position_index(ell, i), N));
    }
}

TEST_CASE("series: difference-two partitions for l = 1", "[qseries]") {
  const int Q = 30, Z = 8;
  const BivariateSeries p1 = series_for_family(Family::main, 1, 1, Q, Z);
  const BivariateSeries p0 = series_for_family(Family::main, 1, 0, Q, Z);
  CHECK(p1.coefficient(0, 0) == 1);
  CHECK(p1.coefficient(1, 1) == 1);
  CHECK(p1.coefficient(2, 4) == 1);
  for (int j = 0; j <= Z; ++j)
    for (int n = 0; n <= Q; ++n) {
      CHECK(p1.coefficient(j, n) == gap2(n, j, 1));
      CHECK(p0.coefficient(j, n) == gap2(n, j, 2));
    }
}

TEST_CASE("series: known coefficients", "[qseries]") {
  const BivariateSeries s = series_for_family(Family::main, 3, 2, 60, 8);
  CHECK(s.coefficient(6, 56) >= 1);
  CHECK(s.coefficient(0, 0) == 1);
  for (int n = 1; n <= 60; ++n) CHECK(s.coefficient(0, n) == 0);
}

TEST_CASE("series are monotone in the truncation and nonnegative", "[qseries][property]") {
  for (Family f : {Family::main, Family::star, Family::star_star})
    for (int ell = 1; ell <= 3; ++ell)
      for (int i = 0; i <= ell; ++i) {
        const BivariateSeries big = series_for_family(f, ell, i, 24, 10);
        CHECK(big.nonnegative());
        CHECK(big.truncated(15, 6) == series_for_family(f, ell, i, 15, 6));
      }
  for (Family f : {Family::ag, Family::bressoud})
    for (int ell = 1; ell <= 3; ++ell)
      for (int a = 1; a <= ell + 1; ++a) {
        const BivariateSeries big = series_for_family(f, ell, a, 24, 10);
        CHECK(big.nonnegative());
        CHECK(big.truncated(15, 6) == series_for_family(f, ell, a, 15, 6));
      }
}

TEST_CASE("at z = 1 the main series matches the residue-index series", "[qseries][property]") {
  const int Q = 30;
  for (int ell = 1; ell <= 3; ++ell)
    for (int i = 0; i <= ell; ++i)
      CHECK(series_for_family(Family::main, ell, i, Q, Q).at_z_one() ==
            series_for_family(Family::ag, ell, position_index(ell, i), Q, Q).at_z_one());
}

TEST_CASE("bounded series", "[qseries]") {
  const BivariateSeries b = bounded_p0_series(1, 5, 10, 3);
  CHECK(b.z_coefficient(1) == poly(10, {0, 0, 1, 1, 1}));
  CHECK(b.coefficient(0, 0) == 1);
  CHECK(bounded_p0_series(1, 12, 10, 3) == series_for_family(Family::main, 1, 0, 10, 3));
  CHECK(bounded_p0_series(2, 30, 20, 6) == series_for_family(Family::main, 2, 0, 20, 6));
}

TEST_CASE("series csv", "[qseries]") {
  const BivariateSeries s = series_for_family(Family::main, 1, 1, 4, 2);
  CHECK(s.to_csv() == "z_degree,q_degree,coefficient\n0,0,1\n1,1,1\n1,2,1\n1,3,1\n1,4,1\n2,4,1\n");
}
