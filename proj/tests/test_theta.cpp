#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include "umbral/theta.hpp"

using namespace umbral;

namespace {

std::int64_t sigma1(std::int64_t n) {
  std::int64_t s = 0;
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0) s += d;
  return s;
}

}  // namespace

TEST_CASE("S_{m,r} by direct summation") {
  const Frac order(20);
  for (std::int64_t m : {1, 5, 6, 10, 15, 30})
    for (std::int64_t r = -m; r <= 2 * m; ++r) {
      QSeries::TermMap terms;
      for (std::int64_t v = -200; v <= 200; ++v) {
        if (((v - r) % (2 * m) + 2 * m) % (2 * m) != 0) continue;
        if (v * v > 4 * m * 20) continue;
        terms[v * v * 120 / (4 * m)] += v;
      }
      CAPTURE(m);
      CAPTURE(r);
      CHECK(S_unary(m, r, order) == QSeries::from_terms(terms, order));
    }
}

TEST_CASE("S_{m,r} symmetries") {
  const Frac order(15);
  for (std::int64_t m : {5, 15, 30})
    for (std::int64_t r = 0; r < 2 * m; ++r) {
      const QSeries s = S_unary(m, r, order);
      CHECK(S_unary(m, r + 2 * m, order) == s);
      CHECK(S_unary(m, -r, order) == -s);
      CHECK(S_unary(m, 2 * m - r, order) == -s);
    }
  CHECK(S_unary(30, 0, order).is_zero());
  CHECK(S_unary(30, 30, order).is_zero());
}

TEST_CASE("S_unary needs 4m to divide the grading") {
  CHECK_THROWS_AS(S_unary(7, 1, Frac(3)), SeriesError);
  CHECK_NOTHROW(S_unary(7, 1, Frac(3), 28));
}

TEST_CASE("g_{r/2m,0}(2m tau) = S_{m,r} / 2m") {
  const Frac order(20);
  for (std::int64_t m : {1, 5, 15, 30})
    for (std::int64_t r : {1, 3, 7, 11}) {
      const QSeries g = g_series(Frac(r, 2 * m), 2 * m, order);
      CAPTURE(m);
      CAPTURE(r);
      CHECK(g == S_unary(m, r, order) * Rational(1, 2 * m));
    }
}

TEST_CASE("the m tau scaling does not reproduce S_{m,r}") {
  const Frac order(20);
  const QSeries g = g_series(Frac(1, 60), 30, order, 240);
  CHECK_FALSE(g == (S_unary(30, 1, order) * Rational(1, 60)).with_denominator(240));
}

TEST_CASE("g_series is odd in a") {
  const Frac order(10);
  CHECK(g_series(Frac(-1, 10), 2, order, 100) == -g_series(Frac(1, 10), 2, order, 100));
  CHECK(g_series(Frac(0), 2, order).is_zero());
  CHECK(g_series(Frac(1, 2), 2, order).is_zero());
}

TEST_CASE("shadow vector layout") {
  const Frac order(8);
  for (auto name : GroupClass::all()) {
    const auto& cls = GroupClass::get(name);
    const ShadowVector sv = shadow_vector(cls, order);
    QSeries one = S_unary(30, 1, order) + S_unary(30, 11, order) + S_unary(30, 19, order) + S_unary(30, 29, order);
    QSeries seven = S_unary(30, 7, order) + S_unary(30, 13, order) + S_unary(30, 17, order) + S_unary(30, 23, order);
    one *= Rational(cls.perm_character);
    seven *= Rational(cls.perm_character);
    CHECK(sv.components.component(1) == one);
    CHECK(sv.components.component(59) == -one);
    CHECK(sv.components.component(13) == seven);
    CHECK(sv.components.component(47) == -seven);
    CHECK(sv.components.component(2).is_zero());
  }
  CHECK(shadow_vector(GroupClass::get(ClassName::A3), order).components.component(1).is_zero());
}

TEST_CASE("exponent classes by direct reduction") {
  for (std::int64_t n : {1, 2, 3, 5, 6, 10, 15, 30})
    for (std::int64_t r = 0; r < 2 * n; ++r) {
      std::set<Frac> expect;
      for (std::int64_t k = -4 * n; k <= 4 * n; ++k) {
        const std::int64_t v = 2 * k * n + r;
        expect.insert(Frac((v * v) % (4 * n), 4 * n));
      }
      const auto got = exponent_classes(n, r);
      CHECK(std::set<Frac>(got.begin(), got.end()) == expect);
    }
}

TEST_CASE("thetanullwerte scans have no hits") {
  for (std::int64_t base : {30, 90}) {
    const auto report = thetanullwerte_class_check(base);
    CHECK(report.base == base);
    CHECK(report.hits.empty());
    CHECK(report.pairs_scanned == static_cast<std::size_t>(2 * sigma1(base)));
    CHECK(report.targets == std::vector<Frac>{Frac(119, 120), Frac(71, 120)});
  }
}

TEST_CASE("thetanullwerte scan is not vacuous") {
  // The scan sees the nearby classes 1/120 and 49/120, just not the targets.
  const auto classes = exponent_classes(30, 1);
  CHECK(classes == std::vector<Frac>{Frac(1, 120)});
  const auto c7 = exponent_classes(30, 7);
  CHECK(c7 == std::vector<Frac>{Frac(49, 120)});
}

TEST_CASE("eta J coefficients against the classical j coefficients") {
  // J = q^-1 + 196884 q + 21493760 q^2 + 864299970 q^3 + 20245856256 q^4 + ...
  const std::vector<long long> j{1, 0, 196884, 21493760, 864299970, 20245856256LL};
  // (q;q)_inf to q^5
  const std::vector<long long> euler{1, -1, -1, 0, 0, 1};
  const QSeries got = eta_J_coefficients(Frac(5));
  for (int n = 0; n <= 5; ++n) {
    long long c = 0;
    for (int i = 0; i <= n; ++i) c += euler[i] * j[n - i];
    // coefficient of q^{n - 1 + 1/24}
    CHECK(got.coefficient(Frac(n - 1) + Frac(1, 24)) == Rational(std::to_string(c)));
  }
  CHECK(got.coefficient(Frac(25, 24)) == 196883);
  CHECK(got.coefficient(Frac(49, 24)) == 21296876);
  CHECK(got.coefficient(Frac(73, 24)) == 842609326);
  CHECK(got.coefficient(Frac(97, 24)) == Rational("19360062527"));
}
