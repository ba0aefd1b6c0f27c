#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <functional>
#include <vector>

#include "umbral/characters.hpp"
#include "umbral/mocktheta.hpp"

using namespace umbral;

namespace {

// Plain integer power series in q, coefficients 0..N.
using Poly = std::vector<long long>;

Poly one(int n) {
  Poly p(n + 1, 0);
  p[0] = 1;
  return p;
}

Poly mul(const Poly& a, const Poly& b) {
  const int n = static_cast<int>(a.size()) - 1;
  Poly c(n + 1, 0);
  for (int i = 0; i <= n; ++i)
    if (a[i] != 0)
      for (int j = 0; i + j <= n; ++j) c[i + j] += a[i] * b[j];
  return c;
}

// 1 / (1 - q^e) for e >= 1.
Poly geometric(int e, int n) {
  Poly p(n + 1, 0);
  for (int k = 0; k <= n; k += e) p[k] = 1;
  return p;
}

Poly binomial(int e, int sign, int n) {
  Poly p = one(n);
  if (e <= n) p[e] += sign;
  return p;
}

Poly shift(const Poly& a, int e) {
  Poly c(a.size(), 0);
  for (std::size_t i = 0; i + e < a.size(); ++i) c[i + e] = a[i];
  return c;
}

Poly add(Poly a, const Poly& b, long long s = 1) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
  return a;
}

Poly oracle(MockTheta f, int n) {
  Poly acc(n + 1, 0);
  for (int k = 0; k <= n; ++k) {
    Poly term = one(n);
    int lead = 0;
    switch (f) {
      case MockTheta::Chi0:
        lead = k;
        for (int j = k + 1; j <= 2 * k; ++j) term = mul(term, geometric(j, n));
        break;
      case MockTheta::Chi1:
        lead = k;
        for (int j = k + 1; j <= 2 * k + 1; ++j) term = mul(term, geometric(j, n));
        break;
      case MockTheta::F0:
        lead = 2 * k * k;
        for (int j = 0; j < k; ++j) term = mul(term, geometric(2 * j + 1, n));
        break;
      case MockTheta::F1:
        lead = 2 * k * (k + 1);
        for (int j = 0; j <= k; ++j) term = mul(term, geometric(2 * j + 1, n));
        break;
      case MockTheta::Phi0:
      case MockTheta::Phi1:
        lead = f == MockTheta::Phi0 ? k * k : (k + 1) * (k + 1);
        for (int j = 0; j < k; ++j) term = mul(term, binomial(2 * j + 1, 1, n));
        break;
    }
    if (lead > n) continue;
    acc = add(acc, shift(term, lead));
  }
  return acc;
}

Poly negate_q(Poly a) {
  for (std::size_t i = 1; i < a.size(); i += 2) a[i] = -a[i];
  return a;
}

// (sum_{x >= 0} - w * sum_{x < 0}) over a box, with an integer exponent function.
Poly box_sum(int dims, int n, int neg_weight, const std::function<long long(const std::vector<long long>&)>& weight,
             const std::function<long long(const std::vector<long long>&)>& exponent) {
  Poly acc(n + 1, 0);
  const int reach = 2 * n + 4;
  std::vector<long long> x(dims, 0);
  std::function<void(int)> rec = [&](int d) {
    if (d == dims) {
      bool pos = true, neg = true;
      for (auto v : x) {
        pos = pos && v >= 0;
        neg = neg && v < 0;
      }
      if (!pos && !neg) return;
      const long long e = exponent(x);
      if (e < 0 || e > n) return;
      acc[e] += (pos ? 1 : neg_weight) * weight(x);
      return;
    }
    for (long long v = -reach; v <= reach; ++v) {
      x[d] = v;
      rec(d + 1);
    }
  };
  rec(0);
  return acc;
}

void check_equal(const QSeries& s, const Poly& p, long long offset_num = 0) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    CAPTURE(i);
    CHECK(s.coefficient(Frac(static_cast<std::int64_t>(i)) + Frac(offset_num, 120)) ==
          Rational(std::to_string(p[i])));
  }
}

Poly inverse_euler(int n) {
  Poly p = one(n);
  for (int j = 1; j <= n; ++j) p = mul(p, geometric(j, n));
  return p;
}

long long sgn_parity(long long v) { return (v % 2 == 0) ? 1 : -1; }

}  // namespace

TEST_CASE("Ramanujan series match a naive integer oracle") {
  const int n = 40;
  for (auto f : {MockTheta::Chi0, MockTheta::Chi1, MockTheta::F0, MockTheta::F1, MockTheta::Phi0, MockTheta::Phi1}) {
    CAPTURE(to_string(f));
    const Poly p = oracle(f, n);
    check_equal(ramanujan_series(f, 1, Frac(n)), p);
    check_equal(ramanujan_series(f, -1, Frac(n)), negate_q(p));
  }
}

TEST_CASE("known leading coefficients") {
  // chi0 = 1 + q + q^2 + 2q^3 + q^4 + 3q^5 + ...
  const Poly chi0 = oracle(MockTheta::Chi0, 6);
  CHECK(chi0 == Poly{1, 1, 1, 2, 1, 3, 2});
  const Poly phi0 = oracle(MockTheta::Phi0, 6);
  // phi0 = 1 + q + q^2 + q^4 + q^5 + q^7 + ...
  CHECK(phi0 == Poly{1, 1, 1, 0, 1, 1, 0});
}

TEST_CASE("Zwegers triple sums against a box oracle") {
  const int n = 12;
  const auto sign = [](const std::vector<long long>& x) { return sgn_parity(x[0] + x[1] + x[2]); };
  for (int c : {1, 3}) {
    const auto exponent = [c](const std::vector<long long>& x) {
      const long long k = x[0], l = x[1], m = x[2];
      return (k * k + l * l + m * m + c * (k + l + m)) / 2 + 2 * (k * l + l * m + m * k);
    };
    const Poly sum = box_sum(3, n, 1, sign, exponent);
    const Poly rhs = mul(mul(inverse_euler(n), inverse_euler(n)), sum);
    const QSeries got = zwegers_triple_sum(c == 1 ? ZwegersSide::Chi0Side : ZwegersSide::Chi1Side, Frac(n));
    check_equal(got, rhs);
    const Poly chi = oracle(c == 1 ? MockTheta::Chi0 : MockTheta::Chi1, n);
    CHECK(rhs == (c == 1 ? add(add(one(n), one(n)), chi, -1) : chi));
  }
}

TEST_CASE("Hecke-type parity sums against a box oracle") {
  const int n = 30;
  for (int family : {1, 7}) {
    const int lk = family == 1 ? 1 : 3, lm = family == 1 ? 3 : 5;
    const Poly expect = box_sum(
        2, n, -1,
        [](const std::vector<long long>& x) {
          return std::llabs(x[0] - x[1]) % 2 == 0 ? sgn_parity(x[1]) : 0LL;
        },
        [lk, lm](const std::vector<long long>& x) {
          const long long k = x[0], m = x[1];
          return (k * k + m * m + lk * k + lm * m) / 2 + 4 * k * m;
        });
    CAPTURE(family);
    check_equal(hecke_parity_sum(family, Frac(n)), expect);
  }
}

TEST_CASE("both sides of the double-sum identities against a box oracle") {
  const int n = 30;
  Poly plus = one(n);
  for (int j = 1; j <= n; ++j) plus = mul(plus, binomial(j, 1, n));
  for (int s : {1, 3}) {
    const Poly sum = box_sum(
        2, n, -1, [](const std::vector<long long>& x) { return sgn_parity(x[0] + x[1]); },
        [s](const std::vector<long long>& x) {
          const long long k = x[0], m = x[1];
          return 3 * k * k + (m * m + s * m) / 2 + 4 * k * m + s * k;
        });
    const Poly rhs = mul(plus, sum);
    check_equal(hecke_double_sum(s == 1 ? HeckeSum::ProductRhs1 : HeckeSum::ProductRhs7, Frac(n)), rhs);
    const int lk = s == 1 ? 1 : 3, lm = s == 1 ? 3 : 5;
    const Poly lhs = box_sum(
        2, n, -1,
        [](const std::vector<long long>& x) {
          return std::llabs(x[0] - x[1]) % 2 == 0 ? sgn_parity(x[1]) : 0LL;
        },
        [lk, lm](const std::vector<long long>& x) {
          const long long k = x[0], m = x[1];
          return (k * k + m * m + lk * k + lm * m) / 2 + 4 * k * m;
        });
    CHECK(lhs == rhs);
  }
}

TEST_CASE("Hecke left sides give phi0(-q) and -q^-1 phi1(-q)") {
  const int n = 30;
  check_equal(hecke_double_sum(HeckeSum::Phi0Lhs, Frac(n)), negate_q(oracle(MockTheta::Phi0, n)));
  Poly phi1 = negate_q(oracle(MockTheta::Phi1, n + 1));
  Poly shifted(n + 1, 0);
  for (int i = 0; i <= n; ++i) shifted[i] = -phi1[i + 1];
  check_equal(hecke_double_sum(HeckeSum::Phi1Lhs, Frac(n)), shifted);
}

TEST_CASE("chi/F/phi relations on the oracle") {
  const int n = 50;
  const Poly chi0 = oracle(MockTheta::Chi0, n), chi1 = oracle(MockTheta::Chi1, n);
  const Poly f0 = oracle(MockTheta::F0, n), f1 = oracle(MockTheta::F1, n);
  const Poly phi0m = negate_q(oracle(MockTheta::Phi0, n));
  const Poly phi1m = negate_q(oracle(MockTheta::Phi1, n + 1));
  CHECK(chi0 == add(add(f0, f0), phi0m, -1));
  Poly q_inv_phi1(n + 1, 0);
  for (int i = 0; i <= n; ++i) q_inv_phi1[i] = phi1m[i + 1];
  CHECK(chi1 == add(add(f1, f1), q_inv_phi1));
}

TEST_CASE("identity suite verifies at orders 25, 30 and 50") {
  for (int order : {25, 30, 50}) {
    const auto reports = identity_suite(Frac(order));
    CHECK(reports.size() >= 14);
    for (const auto& r : reports) {
      CAPTURE(r.name);
      CHECK(r.verified);
      CHECK(r.order == Frac(order));
      CHECK_FALSE(r.first_discrepancy.has_value());
    }
  }
}

TEST_CASE("corruption hook is caught at q^5") {
  SuiteOptions options;
  options.corrupt_chi0 = true;
  const auto reports = identity_suite(Frac(25), options);
  int failures = 0;
  for (const auto& r : reports) {
    if (r.verified) continue;
    ++failures;
    REQUIRE(r.first_discrepancy.has_value());
    CHECK(*r.first_discrepancy <= Frac(5));
  }
  CHECK(failures > 0);
}

TEST_CASE("compare_series reports the first discrepancy") {
  const QSeries a = QSeries::from_terms({{0, 1}, {120, 2}, {360, 5}}, Frac(10));
  const QSeries b = QSeries::from_terms({{0, 1}, {120, 2}, {360, 4}}, Frac(10));
  const auto r = compare_series("x", a, b, Frac(10));
  CHECK_FALSE(r.verified);
  CHECK(r.first_discrepancy == Frac(3));
  CHECK(*r.lhs_coefficient == 5);
  CHECK(*r.rhs_coefficient == 4);
  CHECK(compare_series("y", a, a, Frac(10)).verified);
  CHECK_FALSE(compare_series("z", a, a.truncated(Frac(2)), Frac(10)).verified);
}

TEST_CASE("McKay-Thompson series in terms of mock theta functions to order 30") {
  const Frac order(30);
  const auto& e = GroupClass::get(ClassName::A1);
  const auto& two = GroupClass::get(ClassName::A2);
  const QSeries chi0 = ramanujan_series(MockTheta::Chi0, 1, order);
  const QSeries chi1 = ramanujan_series(MockTheta::Chi1, 1, order);
  const QSeries phi0 = ramanujan_series(MockTheta::Phi0, -1, order);
  const QSeries phi1 = ramanujan_series(MockTheta::Phi1, -1, order + 1);
  const QSeries two_q = QSeries::monomial(0, 2);
  CHECK(H_family_series(e, 1, order).truncated(order - Frac(1, 120)) ==
        ((chi0 - two_q) * Rational(2)).shifted(Frac(-1, 120)).truncated(order - Frac(1, 120)));
  CHECK(H_family_series(e, 7, order) == (chi1 * Rational(2)).shifted(Frac(71, 120)).truncated(order));
  CHECK(H_family_series(two, 1, order).truncated(order - Frac(1, 120)) ==
        (phi0 * Rational(-2)).shifted(Frac(-1, 120)).truncated(order - Frac(1, 120)));
  CHECK(H_family_series(two, 7, order) == (phi1 * Rational(2)).shifted(Frac(-49, 120)).truncated(order));
}
