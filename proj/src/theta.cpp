#include "umbral/theta.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "umbral/parallel.hpp"

namespace umbral {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

}  // namespace

QSeries S_unary(std::int64_t m, std::int64_t r, Frac order, std::int64_t denominator) {
  if (m <= 0) throw std::invalid_argument("S_unary needs m > 0");
  if (denominator % (4 * m) != 0) {
    throw SeriesError(SeriesError::Kind::Grading,
                      "grading 1/" + std::to_string(denominator) + " cannot hold exponents over 4m = " +
                          std::to_string(4 * m));
  }
  QSeries::TermMap terms;
  if (order >= 0) {
    const auto reach = static_cast<std::int64_t>(
                           std::ceil(std::sqrt(4.0 * m * boost::rational_cast<double>(order)))) + 1;
    const std::int64_t scale = denominator / (4 * m);
    for (std::int64_t k = floor_div(-reach - r, 2 * m); k <= floor_div(reach - r, 2 * m) + 1; ++k) {
      const std::int64_t v = 2 * k * m + r;
      if (Frac(v * v, 4 * m) > order) continue;
      terms[v * v * scale] += v;
    }
  }
  return QSeries::from_terms(std::move(terms), order, denominator);
}

QSeries g_series(Frac a, std::int64_t scale, Frac order, std::int64_t denominator) {
  if (scale <= 0) throw std::invalid_argument("g_series needs a positive scale");
  QSeries::TermMap terms;
  if (order >= 0) {
    // s nu^2 / 2 <= order  <=>  |nu| <= sqrt(2 order / s)
    const double reach = std::sqrt(2.0 * boost::rational_cast<double>(order) / static_cast<double>(scale)) + 1;
    const auto k_lo = static_cast<std::int64_t>(std::floor(-reach - boost::rational_cast<double>(a))) - 1;
    const auto k_hi = static_cast<std::int64_t>(std::ceil(reach - boost::rational_cast<double>(a))) + 1;
    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
      const Frac nu = a + k;
      const Frac e = Frac(scale) * nu * nu / 2;
      if (e > order || nu == 0) continue;
      const Frac scaled = e * denominator;
      if (scaled.denominator() != 1) {
        throw SeriesError(SeriesError::Kind::Grading, "exponent " + format_frac(e) + " is off the grading");
      }
      terms[scaled.numerator()] += Rational(nu.numerator(), nu.denominator());
    }
  }
  for (auto& [e, c] : terms) c.canonicalize();
  return QSeries::from_terms(std::move(terms), order, denominator);
}

ShadowVector shadow_vector(const GroupClass& cls, Frac order) {
  auto family_sum = [&](std::initializer_list<int> rs) {
    QSeries s = QSeries::zero(order);
    for (int r : rs) s += S_unary(30, r, order);
    return s * Rational(cls.perm_character);
  };
  const QSeries one = family_sum({1, 11, 19, 29});
  const QSeries seven = family_sum({7, 13, 17, 23});
  ShadowVector out{cls.name, MockFormVector(order)};
  for (int r = 0; r < 60; ++r) {
    const int sign = support_sign(r);
    if (sign == 0) continue;
    const QSeries& base = support_family(r) == 1 ? one : seven;
    out.components.set_component(r, sign > 0 ? base : -base);
  }
  return out;
}

std::vector<Frac> exponent_classes(std::int64_t n, std::int64_t r) {
  if (n <= 0) throw std::invalid_argument("thetanullwerte index must be positive");
  std::set<Frac> classes;
  for (std::int64_t k = 0; k < 2 * n; ++k) {
    const std::int64_t v = 2 * k * n + r;
    const std::int64_t den = 4 * n;
    classes.insert(Frac(mod(v * v, den), den));
  }
  return {classes.begin(), classes.end()};
}

ThetanullwerteReport thetanullwerte_class_check(std::int64_t base) {
  if (base <= 0) throw std::invalid_argument("base must be positive");
  ThetanullwerteReport report;
  report.base = base;
  report.targets = {Frac(119, 120), Frac(71, 120)};
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  for (std::int64_t n = 1; n <= base; ++n)
    if (base % n == 0)
      for (std::int64_t r = 0; r < 2 * n; ++r) pairs.emplace_back(n, r);
  std::vector<std::vector<ThetanullwerteHit>> found(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) {
    const auto [n, r] = pairs[i];
    for (const Frac& c : exponent_classes(n, r))
      if (std::find(report.targets.begin(), report.targets.end(), c) != report.targets.end())
        found[i].push_back({n, r, c});
  });
  report.pairs_scanned = pairs.size();
  for (auto& f : found) report.hits.insert(report.hits.end(), f.begin(), f.end());
  return report;
}

QSeries eta_J_coefficients(Frac order) {
  constexpr std::int64_t kDen = 24;
  // eta J = q^{-23/24} E4^3 / (q;q)^23 - 744 q^{1/24} (q;q), so the integer
  // part is needed to order + 23/24.
  const Frac inner = order + Frac(23, 24);
  const auto top = static_cast<std::int64_t>(std::floor(boost::rational_cast<double>(inner)));
  QSeries::TermMap e4_terms{{0, 1}};
  for (std::int64_t n = 1; n <= top; ++n) {
    std::int64_t sigma3 = 0;
    for (std::int64_t d = 1; d <= n; ++d)
      if (n % d == 0) sigma3 += d * d * d;
    e4_terms[n * kDen] = Rational(240 * sigma3);
  }
  const QSeries e4 = QSeries::from_terms(std::move(e4_terms), inner, kDen);
  const QSeries euler = pochhammer(1, 1, 1, std::nullopt, inner, kDen);
  QSeries euler_power = QSeries::monomial(0, 1, kDen).truncated(inner);
  for (int i = 0; i < 23; ++i) euler_power *= euler;
  const QSeries main = (e4 * e4 * e4 * invert_unit(euler_power, inner)).shifted(Frac(-23, 24));
  const QSeries constant = dedekind_eta(1, order, kDen) * Rational(744);
  return (main - constant).truncated(order);
}

}  // namespace umbral
