#include "umbral/mocktheta.hpp"

#include <functional>
#include <stdexcept>

#include "umbral/characters.hpp"
#include "umbral/lattice.hpp"
#include "umbral/parallel.hpp"

namespace umbral {

namespace {

int parity_sign(std::int64_t n) { return (n % 2 == 0) ? 1 : -1; }

QSeries inverse_pochhammer(Frac x_exponent, Frac step, std::optional<std::int64_t> n, Frac order) {
  return invert_unit(pochhammer(x_exponent, 1, step, n, order), order);
}

// q^shift * body, with body needed only to order - shift.
template <typename Body>
QSeries summand(Frac shift, Frac order, Body body) {
  return body(order - shift).shifted(shift);
}

}  // namespace

std::string to_string(MockTheta f) {
  switch (f) {
    case MockTheta::Chi0: return "chi0";
    case MockTheta::Chi1: return "chi1";
    case MockTheta::F0: return "F0";
    case MockTheta::F1: return "F1";
    case MockTheta::Phi0: return "phi0";
    case MockTheta::Phi1: return "phi1";
  }
  return "?";
}

QSeries ramanujan_series(MockTheta f, int argument_sign, Frac order) {
  if (argument_sign != 1 && argument_sign != -1) throw std::invalid_argument("argument sign must be +1 or -1");
  QSeries acc = QSeries::zero(order);
  for (std::int64_t n = 0;; ++n) {
    Frac valuation;
    switch (f) {
      case MockTheta::Chi0:
      case MockTheta::Chi1: valuation = n; break;
      case MockTheta::F0: valuation = 2 * n * n; break;
      case MockTheta::F1: valuation = 2 * n * (n + 1); break;
      case MockTheta::Phi0: valuation = n * n; break;
      case MockTheta::Phi1: valuation = (n + 1) * (n + 1); break;
    }
    if (valuation > order) break;
    switch (f) {
      case MockTheta::Chi0:  // q^n / (q^{n+1}; q)_n
        acc += summand(valuation, order, [&](Frac o) { return inverse_pochhammer(n + 1, 1, n, o); });
        break;
      case MockTheta::Chi1:  // q^n / (q^{n+1}; q)_{n+1}
        acc += summand(valuation, order, [&](Frac o) { return inverse_pochhammer(n + 1, 1, n + 1, o); });
        break;
      case MockTheta::F0:  // q^{2n^2} / (q; q^2)_n
        acc += summand(valuation, order, [&](Frac o) { return inverse_pochhammer(1, 2, n, o); });
        break;
      case MockTheta::F1:  // q^{2n(n+1)} / (q; q^2)_{n+1}
        acc += summand(valuation, order, [&](Frac o) { return inverse_pochhammer(1, 2, n + 1, o); });
        break;
      case MockTheta::Phi0:  // q^{n^2} (-q; q^2)_n
      case MockTheta::Phi1:  // q^{(n+1)^2} (-q; q^2)_n
        acc += summand(valuation, order, [&](Frac o) { return pochhammer(1, -1, 2, n, o); });
        break;
    }
  }
  return argument_sign == 1 ? acc : acc.negated_argument();
}

QSeries zwegers_triple_sum(ZwegersSide side, Frac order) {
  const Frac c = side == ZwegersSide::Chi0Side ? Frac(1, 2) : Frac(3, 2);
  OrthantQuadratic f(3);
  for (std::size_t i = 0; i < 3; ++i) {
    f.quad[i][i] = Frac(1, 2);
    f.lin[i] = c;
    for (std::size_t j = i + 1; j < 3; ++j) f.quad[i][j] = 2;
  }
  const QSeries sum = orthant_theta(f, +1, order, [](std::span<const std::int64_t> x) {
    return parity_sign(x[0] + x[1] + x[2]);
  });
  const QSeries euler = pochhammer(1, 1, 1, std::nullopt, order);
  return invert_unit(euler * euler, order) * sum;
}

QSeries hecke_parity_sum(int family, Frac order) {
  if (family != 1 && family != 7) throw std::invalid_argument("family must be 1 or 7");
  OrthantQuadratic f(2);
  f.quad[0][0] = Frac(1, 2);
  f.quad[1][1] = Frac(1, 2);
  f.quad[0][1] = 4;
  f.lin[0] = family == 1 ? Frac(1, 2) : Frac(3, 2);
  f.lin[1] = family == 1 ? Frac(3, 2) : Frac(5, 2);
  return orthant_theta(f, -1, order, [](std::span<const std::int64_t> x) {
    const std::int64_t k = x[0], m = x[1];
    if (((k - m) % 2 + 2) % 2 != 0) return 0;
    return parity_sign(m);
  });
}

QSeries hecke_double_sum(HeckeSum variant, Frac order) {
  switch (variant) {
    case HeckeSum::Phi0Lhs:
    case HeckeSum::Phi1Lhs: {
      const QSeries sum = hecke_parity_sum(variant == HeckeSum::Phi0Lhs ? 1 : 7, order);
      const QSeries q2 = pochhammer(2, 1, 2, std::nullopt, order);
      const QSeries prefactor = pochhammer(1, 1, 1, std::nullopt, order) * invert_unit(q2 * q2, order);
      return prefactor * sum;
    }
    case HeckeSum::ProductRhs1:
    case HeckeSum::ProductRhs7: {
      const Frac s = variant == HeckeSum::ProductRhs1 ? Frac(1) : Frac(3);
      OrthantQuadratic f(2);
      f.quad[0][0] = 3;
      f.quad[1][1] = Frac(1, 2);
      f.quad[0][1] = 4;
      f.lin[0] = s;
      f.lin[1] = s / 2;
      const QSeries sum = orthant_theta(f, -1, order, [](std::span<const std::int64_t> x) {
        return parity_sign(x[0] + x[1]);
      });
      return pochhammer(1, -1, 1, std::nullopt, order) * sum;  // prod (1 + q^n)
    }
  }
  throw std::invalid_argument("unknown Hecke sum");
}

IdentityReport compare_series(std::string name, const QSeries& lhs, const QSeries& rhs, Frac order) {
  IdentityReport report;
  report.name = std::move(name);
  report.order = order;
  for (const QSeries* side : {&lhs, &rhs}) {
    if (!side->exact() && *side->order() < order) {
      report.note = "insufficient precision: a side is only known to order " + format_frac(*side->order());
      return report;
    }
  }
  const QSeries diff = (lhs - rhs).truncated(order);
  if (diff.is_zero()) {
    report.verified = true;
    return report;
  }
  const Frac e(diff.terms().begin()->first, diff.denominator());
  report.first_discrepancy = e;
  report.lhs_coefficient = lhs.coefficient(e);
  report.rhs_coefficient = rhs.coefficient(e);
  return report;
}

std::vector<IdentityReport> identity_suite(Frac order, const SuiteOptions& options) {
  // One extra unit of precision absorbs the q^{-1} and q^{-49/120} shifts.
  const Frac base_order = order + 1;
  auto chi0 = [&] {
    QSeries s = ramanujan_series(MockTheta::Chi0, 1, base_order);
    if (options.corrupt_chi0) s += QSeries::monomial(5);
    return s;
  };
  auto series = [&](MockTheta f, int sign) { return ramanujan_series(f, sign, base_order); };
  const QSeries two = QSeries::monomial(0, 2);
  const QSeries q_inv = QSeries::monomial(-1);
  const Frac s1(-1, 120), s7(71, 120), s49(-49, 120);

  using Item = std::function<IdentityReport()>;
  const std::vector<Item> items{
      [&] {
        return compare_series("zwegers triple sum: 2 - chi0", zwegers_triple_sum(ZwegersSide::Chi0Side, order),
                              two - chi0(), order);
      },
      [&] {
        return compare_series("zwegers triple sum: chi1", zwegers_triple_sum(ZwegersSide::Chi1Side, order),
                              series(MockTheta::Chi1, 1), order);
      },
      [&] {
        return compare_series("hecke double sum: phi0(-q)", hecke_double_sum(HeckeSum::Phi0Lhs, order),
                              series(MockTheta::Phi0, -1), order);
      },
      [&] {
        return compare_series("hecke double sum: -q^-1 phi1(-q)", hecke_double_sum(HeckeSum::Phi1Lhs, order),
                              -(q_inv * series(MockTheta::Phi1, -1)), order);
      },
      [&] {
        return compare_series("parity sum = prod(1+q^n) double sum, family 1", hecke_parity_sum(1, order),
                              hecke_double_sum(HeckeSum::ProductRhs1, order), order);
      },
      [&] {
        return compare_series("parity sum = prod(1+q^n) double sum, family 7", hecke_parity_sum(7, order),
                              hecke_double_sum(HeckeSum::ProductRhs7, order), order);
      },
      [&] {
        return compare_series("chi0 = 2 F0 - phi0(-q)", chi0(),
                              series(MockTheta::F0, 1) * Rational(2) - series(MockTheta::Phi0, -1), order);
      },
      [&] {
        return compare_series("chi1 = 2 F1 + q^-1 phi1(-q)", series(MockTheta::Chi1, 1),
                              series(MockTheta::F1, 1) * Rational(2) + q_inv * series(MockTheta::Phi1, -1), order);
      },
      [&] {
        const QSeries h = assemble_H(GroupClass::get(ClassName::A1), order).component(1);
        return compare_series("H_1A,1 = 2 q^-1/120 (chi0 - 2)", h, (chi0() - two).shifted(s1) * Rational(2), order);
      },
      [&] {
        const QSeries h = assemble_H(GroupClass::get(ClassName::A1), order).component(7);
        return compare_series("H_1A,7 = 2 q^71/120 chi1", h, series(MockTheta::Chi1, 1).shifted(s7) * Rational(2),
                              order);
      },
      [&] {
        const QSeries h = assemble_H(GroupClass::get(ClassName::A2), order).component(1);
        return compare_series("H_2A,1 = -2 q^-1/120 phi0(-q)", h,
                              series(MockTheta::Phi0, -1).shifted(s1) * Rational(-2), order);
      },
      [&] {
        const QSeries h = assemble_H(GroupClass::get(ClassName::A2), order).component(7);
        return compare_series("H_2A,7 = 2 q^-49/120 phi1(-q)", h,
                              series(MockTheta::Phi1, -1).shifted(s49) * Rational(2), order);
      },
      [&] {
        // 4 F_{5,1,3}(2 tau) - 2 F_{5,2,3}(2 tau)
        const QSeries t = trace_closed({ClassName::A1, 1, -1}, order) * Rational(2);
        const QSeries f513 = (series(MockTheta::F0, 1) - QSeries::monomial(0)).shifted(s1);
        const QSeries f523 = series(MockTheta::Phi0, -1).shifted(s1);
        return compare_series("2 T-_e,1 = 4 F513(2tau) - 2 F523(2tau)", t,
                              f513 * Rational(4) - f523 * Rational(2), order);
      },
      [&] {
        // 4 F_{5,1,4}(2 tau) - 2 F_{5,2,4}(2 tau)
        const QSeries t = trace_closed({ClassName::A1, 7, -1}, order) * Rational(2);
        const QSeries f514 = series(MockTheta::F1, 1).shifted(s7);
        const QSeries f524 = -series(MockTheta::Phi1, -1).shifted(s49);
        return compare_series("2 T-_e,7 = 4 F514(2tau) - 2 F524(2tau)", t,
                              f514 * Rational(4) - f524 * Rational(2), order);
      },
  };

  std::vector<IdentityReport> reports(items.size());
  parallel_for(items.size(), [&](std::size_t i) { reports[i] = items[i](); });
  return reports;
}

}  // namespace umbral
