#include "umbral/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <vector>

namespace umbral {

namespace {

constexpr std::int64_t kExact = QSeries::kExactOrder;
// Dense accumulation is used for products whose exponent span fits here.
constexpr std::int64_t kDenseSpanLimit = std::int64_t{1} << 22;

std::int64_t add_orders(std::int64_t order, std::int64_t offset) {
  return order == kExact ? kExact : order + offset;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  const std::int64_t l = std::lcm(a, b);
  if (l > QSeries::kMaxDenominator) {
    throw SeriesError(SeriesError::Kind::Grading,
                      "grading denominators " + std::to_string(a) + " and " + std::to_string(b) +
                          " rescale past the configured bound " +
                          std::to_string(QSeries::kMaxDenominator));
  }
  return l;
}

bool all_integral(const QSeries::TermMap& terms) {
  return std::all_of(terms.begin(), terms.end(),
                     [](const auto& kv) { return kv.second.get_den() == 1; });
}

// Product of term maps restricted to exponents <= limit (kExact: no limit).
template <typename Acc>
QSeries::TermMap multiply_terms(const QSeries::TermMap& a, const QSeries::TermMap& b,
                                std::int64_t limit) {
  QSeries::TermMap out;
  if (a.empty() || b.empty()) return out;
  const std::int64_t lo = a.begin()->first + b.begin()->first;
  std::int64_t hi = a.rbegin()->first + b.rbegin()->first;
  if (limit != kExact) hi = std::min(hi, limit);
  if (hi < lo) return out;

  auto get = [](const Rational& r) -> const auto& {
    if constexpr (std::is_same_v<Acc, mpz_class>) {
      return r.get_num();
    } else {
      return r;
    }
  };

  const std::int64_t span = hi - lo + 1;
  if (span <= kDenseSpanLimit) {
    std::vector<Acc> acc(static_cast<std::size_t>(span));
    std::vector<char> touched(static_cast<std::size_t>(span), 0);
    Acc prod;
    for (const auto& [ea, ca] : a) {
      if (ea + b.begin()->first > hi) break;
      const auto& xa = get(ca);
      for (const auto& [eb, cb] : b) {
        const std::int64_t e = ea + eb;
        if (e > hi) break;
        const auto idx = static_cast<std::size_t>(e - lo);
        prod = xa * get(cb);
        acc[idx] += prod;
        touched[idx] = 1;
      }
    }
    for (std::int64_t i = 0; i < span; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      if (touched[idx] && sgn(acc[idx]) != 0) out.emplace(lo + i, Rational(acc[idx]));
    }
    return out;
  }
  std::map<std::int64_t, Acc> acc;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      const std::int64_t e = ea + eb;
      if (e > hi) break;
      acc[e] += get(ca) * get(cb);
    }
  }
  for (auto& [e, c] : acc) {
    if (sgn(c) != 0) out.emplace(e, Rational(c));
  }
  return out;
}

}  // namespace

QSeries::QSeries(std::int64_t denominator) : denominator_(denominator) {
  if (denominator <= 0 || denominator > kMaxDenominator) {
    throw SeriesError(SeriesError::Kind::Grading,
                      "grading denominator must lie in [1, " + std::to_string(kMaxDenominator) +
                          "], got " + std::to_string(denominator));
  }
}

QSeries QSeries::zero(Frac order, std::int64_t denominator) {
  QSeries s(denominator);
  s.order_num_ = s.order_numerator_of(order);
  return s;
}

QSeries QSeries::monomial(Frac exponent, const Rational& coeff, std::int64_t denominator) {
  QSeries s(denominator);
  if (sgn(coeff) != 0) s.terms_.emplace(s.numerator_of(exponent), coeff);
  return s;
}

QSeries QSeries::from_terms(TermMap terms, std::optional<Frac> order, std::int64_t denominator) {
  QSeries s(denominator);
  s.terms_ = std::move(terms);
  if (order) s.order_num_ = s.order_numerator_of(*order);
  s.canonicalize();
  return s;
}

std::int64_t QSeries::numerator_of(Frac e) const {
  const std::int64_t scaled_num = e.numerator() * denominator_;
  if (scaled_num % e.denominator() != 0) {
    throw SeriesError(SeriesError::Kind::Grading,
                      "exponent " + format_frac(e) + " is not a multiple of 1/" +
                          std::to_string(denominator_));
  }
  return scaled_num / e.denominator();
}

std::int64_t QSeries::order_numerator_of(Frac order) const {
  return floor_div(order.numerator() * denominator_, order.denominator());
}

std::optional<Frac> QSeries::order() const {
  if (exact()) return std::nullopt;
  return Frac(order_num_, denominator_);
}

std::optional<Frac> QSeries::valuation() const {
  if (terms_.empty()) return std::nullopt;
  return Frac(terms_.begin()->first, denominator_);
}

Rational QSeries::coefficient(Frac exponent) const {
  const std::int64_t e = numerator_of(exponent);
  if (!exact() && e > order_num_) {
    throw SeriesError(SeriesError::Kind::Truncation,
                      "coefficient of q^" + format_frac(exponent) +
                          " lies beyond the truncation order " + format_frac(*order()));
  }
  const auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void QSeries::canonicalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (sgn(it->second) == 0 || (order_num_ != kExact && it->first > order_num_)) {
      it = terms_.erase(it);
    } else {
      it->second.canonicalize();
      ++it;
    }
  }
}

QSeries QSeries::truncated(Frac order) const {
  QSeries out = *this;
  out.order_num_ = std::min(order_num_, order_numerator_of(order));
  out.canonicalize();
  return out;
}

QSeries QSeries::with_denominator(std::int64_t denominator) const {
  if (denominator == denominator_) return *this;
  if (denominator % denominator_ != 0) {
    throw SeriesError(SeriesError::Kind::Grading,
                      "cannot rescale grading 1/" + std::to_string(denominator_) + " to 1/" +
                          std::to_string(denominator));
  }
  const std::int64_t factor = denominator / denominator_;
  QSeries out(denominator);
  out.order_num_ = exact() ? kExact : order_num_ * factor;
  for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e * factor, c);
  return out;
}

QSeries QSeries::shifted(Frac exponent) const {
  const std::int64_t common = checked_lcm(denominator_, static_cast<std::int64_t>(exponent.denominator()));
  QSeries base = with_denominator(common);
  const std::int64_t shift = base.numerator_of(exponent);
  QSeries out(common);
  out.order_num_ = add_orders(base.order_num_, shift);
  for (const auto& [e, c] : base.terms_) out.terms_.emplace_hint(out.terms_.end(), e + shift, c);
  return out;
}

QSeries QSeries::negated_argument() const {
  QSeries out = *this;
  for (auto& [e, c] : out.terms_) {
    if (e % denominator_ != 0) {
      throw SeriesError(SeriesError::Kind::Domain,
                        "q -> -q needs integral exponents; found q^" +
                            format_frac(Frac(e, denominator_)));
    }
    if ((e / denominator_) % 2 != 0) c = -c;
  }
  return out;
}

QSeries QSeries::dilated(std::int64_t s) const {
  if (s <= 0) throw SeriesError(SeriesError::Kind::Domain, "dilation factor must be positive");
  QSeries out(denominator_);
  out.order_num_ = exact() ? kExact : order_num_ * s;
  for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e * s, c);
  return out;
}

std::complex<double> QSeries::evaluate(std::complex<double> tau) const {
  const std::complex<double> two_pi_i_tau = 2.0 * std::numbers::pi * std::complex<double>(0, 1) * tau;
  std::complex<double> sum = 0;
  for (const auto& [e, c] : terms_) {
    sum += c.get_d() * std::exp(two_pi_i_tau * (static_cast<double>(e) / static_cast<double>(denominator_)));
  }
  return sum;
}

QSeries QSeries::operator-() const {
  QSeries out = *this;
  for (auto& kv : out.terms_) kv.second = -kv.second;
  return out;
}

QSeries& QSeries::operator+=(const QSeries& rhs) {
  if (rhs.denominator_ != denominator_) {
    const std::int64_t common = checked_lcm(denominator_, rhs.denominator_);
    *this = with_denominator(common);
    return *this += rhs.with_denominator(common);
  }
  order_num_ = std::min(order_num_, rhs.order_num_);
  for (const auto& [e, c] : rhs.terms_) {
    if (order_num_ != kExact && e > order_num_) break;
    terms_[e] += c;
  }
  canonicalize();
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& rhs) { return *this += -rhs; }

QSeries& QSeries::operator*=(const QSeries& rhs) {
  *this = *this * rhs;
  return *this;
}

QSeries& QSeries::operator*=(const Rational& scalar) {
  if (sgn(scalar) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& kv : terms_) kv.second *= scalar;
  return *this;
}

QSeries operator*(const QSeries& lhs, const QSeries& rhs) {
  if (lhs.denominator_ != rhs.denominator_) {
    const std::int64_t common = checked_lcm(lhs.denominator_, rhs.denominator_);
    return lhs.with_denominator(common) * rhs.with_denominator(common);
  }
  // A truncated zero is known to vanish up to its order, which then plays
  // the role of its valuation in the precision rule.
  auto effective_valuation = [](const QSeries& s) {
    return s.terms_.empty() ? s.order_num_ : s.terms_.begin()->first;
  };
  QSeries out(lhs.denominator_);
  if ((lhs.exact() && lhs.is_zero()) || (rhs.exact() && rhs.is_zero())) return out;
  out.order_num_ = std::min(add_orders(lhs.order_num_, effective_valuation(rhs)),
                            add_orders(rhs.order_num_, effective_valuation(lhs)));
  if (all_integral(lhs.terms_) && all_integral(rhs.terms_)) {
    out.terms_ = multiply_terms<mpz_class>(lhs.terms_, rhs.terms_, out.order_num_);
  } else {
    out.terms_ = multiply_terms<mpq_class>(lhs.terms_, rhs.terms_, out.order_num_);
  }
  return out;
}

bool operator==(const QSeries& a, const QSeries& b) {
  if (a.denominator_ != b.denominator_) {
    const std::int64_t common = std::lcm(a.denominator_, b.denominator_);
    if (common > QSeries::kMaxDenominator) return false;
    return a.with_denominator(common) == b.with_denominator(common);
  }
  return a.order_num_ == b.order_num_ && a.terms_ == b.terms_;
}

std::string QSeries::to_string(std::size_t max_terms) const {
  std::ostringstream os;
  std::size_t shown = 0;
  for (const auto& [e, c] : terms_) {
    if (shown == max_terms) {
      os << " + ...";
      break;
    }
    if (shown > 0) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    os << format_rational(abs(c)) << "q^(" << format_frac(Frac(e, denominator_)) << ")";
    ++shown;
  }
  if (shown == 0) os << "0";
  if (!exact()) os << " + O(q^(" << format_frac(*order()) << "))";
  return os.str();
}

QSeries invert_unit(const QSeries& s, std::optional<Frac> order) {
  if (s.is_zero()) {
    throw SeriesError(SeriesError::Kind::NotAUnit, "cannot invert a series with no known nonzero term");
  }
  const std::int64_t den = s.denominator();
  const auto& terms = s.terms();
  const std::int64_t v = terms.begin()->first;
  const Rational lead = terms.begin()->second;

  std::int64_t target = QSeries::kExactOrder;
  if (!s.exact()) target = s.order_numerator() - 2 * v;
  if (order) target = std::min(target, s.order_numerator_of(*order));

  if (terms.size() == 1) {
    QSeries mono = QSeries::monomial(Frac(-v, den), 1 / lead, den);
    return target == QSeries::kExactOrder ? mono : mono.truncated(Frac(target, den));
  }
  if (target == QSeries::kExactOrder) {
    throw SeriesError(SeriesError::Kind::Domain,
                      "inverting an exact non-monomial series needs an explicit order");
  }

  // Normalized t = s q^{-v} / lead = 1 + sum_{d>0} t_d q^d; u = 1/t.
  const std::int64_t precision = target + v;  // relative precision of u
  QSeries::TermMap result;
  if (precision >= 0) {
    std::vector<std::pair<std::int64_t, Rational>> tail;
    std::int64_t step = 0;
    for (auto it = std::next(terms.begin()); it != terms.end(); ++it) {
      const std::int64_t d = it->first - v;
      if (d > precision) break;
      tail.emplace_back(d, it->second / lead);
      step = std::gcd(step, d);
    }
    std::map<std::int64_t, Rational> u;
    u.emplace(0, Rational(1));
    if (step > 0) {
      for (std::int64_t e = step; e <= precision; e += step) {
        Rational acc = 0;
        for (const auto& [d, td] : tail) {
          if (d > e) break;
          const auto found = u.find(e - d);
          if (found != u.end()) acc -= td * found->second;
        }
        if (sgn(acc) != 0) u.emplace(e, std::move(acc));
      }
    }
    const Rational inv_lead = 1 / lead;
    for (auto& [e, c] : u) result.emplace(e - v, c * inv_lead);
  }
  return QSeries::from_terms(std::move(result), Frac(target, den), den);
}

QSeries pochhammer(Frac x_exponent, int x_sign, Frac step, std::optional<std::int64_t> n,
                   Frac order, std::int64_t denominator) {
  if (x_sign != 1 && x_sign != -1) {
    throw SeriesError(SeriesError::Kind::Domain, "pochhammer sign must be +1 or -1");
  }
  if (step <= 0) throw SeriesError(SeriesError::Kind::Domain, "pochhammer step must be positive");
  if (n && *n < 0) throw SeriesError(SeriesError::Kind::Domain, "pochhammer length must be >= 0");
  if (!n && x_exponent <= 0) {
    throw SeriesError(SeriesError::Kind::Divergence,
                      "infinite product has a factor with non-positive exponent " +
                          format_frac(x_exponent));
  }
  QSeries acc = QSeries::monomial(0, 1, denominator).truncated(order);
  const Rational coeff(-x_sign);
  for (std::int64_t k = 0; !n || k < *n; ++k) {
    const Frac exponent = x_exponent + step * k;
    if (exponent > order) {
      if (!n) break;
      if (exponent > 0) continue;  // factor is 1 + O(q^order)
    }
    acc += acc.shifted(exponent) * coeff;
  }
  return acc;
}

QSeries dedekind_eta(std::int64_t scale, Frac order, std::int64_t denominator) {
  if (scale <= 0) throw SeriesError(SeriesError::Kind::Domain, "eta scale must be positive");
  if ((denominator * scale) % 24 != 0) {
    throw SeriesError(SeriesError::Kind::Grading,
                      "grading 1/" + std::to_string(denominator) + " cannot hold q^(" +
                          std::to_string(scale) + "/24)");
  }
  const Frac lead(scale, 24);
  return pochhammer(Frac(scale), 1, Frac(scale), std::nullopt, order - lead, denominator)
      .shifted(lead);
}

Rational extract_coefficient(const QSeries& s, Frac exponent) { return s.coefficient(exponent); }

std::string format_frac(Frac f) {
  if (f.denominator() == 1) return std::to_string(f.numerator());
  return std::to_string(f.numerator()) + "/" + std::to_string(f.denominator());
}

std::string format_rational(const Rational& r) {
  Rational reduced = r;
  reduced.canonicalize();
  return reduced.get_str();
}

}  // namespace umbral
