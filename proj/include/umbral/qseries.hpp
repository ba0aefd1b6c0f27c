#pragma once

// Exact truncated Puiseux series in q with a fixed exponent grading.
//
// A QSeries stores coefficients of q^{e/D} for integer numerators e over a
// grading denominator D, together with a truncation order N.  Coefficients
// of exponents above N are unknown; asking for one is an error, never zero.
// A series without a truncation order is exact (a Laurent polynomial).

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include <boost/rational.hpp>
#include <gmpxx.h>

namespace boost {

// Exact-match overloads: under C++20 rewritten comparisons the library's
// mixed rational/integer operator== recurses forever.
inline bool operator==(const rational<std::int64_t>& a, int b) { return a.denominator() == 1 && a.numerator() == b; }
inline bool operator==(const rational<std::int64_t>& a, std::int64_t b) {
  return a.denominator() == 1 && a.numerator() == b;
}
inline bool operator==(int b, const rational<std::int64_t>& a) { return a == b; }
inline bool operator==(std::int64_t b, const rational<std::int64_t>& a) { return a == b; }

}  // namespace boost

namespace umbral {

using Rational = mpq_class;
using Frac = boost::rational<std::int64_t>;

class SeriesError : public std::runtime_error {
 public:
  enum class Kind { Truncation, Grading, NotAUnit, Divergence, Domain };

  SeriesError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class QSeries {
 public:
  static constexpr std::int64_t kDefaultDenominator = 120;
  // Largest grading denominator reachable by lcm rescaling.
  static constexpr std::int64_t kMaxDenominator = 1'000'000;

  using TermMap = std::map<std::int64_t, Rational>;

  /// Exact zero.
  explicit QSeries(std::int64_t denominator = kDefaultDenominator);

  /// O(q^order): no known nonzero coefficient up to `order`.
  static QSeries zero(Frac order, std::int64_t denominator = kDefaultDenominator);
  /// Exact monomial c q^exponent.
  static QSeries monomial(Frac exponent, const Rational& coeff = 1,
                          std::int64_t denominator = kDefaultDenominator);
  /// Build from exponent numerators; zero entries are dropped and entries
  /// beyond `order` are discarded.
  static QSeries from_terms(TermMap terms, std::optional<Frac> order,
                            std::int64_t denominator = kDefaultDenominator);

  std::int64_t denominator() const noexcept { return denominator_; }
  bool exact() const noexcept { return order_num_ == kExactOrder; }
  /// Truncation order, or nullopt for an exact series.
  std::optional<Frac> order() const;
  /// Lowest exponent with a stored coefficient; nullopt if none.
  std::optional<Frac> valuation() const;
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Coefficient of q^exponent.  Throws SeriesError(Truncation) past the
  /// truncation order and SeriesError(Grading) if the exponent is not a
  /// multiple of 1/denominator.
  Rational coefficient(Frac exponent) const;

  QSeries truncated(Frac order) const;
  QSeries with_denominator(std::int64_t denominator) const;
  /// Multiply by q^exponent.
  QSeries shifted(Frac exponent) const;
  /// q -> -q.  Requires every stored exponent to be an integer.
  QSeries negated_argument() const;
  /// q -> q^s for a positive integer s.
  QSeries dilated(std::int64_t s) const;

  /// Sum at q = e^{2 pi i tau} of the stored terms.
  std::complex<double> evaluate(std::complex<double> tau) const;

  QSeries operator-() const;
  QSeries& operator+=(const QSeries& rhs);
  QSeries& operator-=(const QSeries& rhs);
  QSeries& operator*=(const QSeries& rhs);
  QSeries& operator*=(const Rational& scalar);

  friend QSeries operator+(QSeries lhs, const QSeries& rhs) { return lhs += rhs; }
  friend QSeries operator-(QSeries lhs, const QSeries& rhs) { return lhs -= rhs; }
  friend QSeries operator*(const QSeries& lhs, const QSeries& rhs);
  friend QSeries operator*(QSeries lhs, const Rational& s) { return lhs *= s; }
  friend QSeries operator*(const Rational& s, QSeries rhs) { return rhs *= s; }

  /// Canonical-form equality: same grading, same order, same terms.
  friend bool operator==(const QSeries& a, const QSeries& b);

  std::string to_string(std::size_t max_terms = 12) const;

  // Internal numerator representation, exposed for tight loops elsewhere in
  // the library.
  static constexpr std::int64_t kExactOrder = INT64_MAX;
  std::int64_t order_numerator() const noexcept { return order_num_; }
  /// Numerator of `e` over this series' denominator; throws if not representable.
  std::int64_t numerator_of(Frac e) const;
  /// floor(order * denominator).
  std::int64_t order_numerator_of(Frac order) const;

 private:
  void canonicalize();

  std::int64_t denominator_;
  std::int64_t order_num_ = kExactOrder;
  TermMap terms_;
};

/// Inverse of a series whose lowest stored coefficient is nonzero.  An exact
/// non-monomial input requires `order`; the result order is the smaller of
/// `order` and the precision the input supports.
QSeries invert_unit(const QSeries& s, std::optional<Frac> order = std::nullopt);

/// prod_{k<n} (1 - sign * q^{x_exponent + k*step}).  `n` nullopt means the
/// infinite product, which needs every factor exponent positive.
QSeries pochhammer(Frac x_exponent, int x_sign, Frac step, std::optional<std::int64_t> n,
                   Frac order, std::int64_t denominator = QSeries::kDefaultDenominator);

/// eta(s tau) = q^{s/24} (q^s; q^s)_inf.
QSeries dedekind_eta(std::int64_t scale, Frac order,
                     std::int64_t denominator = QSeries::kDefaultDenominator);

Rational extract_coefficient(const QSeries& s, Frac exponent);

std::string format_frac(Frac f);
std::string format_rational(const Rational& r);

}  // namespace umbral
