#include "umbral/maass.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "umbral/theta.hpp"

namespace umbral {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::int64_t kRingCap = 20000;
constexpr std::int64_t kUnaryCap = 10'000'000;

double to_double(Frac f) { return boost::rational_cast<double>(f); }

int sign_of(Frac f) { return f > 0 ? 1 : (f < 0 ? -1 : 0); }

Frac frac_part(Frac f) {
  const std::int64_t fl = f.numerator() >= 0 ? f.numerator() / f.denominator()
                                              : -((-f.numerator() + f.denominator() - 1) / f.denominator());
  return f - fl;
}

std::int64_t floor_frac(Frac f) {
  std::int64_t q = f.numerator() / f.denominator();
  if (f.numerator() % f.denominator() != 0 && f.numerator() < 0) --q;
  return q;
}

// Extended Euclid: returns g = gcd(|x|, |y|) with u x + w y = g.
std::int64_t ext_gcd(std::int64_t x, std::int64_t y, std::int64_t& u, std::int64_t& w) {
  std::int64_t r0 = x, r1 = y, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
    std::tie(t0, t1) = std::pair{t1, t0 - q * t1};
  }
  if (r0 < 0) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  u = s0;
  w = t0;
  return r0;
}

// Binary quadratic form helpers over doubles: Q(x) = x.Mx / 2.
struct Form2 {
  double m00, m01, m11;

  explicit Form2(const IntMat2& A)
      : m00(static_cast<double>(A[0][0])), m01(static_cast<double>(A[0][1])), m11(static_cast<double>(A[1][1])) {}
  Form2(double a, double b, double c) : m00(a), m01(b), m11(c) {}

  double Q(double x0, double x1) const { return 0.5 * (m00 * x0 * x0 + 2 * m01 * x0 * x1 + m11 * x1 * x1); }
  double B(double x0, double x1, double y0, double y1) const {
    return x0 * (m00 * y0 + m01 * y1) + x1 * (m01 * y0 + m11 * y1);
  }
  double min_eigenvalue() const {
    const double tr = m00 + m11;
    const double disc = std::sqrt((m00 - m11) * (m00 - m11) + 4 * m01 * m01);
    return 0.5 * (tr - disc);
  }
};

// sum_{s > R} 8 s exp(-pi y lambda (s - shift)^2): the mass of the rings
// |n|_inf = s when every point on ring s has |nu| >= s - shift.
double ring_tail(double lambda, std::int64_t R, double shift, double y) {
  if (lambda <= 0) return kInf;
  double sum = 0;
  for (std::int64_t s = R + 1;; ++s) {
    const double d = static_cast<double>(s) - shift;
    if (d <= 0) return kInf;
    const double t = 8.0 * s * std::exp(-kPi * y * lambda * d * d);
    const double next = 8.0 * (s + 1) * std::exp(-kPi * y * lambda * (d + 1) * (d + 1));
    sum += t;
    if (t == 0) return sum;
    const double ratio = next / t;
    if (ratio < 1) return sum + next / (1 - ratio);
  }
}

template <typename Visit>
void visit_ring(std::int64_t s, Visit visit) {
  if (s == 0) {
    visit(0, 0);
    return;
  }
  for (std::int64_t j = -s; j <= s; ++j) {
    visit(s, j);
    visit(-s, j);
  }
  for (std::int64_t j = -s + 1; j <= s - 1; ++j) {
    visit(j, s);
    visit(j, -s);
  }
}

IntVec2 mat_vec(const IntMat2& A, const IntVec2& c) {
  return {A[0][0] * c[0] + A[0][1] * c[1], A[1][0] * c[0] + A[1][1] * c[1]};
}

Frac dot(const IntVec2& u, const Vec2& v) { return Frac(u[0]) * v[0] + Frac(u[1]) * v[1]; }

std::int64_t det(const IntMat2& A) { return A[0][0] * A[1][1] - A[0][1] * A[1][0]; }

ComplexMat2 identity2() { return {{{Complex(1), Complex(0)}, {Complex(0), Complex(1)}}}; }

ComplexMat2 mul(const ComplexMat2& x, const ComplexMat2& y) {
  ComplexMat2 out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
  return out;
}

ComplexMat2 scale(const ComplexMat2& x, Complex s) {
  ComplexMat2 out = x;
  for (auto& row : out)
    for (auto& v : row) v *= s;
  return out;
}

}  // namespace

UpperHalfPoint::UpperHalfPoint(Complex tau) : tau_(tau) {
  if (!(tau.imag() > 0) || !std::isfinite(tau.real()) || !std::isfinite(tau.imag())) {
    throw NumericError(NumericError::Kind::Domain,
                       "tau must lie in the upper half plane, got Im(tau) = " + std::to_string(tau.imag()));
  }
}

UpperHalfPoint UpperHalfPoint::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ') s.push_back(ch);
  auto fail = [&] { return NumericError(NumericError::Kind::Domain, "cannot parse tau from '" + std::string(text) + "'"); };
  auto number = [&](const std::string& t) {
    if (t.empty()) throw fail();
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size()) throw fail();
    return v;
  };
  if (s.empty()) throw fail();
  if (s.back() != 'i') return UpperHalfPoint(Complex(number(s), 0));
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  const std::string re = split == std::string::npos ? "" : s.substr(0, split);
  std::string im = split == std::string::npos ? s : s.substr(split);
  if (im.empty() || im == "+") im += "1";
  if (im == "-") im = "-1";
  return UpperHalfPoint(Complex(re.empty() ? 0.0 : number(re), number(im)));
}

Complex e_phase(double x) {
  const double r = x - std::floor(x);
  return std::polar(1.0, 2 * kPi * r);
}

double beta_incomplete(double x) {
  if (!(x >= 0)) throw NumericError(NumericError::Kind::Domain, "beta needs x >= 0");
  return std::erfc(std::sqrt(kPi * x));
}

double log_beta_incomplete(double x) {
  if (!(x >= 0)) throw NumericError(NumericError::Kind::Domain, "beta needs x >= 0");
  const double z = std::sqrt(kPi * x);
  if (z < 25) return std::log(std::erfc(z));
  // erfc(z) = e^{-z^2} / (z sqrt(pi)) (1 - 1/2z^2 + 3/4z^4 - 15/8z^6 + 105/16z^8 - ...)
  const double w = 1 / (2 * z * z);
  const double series = 1 - w * (1 - 3 * w * (1 - 5 * w * (1 - 7 * w)));
  return -z * z - std::log(z * std::sqrt(kPi)) + std::log(series);
}

double E_func(double z) {
  if (z == 0) return 0;
  const double v = std::erf(std::sqrt(kPi) * std::abs(z));
  return z > 0 ? v : -v;
}

NumericValue R_ab(double a, double b, const UpperHalfPoint& tau, double tail_bound) {
  const double x = tau.x(), y = tau.y();
  const double a0 = a - std::floor(a);
  Complex sum = 0;
  auto add = [&](double nu) {
    if (nu == 0) return;
    const double mag = std::exp(log_beta_incomplete(2 * nu * nu * y) + kPi * nu * nu * y);
    sum += (nu > 0 ? mag : -mag) * e_phase(-nu * nu * x / 2 - nu * b);
  };
  for (std::int64_t j = 0; j < kUnaryCap; ++j) {
    add(a0 + static_cast<double>(j));
    add(a0 - 1 - static_cast<double>(j));
    // Remaining |nu| >= V on both sides; beta(u) <= e^{-pi u} / (pi sqrt u).
    const double V = std::min(a0 + j + 1, 1 - a0 + j + 1);
    const double first = std::exp(-kPi * y * V * V) / (kPi * std::sqrt(2 * y) * V);
    const double tail = 2 * first / (1 - std::exp(-2 * kPi * y * V));
    if (tail < tail_bound) return {sum, tail};
  }
  throw NumericError(NumericError::Kind::TailCap, "R_ab: tail bound not reached within the iteration cap");
}

NumericValue g_ab(double a, double b, const UpperHalfPoint& z, double tail_bound) {
  const double x = z.x(), y = z.y();
  const double a0 = a - std::floor(a);
  Complex sum = 0;
  auto add = [&](double nu) { sum += nu * std::exp(-kPi * nu * nu * y) * e_phase(nu * nu * x / 2 + nu * b); };
  for (std::int64_t j = 0; j < kUnaryCap; ++j) {
    add(a0 + static_cast<double>(j));
    add(a0 - 1 - static_cast<double>(j));
    const double V = std::min(a0 + j + 1, 1 - a0 + j + 1);
    const double first = (V + 1) * std::exp(-kPi * y * V * V);
    const double ratio = (V + 2) / (V + 1) * std::exp(-kPi * y * (2 * V + 1));
    if (ratio < 1) {
      const double tail = 2 * first / (1 - ratio);
      if (tail < tail_bound) return {sum, tail};
    }
  }
  throw NumericError(NumericError::Kind::TailCap, "g_ab: tail bound not reached within the iteration cap");
}

Frac IndefThetaData::Q(const IntVec2& x) const {
  const IntVec2 Ax = mat_vec(A, x);
  return Frac(x[0] * Ax[0] + x[1] * Ax[1], 2);
}

Frac IndefThetaData::B(const IntVec2& x, const Vec2& y) const { return dot(mat_vec(A, x), y); }

void IndefThetaData::validate() const {
  auto bad = [](const std::string& m) { return NumericError(NumericError::Kind::Admissibility, m); };
  if (A[0][1] != A[1][0]) throw bad("A must be symmetric");
  if (det(A) >= 0) throw bad("A must have signature (1,1), i.e. det(A) < 0");
  if (Q(c1) >= 0) throw bad("Q(c1) must be negative");
  if (Q(c2) >= 0) throw bad("Q(c2) must be negative");
  if (B(c1, {Frac(c2[0]), Frac(c2[1])}) >= 0) throw bad("B(c1, c2) must be negative");
}

IndefThetaData IndefThetaData::twisted_2A(int r) {
  if (r != 1 && r != 7) throw std::invalid_argument("twisted 2A data exists for r = 1 and r = 7");
  const Frac k(r == 1 ? 1 : 3, 10);
  IndefThetaData d;
  d.A = {{{6, 4}, {4, 1}}};
  d.a = {k, k};
  d.b = {Frac(3, 20), Frac(-1, 10)};
  d.c1 = {-1, 4};
  d.c2 = {-2, 3};
  return d;
}

NumericValue vartheta_indef(const IndefThetaData& data, const UpperHalfPoint& tau, double tail_bound) {
  data.validate();
  const double x = tau.x(), y = tau.y();
  const Form2 form(data.A);
  const Vec2 a0{frac_part(data.a[0]), frac_part(data.a[1])};
  const IntVec2 Ac1 = mat_vec(data.A, data.c1), Ac2 = mat_vec(data.A, data.c2);
  const Frac B1a = dot(Ac1, a0), B2a = dot(Ac2, a0);
  const double q1 = -to_double(data.Q(data.c1)), q2 = -to_double(data.Q(data.c2));
  const double Ab0 = to_double(Frac(data.A[0][0]) * data.b[0] + Frac(data.A[0][1]) * data.b[1]);
  const double Ab1 = to_double(Frac(data.A[1][0]) * data.b[0] + Frac(data.A[1][1]) * data.b[1]);

  // Decay rates: the beta pieces are bounded by exp(-pi y P_c(nu)) with
  // P_c = A + (Ac)(Ac)^T / |Q(c)|; the sign piece lives where B(c1,.) and
  // B(c2,.) have opposite signs, a wedge on which Q >= kappa |nu|^2.
  auto p_form = [&](const IntVec2& Ac, double qc) {
    return Form2(form.m00 + Ac[0] * Ac[0] / qc, form.m01 + Ac[0] * Ac[1] / qc, form.m11 + Ac[1] * Ac[1] / qc);
  };
  const double lambda1 = p_form(Ac1, q1).min_eigenvalue();
  const double lambda2 = p_form(Ac2, q2).min_eigenvalue();
  double kappa = kInf;
  {
    // Boundary rays of {B(c1,.) >= 0 >= B(c2,.)}.
    std::array<double, 2> d1{-static_cast<double>(Ac1[1]), static_cast<double>(Ac1[0])};
    if (Ac2[0] * d1[0] + Ac2[1] * d1[1] > 0) d1 = {-d1[0], -d1[1]};
    std::array<double, 2> d2{-static_cast<double>(Ac2[1]), static_cast<double>(Ac2[0])};
    if (Ac1[0] * d2[0] + Ac1[1] * d2[1] < 0) d2 = {-d2[0], -d2[1]};
    auto rayleigh = [&](const std::array<double, 2>& v) {
      return form.Q(v[0], v[1]) / (v[0] * v[0] + v[1] * v[1]);
    };
    kappa = std::min(rayleigh(d1), rayleigh(d2));
    // Interior critical directions of Q / |.|^2 are eigenvectors of A.
    const double tr = form.m00 + form.m11;
    const double disc = std::sqrt((form.m00 - form.m11) * (form.m00 - form.m11) + 4 * form.m01 * form.m01);
    for (double ev : {0.5 * (tr + disc), 0.5 * (tr - disc)}) {
      std::array<double, 2> v = std::abs(form.m01) > 0 ? std::array<double, 2>{form.m01, ev - form.m00}
                                                      : (std::abs(form.m00 - ev) < std::abs(form.m11 - ev)
                                                             ? std::array<double, 2>{1, 0}
                                                             : std::array<double, 2>{0, 1});
      for (int flip = 0; flip < 2; ++flip) {
        const double b1 = Ac1[0] * v[0] + Ac1[1] * v[1];
        const double b2 = Ac2[0] * v[0] + Ac2[1] * v[1];
        if (b1 >= 0 && b2 <= 0) kappa = std::min(kappa, ev / 2);
        v = {-v[0], -v[1]};
      }
    }
  }
  if (!(kappa > 0) || !(lambda1 > 0) || !(lambda2 > 0)) {
    throw NumericError(NumericError::Kind::Admissibility, "indefinite theta sum does not converge for this data");
  }

  Complex sum = 0;
  auto visit = [&](std::int64_t n0, std::int64_t n1) {
    const Frac B1 = B1a + Ac1[0] * n0 + Ac1[1] * n1;
    const Frac B2 = B2a + Ac2[0] * n0 + Ac2[1] * n1;
    const int s1 = sign_of(B1), s2 = sign_of(B2);
    if (s1 == 0 && s2 == 0) return;
    const double v0 = to_double(a0[0]) + static_cast<double>(n0);
    const double v1 = to_double(a0[1]) + static_cast<double>(n1);
    const double Qv = form.Q(v0, v1);
    const double L = -2 * kPi * y * Qv;
    double mag = 0;
    if (s1 != s2) mag += (s1 - s2) * std::exp(L);
    if (s1 != 0) {
      const double b = to_double(B1);
      mag -= s1 * std::exp(log_beta_incomplete(b * b * y / q1) + L);
    }
    if (s2 != 0) {
      const double b = to_double(B2);
      mag += s2 * std::exp(log_beta_incomplete(b * b * y / q2) + L);
    }
    sum += mag * e_phase(Qv * x + v0 * Ab0 + v1 * Ab1);
  };
  for (std::int64_t s = 0; s < kRingCap; ++s) {
    visit_ring(s, visit);
    if (s < 2) continue;
    const double tail =
        2 * ring_tail(2 * kappa, s, 1.0, y) + ring_tail(lambda1, s, 1.0, y) + ring_tail(lambda2, s, 1.0, y);
    if (tail < tail_bound) return {sum, tail};
  }
  throw NumericError(NumericError::Kind::TailCap, "vartheta_indef: tail bound not reached within the ring cap");
}

Complex eta_numeric(const UpperHalfPoint& tau) {
  const Complex t = tau.value();
  const double y = tau.y();
  Complex sum = 1;
  for (std::int64_t k = 1;; ++k) {
    const double e_minus = static_cast<double>(k * (3 * k - 1)) / 2;
    const double e_plus = static_cast<double>(k * (3 * k + 1)) / 2;
    const double sign = (k % 2 == 0) ? 1 : -1;
    sum += sign * (std::exp(2 * kPi * Complex(0, 1) * t * e_minus) + std::exp(2 * kPi * Complex(0, 1) * t * e_plus));
    if (2 * kPi * y * e_minus > 40) break;
  }
  return std::exp(2 * kPi * Complex(0, 1) * t / 24.0) * sum;
}

double series_tail_estimate(const QSeries& s, const UpperHalfPoint& tau) {
  if (s.exact()) return 0;
  const double N = to_double(*s.order());
  const double den = static_cast<double>(s.denominator());
  double m1 = 0, m2 = 0, m_all = 0;
  std::size_t top_count = 0;
  for (const auto& [e, c] : s.terms()) {
    const double ex = static_cast<double>(e) / den;
    const double v = std::abs(c.get_d());
    m_all = std::max(m_all, v);
    if (ex > N / 2) {
      m1 = std::max(m1, v);
      ++top_count;
    } else if (ex > N / 4) {
      m2 = std::max(m2, v);
    }
  }
  const double M = std::max({m1, m2, m_all > 0 && m1 == 0 && m2 == 0 ? m_all : 0.0});
  if (M == 0) return 0;
  double growth = 1;
  if (m1 > 0 && m2 > 0 && N > 0) growth = std::max(1.0, std::pow(m1 / m2, 4 / N));
  const double density = std::max(1.0, static_cast<double>(top_count) / std::max(N / 2, 1.0));
  const double absq = std::exp(-2 * kPi * tau.y());
  const double ratio = growth * absq;
  if (ratio >= 1) return kInf;
  return density * M * std::pow(absq, N) * ratio / (1 - ratio);
}

SeriesValue evaluate_series(const std::function<QSeries(Frac)>& make, const UpperHalfPoint& tau, double tol,
                            Frac start_order, Frac max_order) {
  double last_tail = kInf;
  for (Frac N = start_order; N <= max_order; N *= 2) {
    const QSeries s = make(N);
    const double tail = series_tail_estimate(s, tau);
    last_tail = tail;
    if (tail < tol / 10) return {s.evaluate(tau.value()), tail, N};
  }
  throw NumericError(NumericError::Kind::Precision,
                     "series truncation insufficient: tail estimate " + std::to_string(last_tail) + " at order " +
                         format_frac(max_order) + " for Im(tau) = " + std::to_string(tau.y()));
}

SeriesValue evaluate_H(const GroupClass& cls, int r, const UpperHalfPoint& tau, double tol) {
  const int sign = support_sign(r);
  if (sign == 0) throw std::invalid_argument("r = " + std::to_string(r) + " is not in the support");
  const int family = support_family(r);
  static std::mutex mutex;
  static std::map<std::pair<ClassName, int>, QSeries> cache;
  auto make = [&](Frac N) {
    const auto key = std::pair{cls.name, family};
    {
      std::lock_guard lock(mutex);
      auto it = cache.find(key);
      if (it != cache.end() && *it->second.order() >= N) return it->second.truncated(N);
    }
    QSeries s = H_family_series(cls, family, N);
    std::lock_guard lock(mutex);
    auto& slot = cache[key];
    if (slot.exact() || *slot.order() < N) slot = s;
    return s;
  };
  SeriesValue v = evaluate_series(make, tau, tol);
  if (sign < 0) v.value = -v.value;
  return v;
}

ThetaTerms shadow_terms(const GroupClass& cls, int r, double y_min, double tol,
                        const std::array<int, 4>* seven_residues) {
  const int sign = support_sign(r);
  if (sign == 0) throw std::invalid_argument("r = " + std::to_string(r) + " is not in the support");
  if (!(y_min > 0)) throw NumericError(NumericError::Kind::Domain, "shadow terms need y_min > 0");
  const std::array<int, 4> residues = support_family(r) == 1 ? std::array<int, 4>{1, 11, 19, 29}
                                      : seven_residues         ? *seven_residues
                                                               : std::array<int, 4>{7, 13, 17, 23};
  ThetaTerms out;
  out.y_min = y_min;
  const double weight = sign * cls.perm_character;
  if (weight == 0) return out;
  // |v| e^{-2 pi y v^2 / 120} summed over |v| > V, both signs, each residue.
  auto dropped = [&](double V) {
    double total = 0;
    for (double u = V;; u += 60) {
      const double t = 8 * std::abs(weight) * (u + 60) * std::exp(-2 * kPi * y_min * u * u / 120);
      total += t;
      if (t < 1e-300 || t < total * 1e-17) break;
    }
    return total;
  };
  double V = 60;
  while (dropped(V) > tol * 1e-3) V += 60;
  for (int rr : residues) {
    for (std::int64_t k = -static_cast<std::int64_t>(V / 60) - 2; k <= static_cast<std::int64_t>(V / 60) + 2; ++k) {
      const double v = static_cast<double>(60 * k + rr);
      if (std::abs(v) > V) continue;
      out.terms.emplace_back(v * v / 120, weight * v);
    }
  }
  std::sort(out.terms.begin(), out.terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  out.truncation_bound = dropped(V);
  return out;
}

ThetaTerms g_ab_terms(double a, double b, double y_min, double tol) {
  if (!(y_min > 0)) throw NumericError(NumericError::Kind::Domain, "theta terms need y_min > 0");
  ThetaTerms out;
  out.y_min = y_min;
  const double a0 = a - std::floor(a);
  for (std::int64_t j = 0; j < kUnaryCap; ++j) {
    for (double nu : {a0 + static_cast<double>(j), a0 - 1 - static_cast<double>(j)}) {
      if (nu != 0) out.terms.emplace_back(nu * nu / 2, nu * e_phase(nu * b));
    }
    const double V = std::min(a0 + j + 1, 1 - a0 + j + 1);
    const double first = (V + 1) * std::exp(-kPi * y_min * V * V);
    const double ratio = (V + 2) / (V + 1) * std::exp(-kPi * y_min * (2 * V + 1));
    if (ratio < 1 && 2 * first / (1 - ratio) < tol * 1e-3) {
      out.truncation_bound = 2 * first / (1 - ratio);
      std::sort(out.terms.begin(), out.terms.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
      return out;
    }
  }
  throw NumericError(NumericError::Kind::TailCap, "g_ab_terms: iteration cap reached");
}

NumericValue eichler_quadrature(const ThetaTerms& g, const UpperHalfPoint& tau, double tol) {
  if (g.terms.empty()) return {0, 0};
  if (tau.y() < g.y_min * (1 - 1e-12)) {
    throw NumericError(NumericError::Kind::Domain, "theta terms were truncated for a larger Im(tau)");
  }
  const double x = tau.x(), y = tau.y();
  // z = -conj(tau) + i t, dz = i dt, sqrt(z + tau) = e(1/8) sqrt(2y + t); the
  // phases cancel against e(-1/8), leaving int_0^inf g(-x + i(y+t)) / sqrt(2y+t) dt.
  auto g_at = [&](double t) {
    Complex s = 0;
    for (const auto& [n, c] : g.terms) s += c * std::exp(-2 * kPi * n * (y + t)) * e_phase(-n * x);
    return s / std::sqrt(2 * y + t);
  };
  auto tail_after = [&](double L) {
    double total = 0;
    for (const auto& [n, c] : g.terms) total += std::abs(c) * std::exp(-2 * kPi * n * (y + L)) / (2 * kPi * n);
    return total / std::sqrt(2 * y + L);
  };
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  Complex sum = 0;
  double error = 0;
  double lo = 0, hi = 1;
  for (int step = 0; step < 60; ++step) {
    double err_re = 0, err_im = 0;
    const double re = GK::integrate([&](double t) { return g_at(t).real(); }, lo, hi, 20, 1e-13, &err_re);
    const double im = GK::integrate([&](double t) { return g_at(t).imag(); }, lo, hi, 20, 1e-13, &err_im);
    const Complex piece(re, im);
    sum += piece;
    error += err_re + err_im;
    const double tail = tail_after(hi);
    if (tail < tol / 10 && std::abs(piece) < tol / 10) {
      if (error > tol / 10) {
        throw NumericError(NumericError::Kind::Quadrature,
                           "Eichler quadrature error estimate " + std::to_string(error) + " exceeds tol/10");
      }
      return {sum, error + tail + g.truncation_bound};
    }
    lo = hi;
    hi *= 2;
  }
  throw NumericError(NumericError::Kind::Quadrature, "Eichler quadrature range cap reached");
}

NumericValue eichler_termwise(const ThetaTerms& g, const UpperHalfPoint& tau, double /*tol*/) {
  const double x = tau.x(), y = tau.y();
  Complex sum = 0;
  for (const auto& [n, c] : g.terms) {
    // beta(4 n y) |q|^{-n} = exp(log beta(4ny) + 2 pi n y)
    const double mag = std::exp(log_beta_incomplete(4 * n * y) + 2 * kPi * n * y) / std::sqrt(2 * n);
    sum += c * mag * e_phase(-n * x);
  }
  return {sum, g.truncation_bound};
}

CompletionValue completion_eval(const GroupClass& cls, int r, const UpperHalfPoint& tau, double tol,
                                const CompletionOptions& options) {
  const SeriesValue h = evaluate_H(cls, r, tau, tol / 2);
  const ThetaTerms g = shadow_terms(cls, r, tau.y(), tol / 2, options.seven_residues);
  const NumericValue eich = options.method == EichlerMethod::Quadrature ? eichler_quadrature(g, tau, tol / 2)
                                                                        : eichler_termwise(g, tau, tol / 2);
  CompletionValue out;
  out.holomorphic = h.value;
  out.nonholomorphic = static_cast<double>(options.eichler_sign) / std::sqrt(60.0) * eich.value;
  out.total = out.holomorphic + out.nonholomorphic;
  out.error_estimate = h.tail_estimate + eich.error_bound / std::sqrt(60.0);
  out.order = h.order;
  return out;
}

Complex indefinite_theta_completion(int r, const UpperHalfPoint& tau, double tol) {
  const IndefThetaData data = IndefThetaData::twisted_2A(r);
  const Complex theta = vartheta_indef(data, tau, tol / 100).value;
  const Complex eta2 = eta_numeric(UpperHalfPoint(2.0 * tau.value()));
  return -e_phase(r == 1 ? -0.1 : -0.3) * theta / eta2;
}

Residual tau1_identity_check(const UpperHalfPoint& tau, int r, double tol) {
  if (r != 1 && r != 7) throw std::invalid_argument("tau1_identity_check needs r = 1 or r = 7");
  const Complex lhs = indefinite_theta_completion(r, tau, tol);
  const SeriesValue h = evaluate_H(GroupClass::get(ClassName::A2), r, tau, tol);
  const UpperHalfPoint tau15(15.0 * tau.value());
  const int s = r == 1 ? 1 : 13, t = r == 1 ? 11 : 23;
  const Complex rs = R_ab(s / 30.0, -0.5, tau15, tol / 100).value;
  const Complex rt = R_ab(t / 30.0, -0.5, tau15, tol / 100).value;
  const Complex rhs = h.value + e_phase(-s / 60.0) * rs + e_phase(-t / 60.0) * rt;
  Residual out;
  out.residual = std::abs(lhs - rhs);
  out.tol = tol;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3g", h.tail_estimate);
  out.detail = "series order " + format_frac(h.order) + ", tail estimate " + buf;
  return out;
}

ComplexMat2 MultiplierData::nu_T() { return {{{e_phase(-1.0 / 120), 0}, {0, e_phase(-49.0 / 120)}}}; }

ComplexMat2 MultiplierData::nu_S() {
  auto s = [](int k) { return std::sin(kPi * k / 30); };
  const Complex pre = 2.0 * e_phase(3.0 / 8) / std::sqrt(15.0);
  const double p = s(1) + s(11), m = s(7) + s(13);
  return scale({{{Complex(p), Complex(m)}, {Complex(m), Complex(-p)}}}, pre);
}

Complex MultiplierData::rho33(const IntMat2& gamma) {
  const std::int64_t cd = ((gamma[1][0] * gamma[1][1]) % 9 + 9) % 9;
  return e_phase(static_cast<double>(cd) / 9);
}

Complex mobius(const IntMat2& g, Complex tau) {
  return (static_cast<double>(g[0][0]) * tau + static_cast<double>(g[0][1])) /
         (static_cast<double>(g[1][0]) * tau + static_cast<double>(g[1][1]));
}

std::vector<WordLetter> word_decompose(const IntMat2& gamma) {
  if (det(gamma) != 1) throw NumericError(NumericError::Kind::Group, "matrix is not in SL2(Z)");
  std::vector<WordLetter> letters;
  std::int64_t a = gamma[0][0], b = gamma[0][1], c = gamma[1][0], d = gamma[1][1];
  while (c != 0) {
    const std::int64_t n = floor_frac(Frac(a, c));
    letters.push_back({false, n});
    letters.push_back({true, 0});
    // S^{-1} T^{-n} (a b; c d) = (c d; -(a - nc) -(b - nd))
    const std::int64_t na = c, nb = d, nc = -(a - n * c), nd = -(b - n * d);
    a = na;
    b = nb;
    c = nc;
    d = nd;
  }
  const std::int64_t m = b * d;
  if (m != 0) letters.push_back({false, m});
  return letters;
}

ComplexMat2 multiplier_J(const GroupClass& cls, const IntMat2& gamma, const UpperHalfPoint& tau, int rho_exponent) {
  const std::vector<WordLetter> letters = word_decompose(gamma);
  const ComplexMat2 nS = MultiplierData::nu_S();
  ComplexMat2 J = identity2();
  Complex t = tau.value();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    if (it->is_S) {
      J = mul(scale(nS, std::sqrt(t)), J);
      t = -1.0 / t;
    } else {
      const double n = static_cast<double>(it->power);
      ComplexMat2 Tn{{{e_phase(-n / 120), 0}, {0, e_phase(-49 * n / 120)}}};
      J = mul(Tn, J);
      t += n;
    }
  }
  if (cls.name == ClassName::A3) {
    const Complex rho = MultiplierData::rho33(gamma);
    J = scale(J, rho_exponent >= 0 ? rho : std::conj(rho));
  }
  return J;
}

Residual transform_check(const GroupClass& cls, const IntMat2& gamma, const UpperHalfPoint& tau, double tol,
                         const CompletionOptions& options, int rho_exponent) {
  if (det(gamma) != 1) throw NumericError(NumericError::Kind::Group, "matrix is not in SL2(Z)");
  if (gamma[1][0] % cls.order != 0) {
    throw NumericError(NumericError::Kind::Group,
                       "matrix is not in Gamma0(" + std::to_string(cls.order) + ") for class " + cls.label());
  }
  const UpperHalfPoint image(mobius(gamma, tau.value()));
  const double inner = tol / 100;
  const std::array<int, 2> rs{1, 7};
  std::array<Complex, 2> at_tau{}, at_image{};
  for (int i = 0; i < 2; ++i) {
    at_tau[i] = completion_eval(cls, rs[i], tau, inner, options).total;
    at_image[i] = completion_eval(cls, rs[i], image, inner, options).total;
  }
  const ComplexMat2 J = multiplier_J(cls, gamma, tau, rho_exponent);
  Residual out;
  out.tol = tol;
  for (int i = 0; i < 2; ++i) {
    const Complex predicted = J[i][0] * at_tau[0] + J[i][1] * at_tau[1];
    out.residual = std::max(out.residual, std::abs(at_image[i] - predicted));
  }
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", image.y());
  out.detail = std::string("Im(gamma tau) = ") + buf;
  return out;
}

std::vector<ConeCosetRep> cone_coset_reps(const SingleConeData& data) {
  auto bad = [](const std::string& m) { return NumericError(NumericError::Kind::Admissibility, m); };
  if (data.A[0][1] != data.A[1][0] || det(data.A) >= 0) throw bad("A must be symmetric of signature (1,1)");
  if (std::gcd(data.c[0], data.c[1]) != 1) throw bad("c must be primitive");
  const IntVec2 Ac = mat_vec(data.A, data.c);
  const std::int64_t twoQ = data.c[0] * Ac[0] + data.c[1] * Ac[1];
  if (twoQ >= 0) throw bad("c must satisfy Q(c) < 0");
  std::int64_t u = 0, w = 0;
  const std::int64_t g = ext_gcd(Ac[0], Ac[1], u, w);
  const Frac Ba = dot(Ac, data.a);
  // Values v = B(c, a) + g j with 2Q(c) < v <= 0.
  const std::int64_t j_hi = floor_frac(-Ba / g);
  const std::int64_t j_lo = floor_frac((Frac(twoQ) - Ba) / g) + 1;
  std::vector<ConeCosetRep> reps;
  for (std::int64_t j = j_lo; j <= j_hi; ++j) {
    const Frac v = Ba + g * j;
    ConeCosetRep rep;
    rep.mu0 = {data.a[0] + j * u, data.a[1] + j * w};
    rep.ratio = v / twoQ;
    reps.push_back(rep);
  }
  return reps;
}

ConeIdentityValue zwegers_cone_sides(const SingleConeData& data, const UpperHalfPoint& tau, double tol) {
  const std::vector<ConeCosetRep> reps = cone_coset_reps(data);
  const double x = tau.x(), y = tau.y();
  const Form2 form(data.A);
  const IntVec2 Ac = mat_vec(data.A, data.c);
  const double qc = -0.5 * static_cast<double>(data.c[0] * Ac[0] + data.c[1] * Ac[1]);  // |Q(c)|
  const Vec2 a0{frac_part(data.a[0]), frac_part(data.a[1])};
  const Frac Ba = dot(Ac, a0);
  const double b0 = to_double(data.b[0]), b1 = to_double(data.b[1]);

  ConeIdentityValue out;
  {
    const Form2 p(form.m00 + Ac[0] * Ac[0] / qc, form.m01 + Ac[0] * Ac[1] / qc, form.m11 + Ac[1] * Ac[1] / qc);
    const double lambda = p.min_eigenvalue();
    Complex sum = 0;
    auto visit = [&](std::int64_t n0, std::int64_t n1) {
      const Frac Bv = Ba + Ac[0] * n0 + Ac[1] * n1;
      const int s = sign_of(Bv);
      if (s == 0) return;
      const double v0 = to_double(a0[0]) + static_cast<double>(n0);
      const double v1 = to_double(a0[1]) + static_cast<double>(n1);
      const double Bd = to_double(Bv);
      const double Qv = form.Q(v0, v1);
      const double mag = std::exp(log_beta_incomplete(Bd * Bd * y / qc) - 2 * kPi * y * Qv);
      sum += static_cast<double>(s) * mag * e_phase(Qv * x + form.B(v0, v1, b0, b1));
    };
    bool done = false;
    for (std::int64_t s = 0; s < kRingCap && !done; ++s) {
      visit_ring(s, visit);
      if (s >= 2 && ring_tail(lambda, s, 1.0, y) < tol / 100) done = true;
    }
    if (!done) throw NumericError(NumericError::Kind::TailCap, "single-cone sum: ring cap reached");
    out.lhs = sum;
  }

  // <c>^perp_Z is generated by w = (-(Ac)_1, (Ac)_0) / g.
  const std::int64_t g = std::gcd(Ac[0], Ac[1]);
  const double w0 = -static_cast<double>(Ac[1]) / g, w1 = static_cast<double>(Ac[0]) / g;
  const double Qw = form.Q(w0, w1);
  const double c0 = static_cast<double>(data.c[0]), c1 = static_cast<double>(data.c[1]);
  const double bc = to_double(dot(Ac, data.b));
  const double bperp0 = b0 + bc / (2 * qc) * c0, bperp1 = b1 + bc / (2 * qc) * c1;  // b - B(c,b)/2Q(c) c
  const UpperHalfPoint scaled(2 * qc * tau.value());
  Complex rhs = 0;
  for (const ConeCosetRep& rep : reps) {
    const double alpha = to_double(rep.ratio);
    const double m0 = to_double(rep.mu0[0]) - alpha * c0, m1 = to_double(rep.mu0[1]) - alpha * c1;
    const double Bmw = form.B(m0, m1, w0, w1);
    const double k_vertex = -Bmw / (2 * Qw);
    Complex theta = 0;
    auto term = [&](std::int64_t k) {
      const double xi0 = m0 + k * w0, xi1 = m1 + k * w1;
      const double Qx = form.Q(xi0, xi1);
      return std::pair{std::exp(-2 * kPi * y * Qx) * e_phase(Qx * x + form.B(xi0, xi1, bperp0, bperp1)),
                       std::exp(-2 * kPi * y * Qx)};
    };
    const auto kc = static_cast<std::int64_t>(std::floor(k_vertex));
    for (int dir : {-1, 1}) {
      for (std::int64_t k = dir > 0 ? kc + 1 : kc;; k += dir) {
        const auto [val, mag] = term(k);
        theta += val;
        const bool past = dir > 0 ? static_cast<double>(k) > k_vertex : static_cast<double>(k) < k_vertex;
        if (past && mag < tol * 1e-6) break;
        if (std::abs(k - kc) > kUnaryCap) throw NumericError(NumericError::Kind::TailCap, "xi-theta cap reached");
      }
    }
    const Complex R = R_ab(alpha, -bc, scaled, tol / 100).value;
    out.rhs_terms.push_back(-R * theta);
    rhs += -R * theta;
  }
  out.rhs = rhs;
  return out;
}

Residual zwegers_prop_check(const SingleConeData& data, const UpperHalfPoint& tau, double tol) {
  const ConeIdentityValue v = zwegers_cone_sides(data, tau, tol);
  Residual out;
  out.residual = std::abs(v.lhs - v.rhs);
  out.tol = tol;
  out.detail = std::to_string(v.rhs_terms.size()) + " coset representatives";
  return out;
}

}  // namespace umbral
