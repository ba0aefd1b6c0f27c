#include "umbral/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace umbral {

namespace {

std::int64_t det2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) { return a * d - b * c; }

// Smallest value of a t^2 + b t over integers t >= 0 (a > 0).
Frac min_on_naturals(Frac a, Frac b) {
  const double vertex = -boost::rational_cast<double>(b) / (2 * boost::rational_cast<double>(a));
  Frac best = 0;  // t = 0
  for (std::int64_t t : {static_cast<std::int64_t>(std::floor(vertex)),
                         static_cast<std::int64_t>(std::ceil(vertex))}) {
    if (t < 0) continue;
    best = std::min(best, a * t * t + b * t);
  }
  return best;
}

// Largest integer t >= 0 with a t^2 + b t <= budget, or -1 if none.
std::int64_t max_on_naturals(Frac a, Frac b, Frac budget) {
  if (budget < 0 && min_on_naturals(a, b) > budget) return -1;
  const double ad = boost::rational_cast<double>(a);
  const double bd = boost::rational_cast<double>(b);
  const double cd = boost::rational_cast<double>(budget);
  const double disc = bd * bd + 4 * ad * cd;
  auto t = static_cast<std::int64_t>(std::ceil((-bd + std::sqrt(std::max(0.0, disc))) / (2 * ad))) + 1;
  t = std::max<std::int64_t>(t, 0);
  // Walk down to the exact boundary so that floating point never drops a point.
  while (t >= 0 && a * t * t + b * t > budget) --t;
  return t;
}

}  // namespace

const LatticeConfig& LatticeConfig::standard() {
  static const LatticeConfig config = [] {
    LatticeConfig c{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) c.gram[i][j] = (i == j) ? 1 : 2;
    c.rho_numerator = {1, 1, 1};
    c.rho_denominator = 5;
    c.validate();
    return c;
  }();
  return config;
}

void LatticeConfig::validate() const {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (gram[i][j] != gram[j][i]) throw std::invalid_argument("gram matrix is not symmetric");
  // Jacobi's rule: sign changes along the leading principal minors count
  // the negative eigenvalues.
  const std::int64_t d1 = gram[0][0];
  const std::int64_t d2 = det2(gram[0][0], gram[0][1], gram[1][0], gram[1][1]);
  const std::int64_t d3 = gram[0][0] * det2(gram[1][1], gram[1][2], gram[2][1], gram[2][2]) -
                          gram[0][1] * det2(gram[1][0], gram[1][2], gram[2][0], gram[2][2]) +
                          gram[0][2] * det2(gram[1][0], gram[1][1], gram[2][0], gram[2][1]);
  if (d1 == 0 || d2 == 0 || d3 == 0) {
    throw std::invalid_argument("gram matrix has a vanishing leading minor");
  }
  const std::array<std::int64_t, 4> minors{1, d1, d2, d3};
  int negative = 0;
  for (int i = 0; i < 3; ++i)
    if ((minors[i] > 0) != (minors[i + 1] > 0)) ++negative;
  if (negative != 2) throw std::invalid_argument("gram matrix does not have signature (1,2)");
}

QVec3 LatticeConfig::rho() const {
  return {Frac(rho_numerator[0], rho_denominator), Frac(rho_numerator[1], rho_denominator),
          Frac(rho_numerator[2], rho_denominator)};
}

QVec3 LatticeConfig::basis(int i) const {
  QVec3 v{0, 0, 0};
  v.at(static_cast<std::size_t>(i)) = 1;
  return v;
}

QVec3 LatticeConfig::dual_basis(int i) const {
  QVec3 v = rho();
  for (auto& x : v) x *= 2;
  v.at(static_cast<std::size_t>(i)) -= 1;
  return v;
}

Frac pair(const LatticeConfig& config, const QVec3& u, const QVec3& v) {
  Frac sum = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) sum += u[i] * config.gram[i][j] * v[j];
  return sum;
}

QVec3 ConePoint::mu(const LatticeConfig& config) const {
  QVec3 v = config.rho();
  for (std::size_t i = 0; i < 3; ++i) v[i] = v[i] * Frac(coset_a, 2) + coords[i];
  return v;
}

namespace {

bool passes(FixedPointFilter filter, const std::array<std::int64_t, 3>& c) {
  switch (filter) {
    case FixedPointFilter::None: return true;
    case FixedPointFilter::Tau: return c[0] == c[1];
    case FixedPointFilter::Sigma: return c[0] == c[1] && c[1] == c[2];
  }
  return false;
}

// Points of P n (L + a rho/2): all coordinates k + a rho_i / 2 >= 0.
std::vector<ConePoint> enumerate_positive_branch(int a, FixedPointFilter filter, Frac bound,
                                                 const LatticeConfig& config) {
  std::vector<ConePoint> out;
  if (bound < 0) return out;
  // On P every cross term is >= 0, so Q(mu) >= |coords(mu)|^2 / 2.
  const auto box = static_cast<std::int64_t>(
                       std::ceil(std::sqrt(2.0 * boost::rational_cast<double>(bound)))) + 1;
  std::array<Frac, 3> shift{};
  for (std::size_t i = 0; i < 3; ++i) shift[i] = config.rho()[i] * Frac(a, 2);
  std::array<std::int64_t, 3> lo{};
  for (std::size_t i = 0; i < 3; ++i) {
    // smallest integer k with k + shift >= 0
    const Frac neg = -shift[i];
    std::int64_t k = neg.numerator() / neg.denominator();
    if (Frac(k) < neg) ++k;
    lo[i] = k;
  }
  std::array<std::int64_t, 3> c{};
  for (c[0] = lo[0]; c[0] <= lo[0] + box; ++c[0]) {
    for (c[1] = lo[1]; c[1] <= lo[1] + box; ++c[1]) {
      for (c[2] = lo[2]; c[2] <= lo[2] + box; ++c[2]) {
        if (!passes(filter, c)) continue;
        ConePoint p{c, a, Branch::P, 0};
        const QVec3 mu = p.mu(config);
        p.energy = pair(config, mu, mu) / 2;
        if (p.energy <= bound) out.push_back(p);
      }
    }
  }
  return out;
}

}  // namespace

std::vector<ConePoint> enumerate_coset_cone(int a, FixedPointFilter filter, Frac energy_bound,
                                            const LatticeConfig& config) {
  if (a <= 0 || a >= 10 || a % 2 == 0) {
    throw std::invalid_argument("coset label must be odd with 0 < a < 10, got " + std::to_string(a));
  }
  std::vector<ConePoint> out = enumerate_positive_branch(a, filter, energy_bound, config);
  // N n (L + a rho/2) = -(P n (L + (10 - a) rho/2)).
  for (const ConePoint& p : enumerate_positive_branch(10 - a, filter, energy_bound, config)) {
    ConePoint n = p;
    for (auto& x : n.coords) x = -x - 1;
    n.coset_a = a;
    n.branch = Branch::N;
    out.push_back(n);
  }
  std::sort(out.begin(), out.end(), [](const ConePoint& x, const ConePoint& y) {
    return std::tie(x.energy, x.branch, x.coords) < std::tie(y.energy, y.branch, y.coords);
  });
  return out;
}

OrthantQuadratic::OrthantQuadratic(std::size_t dim)
    : quad(dim, std::vector<Frac>(dim, Frac(0))), lin(dim, Frac(0)) {}

Frac OrthantQuadratic::operator()(std::span<const std::int64_t> x) const {
  Frac v = constant;
  for (std::size_t i = 0; i < dim(); ++i) {
    v += lin[i] * x[i];
    for (std::size_t j = i; j < dim(); ++j) v += quad[i][j] * (x[i] * x[j]);
  }
  return v;
}

OrthantQuadratic OrthantQuadratic::reflected() const {
  OrthantQuadratic r(dim());
  r.constant = constant;
  for (std::size_t i = 0; i < dim(); ++i) {
    // b x -> -b x' - b
    r.lin[i] -= lin[i];
    r.constant -= lin[i];
    // a x^2 -> a x'^2 + 2a x' + a
    r.quad[i][i] += quad[i][i];
    r.lin[i] += 2 * quad[i][i];
    r.constant += quad[i][i];
    for (std::size_t j = i + 1; j < dim(); ++j) {
      // a x y -> a x'y' + a x' + a y' + a
      r.quad[i][j] += quad[i][j];
      r.lin[i] += quad[i][j];
      r.lin[j] += quad[i][j];
      r.constant += quad[i][j];
    }
  }
  return r;
}

void OrthantQuadratic::validate() const {
  for (std::size_t i = 0; i < dim(); ++i) {
    if (quad[i][i] <= 0) throw std::invalid_argument("orthant quadratic needs positive diagonal");
    for (std::size_t j = i + 1; j < dim(); ++j)
      if (quad[i][j] < 0) throw std::invalid_argument("orthant quadratic needs non-negative cross terms");
  }
}

std::vector<std::vector<std::int64_t>> enumerate_orthant(const OrthantQuadratic& f, Frac bound) {
  f.validate();
  const std::size_t n = f.dim();
  std::vector<Frac> mins(n);
  Frac min_total = f.constant;
  for (std::size_t i = 0; i < n; ++i) {
    mins[i] = min_on_naturals(f.quad[i][i], f.lin[i]);
    min_total += mins[i];
  }
  std::vector<std::int64_t> box(n);
  for (std::size_t i = 0; i < n; ++i) {
    box[i] = max_on_naturals(f.quad[i][i], f.lin[i], bound - (min_total - mins[i]));
    if (box[i] < 0) return {};
  }
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> x(n, 0);
  while (true) {
    if (f(x) <= bound) out.push_back(x);
    bool advanced = false;
    for (std::size_t i = n; i-- > 0;) {
      if (x[i] < box[i]) {
        ++x[i];
        std::fill(x.begin() + static_cast<std::ptrdiff_t>(i) + 1, x.end(), 0);
        advanced = true;
        break;
      }
    }
    if (!advanced) return out;
  }
}

QSeries orthant_theta(const OrthantQuadratic& f, int negative_weight, Frac order, const OrthantSign& sign,
                      std::int64_t denominator) {
  QSeries::TermMap terms;
  auto add = [&](Frac exponent, int s) {
    if (s == 0) return;
    const Frac scaled = exponent * denominator;
    if (scaled.denominator() != 1) {
      throw SeriesError(SeriesError::Kind::Grading, "exponent " + format_frac(exponent) + " is off the grading");
    }
    terms[scaled.numerator()] += s;
  };
  for (const auto& x : enumerate_orthant(f, order)) add(f(x), sign(x));
  const OrthantQuadratic g = f.reflected();
  for (auto x : enumerate_orthant(g, order)) {
    const Frac e = g(x);
    for (auto& xi : x) xi = -xi - 1;
    add(e, negative_weight * sign(x));
  }
  return QSeries::from_terms(std::move(terms), order, denominator);
}

}  // namespace umbral
