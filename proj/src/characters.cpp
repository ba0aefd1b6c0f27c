#include "umbral/characters.hpp"

#include <stdexcept>

#include "umbral/lattice.hpp"
#include "umbral/parallel.hpp"

namespace umbral {

namespace {

const Frac kFermionShift(1, 24);
const Frac kHeisenbergShift(-3, 24);
const Frac kVacuumShift(-1, 12);  // kFermionShift + kHeisenbergShift

void check_sign(int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("Clifford sign must be +1 or -1");
}

int parity_sign(std::int64_t n) { return (n % 2 == 0) ? 1 : -1; }

// Accumulates sign * q^{exponent} into a term map over denominator 120.
void accumulate(QSeries::TermMap& terms, Frac exponent, int sign) {
  const Frac scaled = exponent * QSeries::kDefaultDenominator;
  if (scaled.denominator() != 1) throw std::logic_error("lattice exponent outside (1/120)Z");
  terms[scaled.numerator()] += sign;
}

QSeries inverse_pochhammer(std::int64_t step, Frac order) {
  return invert_unit(pochhammer(Frac(step), 1, Frac(step), std::nullopt, order), order);
}

}  // namespace

std::string GroupClass::label() const {
  switch (name) {
    case ClassName::A1: return "1A";
    case ClassName::A2: return "2A";
    case ClassName::A3: return "3A";
  }
  return "?";
}

std::vector<int> GroupClass::cycle_type() const {
  std::vector<int> cycles;
  std::array<bool, 3> seen{};
  for (int i = 0; i < 3; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = permutation[j]) {
      seen[j] = true;
      ++len;
    }
    cycles.push_back(len);
  }
  return cycles;
}

const GroupClass& GroupClass::get(ClassName name) {
  static const GroupClass identity{ClassName::A1, {0, 1, 2}, 3, 1};
  static const GroupClass transposition{ClassName::A2, {1, 0, 2}, 1, 2};
  static const GroupClass three_cycle{ClassName::A3, {1, 2, 0}, 0, 3};
  switch (name) {
    case ClassName::A1: return identity;
    case ClassName::A2: return transposition;
    case ClassName::A3: return three_cycle;
  }
  throw std::invalid_argument("unknown class");
}

const GroupClass& GroupClass::parse(std::string_view label) {
  for (ClassName c : all())
    if (get(c).label() == label) return get(c);
  throw std::invalid_argument("unknown conjugacy class '" + std::string(label) + "' (expected 1A, 2A or 3A)");
}

const std::array<ClassName, 3>& GroupClass::all() {
  static const std::array<ClassName, 3> classes{ClassName::A1, ClassName::A2, ClassName::A3};
  return classes;
}

ReducedCoset reduce_coset(ClassName cls, int a) {
  if (a % 2 == 0) throw std::invalid_argument("coset label must be odd, got " + std::to_string(a));
  // L + (a+10) rho/2 = L + a rho/2, while the sign character moves by
  // <5 rho, v_g>: 3 for 1A and 3A, 4 for 2A.
  int r = ((a % 20) + 20) % 20;
  int sign = 1;
  if (r > 10) {
    r -= 10;
    sign = cls == ClassName::A2 ? 1 : -1;
  }
  return {r, sign};
}

int seven_from_three_sign(ClassName cls) { return cls == ClassName::A2 ? 1 : -1; }

QSeries fermion_trace(int sign, Frac order) {
  check_sign(sign);
  QSeries eta_part = pochhammer(1, 1, 1, std::nullopt, order - kFermionShift).shifted(kFermionShift);
  return eta_part * Rational(sign);
}

QSeries heisenberg_trace(const GroupClass& cls, Frac order) {
  const Frac inner = order - kHeisenbergShift;
  QSeries product = QSeries::monomial(0).truncated(inner);
  for (int len : cls.cycle_type()) {
    // det(1 - x C_len) = 1 - x^len for a cyclic permutation matrix C_len.
    product *= pochhammer(Frac(len), 1, Frac(len), std::nullopt, inner);
  }
  return invert_unit(product, inner).shifted(kHeisenbergShift);
}

QSeries trace_closed(const TraceId& id, Frac order) {
  check_sign(id.clifford_sign);
  const ReducedCoset rc = reduce_coset(id.cls, id.coset_a);
  const Frac a(rc.a);
  const Frac inner = order - kVacuumShift;  // exponents of the lattice sum
  const Frac constant = Frac(3, 40) * a * a;

  QSeries lattice_sum;
  QSeries prefactor;
  switch (id.cls) {
    case ClassName::A1: {
      // (k^2+l^2+m^2)/2 + 2(kl+lm+mk) + a(k+l+m)/2 + 3a^2/40
      OrthantQuadratic f(3);
      for (std::size_t i = 0; i < 3; ++i) {
        f.quad[i][i] = Frac(1, 2);
        f.lin[i] = a / 2;
        for (std::size_t j = i + 1; j < 3; ++j) f.quad[i][j] = 2;
      }
      f.constant = constant;
      lattice_sum = orthant_theta(f, +1, inner, [](std::span<const std::int64_t> x) {
        return parity_sign(x[0] + x[1] + x[2]);
      });
      prefactor = invert_unit(pochhammer(1, 1, 1, std::nullopt, inner).truncated(inner) *
                                  pochhammer(1, 1, 1, std::nullopt, inner),
                              inner);
      break;
    }
    case ClassName::A2: {
      // 3k^2 + m^2/2 + 4km + a(2k+m)/2 + 3a^2/40, negative octant subtracted
      OrthantQuadratic f(2);
      f.quad[0][0] = 3;
      f.quad[1][1] = Frac(1, 2);
      f.quad[0][1] = 4;
      f.lin[0] = a;
      f.lin[1] = a / 2;
      f.constant = constant;
      lattice_sum = orthant_theta(f, -1, inner, [](std::span<const std::int64_t> x) {
        return parity_sign(x[0] + x[1]);
      });
      prefactor = inverse_pochhammer(2, inner);
      break;
    }
    case ClassName::A3: {
      // 15k^2/2 + 3ak/2 + 3a^2/40 over all k
      OrthantQuadratic f(1);
      f.quad[0][0] = Frac(15, 2);
      f.lin[0] = Frac(3, 2) * a;
      f.constant = constant;
      lattice_sum = orthant_theta(f, +1, inner, [](std::span<const std::int64_t> x) {
        return parity_sign(x[0]);
      });
      prefactor = pochhammer(1, 1, 1, std::nullopt, inner) * inverse_pochhammer(3, inner);
      break;
    }
  }
  QSeries result = (prefactor * lattice_sum).shifted(kVacuumShift).truncated(order);
  return result * Rational(id.clifford_sign * rc.sign);
}

QSeries trace_direct(const TraceId& id, Frac order) {
  check_sign(id.clifford_sign);
  if (id.coset_a % 2 == 0) throw std::invalid_argument("coset label must be odd, got " + std::to_string(id.coset_a));
  const GroupClass& cls = GroupClass::get(id.cls);
  const LatticeConfig& lattice = LatticeConfig::standard();
  const Frac energy_bound = order - kVacuumShift;
  // The point set depends on a mod 10 only; lambda = mu - a rho/2 keeps the
  // actual label, shifting the L-coordinates by (a_cone - a)/10.
  const int a_cone = ((id.coset_a % 10) + 10) % 10;
  const std::int64_t shift = (a_cone - id.coset_a) / 10;

  FixedPointFilter filter = FixedPointFilter::None;
  QVec3 sign_vector = lattice.rho();
  if (id.cls == ClassName::A2) {
    filter = FixedPointFilter::Tau;
    const QVec3 dual = lattice.dual_basis(0);
    for (std::size_t i = 0; i < 3; ++i) sign_vector[i] += dual[i];
  } else if (id.cls == ClassName::A3) {
    filter = FixedPointFilter::Sigma;
  }

  QSeries::TermMap terms;
  for (const ConePoint& p : enumerate_coset_cone(a_cone, filter, energy_bound, lattice)) {
    QVec3 lambda{};
    for (std::size_t i = 0; i < 3; ++i) lambda[i] = Frac(p.coords[i] + shift);
    const Frac phase = pair(lattice, lambda, sign_vector);
    if (phase.denominator() != 1) throw std::logic_error("non-integral sign character");
    int sign = parity_sign(phase.numerator());
    // tau-hat is composed with the sign automorphism, which is -1 on N.
    if (id.cls == ClassName::A2 && p.branch == Branch::N) sign = -sign;
    accumulate(terms, p.energy, sign);
  }
  const QSeries lattice_sum = QSeries::from_terms(std::move(terms), energy_bound);

  const Frac prefactor_order = order - kHeisenbergShift;
  const QSeries prefactor = heisenberg_trace(cls, prefactor_order) *
                            fermion_trace(id.clifford_sign, prefactor_order);
  return (prefactor * lattice_sum).truncated(order);
}

bool in_e8_support(int r) { return support_sign(r) != 0; }

int support_sign(int r) {
  const int m = ((r % 60) + 60) % 60;
  for (int e : {1, 7, 11, 13, 17, 19, 23, 29}) {
    if (m == e) return 1;
    if (m == 60 - e) return -1;
  }
  return 0;
}

int support_family(int r) {
  const int m = ((r % 60) + 60) % 60;
  for (int e : {1, 11, 19, 29})
    if (m == e || m == 60 - e) return 1;
  for (int e : {7, 13, 17, 23})
    if (m == e || m == 60 - e) return 7;
  throw std::invalid_argument("r = " + std::to_string(r) + " is outside the E8 exponent support");
}

MockFormVector::MockFormVector(Frac order) : order_(order), components_(60, QSeries()) {}

const QSeries& MockFormVector::component(int r) const {
  return components_[static_cast<std::size_t>(((r % 60) + 60) % 60)];
}

void MockFormVector::set_component(int r, QSeries s) {
  components_[static_cast<std::size_t>(((r % 60) + 60) % 60)] = std::move(s);
}

QSeries H_family_series(const GroupClass& cls, int family, Frac order) {
  if (family == 1) return trace_closed({cls.name, 1, -1}, order) * Rational(2);
  if (family == 7) return trace_closed({cls.name, 3, -1}, order) * Rational(2 * seven_from_three_sign(cls.name));
  throw std::invalid_argument("family must be 1 or 7, got " + std::to_string(family));
}

MockFormVector assemble_H(const GroupClass& cls, Frac order) {
  std::array<QSeries, 2> families;
  parallel_for(2, [&](std::size_t i) { families[i] = H_family_series(cls, i == 0 ? 1 : 7, order); });
  MockFormVector h(order);
  for (int r = 0; r < 60; ++r) {
    const int sign = support_sign(r);
    if (sign == 0) continue;
    const QSeries& base = families[support_family(r) == 1 ? 0 : 1];
    h.set_component(r, sign > 0 ? base : -base);
  }
  return h;
}

}  // namespace umbral
