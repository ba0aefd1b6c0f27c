#pragma once

// Unary theta functions of weight 3/2, the E8^3 shadow vectors, the
// thetanullwerte exponent-class scan and the eta * J check.

#include <cstdint>
#include <vector>

#include "umbral/characters.hpp"
#include "umbral/qseries.hpp"

namespace umbral {

/// S_{m,r}(tau) = sum_k (2km + r) q^{(2km+r)^2 / 4m}.  Requires 4m | denominator.
QSeries S_unary(std::int64_t m, std::int64_t r, Frac order,
                std::int64_t denominator = QSeries::kDefaultDenominator);

/// g_{a,0}(s tau) = sum_{nu in a+Z} nu q^{s nu^2 / 2}.
QSeries g_series(Frac a, std::int64_t scale, Frac order,
                 std::int64_t denominator = QSeries::kDefaultDenominator);

/// S^X_g: +-chibar_g (S_{30,1}+S_{30,11}+S_{30,19}+S_{30,29}) on the 1-family
/// and +-chibar_g (S_{30,7}+S_{30,13}+S_{30,17}+S_{30,23}) on the 7-family.
struct ShadowVector {
  ClassName cls;
  MockFormVector components;
};
ShadowVector shadow_vector(const GroupClass& cls, Frac order);

/// Exponent classes (2kn + r)^2 / 4n mod 1, scanning k over a full period mod 2n.
std::vector<Frac> exponent_classes(std::int64_t n, std::int64_t r);

struct ThetanullwerteHit {
  std::int64_t n;
  std::int64_t r;
  Frac exponent_class;
};

struct ThetanullwerteReport {
  std::int64_t base;
  std::vector<Frac> targets;  // 119/120 and 71/120
  std::size_t pairs_scanned = 0;
  std::vector<ThetanullwerteHit> hits;
};

/// Every divisor n of `base` and every r mod 2n, checked against the classes
/// of q^{-1/120} C[[q]] and q^{71/120} C[[q]].
ThetanullwerteReport thetanullwerte_class_check(std::int64_t base);

/// eta(tau) J(tau) with J = E4^3 / Delta - 744, over grading denominator 24.
QSeries eta_J_coefficients(Frac order);

}  // namespace umbral
