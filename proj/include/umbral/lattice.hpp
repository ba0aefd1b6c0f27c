#pragma once

// The rank-3 signature-(1,2) lattice L = Z e1 + Z e2 + Z e3 with
// <e_i, e_j> = 2 - delta_ij, its cone D = P u N of vectors whose basis
// coordinates are all >= 0 (P) or all < 0 (N), and the shifted cosets
// L + a rho / 2 with rho = (e1 + e2 + e3) / 5.

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "umbral/qseries.hpp"

namespace umbral {

using QVec3 = std::array<Frac, 3>;

struct LatticeConfig {
  std::array<std::array<std::int64_t, 3>, 3> gram;
  std::array<std::int64_t, 3> rho_numerator;
  std::int64_t rho_denominator;

  /// The E8^3 lattice configuration; checks symmetry and signature (1,2).
  static const LatticeConfig& standard();

  /// Throws std::invalid_argument unless gram is symmetric of signature (1,2).
  void validate() const;

  QVec3 rho() const;
  QVec3 basis(int i) const;
  /// Dual vector e_i' = 2 rho - e_i, satisfying <e_i', e_j> = delta_ij.
  QVec3 dual_basis(int i) const;
};

Frac pair(const LatticeConfig& config, const QVec3& u, const QVec3& v);

enum class Branch { P, N };
enum class FixedPointFilter { None, Tau, Sigma };

struct ConePoint {
  std::array<std::int64_t, 3> coords;  // L-part k e1 + l e2 + m e3
  int coset_a;                         // odd, 0 < a < 10
  Branch branch;
  Frac energy;                         // Q(mu) = <mu, mu> / 2

  /// mu = k e1 + l e2 + m e3 + (a/2) rho.
  QVec3 mu(const LatticeConfig& config = LatticeConfig::standard()) const;

  friend bool operator==(const ConePoint&, const ConePoint&) = default;
};

/// Every point of D n (L + a rho/2) with Q(mu) <= energy_bound, optionally
/// restricted to tau-fixed (k = l) or sigma-fixed (k = l = m) points.
/// Sorted by (energy, branch, coords).  Requires odd a with 0 < a < 10.
std::vector<ConePoint> enumerate_coset_cone(int a, FixedPointFilter filter, Frac energy_bound,
                                            const LatticeConfig& config = LatticeConfig::standard());

/// A quadratic polynomial on the non-negative integer orthant,
///   f(x) = sum_{i<=j} quad[i][j] x_i x_j + sum_i lin[i] x_i + constant,
/// with positive diagonal and non-negative cross coefficients, so that the
/// sublevel sets {f <= B} are finite.
struct OrthantQuadratic {
  std::vector<std::vector<Frac>> quad;  // upper triangle used
  std::vector<Frac> lin;
  Frac constant{0};

  explicit OrthantQuadratic(std::size_t dim);
  std::size_t dim() const { return lin.size(); }
  Frac operator()(std::span<const std::int64_t> x) const;
  /// The same polynomial after substituting x_i -> -x_i - 1 in every
  /// coordinate, which maps the negative orthant onto the non-negative one.
  OrthantQuadratic reflected() const;
  /// Throws std::invalid_argument if the coefficient sign conditions fail.
  void validate() const;
};

/// All x in N^dim with f(x) <= bound, in lexicographic order.  The search box
/// for x_i comes from f(x) >= c + a_ii x_i^2 + b_i x_i + sum_{j != i} min_t (a_jj t^2 + b_j t).
std::vector<std::vector<std::int64_t>> enumerate_orthant(const OrthantQuadratic& f, Frac bound);

/// Receives a point of the non-negative or the negative orthant; returning 0 drops it.
using OrthantSign = std::function<int(std::span<const std::int64_t>)>;

/// sum_{x >= 0} s(x) q^{f(x)} + w * sum_{x < 0} s(x) q^{f(x)}, truncated at `order`.
/// The negative orthant is reached through x -> -x - 1.
QSeries orthant_theta(const OrthantQuadratic& f, int negative_weight, Frac order, const OrthantSign& sign,
                      std::int64_t denominator = QSeries::kDefaultDenominator);

}  // namespace umbral
