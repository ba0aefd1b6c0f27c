#pragma once

// Ramanujan's fifth order mock theta functions chi_0, chi_1, F_0, F_1,
// phi_0, phi_1, their Zwegers triple sum and Hecke-type double sum
// representations, and an exact identity checker.

#include <optional>
#include <string>
#include <vector>

#include "umbral/qseries.hpp"

namespace umbral {

enum class MockTheta { Chi0, Chi1, F0, F1, Phi0, Phi1 };

std::string to_string(MockTheta f);

/// The defining q-hypergeometric sum, with q -> -q when argument_sign is -1.
/// Summation stops once the next summand's valuation (n, n, 2n^2, 2n(n+1),
/// n^2, (n+1)^2 respectively) passes `order`.
QSeries ramanujan_series(MockTheta f, int argument_sign, Frac order);

enum class ZwegersSide { Chi0Side, Chi1Side };

/// (1/(q;q)^2) (sum_{k,l,m>=0} + sum_{k,l,m<0}) (-1)^{k+l+m}
///   q^{(k^2+l^2+m^2)/2 + 2(kl+lm+mk) + c(k+l+m)} with c = 1/2 or 3/2.
QSeries zwegers_triple_sum(ZwegersSide side, Frac order);

enum class HeckeSum { Phi0Lhs, Phi1Lhs, ProductRhs1, ProductRhs7 };

/// Phi0Lhs / Phi1Lhs: (q;q)/(q^2;q^2)^2 times the parity-restricted sum of
/// hecke_parity_sum(1 / 7).  ProductRhs1 / ProductRhs7: prod(1+q^n) times
/// (sum_{k,m>=0} - sum_{k,m<0}) (-1)^{k+m} q^{3k^2+m^2/2+4km+s(k+m/2)}, s = 1 / 3.
QSeries hecke_double_sum(HeckeSum variant, Frac order);

/// (sum_{k,m>=0} - sum_{k,m<0})_{k = m mod 2} (-1)^m q^{k^2/2+m^2/2+4km+lin}
/// with lin = k/2+3m/2 (family 1) or 3k/2+5m/2 (family 7).
QSeries hecke_parity_sum(int family, Frac order);

struct IdentityReport {
  std::string name;
  Frac order;
  bool verified = false;
  std::optional<Frac> first_discrepancy;            // exponent
  std::optional<Rational> lhs_coefficient, rhs_coefficient;
  std::string note;                                  // e.g. insufficient precision
};

/// Compares two series coefficientwise up to and including `order`.
IdentityReport compare_series(std::string name, const QSeries& lhs, const QSeries& rhs, Frac order);

struct SuiteOptions {
  /// Adds 1 to the coefficient of q^5 in chi_0 before it enters any identity.
  bool corrupt_chi0 = false;
};

/// Zwegers, Hecke, chi/F/phi, the F_{5,j,r} component relations and the
/// McKay-Thompson identities for classes 1A and 2A.  Report order is fixed.
std::vector<IdentityReport> identity_suite(Frac order, const SuiteOptions& options = {});

}  // namespace umbral
