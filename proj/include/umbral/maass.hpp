#pragma once

// Floating-point evaluation of the harmonic Maass forms attached to E8^3:
// incomplete gamma and error functions, the unary R_{a,b} and indefinite
// theta functions of signature (1,1), numeric q-series evaluation with an
// empirical tail certificate, Eichler integrals, completions, the weight 1/2
// multiplier system and transformation residuals.

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "umbral/characters.hpp"
#include "umbral/qseries.hpp"

namespace umbral {

using Complex = std::complex<double>;

class NumericError : public std::runtime_error {
 public:
  enum class Kind { Domain, Admissibility, TailCap, Precision, Quadrature, Group };

  NumericError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// A point tau with Im(tau) > 0.
class UpperHalfPoint {
 public:
  explicit UpperHalfPoint(Complex tau);
  /// Accepts "x+yi", "x-yi", "yi", "x" style strings, e.g. "0.3+0.95i".
  static UpperHalfPoint parse(std::string_view text);

  Complex value() const noexcept { return tau_; }
  double x() const noexcept { return tau_.real(); }
  double y() const noexcept { return tau_.imag(); }

 private:
  Complex tau_;
};

/// e(x) = exp(2 pi i x).
Complex e_phase(double x);

/// beta(x) = int_x^inf u^{-1/2} e^{-pi u} du = erfc(sqrt(pi x)), so beta(0) = 1.
double beta_incomplete(double x);
/// log beta(x), finite for every x >= 0.
double log_beta_incomplete(double x);
/// E(z) = sgn(z) (1 - beta(z^2)).
double E_func(double z);

struct NumericValue {
  Complex value;
  double error_bound = 0;  // certified tail bound (or empirical estimate where stated)
};

/// R_{a,b}(tau) = sum_{nu in a+Z} sgn(nu) beta(2 nu^2 y) q^{-nu^2/2} e(-nu b).
NumericValue R_ab(double a, double b, const UpperHalfPoint& tau, double tail_bound);

/// g_{a,b}(z) = sum_{nu in a+Z} nu e(nu^2 z / 2 + nu b).
NumericValue g_ab(double a, double b, const UpperHalfPoint& z, double tail_bound);

using Vec2 = std::array<Frac, 2>;
using IntVec2 = std::array<std::int64_t, 2>;
using IntMat2 = std::array<std::array<std::int64_t, 2>, 2>;

struct IndefThetaData {
  IntMat2 A{};
  Vec2 a{}, b{};
  IntVec2 c1{}, c2{};

  /// Q(x) = x.Ax / 2 and B(x, y) = x.Ay.
  Frac Q(const IntVec2& x) const;
  Frac B(const IntVec2& x, const Vec2& y) const;
  /// Throws NumericError(Admissibility) unless A is symmetric with det < 0,
  /// Q(c1) < 0, Q(c2) < 0 and B(c1, c2) < 0.
  void validate() const;

  /// A = (6 4; 4 1), a = (k/10, k/10) with k = 1 (r = 1) or k = 3 (r = 7),
  /// b = (3/20, -1/10), c1 = (-1, 4), c2 = (-2, 3).
  static IndefThetaData twisted_2A(int r);
};

/// sum_{nu in a+Z^2} (E(B(c1,nu) sqrt(y/-Q(c1))) - E(B(c2,nu) sqrt(y/-Q(c2))))
///   q^{Q(nu)} e(B(nu, b)).
NumericValue vartheta_indef(const IndefThetaData& data, const UpperHalfPoint& tau, double tail_bound);

/// eta(tau) from Euler's pentagonal series.
Complex eta_numeric(const UpperHalfPoint& tau);

/// A numeric q-series value together with the tail certificate used to stop.
struct SeriesValue {
  Complex value;
  double tail_estimate = 0;
  Frac order;
};

/// Tail of sum_{e > N} c_e q^e estimated from the top two octaves of stored
/// coefficients: growth rate g per unit exponent and density k give
/// k M |q|^N (g|q|) / (1 - g|q|), infinite when g|q| >= 1.
double series_tail_estimate(const QSeries& s, const UpperHalfPoint& tau);

/// Evaluates make(N) at tau for N = start, 2 start, ... until the tail
/// estimate is below tol / 10.  Throws NumericError(Precision) past max_order.
SeriesValue evaluate_series(const std::function<QSeries(Frac)>& make, const UpperHalfPoint& tau, double tol,
                            Frac start_order = 8, Frac max_order = 3200);

/// H^X_{g,r}(tau) for r in the support, with the series cached per class and family.
SeriesValue evaluate_H(const GroupClass& cls, int r, const UpperHalfPoint& tau, double tol);

/// A weight 3/2 q-series sum c_n q^n with n > 0, truncated where the dropped
/// part is negligible for every Im(z) >= y_min.
struct ThetaTerms {
  std::vector<std::pair<double, Complex>> terms;  // (n, c_n)
  double y_min = 0;
  double truncation_bound = 0;                   // sum of dropped |c_n| e^{-2 pi n y_min}
};

/// sum_{r' in residues} chibar_g S_{30,r'}, signed like component r.  A
/// non-null seven_residues replaces {7, 13, 17, 23} on the 7-family only.
ThetaTerms shadow_terms(const GroupClass& cls, int r, double y_min, double tol,
                        const std::array<int, 4>* seven_residues = nullptr);

/// g_{a,b}(z) as terms (nu^2/2, nu e(nu b)), nu in a+Z, nu != 0.
ThetaTerms g_ab_terms(double a, double b, double y_min, double tol);

/// e(-1/8) int_{-conj(tau)}^{i inf} g(z) / sqrt(z + tau) dz, by adaptive
/// Gauss-Kronrod quadrature on z = -conj(tau) + i t with the range doubled
/// until the analytic tail bound drops below tol / 10.
NumericValue eichler_quadrature(const ThetaTerms& g, const UpperHalfPoint& tau, double tol);
/// The same integral in closed form: sum c_n (2n)^{-1/2} beta(4 n y) q^{-n}.
NumericValue eichler_termwise(const ThetaTerms& g, const UpperHalfPoint& tau, double tol);

enum class EichlerMethod { Quadrature, Termwise };

/// Sign in H^- = kEichlerSign / sqrt(60) * Eichler(S^X_{g,r}).
inline constexpr int kEichlerSign = 1;

struct CompletionValue {
  Complex holomorphic;
  Complex nonholomorphic;
  Complex total;
  double error_estimate = 0;
  Frac order;
};

struct CompletionOptions {
  EichlerMethod method = EichlerMethod::Quadrature;
  int eichler_sign = kEichlerSign;
  const std::array<int, 4>* seven_residues = nullptr;
};

CompletionValue completion_eval(const GroupClass& cls, int r, const UpperHalfPoint& tau, double tol,
                                const CompletionOptions& options = {});

/// -e(-k/10) vartheta(tau) / eta(2 tau) for the twisted 2A data, k = 1 or 3.
Complex indefinite_theta_completion(int r, const UpperHalfPoint& tau, double tol);

struct Residual {
  double residual = 0;
  double tol = 0;
  std::string detail;
  bool pass() const { return residual < tol; }
};

/// |LHS - RHS| of -e(-k/10) vartheta / eta(2 tau)
///   = H_{2A,r} + e(-s/60) R_{s/30,-1/2}(15 tau) + e(-t/60) R_{t/30,-1/2}(15 tau)
/// with (k, s, t) = (1, 1, 11) for r = 1 and (3, 13, 23) for r = 7.
Residual tau1_identity_check(const UpperHalfPoint& tau, int r, double tol);

/// Power of rho33 in J(gamma, tau) for class 3A.
inline constexpr int kRhoExponent = -1;

using ComplexMat2 = std::array<std::array<Complex, 2>, 2>;

/// The multiplier data on the (component 1, component 7) plane.
struct MultiplierData {
  /// diag(e(-1/120), e(-49/120)).
  static ComplexMat2 nu_T();
  /// (2 e(3/8)/sqrt 15) (s1+s11, s7+s13; s7+s13, -s1-s11), s_k = sin(pi k/30).
  static ComplexMat2 nu_S();
  /// e(cd/9).
  static Complex rho33(const IntMat2& gamma);
};

/// One letter of gamma = +-T^{n_1} S T^{n_2} S ... T^{n_k}.
struct WordLetter {
  bool is_S = false;
  std::int64_t power = 0;  // T^power when !is_S
};
std::vector<WordLetter> word_decompose(const IntMat2& gamma);

/// J(gamma, tau) with hcheck(gamma tau) = J(gamma, tau) hcheck(tau), built by
/// the cocycle rule from J(T) = nu(T) and J(S, tau) = nu(S) sqrt(tau).  For
/// class 3A the phase rho33(gamma)^rho_exponent is included.
ComplexMat2 multiplier_J(const GroupClass& cls, const IntMat2& gamma, const UpperHalfPoint& tau,
                         int rho_exponent = kRhoExponent);

Complex mobius(const IntMat2& gamma, Complex tau);

/// max over r in {1, 7} of |hcheck_r(gamma tau) - (J(gamma, tau) hcheck(tau))_r|.
/// Throws NumericError(Group) unless gamma in SL2(Z) and o(g) | c.
Residual transform_check(const GroupClass& cls, const IntMat2& gamma, const UpperHalfPoint& tau, double tol,
                         const CompletionOptions& options = {}, int rho_exponent = kRhoExponent);

/// Single-cone data for the sgn * beta theta of one negative vector c.
struct SingleConeData {
  IntMat2 A{};
  Vec2 a{}, b{};
  IntVec2 c{};
};

struct ConeCosetRep {
  Vec2 mu0;
  Frac ratio;  // B(c, mu0) / 2Q(c), in [0, 1)
};

/// Representatives of {mu in a + Z^2 : 0 <= B(c,mu)/2Q(c) < 1} modulo <c>^perp_Z.
std::vector<ConeCosetRep> cone_coset_reps(const SingleConeData& data);

struct ConeIdentityValue {
  Complex lhs;
  Complex rhs;
  std::vector<Complex> rhs_terms;  // one per coset representative
};

ConeIdentityValue zwegers_cone_sides(const SingleConeData& data, const UpperHalfPoint& tau, double tol);

/// |sum sgn(B(c,nu)) beta(-B(c,nu)^2 y / Q(c)) q^{Q(nu)} e(B(nu,b))
///   + sum_{mu0} R_{B(c,mu0)/2Q(c), -B(c,b)}(-2Q(c) tau) theta_{mu0}(tau)|
/// where theta_{mu0} sums q^{Q(xi)} e(B(xi, b^perp)) over mu0^perp + <c>^perp_Z.
Residual zwegers_prop_check(const SingleConeData& data, const UpperHalfPoint& tau, double tol);

}  // namespace umbral
