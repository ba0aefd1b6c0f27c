#pragma once

// Trace functions T^{+-}_{g,a} of the E8^3 umbral module on its canonically
// twisted modules, computed by two independent routes, and assembly of the
// 60-component McKay-Thompson series H_g = 2 T_g.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "umbral/qseries.hpp"

namespace umbral {

enum class ClassName { A1, A2, A3 };  // 1A, 2A, 3A

struct GroupClass {
  ClassName name;
  std::array<int, 3> permutation;  // image of basis index i
  int perm_character;               // fixed basis vectors
  int order;

  std::string label() const;
  /// Cycle lengths of the permutation, e.g. {2, 1} for (12).
  std::vector<int> cycle_type() const;

  static const GroupClass& get(ClassName name);
  /// Parses "1A", "2A" or "3A"; throws std::invalid_argument otherwise.
  static const GroupClass& parse(std::string_view label);
  static const std::array<ClassName, 3>& all();
};

struct TraceId {
  ClassName cls;
  int coset_a;        // any odd integer; reduced to {1,3,5,7,9} internally
  int clifford_sign;  // +1 or -1
};

/// Coset label reduced to {1,3,5,7,9} with the sign picked up from
/// T_{g,a+10} = -T_{g,a} for 1A and 3A, and T_{g,a+10} = +T_{g,a} for 2A.
struct ReducedCoset {
  int a;
  int sign;
};
ReducedCoset reduce_coset(ClassName cls, int a);

/// s_g in H_{g,7} = 2 s_g T^-_{g,3}: -1 for 1A and 3A, +1 for 2A.
int seven_from_three_sign(ClassName cls);

/// +- q^{1/24} (q;q)_inf, the graded trace of p(0) on the twisted Clifford module.
QSeries fermion_trace(int sign, Frac order);

/// q^{-3/24} prod_{n>=1} det(1 - q^n g)^{-1} on the rank-3 Heisenberg space,
/// built as an eta quotient from the cycle type of g.
QSeries heisenberg_trace(const GroupClass& cls, Frac order);

/// T^{+-}_{g,a} from the closed lattice sums (triple, double, single sum).
QSeries trace_closed(const TraceId& id, Frac order);

/// T^{+-}_{g,a} summed directly over the cone points of L + a rho/2 with the
/// sign characters of the group action.  Accepts any odd a.
QSeries trace_direct(const TraceId& id, Frac order);

/// The support {1,7,11,13,17,19,23,29} and negatives mod 60.
bool in_e8_support(int r);
/// +1 for r in {1,7,11,13,17,19,23,29} mod 60, -1 for their negatives, 0 else.
int support_sign(int r);
/// 1 or 7: which family r belongs to (requires in_e8_support(r)).
int support_family(int r);

class MockFormVector {
 public:
  explicit MockFormVector(Frac order);

  const QSeries& component(int r) const;
  void set_component(int r, QSeries s);
  Frac order() const { return order_; }

 private:
  Frac order_;
  std::vector<QSeries> components_;
};

/// H_g = 2 T_g with T_{g,r} = T^{-+}_{g,1} for r = +-1,+-11,+-19,+-29 and
/// s_g T^{-+}_{g,3} for r = +-7,+-13,+-17,+-23 (mod 60).
MockFormVector assemble_H(const GroupClass& cls, Frac order);

/// H_{g,1} = 2 T^-_{g,1} (family 1) or H_{g,7} = 2 s_g T^-_{g,3} (family 7).
QSeries H_family_series(const GroupClass& cls, int family, Frac order);

}  // namespace umbral
