#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "table_data.hpp"
#include "umbral/characters.hpp"

using namespace umbral;

namespace {

const Frac kTableOrder(4631, 120);

void check_table(int family, const auto& rows) {
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& cls = GroupClass::get(GroupClass::all()[i]);
    const QSeries h = H_family_series(cls, family, kTableOrder);
    for (const auto& row : rows) {
      CAPTURE(cls.label());
      CAPTURE(row.exponent_numerator);
      CHECK(h.coefficient(Frac(row.exponent_numerator, 120)) == row.values[i]);
    }
  }
}

}  // namespace

TEST_CASE("group classes") {
  CHECK(GroupClass::parse("1A").order == 1);
  CHECK(GroupClass::parse("2A").cycle_type() == std::vector<int>{2, 1});
  CHECK(GroupClass::parse("3A").cycle_type() == std::vector<int>{3});
  CHECK(GroupClass::parse("3A").perm_character == 0);
  CHECK(GroupClass::parse("2A").perm_character == 1);
  CHECK_THROWS_AS(GroupClass::parse("4B"), std::invalid_argument);
  for (auto name : GroupClass::all()) CHECK(GroupClass::parse(GroupClass::get(name).label()).name == name);
}

TEST_CASE("coset reduction signs") {
  CHECK(reduce_coset(ClassName::A1, 11).a == 1);
  CHECK(reduce_coset(ClassName::A1, 11).sign == -1);
  CHECK(reduce_coset(ClassName::A3, 13).sign == -1);
  CHECK(reduce_coset(ClassName::A2, 11).sign == 1);
  CHECK(reduce_coset(ClassName::A2, 23).a == 3);
  CHECK(reduce_coset(ClassName::A1, 21).sign == 1);
  CHECK(reduce_coset(ClassName::A1, -1).a == 9);
  CHECK(reduce_coset(ClassName::A1, -1).sign == -1);
}

TEST_CASE("2A traces are periodic in a with period 10") {
  for (int a : {1, 3, 7})
    for (int s : {1, -1}) {
      const QSeries base = trace_direct({ClassName::A2, a, s}, Frac(6));
      CHECK(trace_direct({ClassName::A2, a + 10, s}, Frac(6)) == base);
      CHECK(trace_direct({ClassName::A1, a + 10, s}, Frac(6)) == -trace_direct({ClassName::A1, a, s}, Frac(6)));
    }
}

TEST_CASE("seven-from-three signs") {
  CHECK(seven_from_three_sign(ClassName::A1) == -1);
  CHECK(seven_from_three_sign(ClassName::A2) == 1);
  CHECK(seven_from_three_sign(ClassName::A3) == -1);
}

TEST_CASE("E8 support") {
  int count = 0;
  for (int r = 0; r < 60; ++r) {
    if (!in_e8_support(r)) {
      CHECK(support_sign(r) == 0);
      continue;
    }
    ++count;
    CHECK(support_sign(r) == -support_sign(60 - r));
    CHECK(support_family(r) == support_family(60 - r));
  }
  CHECK(count == 16);
  for (int r : {1, 11, 19, 29}) CHECK(support_family(r) == 1);
  for (int r : {7, 13, 17, 23}) CHECK(support_family(r) == 7);
  CHECK_FALSE(in_e8_support(5));
  CHECK(support_sign(61) == 1);
}

TEST_CASE("Heisenberg trace of the identity is eta^-3") {
  const QSeries h = heisenberg_trace(GroupClass::get(ClassName::A1), Frac(10));
  const QSeries eta3 = dedekind_eta(1, Frac(12)) * dedekind_eta(1, Frac(12)) * dedekind_eta(1, Frac(12));
  const QSeries prod = (h * eta3).truncated(Frac(9));
  CHECK(prod == QSeries::monomial(0).truncated(Frac(9)));
}

TEST_CASE("fermion trace") {
  const QSeries f = fermion_trace(-1, Frac(3));
  CHECK(f.coefficient(Frac(1, 24)) == -1);
  CHECK(f.coefficient(Frac(25, 24)) == 1);
  CHECK(f.coefficient(Frac(49, 24)) == 1);
}

TEST_CASE("closed and direct traces agree for all 30 trace ids to order 20") {
  for (auto cls : GroupClass::all())
    for (int a : {1, 3, 5, 7, 9})
      for (int s : {1, -1}) {
        const TraceId id{cls, a, s};
        CAPTURE(GroupClass::get(cls).label());
        CAPTURE(a);
        CAPTURE(s);
        CHECK(trace_closed(id, Frac(20)) == trace_direct(id, Frac(20)));
      }
}

TEST_CASE("reference table for component 1") { check_table(1, testdata::kComponent1); }

TEST_CASE("reference table for component 7") { check_table(7, testdata::kComponent7); }

TEST_CASE("table rows lie on the expected exponent classes") {
  for (const auto& row : testdata::kComponent1) CHECK(((row.exponent_numerator % 120) + 120) % 120 == 119);
  for (const auto& row : testdata::kComponent7) CHECK(row.exponent_numerator % 120 == 71);
}

TEST_CASE("assembled vector is odd and supported on the Coxeter exponents") {
  const Frac order(5);
  for (auto name : GroupClass::all()) {
    const auto& cls = GroupClass::get(name);
    const MockFormVector h = assemble_H(cls, order);
    for (int r = 0; r < 60; ++r) {
      if (!in_e8_support(r)) {
        CHECK(h.component(r).is_zero());
        continue;
      }
      CHECK(h.component(r) == -h.component(60 - r));
      const QSeries& base = h.component(support_family(r));
      CHECK(h.component(r) == (support_sign(r) > 0 ? base : -base));
    }
    CHECK(h.component(1) == H_family_series(cls, 1, order));
    CHECK(h.component(7) == H_family_series(cls, 7, order));
  }
  CHECK_THROWS_AS(H_family_series(GroupClass::get(ClassName::A1), 11, Frac(2)), std::invalid_argument);
}

TEST_CASE("every H coefficient is an even integer") {
  for (auto name : GroupClass::all())
    for (int family : {1, 7}) {
      const QSeries h = H_family_series(GroupClass::get(name), family, Frac(20));
      for (const auto& [e, c] : h.terms()) {
        CHECK(c.get_den() == 1);
        CHECK(mpz_class(c.get_num() % 2) == 0);
      }
    }
}
