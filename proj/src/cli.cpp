#include "umbral/cli.hpp"

#include <array>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "umbral/characters.hpp"
#include "umbral/maass.hpp"
#include "umbral/mocktheta.hpp"
#include "umbral/parallel.hpp"
#include "umbral/theta.hpp"

namespace umbral::cli {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string format_complex(Complex z) {
  const double im = z.imag();
  return format_double(z.real()) + (std::signbit(im) ? "-" : "+") + format_double(std::abs(im)) + "i";
}

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

void report(std::ostream& out, const Check& c) {
  out << (c.pass ? "PASS  " : "FAIL  ") << c.name;
  if (!c.detail.empty()) out << "  (" << c.detail << ")";
  out << '\n';
}

Check from_identity(const IdentityReport& r) {
  Check c{r.name + " to order " + format_frac(r.order), r.verified, r.note};
  if (r.first_discrepancy) {
    c.detail = "first discrepancy at q^" + format_frac(*r.first_discrepancy) + ": lhs " +
               format_rational(*r.lhs_coefficient) + ", rhs " + format_rational(*r.rhs_coefficient);
  }
  return c;
}

std::vector<Check> exact_checks(const VerifyOptions& o) {
  std::vector<Check> checks;
  SuiteOptions so;
  so.corrupt_chi0 = o.inject_corruption;
  for (const IdentityReport& r : identity_suite(Frac(o.order), so)) checks.push_back(from_identity(r));

  std::vector<TraceId> ids;
  for (ClassName cls : GroupClass::all())
    for (int a : {1, 3, 5, 7, 9})
      for (int sign : {1, -1}) ids.push_back({cls, a, sign});
  std::vector<Check> routes(ids.size());
  parallel_for(ids.size(), [&](std::size_t i) {
    const TraceId& id = ids[i];
    const std::string name = "trace closed = direct, " + GroupClass::get(id.cls).label() + " a=" +
                             std::to_string(id.coset_a) + (id.clifford_sign > 0 ? " +" : " -");
    routes[i] = from_identity(
        compare_series(name, trace_closed(id, Frac(o.order)), trace_direct(id, Frac(o.order)), Frac(o.order)));
  });
  checks.insert(checks.end(), routes.begin(), routes.end());

  const ThetanullwerteReport scan = thetanullwerte_class_check(30);
  checks.push_back({"thetanullwerte scan, base 30", scan.hits.empty(),
                    std::to_string(scan.pairs_scanned) + " pairs, " + std::to_string(scan.hits.size()) + " hits"});

  const QSeries ej = eta_J_coefficients(Frac(97, 24));
  const std::array<std::pair<Frac, const char*>, 4> expected{{{Frac(25, 24), "196883"},
                                                              {Frac(49, 24), "21296876"},
                                                              {Frac(73, 24), "842609326"},
                                                              {Frac(97, 24), "19360062527"}}};
  for (const auto& [e, value] : expected) {
    const Rational got = ej.coefficient(e);
    checks.push_back({"eta J coefficient at q^" + format_frac(e), got == Rational(value),
                      "got " + format_rational(got)});
  }
  return checks;
}

Check residual_check(const std::string& name, const std::function<Residual()>& f) {
  try {
    const Residual r = f();
    return {name, r.pass(), "residual " + format_double(r.residual) + (r.detail.empty() ? "" : ", " + r.detail)};
  } catch (const std::exception& e) {
    return {name, false, e.what()};
  }
}

std::vector<Check> numeric_checks(const VerifyOptions& o) {
  const double tol = o.tol;
  using Item = std::pair<std::string, std::function<Residual()>>;
  std::vector<Item> items;
  auto residual = [&](double value) {
    Residual r;
    r.residual = value;
    r.tol = tol;
    return r;
  };

  const std::array<Complex, 5> samples{Complex(0.1, 0.8), Complex(0, 0.5), Complex(0.3, 0.7), Complex(-0.4, 1.2),
                                       Complex(2.1, 0.6)};
  for (int r : {1, 7})
    for (Complex t : samples)
      items.emplace_back("indefinite theta identity r=" + std::to_string(r) + " at " + format_complex(t),
                         [=] { return tau1_identity_check(UpperHalfPoint(t), r, tol); });

  const IntMat2 T{{{1, 1}, {0, 1}}}, S{{{0, -1}, {1, 0}}}, G2{{{1, 0}, {2, 1}}}, G3{{{1, 0}, {3, 1}}};
  struct Law {
    ClassName cls;
    IntMat2 gamma;
    const char* name;
    std::array<Complex, 3> points;
  };
  const std::array<Law, 6> laws{{
      {ClassName::A1, T, "T", {Complex(0.3, 0.95), Complex(0, 1), Complex(-0.2, 1.1)}},
      {ClassName::A1, S, "S", {Complex(0.3, 0.95), Complex(0.98, 0.2), Complex(-0.95, 0.3)}},
      {ClassName::A2, T, "T", {Complex(-0.5, 0.5), Complex(-0.4, 0.6), Complex(0.1, 0.8)}},
      {ClassName::A2, G2, "(1 0; 2 1)", {Complex(-0.5, 0.5), Complex(-0.4, 0.6), Complex(0.1, 0.8)}},
      {ClassName::A3, T, "T", {Complex(-1.0 / 3, 0.5), Complex(0.2, 0.9), Complex(0, 1)}},
      {ClassName::A3, G3, "(1 0; 3 1)", {Complex(-1.0 / 3, 0.5), Complex(0.2, 0.9), Complex(0, 1)}},
  }};
  for (const Law& law : laws)
    for (Complex t : law.points)
      items.emplace_back("transformation " + GroupClass::get(law.cls).label() + " under " + law.name + " at " +
                             format_complex(t),
                         [=] { return transform_check(GroupClass::get(law.cls), law.gamma, UpperHalfPoint(t), tol); });

  for (Complex t : samples)
    for (int r : {1, 7})
      items.emplace_back("2A completion routes agree r=" + std::to_string(r) + " at " + format_complex(t), [=] {
        const UpperHalfPoint p(t);
        const Complex a = completion_eval(GroupClass::get(ClassName::A2), r, p, tol / 10).total;
        return residual(std::abs(a - indefinite_theta_completion(r, p, tol / 10)));
      });

  items.emplace_back("indefinite theta antisymmetry", [=] {
    IndefThetaData d = IndefThetaData::twisted_2A(1);
    const UpperHalfPoint p(Complex(0.2, 0.9));
    const Complex forward = vartheta_indef(d, p, tol / 100).value;
    std::swap(d.c1, d.c2);
    return residual(std::abs(forward + vartheta_indef(d, p, tol / 100).value));
  });

  for (IntVec2 c : {IntVec2{-1, 4}, IntVec2{-2, 3}}) {
    items.emplace_back("single-cone identity c=(" + std::to_string(c[0]) + "," + std::to_string(c[1]) + ")", [=] {
      SingleConeData d;
      d.A = {{{6, 4}, {4, 1}}};
      d.a = {Frac(1, 10), Frac(1, 10)};
      d.b = {Frac(3, 20), Frac(-1, 10)};
      d.c = c;
      return zwegers_prop_check(d, UpperHalfPoint(Complex(0.1, 0.9)), tol);
    });
  }

  items.emplace_back("R_{1/30,-1/2}(15i) against Eichler quadrature of g_{1/30,1/2}", [=] {
    const UpperHalfPoint p(Complex(0, 15));
    const Complex R = R_ab(1.0 / 30, -0.5, p, tol / 100).value;
    return residual(std::abs(R - eichler_quadrature(g_ab_terms(1.0 / 30, 0.5, p.y(), tol / 10), p, tol / 10).value));
  });

  std::vector<Check> checks(items.size());
  parallel_for(items.size(), [&](std::size_t i) { checks[i] = residual_check(items[i].first, items[i].second); });
  return checks;
}

}  // namespace

int cmd_table(int component, std::int64_t max_row, TableFormat format, std::ostream& out, std::ostream& err) {
  if (component != 1 && component != 7) {
    err << "error: --component must be 1 or 7\n";
    return kExitUsage;
  }
  const std::int64_t first = component == 1 ? -1 : 71;
  if (max_row < first) {
    err << "error: --max-row must be at least " << first << " for component " << component << "\n";
    return kExitUsage;
  }
  if (max_row > kMaxRowBudget) {
    err << "error: --max-row " << max_row << " exceeds the compute budget " << kMaxRowBudget << "\n";
    return kExitUsage;
  }
  const Frac order(max_row, 120);
  std::array<QSeries, 3> series;
  const auto& classes = GroupClass::all();
  parallel_for(3, [&](std::size_t i) { series[i] = H_family_series(GroupClass::get(classes[i]), component, order); });

  std::vector<std::pair<std::int64_t, std::array<Rational, 3>>> rows;
  for (std::int64_t e = first; e <= max_row; e += 120) {
    std::array<Rational, 3> values;
    for (std::size_t i = 0; i < 3; ++i) values[i] = series[i].coefficient(Frac(e, 120));
    rows.emplace_back(e, values);
  }

  if (format == TableFormat::Csv) {
    out << "exponent_numerator,1A,2A,3A\n";
    for (const auto& [e, v] : rows) out << e << ',' << v[0] << ',' << v[1] << ',' << v[2] << '\n';
    return kExitOk;
  }
  nlohmann::ordered_json doc;
  doc["grading_denominator"] = 120;
  doc["component"] = component;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& [e, v] : rows) {
    nlohmann::ordered_json row;
    row["exponent_numerator"] = e;
    nlohmann::ordered_json values;
    const std::array<const char*, 3> labels{"1A", "2A", "3A"};
    for (std::size_t i = 0; i < 3; ++i) {
      if (v[i].get_den() == 1 && v[i].get_num().fits_slong_p()) {
        values[labels[i]] = v[i].get_num().get_si();
      } else {
        values[labels[i]] = format_rational(v[i]);
      }
    }
    row["values"] = values;
    doc["rows"].push_back(row);
  }
  out << doc.dump(2) << '\n';
  return kExitOk;
}

int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err) {
  if (options.order < 1) {
    err << "error: --order must be positive\n";
    return kExitUsage;
  }
  if (!(options.tol > 0)) {
    err << "error: --tol must be positive\n";
    return kExitUsage;
  }
  std::vector<Check> checks;
  if (options.suite != Suite::Numeric) {
    out << "# exact suite, order " << options.order << '\n';
    for (const Check& c : exact_checks(options)) {
      report(out, c);
      checks.push_back(c);
    }
  }
  if (options.suite != Suite::Exact) {
    out << "# numeric suite, tol " << format_double(options.tol) << '\n';
    for (const Check& c : numeric_checks(options)) {
      report(out, c);
      checks.push_back(c);
    }
  }
  std::size_t failed = 0;
  for (const Check& c : checks) failed += c.pass ? 0 : 1;
  out << (failed == 0 ? "verified " : "FAILED ") << checks.size() - failed << '/' << checks.size() << '\n';
  return failed == 0 ? kExitOk : kExitFailure;
}

int cmd_eval(const EvalOptions& options, std::ostream& out, std::ostream& err) {
  const GroupClass* cls = nullptr;
  try {
    cls = &GroupClass::parse(options.cls);
  } catch (const std::exception&) {
    err << "error: unknown class '" << options.cls << "' (expected 1A, 2A or 3A)\n";
    return kExitUsage;
  }
  if (!in_e8_support(options.r)) {
    err << "error: r = " << options.r << " is not in the support {1,7,11,13,17,19,23,29} mod 60 up to sign\n";
    return kExitUsage;
  }
  if (!(options.tol > 0)) {
    err << "error: --tol must be positive\n";
    return kExitUsage;
  }
  std::optional<UpperHalfPoint> tau;
  try {
    tau = UpperHalfPoint::parse(options.tau);
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    out << "class " << cls->label() << ", r = " << options.r << ", tau = " << format_complex(tau->value()) << '\n';
    if (options.completion) {
      const CompletionValue v = completion_eval(*cls, options.r, *tau, options.tol);
      out << "holomorphic = " << format_complex(v.holomorphic) << '\n';
      out << "nonholomorphic = " << format_complex(v.nonholomorphic) << '\n';
      out << "value = " << format_complex(v.total) << '\n';
      out << "error_estimate = " << format_double(v.error_estimate) << '\n';
      out << "series_order = " << format_frac(v.order) << '\n';
    } else {
      const SeriesValue v = evaluate_H(*cls, options.r, *tau, options.tol);
      out << "value = " << format_complex(v.value) << '\n';
      out << "error_estimate = " << format_double(v.tail_estimate) << '\n';
      out << "series_order = " << format_frac(v.order) << '\n';
    }
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"E8^3 umbral McKay-Thompson series: tables, identity checks and numeric evaluation", "umbral_cli"};
  app.require_subcommand(1);

  int component = 1;
  std::int64_t max_row = 4559;
  std::string format = "csv";
  auto* table = app.add_subcommand("table", "coefficient table of H_{g,1} or H_{g,7} for 1A, 2A, 3A");
  table->add_option("--component", component, "1 or 7")->required()->check(CLI::IsMember({1, 7}));
  table->add_option("--max-row", max_row, "largest exponent numerator over 120")->required();
  table->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  VerifyOptions verify_options;
  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run identity and numeric checks");
  verify->add_option("--suite", suite, "exact, numeric or all")->check(CLI::IsMember({"exact", "numeric", "all"}));
  verify->add_option("--order", verify_options.order, "truncation order for the exact suite");
  verify->add_option("--tol", verify_options.tol, "tolerance for the numeric suite");
  verify->add_flag("--inject-corruption", verify_options.inject_corruption)->group("");

  EvalOptions eval_options;
  auto* eval = app.add_subcommand("eval", "evaluate a component of H_g at a point of the upper half plane");
  eval->add_option("--class", eval_options.cls, "1A, 2A or 3A")->required();
  eval->add_option("--r", eval_options.r, "component index")->required();
  eval->add_option("--tau", eval_options.tau, "point as \"x+yi\"")->required();
  eval->add_flag("--completion", eval_options.completion, "add the non-holomorphic Eichler integral");
  eval->add_option("--tol", eval_options.tol, "absolute tolerance");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*table) return cmd_table(component, max_row, format == "json" ? TableFormat::Json : TableFormat::Csv, out, err);
    if (*verify) {
      verify_options.suite = suite == "exact" ? Suite::Exact : suite == "numeric" ? Suite::Numeric : Suite::All;
      return cmd_verify(verify_options, out, err);
    }
    return cmd_eval(eval_options, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace umbral::cli
