#pragma once

// Command-line front end: coefficient tables, identity verification and
// numeric evaluation.  Every command writes to the given streams and returns
// its exit code, so the same entry points serve the binary and the tests.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace umbral::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Largest accepted --max-row (exponent numerator over 120), i.e. order 200.
inline constexpr std::int64_t kMaxRowBudget = 24000;

enum class TableFormat { Csv, Json };

int cmd_table(int component, std::int64_t max_row, TableFormat format, std::ostream& out, std::ostream& err);

enum class Suite { Exact, Numeric, All };

struct VerifyOptions {
  Suite suite = Suite::All;
  std::int64_t order = 25;
  double tol = 1e-6;
  bool inject_corruption = false;
};

int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);

struct EvalOptions {
  std::string cls;
  int r = 1;
  std::string tau;
  bool completion = false;
  double tol = 1e-8;
};

int cmd_eval(const EvalOptions& options, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches; parse errors exit with kExitUsage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace umbral::cli
