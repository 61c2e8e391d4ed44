#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace geoalg::cli {

enum class Status { Pass, Fail, Skipped };

std::string status_name(Status s);

/// One verified identity. A failing case carries both canonical sides.
struct CaseReport {
  std::string suite, id;
  Status status = Status::Pass;
  std::string lhs, rhs, detail;
  double ms = 0;
  std::uint64_t seed = 0;
};

/// Zero or negative fields mean "use the suite default".
struct SuiteOptions {
  int n = 0;
  int level = -1;
  int p = 0;
  int points = 0;
  std::uint64_t seed = 1;
};

struct Case {
  std::string id;
  std::function<CaseReport()> run;
};

const std::vector<std::string>& suite_names();

/// Cases of one suite, in report order; throws std::invalid_argument for
/// an unknown suite.
std::vector<Case> suite_cases(const std::string& suite, const SuiteOptions& opt);

/// Runs cases concurrently; results come back in case order.
std::vector<CaseReport> run_cases(const std::string& suite, const std::vector<Case>& cases, std::uint64_t seed);

std::vector<CaseReport> run_suite(const std::string& suite, const SuiteOptions& opt);

std::string to_json(const CaseReport& r);
std::string to_text(const CaseReport& r);

/// Command-line entry point; returns the process exit code (0 ok, 1 a
/// verification failed, 2 usage error).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace geoalg::cli
