#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "brauer/budget.hpp"

namespace brauer {

enum ExitCode : int { kExitOk = 0, kExitOther = 1, kExitParse = 2, kExitBudget = 3, kExitVerify = 4 };

/// One CLI invocation. The text form is `key value` lines in a fixed order;
/// unknown keys are rejected.
struct JobSpec {
  std::string command;  // solve | dense-point | normal-form | strength | nkd | regularize | verify | enumerate
  std::string field;
  std::vector<std::string> forms;  // inline forms, infix or canonical
  std::string forms_file;          // system file (see FORMAT.md)
  std::string g;                   // side condition for dense-point / normal-form
  std::string route = "auto";      // auto | diagonal | planes
  int degree = 0;                  // nkd
  int n_max = 12;                  // nkd search ceiling
  std::string phi = "const:1";
  Budget budget;
  std::string output;       // certificate path
  std::string certificate;  // verify input
  bool json = false;
  int threads = 1;

  std::string to_text() const;
  static JobSpec parse_text(std::string_view text);
  friend bool operator==(const JobSpec&, const JobSpec&) = default;
};

/// Runs the job, writing the report to `out` and diagnostics to `err`.
int run(const JobSpec& job, std::ostream& out, std::ostream& err);

/// Command-line entry point.
int cli_main(int argc, char** argv);

}  // namespace brauer
