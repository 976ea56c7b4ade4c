#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "twogrp/serialize.hpp"

namespace twogrp::cli {

enum class Status { Pass, Fail, Error };

struct Report {
  std::string command;
  Status status = Status::Pass;
  Json payload = Json::object();
  /// Set for Fail/Error reports raised as exceptions: code, message, witness.
  Json error;
  /// Preformatted table rows; when empty the payload is flattened instead.
  std::vector<std::string> table;
};

/// Exit code of a report: 0 pass, 1 mathematical failure, 2 usage or input error.
int exit_code(Status s);

/// JSON: {"command", "status", "payload"[, "error"]}, two-space indent.
/// Text: fixed-width key/value rows ending in "RESULT: PASS|FAIL|ERROR".
std::string emit_report(const Report& r, const std::string& format);

/// `args` excludes the program name. The report goes to `out`; diagnostics,
/// usage text and timing go to `err`.
int parse_and_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twogrp::cli
