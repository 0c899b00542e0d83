#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace ctxbounds::cli {

enum ExitCode : int {
  kOk = 0,
  kAcceptanceFailure = 1,
  kInputError = 2,
  kSolverFailure = 3,
};

/// One computed bound with the evidence behind it.
struct BoundReport {
  std::string quantity;
  double value = 0.0;
  std::string status;  // "optimal", "inaccurate", "infeasible", "exact"
  nlohmann::ordered_json certificate;
  nlohmann::ordered_json tolerances;
  double wall_time = 0.0;
  std::string input_digest;
  std::string summary;  // one-line certificate description for the table

  bool solved() const { return status == "optimal" || status == "exact"; }
  /// Wall time is left out unless asked for, so equal inputs give equal bytes.
  nlohmann::ordered_json to_json(bool with_timing) const;
};

/// Entry point shared by the executable and the tests. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Hex SHA-256 of `text`.
std::string sha256_hex(const std::string& text);

/// Rounds to 9 significant digits, the precision used in every report.
double round9(double value);

}  // namespace ctxbounds::cli
