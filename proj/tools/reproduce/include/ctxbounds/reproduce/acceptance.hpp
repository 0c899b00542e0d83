#pragma once

#include <optional>
#include <string>
#include <vector>

namespace ctxbounds::reproduce {

/// One compared quantity: reference value vs computed value.
struct Check {
  std::string quantity;
  std::string reference;
  std::string computed;
  std::string tolerance;
  bool pass = false;
  std::string note;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<std::string> keywords;
  std::vector<Check> checks;
  double seconds = 0.0;
  /// Set when a solver threw; the criterion then fails.
  std::string error;

  bool pass() const;
};

struct AcceptanceOptions {
  /// Overrides every SDP gap tolerance; module defaults otherwise.
  std::optional<double> sdp_tol;
  /// Keeps criteria whose number, title or keywords contain this text.
  std::string only;
};

/// Number of criteria in the suite.
int acceptance_count();

/// Title and keywords of criterion `id` (1-based) without running it.
CriterionResult acceptance_header(int id);

/// True when `only` is empty or matches the criterion.
bool acceptance_selected(const CriterionResult& header, const std::string& only);

CriterionResult run_criterion(int id, const AcceptanceOptions& options = {});

/// Runs the selected criteria in order.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// "%.9g".
std::string format_number(double value);

}  // namespace ctxbounds::reproduce
