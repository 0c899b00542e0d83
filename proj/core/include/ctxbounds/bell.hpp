#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ctxbounds/graph.hpp"
#include "ctxbounds/lp.hpp"
#include "ctxbounds/theta.hpp"
#include "ctxbounds/vectors.hpp"

namespace ctxbounds {

/// Bipartite Bell scenario. Events (a, b, x, y) are flattened row-major with
/// a fastest, then b, x, y:  index = a + nA·(b + nB·(x + nX·y)).
struct BellScenario {
  int num_a = 2;  // |𝒜|, Alice's outcomes
  int num_b = 2;  // |ℬ|
  int num_x = 2;  // |𝒳|, Alice's settings
  int num_y = 2;  // |𝒴|

  /// Throws InputError unless every count is >= 1.
  void validate() const;
  int num_events() const { return num_a * num_b * num_x * num_y; }
  int index(int a, int b, int x, int y) const { return a + num_a * (b + num_b * (x + num_x * y)); }
  /// Event indices of the measurement pair (x, y), in (a, b) order.
  std::vector<int> block(int x, int y) const;

  bool operator==(const BellScenario&) const = default;
};

/// Linear functional  λ·p + offset  on probability tables p_{ab|xy}.
struct BellFunctional {
  BellScenario scenario;
  std::vector<double> coefficients;  // λ_{abxy}, may be negative before normalization
  double offset = 0.0;

  bool is_normalized() const;
  /// Requires is_normalized().
  WeightVector weights() const;
  double evaluate(std::span<const double> p) const;
};

/// Edges join (a,b,x,y) and (a',b',x',y') iff (x = x' and a != a') or
/// (y = y' and b != b'): the two events are compatible and exclusive.
Graph exclusivity_graph(const BellScenario& s);

/// Removes negative coefficients block by block with
/// -p_{ab|xy} = -1 + Σ_{a'b' != ab} p_{a'b'|xy}: every (x, y) block is shifted
/// by its minimum when that is negative, and the shift goes into the offset.
BellFunctional normalize_functional(const BellFunctional& f);

/// Σ_{ab} p_{ab|xy} = 1 for every (x, y).
std::vector<LinearEquality> normalization_constraints(const BellScenario& s);

/// Classical bound λ(E_C) = λ(E¹_C), computed as a maximum-weight independent
/// set of the exclusivity graph. Excludes the offset.
double classical_value(const BellFunctional& f);

struct NoSignallingResult {
  double value = 0.0;      // excludes the offset
  std::vector<double> box; // an optimal probability table
  LpSolution lp;
};

/// λ(E¹_GPT): LP over p >= 0, one inequality per maximal clique of the
/// exclusivity graph, plus normalization. Equals the no-signalling optimum.
NoSignallingResult nosignalling_value(const BellFunctional& f);

struct PenaltyOptions {
  std::vector<double> schedule{1.0, 10.0, 100.0, 1000.0};
  double tol = 1e-9;             // relative SDP gap per solve
  /// The penalised problems are degenerate; primal residuals stall near 1e-9.
  double feasibility_tol = 1e-8;
  double monotone_slack = 1e-6;  // allowed increase between consecutive values
};

struct PenaltyReport {
  std::vector<double> penalties;
  std::vector<double> values;       // (λ + M·1)(E_QM) - M·|𝒳×𝒴|
  std::vector<double> differences;  // values[k] - values[k-1]
  double value = 0.0;               // last entry
  bool monotone = true;             // non-increasing within monotone_slack
  bool all_optimal = true;          // every SDP reached kOptimal
};

/// Upper bound on the normalized quantum value by maximising the penalised
/// objective over the whole theta body. Since Σ_{ab} p_{ab|xy} <= 1 holds
/// there, the sequence is non-increasing in M.
PenaltyReport quantum_value_penalty(const BellFunctional& f, const PenaltyOptions& options = {});

/// λ(E¹_QM) solved directly: theta body plus normalization equalities.
ConstrainedThetaResult quantum_value_direct(const BellFunctional& f,
                                            const ThetaOptions& options = {.tol = 1e-10});

/// p_{ab|xy} = ½ if a ⊕ b = xy, else 0. Requires the (2,2,2,2) scenario.
ProbabilityAssignment pr_box(const BellScenario& s);

/// Largest deviation from Σ_{ab} p_{ab|xy} = 1.
double normalization_violation(const BellScenario& s, std::span<const double> p);
/// Largest deviation among the no-signalling marginal equalities.
double signalling_violation(const BellScenario& s, std::span<const double> p);

/// p ∈ E¹_GPT: clique sums of the exclusivity graph at most 1 and every
/// block normalized, both within tol. Equivalent to a no-signalling box.
bool nosignalling_membership(const BellScenario& s, const ProbabilityAssignment& p,
                             double tol = 1e-9);

struct NormalizedQuantumMembership {
  bool member = false;
  double normalization = 0.0;  // normalization_violation(p)
  ThetaBodyMembership body;
};
/// p ∈ E¹_QM: theta body of the exclusivity graph plus normalization.
NormalizedQuantumMembership normalized_quantum_membership(const BellScenario& s,
                                                          const ProbabilityAssignment& p,
                                                          const ThetaBodyOptions& options = {});

/// CHSH winning condition: λ_{abxy} = 1 iff a ⊕ b = xy.
BellFunctional chsh_functional();

/// I3322 with non-negative coefficients (the 0/1 table with 20 ones);
/// offset -6 recovers the original "<= 0" form.
BellFunctional i3322_functional();

/// I3322 written on probabilities before normalization: the single-party
/// marginals are expanded as p_A(0|0) = p(0·|0,1) and p(0·|0,2) for the two
/// halves of -2⟨A_0⟩, p_A(0|1) = p(0·|1,1), p_B(0|0) = p(·0|1,0).
BellFunctional i3322_probability_form();

/// A built-in instance: every instance has a graph and weights; Bell
/// instances also carry their functional.
struct BuiltinInstance {
  std::string name;
  Graph graph;
  WeightVector weights;
  std::optional<BellFunctional> functional;
};

/// "chsh", "i3322", "kcbs5" or "ncycle:<n>". Throws InputError listing the
/// available names otherwise.
BuiltinInstance builtin_scenario(const std::string& name);

}  // namespace ctxbounds
