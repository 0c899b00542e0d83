#include "ctxbounds/bell.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ctxbounds/errors.hpp"
#include "ctxbounds/independence.hpp"
#include "ctxbounds/packing.hpp"

namespace ctxbounds {

void BellScenario::validate() const {
  if (num_a < 1 || num_b < 1 || num_x < 1 || num_y < 1)
    throw InputError("bell scenario: nA, nB, nX, nY must all be >= 1");
}

std::vector<int> BellScenario::block(int x, int y) const {
  std::vector<int> out;
  for (int b = 0; b < num_b; ++b)
    for (int a = 0; a < num_a; ++a) out.push_back(index(a, b, x, y));
  std::sort(out.begin(), out.end());
  return out;
}

bool BellFunctional::is_normalized() const {
  return std::all_of(coefficients.begin(), coefficients.end(), [](double c) { return c >= 0.0; });
}

WeightVector BellFunctional::weights() const {
  if (!is_normalized())
    throw InputError("bell functional has negative coefficients; normalize it first");
  return WeightVector(coefficients);
}

double BellFunctional::evaluate(std::span<const double> p) const {
  return dot(coefficients, p) + offset;
}

namespace {

void check_functional(const BellFunctional& f) {
  f.scenario.validate();
  if (static_cast<int>(f.coefficients.size()) != f.scenario.num_events())
    throw InputError("bell functional: expected " + std::to_string(f.scenario.num_events()) +
                     " coefficients, got " + std::to_string(f.coefficients.size()));
}

void check_point(const BellScenario& s, std::span<const double> p) {
  if (static_cast<int>(p.size()) != s.num_events())
    throw InputError("bell: probability table has " + std::to_string(p.size()) +
                     " entries, expected " + std::to_string(s.num_events()));
}

}  // namespace

Graph exclusivity_graph(const BellScenario& s) {
  s.validate();
  struct Event { int a, b, x, y; };
  std::vector<Event> ev(s.num_events());
  for (int y = 0; y < s.num_y; ++y)
    for (int x = 0; x < s.num_x; ++x)
      for (int b = 0; b < s.num_b; ++b)
        for (int a = 0; a < s.num_a; ++a) ev[s.index(a, b, x, y)] = {a, b, x, y};
  std::vector<Edge> edges;
  for (int i = 0; i < s.num_events(); ++i)
    for (int j = i + 1; j < s.num_events(); ++j) {
      const auto& e = ev[i];
      const auto& f = ev[j];
      if ((e.x == f.x && e.a != f.a) || (e.y == f.y && e.b != f.b)) edges.push_back({i, j});
    }
  return Graph(s.num_events(), edges);
}

BellFunctional normalize_functional(const BellFunctional& f) {
  check_functional(f);
  BellFunctional out = f;
  const auto& s = f.scenario;
  for (int y = 0; y < s.num_y; ++y)
    for (int x = 0; x < s.num_x; ++x) {
      const auto blk = s.block(x, y);
      double lo = 0.0;
      for (int i : blk) lo = std::min(lo, out.coefficients[i]);
      if (lo >= 0.0) continue;
      for (int i : blk) out.coefficients[i] -= lo;
      out.offset += lo;
    }
  return out;
}

std::vector<LinearEquality> normalization_constraints(const BellScenario& s) {
  s.validate();
  std::vector<LinearEquality> out;
  for (int y = 0; y < s.num_y; ++y)
    for (int x = 0; x < s.num_x; ++x) out.push_back({s.block(x, y), 1.0});
  return out;
}

double classical_value(const BellFunctional& f) {
  check_functional(f);
  return weighted_independence(exclusivity_graph(f.scenario), f.weights());
}

NoSignallingResult nosignalling_value(const BellFunctional& f) {
  check_functional(f);
  const auto w = f.weights();
  const auto& s = f.scenario;
  const int n = s.num_events();
  const Graph g = exclusivity_graph(s);

  LpProblem lp(n);
  for (int i = 0; i < n; ++i) lp.objective[i] = w[i];
  for (const auto& clique : maximal_cliques(g)) {
    if (clique.size() < 2) continue;
    std::vector<double> row(n, 0.0);
    for (int v : clique) row[v] = 1.0;
    lp.add(std::move(row), Relation::kLessEqual, 1.0);
  }
  for (const auto& eq : normalization_constraints(s)) {
    std::vector<double> row(n, 0.0);
    for (int v : eq.vertices) row[v] = 1.0;
    lp.add(std::move(row), Relation::kEqual, eq.target);
  }
  NoSignallingResult out;
  out.lp = lp_solve(lp);
  if (out.lp.status != LpStatus::kOptimal)
    throw SolverError("nosignalling_value: LP ended " + std::string(to_string(out.lp.status)));
  out.value = out.lp.value;
  out.box = out.lp.x;
  return out;
}

PenaltyReport quantum_value_penalty(const BellFunctional& f, const PenaltyOptions& options) {
  check_functional(f);
  const auto w = f.weights();
  const Graph g = exclusivity_graph(f.scenario);
  const double settings = static_cast<double>(f.scenario.num_x) * f.scenario.num_y;
  PenaltyReport r;
  ThetaOptions topt;
  topt.tol = options.tol;
  topt.feasibility_tol = options.feasibility_tol;
  for (double m : options.schedule) {
    if (m <= 0.0) throw InputError("penalty schedule entries must be positive");
    if (!r.penalties.empty() && m <= r.penalties.back())
      throw InputError("penalty schedule must be increasing");
    const auto res = weighted_theta(g, w.shifted(m), topt);
    r.all_optimal = r.all_optimal && res.certificate.status == SdpStatus::kOptimal;
    const double v = res.value - m * settings;
    if (!r.values.empty()) {
      r.differences.push_back(v - r.values.back());
      if (r.differences.back() > options.monotone_slack) r.monotone = false;
    }
    r.penalties.push_back(m);
    r.values.push_back(v);
  }
  if (!r.values.empty()) r.value = r.values.back();
  return r;
}

ConstrainedThetaResult quantum_value_direct(const BellFunctional& f, const ThetaOptions& options) {
  check_functional(f);
  return constrained_theta_max(exclusivity_graph(f.scenario), f.weights(),
                               normalization_constraints(f.scenario), options);
}

ProbabilityAssignment pr_box(const BellScenario& s) {
  if (!(s == BellScenario{2, 2, 2, 2}))
    throw InputError("pr_box: defined for the (2,2,2,2) scenario only");
  std::vector<double> p(s.num_events(), 0.0);
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 2; ++x)
      for (int b = 0; b < 2; ++b)
        for (int a = 0; a < 2; ++a)
          if ((a ^ b) == (x & y)) p[s.index(a, b, x, y)] = 0.5;
  return ProbabilityAssignment(std::move(p));
}

double normalization_violation(const BellScenario& s, std::span<const double> p) {
  check_point(s, p);
  double worst = 0.0;
  for (const auto& eq : normalization_constraints(s)) {
    double sum = 0.0;
    for (int v : eq.vertices) sum += p[v];
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

double signalling_violation(const BellScenario& s, std::span<const double> p) {
  check_point(s, p);
  double worst = 0.0;
  // Alice's marginal p(a|x) must not depend on y.
  for (int x = 0; x < s.num_x; ++x)
    for (int a = 0; a < s.num_a; ++a) {
      std::vector<double> marg;
      for (int y = 0; y < s.num_y; ++y) {
        double m = 0.0;
        for (int b = 0; b < s.num_b; ++b) m += p[s.index(a, b, x, y)];
        marg.push_back(m);
      }
      const auto [lo, hi] = std::minmax_element(marg.begin(), marg.end());
      worst = std::max(worst, *hi - *lo);
    }
  for (int y = 0; y < s.num_y; ++y)
    for (int b = 0; b < s.num_b; ++b) {
      std::vector<double> marg;
      for (int x = 0; x < s.num_x; ++x) {
        double m = 0.0;
        for (int a = 0; a < s.num_a; ++a) m += p[s.index(a, b, x, y)];
        marg.push_back(m);
      }
      const auto [lo, hi] = std::minmax_element(marg.begin(), marg.end());
      worst = std::max(worst, *hi - *lo);
    }
  return worst;
}

bool nosignalling_membership(const BellScenario& s, const ProbabilityAssignment& p,
                             double tol) {
  check_point(s, p.values());
  if (normalization_violation(s, p.values()) > tol) return false;
  return fuzzy_membership(clique_hypergraph(exclusivity_graph(s)), p, tol);
}

NormalizedQuantumMembership normalized_quantum_membership(const BellScenario& s,
                                                          const ProbabilityAssignment& p,
                                                          const ThetaBodyOptions& options) {
  check_point(s, p.values());
  NormalizedQuantumMembership out;
  out.normalization = normalization_violation(s, p.values());
  out.body = theta_body_membership(exclusivity_graph(s), p, options);
  out.member = out.body.member && out.normalization <= options.tol;
  return out;
}

BellFunctional chsh_functional() {
  BellFunctional f;
  f.scenario = {2, 2, 2, 2};
  f.coefficients.assign(16, 0.0);
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 2; ++x)
      for (int b = 0; b < 2; ++b)
        for (int a = 0; a < 2; ++a)
          if ((a ^ b) == (x & y)) f.coefficients[f.scenario.index(a, b, x, y)] = 1.0;
  return f;
}

BellFunctional i3322_functional() {
  // Rows: x a = 00, 01, 10, 11, 20, 21.  Columns: y b in the same order.
  static constexpr int kTable[6][6] = {
      {1, 0, 1, 0, 1, 0},
      {0, 0, 1, 1, 1, 1},
      {1, 1, 1, 0, 0, 1},
      {0, 1, 1, 1, 1, 1},
      {1, 0, 0, 1, 0, 0},
      {0, 0, 1, 1, 0, 0},
  };
  BellFunctional f;
  f.scenario = {2, 2, 3, 3};
  f.coefficients.assign(36, 0.0);
  for (int x = 0; x < 3; ++x)
    for (int a = 0; a < 2; ++a)
      for (int y = 0; y < 3; ++y)
        for (int b = 0; b < 2; ++b)
          f.coefficients[f.scenario.index(a, b, x, y)] = kTable[2 * x + a][2 * y + b];
  f.offset = -6.0;
  return f;
}

BellFunctional i3322_probability_form() {
  BellFunctional f;
  f.scenario = {2, 2, 3, 3};
  const auto& s = f.scenario;
  f.coefficients.assign(36, 0.0);
  auto alice = [&](int x, int a, int y, double c) {
    for (int b = 0; b < 2; ++b) f.coefficients[s.index(a, b, x, y)] += c;
  };
  auto bob = [&](int y, int b, int x, double c) {
    for (int a = 0; a < 2; ++a) f.coefficients[s.index(a, b, x, y)] += c;
  };
  alice(0, 0, 1, -1.0);
  alice(0, 0, 2, -1.0);
  alice(1, 0, 1, -1.0);
  bob(0, 0, 1, -1.0);
  const int joint[3][3] = {{1, 1, 1}, {1, 1, -1}, {1, -1, 0}};
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) f.coefficients[s.index(0, 0, x, y)] += joint[x][y];
  return f;
}

BuiltinInstance builtin_scenario(const std::string& name) {
  BuiltinInstance inst;
  inst.name = name;
  if (name == "chsh" || name == "i3322") {
    auto f = name == "chsh" ? chsh_functional() : i3322_functional();
    inst.graph = exclusivity_graph(f.scenario);
    inst.weights = f.weights();
    inst.functional = std::move(f);
    return inst;
  }
  int n = 0;
  if (name == "kcbs5") {
    n = 5;
  } else if (name.rfind("ncycle:", 0) == 0) {
    const std::string digits = name.substr(7);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit) ||
        digits.size() > 6)
      throw InputError("builtin '" + name + "': expected ncycle:<n> with an integer n >= 3");
    n = std::stoi(digits);
  } else {
    throw InputError("unknown builtin '" + name +
                     "'; available: chsh, i3322, kcbs5, ncycle:<n>");
  }
  inst.graph = cycle_graph(n);
  inst.weights = WeightVector::ones(n);
  return inst;
}

}  // namespace ctxbounds
