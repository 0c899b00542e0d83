#include "ctxbounds/reproduce/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ctxbounds/bell.hpp"
#include "ctxbounds/graph.hpp"
#include "ctxbounds/independence.hpp"
#include "ctxbounds/kcbs.hpp"
#include "ctxbounds/lp.hpp"
#include "ctxbounds/packing.hpp"
#include "ctxbounds/reproduce/oracles.hpp"
#include "ctxbounds/theta.hpp"

namespace ctxbounds::reproduce {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCertificateTol = 1e-8;
constexpr std::uint64_t kSeed = 0x5eed2024;

class Rows {
 public:
  explicit Rows(CriterionResult& r) : r_(r) {}

  void near(std::string q, std::string ref_label, double ref, double got, double tol,
            bool extra = true, std::string note = {}) {
    const bool ok = extra && std::isfinite(got) && std::abs(got - ref) <= tol;
    r_.checks.push_back({std::move(q), ref_label.empty() ? format_number(ref) : std::move(ref_label),
                         format_number(got), format_number(tol), ok, std::move(note)});
  }
  void exact(std::string q, std::string ref_label, double ref, double got, std::string note = {}) {
    r_.checks.push_back({std::move(q), ref_label.empty() ? format_number(ref) : std::move(ref_label),
                         format_number(got), "exact", got == ref, std::move(note)});
  }
  void truth(std::string q, bool expected, bool got, std::string note = {}) {
    r_.checks.push_back({std::move(q), expected ? "true" : "false", got ? "true" : "false", "exact",
                         expected == got, std::move(note)});
  }
  void at_most(std::string q, double got, double limit, std::string note = {}) {
    r_.checks.push_back({std::move(q), "<= " + format_number(limit), format_number(got),
                         format_number(limit), std::isfinite(got) && got <= limit, std::move(note)});
  }

 private:
  CriterionResult& r_;
};

std::string status_note(SdpStatus s) { return "status " + std::string(to_string(s)); }

ThetaOptions theta_options(const AcceptanceOptions& o, double fallback = 1e-8) {
  ThetaOptions t;
  t.tol = o.sdp_tol.value_or(fallback);
  return t;
}

double theta_closed_form(int n) {
  const double c = std::cos(kPi / n);
  return n * c / (1.0 + c);
}

std::vector<int> support_of(const std::vector<double>& w) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(w.size()); ++i)
    if (w[i] != 0.0) out.push_back(i);
  return out;
}

// ---------------------------------------------------------------------------

void pentagon(Rows& rows, const AcceptanceOptions& o) {
  const Graph c5 = cycle_graph(5);
  rows.exact("alpha(C5)", "2", 2.0, independence_number(c5));
  const auto th = lovasz_theta(c5, theta_options(o));
  rows.near("theta(C5)", "sqrt5 = " + format_number(std::sqrt(5.0)), std::sqrt(5.0), th.value, 1e-6,
            th.certificate.status == SdpStatus::kOptimal, status_note(th.certificate.status));
  const auto pk = fractional_packing_number(clique_hypergraph(c5));
  rows.near("alpha*(cliques(C5))", "5/2", 2.5, pk.value, 1e-9, pk.lp.status == LpStatus::kOptimal);
}

void odd_cycles(Rows& rows, const AcceptanceOptions& o) {
  for (int n : {5, 7, 9, 11}) {
    const std::string tag = "C" + std::to_string(n);
    const Graph g = cycle_graph(n);
    const double beta = theta_closed_form(n);
    const auto th = lovasz_theta(g, theta_options(o));
    rows.near("theta(" + tag + ") vs n cos(pi/n)/(1+cos(pi/n))", "", beta, th.value, 1e-6,
              th.certificate.status == SdpStatus::kOptimal, status_note(th.certificate.status));
    rows.exact("alpha(" + tag + ")", "", (n - 1) / 2, independence_number(g));
    const auto pk = fractional_packing_number(clique_hypergraph(g));
    rows.near("alpha*(cliques(" + tag + "))", "", n / 2.0, pk.value, 1e-9,
              pk.lp.status == LpStatus::kOptimal);
    const auto bound = odd_cycle_quantum_bound(n);
    rows.near("correlator bound(" + tag + ") vs n - 4 theta", "", n - 4.0 * beta, bound.beta_prime, 1e-9,
              true, "closed-form theta; sign-corrected formula");
  }
}

void kcbs(Rows& rows, const AcceptanceOptions&) {
  const Graph c5 = cycle_graph(5);
  const auto rep = kcbs_vectors();
  const auto check = verify_or(c5, rep, 1e-10);
  rows.truth("unit norms and cyclic orthogonality", true, check.valid,
             "max violation " + format_number(check.max_violation));
  const auto value = or_value(rep);
  rows.near("sum |<psi|v_i>|^2", "sqrt5", std::sqrt(5.0), value.handle_value, 1e-9);
  rows.near("lambda_max(sum |v_i><v_i|)", "sqrt5", std::sqrt(5.0), value.optimized_value, 1e-9);
  // The five correlators sum to 5 - 4 sqrt5 < 0, so each equals the negative
  // of [-1 + 3cos(pi/5)] sec^2(pi/10) / 2.
  const double sec = 1.0 / std::cos(kPi / 10.0);
  const double corr = -(-1.0 + 3.0 * std::cos(kPi / 5.0)) * sec * sec / 2.0;
  double sum = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double pi = std::pow(rep.handle.dot(rep.vectors[i]), 2);
    const double pj = std::pow(rep.handle.dot(rep.vectors[(i + 1) % 5]), 2);
    const double c = 1.0 - 2.0 * pi - 2.0 * pj;
    sum += c;
    rows.near("<A_" + std::to_string(i) + " A_" + std::to_string((i + 1) % 5) + ">",
              "-[-1+3cos(pi/5)]sec^2(pi/10)/2", corr, c, 1e-9);
  }
  rows.near("sum of correlators", "5 - 4 sqrt5", 5.0 - 4.0 * std::sqrt(5.0), sum, 1e-9);
}

void chsh(Rows& rows, const AcceptanceOptions& o) {
  const auto f = chsh_functional();
  const auto& s = f.scenario;
  const Graph g = exclusivity_graph(s);
  const auto pairs = oracle::bell_exclusive_pairs(s);
  rows.exact("vertices", "", 16, g.num_vertices());
  rows.exact("edges", "", 56, g.num_edges(), "oracle: " + std::to_string(pairs.size()));
  rows.truth("edge set equals brute-force enumeration", true, g == Graph(16, pairs));

  rows.exact("classical value", "", 3, classical_value(f));
  rows.exact("classical value vs 16 deterministic strategies", "",
             oracle::local_deterministic_value(f), classical_value(f));

  const double tsirelson = 2.0 + std::sqrt(2.0);
  auto full_opts = theta_options(o);
  full_opts.drop_zero_weights = false;
  const auto full = weighted_theta(g, f.weights(), full_opts);
  rows.near("weighted theta, 16 vertices", "2+sqrt2", tsirelson, full.value, 1e-5,
            full.certificate.status == SdpStatus::kOptimal, status_note(full.certificate.status));
  const auto winning = support_of(f.coefficients);
  const Graph induced = induced_subgraph(g, winning);
  const auto sub = lovasz_theta(induced, theta_options(o));
  rows.near("theta, 8 winning vertices", "2+sqrt2", tsirelson, sub.value, 1e-5,
            sub.certificate.status == SdpStatus::kOptimal, status_note(sub.certificate.status));

  const std::array<int, 2> offsets{1, 4};
  const Graph circ = circulant_graph(8, offsets);
  bool same = induced.num_edges() == circ.num_edges();
  for (int k = 0; k < 8 && same; ++k)
    for (int l = k + 1; l < 8 && same; ++l)
      same = circ.adjacent(k, l) ==
             induced.adjacent(oracle::kChshCirculantOrder[k], oracle::kChshCirculantOrder[l]);
  rows.truth("8-vertex subgraph == circulant(8,{1,4})", true, same, "order 0,5,6,2,1,4,7,3");

  const auto ns = nosignalling_value(f);
  rows.near("no-signalling value", "", 4.0, ns.value, 1e-8, ns.lp.status == LpStatus::kOptimal);
  const auto pr = pr_box(s);
  rows.near("lambda . PR box", "", 4.0, f.evaluate(pr.values()) - f.offset, 1e-12);
  rows.truth("PR box is a no-signalling box", true, nosignalling_membership(s, pr));
}

void i3322(Rows& rows, const AcceptanceOptions& o) {
  const auto f = i3322_functional();
  const Graph g = exclusivity_graph(f.scenario);
  rows.exact("classical value", "", 6, classical_value(f), "original form: 6 + offset(-6) = 0");
  rows.exact("classical value vs 64 deterministic strategies", "",
             oracle::local_deterministic_value(f), classical_value(f));

  const auto populated = support_of(f.coefficients);
  rows.exact("populated vertices", "", 20, static_cast<double>(populated.size()));
  const auto un = lovasz_theta(induced_subgraph(g, populated), theta_options(o));
  rows.near("unnormalized weighted theta", "6.4114", 6.4114, un.value, 2e-3,
            un.certificate.status == SdpStatus::kOptimal, status_note(un.certificate.status));

  PenaltyOptions po;
  if (o.sdp_tol) po.tol = *o.sdp_tol;
  const auto pen = quantum_value_penalty(f, po);
  rows.near("penalty bound at M = 1000", "6.25147", 6.25147, pen.value, 2e-3, pen.all_optimal,
            pen.all_optimal ? "all solves optimal" : "a penalty solve was not optimal");
  rows.truth("penalty sequence non-increasing", true, pen.monotone);
  const auto direct = quantum_value_direct(f, theta_options(o, 1e-10));
  rows.near("direct constrained SDP", "6.25147", 6.25147, direct.value, 2e-3,
            direct.status == SdpStatus::kOptimal, status_note(direct.status));
  rows.near("penalty vs direct", format_number(direct.value), direct.value, pen.value, 1e-4);
}

void membership(Rows& rows, const AcceptanceOptions&) {
  const Graph c5 = cycle_graph(5);
  const auto h5 = clique_hypergraph(c5);
  const ProbabilityAssignment half(std::vector<double>(5, 0.5));
  rows.truth("(1/2,...) in GPT", true, fuzzy_membership(h5, half));
  const auto q_half = theta_body_membership(c5, half);
  rows.truth("(1/2,...) in QM", false, q_half.member,
             "scale upper bound " + format_number(q_half.scale_upper));
  rows.truth("(1/2,...) in C", false, classical_membership(c5, half).member);
  const ProbabilityAssignment inv(std::vector<double>(5, 1.0 / std::sqrt(5.0)));
  const auto q_inv = theta_body_membership(c5, inv);
  rows.truth("(1/sqrt5,...) in QM", true, q_inv.member,
             "scale lower bound " + format_number(q_inv.scale_lower));

  const BellScenario s{2, 2, 2, 2};
  const auto pr = pr_box(s);
  rows.truth("PR box no-signalling", true, nosignalling_membership(s, pr));
  const auto q_pr = normalized_quantum_membership(s, pr);
  rows.truth("PR box in normalized QM", false, q_pr.member,
             "scale upper bound " + format_number(q_pr.body.scale_upper));

  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto dominated = [&](const std::vector<double>& p) {
    std::vector<double> q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[i] = unit(rng) * p[i];
    return ProbabilityAssignment(std::move(q));
  };
  const std::vector<double> classical_point{0.4, 0.4, 0.4, 0.4, 0.2};
  const std::vector<double> quantum_point(5, 1.0 / std::sqrt(5.0));
  const std::vector<double> gpt_point(5, 0.5);
  int c_ok = 0, q_ok = 0, g_ok = 0;
  for (int t = 0; t < 100; ++t) {
    c_ok += classical_membership(c5, dominated(classical_point)).member;
    q_ok += theta_body_membership(c5, dominated(quantum_point)).member;
    g_ok += fuzzy_membership(h5, dominated(gpt_point));
  }
  rows.exact("corner closure, C (accepted of 100)", "", 100, c_ok);
  rows.exact("corner closure, QM (accepted of 100)", "", 100, q_ok);
  rows.exact("corner closure, GPT (accepted of 100)", "", 100, g_ok);
}

void oracles(Rows& rows, const AcceptanceOptions&) {
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<int> size(1, 14);
  std::uniform_real_distribution<double> density(0.1, 0.9);
  std::uniform_int_distribution<int> weight(0, 9);
  int alpha_ok = 0, weighted_ok = 0;
  for (int t = 0; t < 50; ++t) {
    const Graph g = oracle::random_graph(size(rng), density(rng), rng);
    std::vector<double> w(g.num_vertices());
    for (auto& x : w) x = weight(rng);
    alpha_ok += independence_number(g) == oracle::brute_force_independence_number(g);
    weighted_ok += weighted_independence(g, WeightVector(w)) == oracle::brute_force_independence(g, w);
  }
  rows.exact("alpha vs exhaustive (random graphs)", "50", 50, alpha_ok);
  rows.exact("weighted alpha vs exhaustive (random graphs)", "50", 50, weighted_ok);

  std::uniform_int_distribution<int> hn(1, 6);
  std::uniform_int_distribution<int> hw(1, 5);
  int packing_ok = 0;
  double worst = 0.0;
  for (int t = 0; t < 30; ++t) {
    const int n = hn(rng);
    const auto h = oracle::random_hypergraph(n, 1 + t % 6, 3, rng);
    std::vector<std::int64_t> iw(n);
    std::vector<double> dw(n);
    for (int i = 0; i < n; ++i) dw[i] = static_cast<double>(iw[i] = hw(rng));
    const double lp = fractional_packing_number(h, WeightVector(dw)).value;
    const double exact = oracle::rational_packing_number(h, iw).to_double();
    worst = std::max(worst, std::abs(lp - exact));
    packing_ok += std::abs(lp - exact) <= 1e-9;
  }
  rows.exact("packing LP vs rational vertex search (30 hypergraphs, n <= 6)", "30", 30, packing_ok,
             "worst difference " + format_number(worst));

  const auto f = chsh_functional();
  rows.exact("CHSH: E_C optimum vs deterministic strategies", "",
             oracle::local_deterministic_value(f), classical_value(f));
  rows.near("CHSH: E_C optimum vs normalized E_C polytope", "",
            oracle::normalized_classical_polytope_value(f), classical_value(f), 1e-8);
  rows.near("CHSH: clique LP vs no-signalling polytope", "", oracle::nosignalling_polytope_value(f),
            nosignalling_value(f).value, 1e-8);
  const auto ns = nosignalling_value(f);
  rows.at_most("CHSH: signalling of the clique-LP optimum", signalling_violation(f.scenario, ns.box),
               1e-8);
}

void certificates(Rows& rows, const AcceptanceOptions& o) {
  auto theta_row = [&](const std::string& name, const Graph& g, const WeightVector& w,
                       const ThetaResult& r) {
    const auto v = check_theta_certificate(g, w, r.certificate);
    rows.at_most(name + ": feasibility", v.max_feasibility(), kCertificateTol,
                 status_note(r.certificate.status));
    rows.at_most(name + ": relative gap", std::max(r.certificate.relative_gap, v.gap), kCertificateTol);
    rows.truth(name + ": status optimal", true, r.certificate.status == SdpStatus::kOptimal);
  };
  for (int n : {5, 7, 9, 11}) {
    const Graph g = cycle_graph(n);
    theta_row("theta(C" + std::to_string(n) + ")", g, WeightVector::ones(n),
              lovasz_theta(g, theta_options(o)));
  }
  for (const auto& f : {chsh_functional(), i3322_functional()}) {
    const std::string name = f.scenario.num_x == 2 ? "CHSH" : "I3322";
    const Graph g = exclusivity_graph(f.scenario);
    const auto w = f.weights();
    theta_row(name + " weighted theta", g, w, weighted_theta(g, w, theta_options(o)));
    const double penalty = 1000.0;
    const auto shifted = w.shifted(penalty);
    auto popts = theta_options(o, PenaltyOptions{}.tol);
    popts.feasibility_tol = PenaltyOptions{}.feasibility_tol;
    theta_row(name + " penalised theta (M = 1000)", g, shifted, weighted_theta(g, shifted, popts));
    const auto eqs = normalization_constraints(f.scenario);
    const auto direct = quantum_value_direct(f, theta_options(o, 1e-10));
    const auto v = check_constrained_certificate(g, w, eqs, direct);
    rows.at_most(name + " normalized SDP: feasibility", v.max_feasibility(), kCertificateTol,
                 status_note(direct.status));
    rows.at_most(name + " normalized SDP: relative gap", std::max(direct.relative_gap, v.gap),
                 kCertificateTol);
    rows.truth(name + " normalized SDP: status optimal", true, direct.status == SdpStatus::kOptimal);
  }

  for (int n : {5, 7, 9, 11}) {
    const auto h = clique_hypergraph(cycle_graph(n));
    const auto pk = fractional_packing_number(h);
    rows.at_most("alpha*(C" + std::to_string(n) + "): relative gap", pk.lp.relative_gap(), kCertificateTol,
                 "status " + std::string(to_string(pk.lp.status)));
    rows.at_most("alpha*(C" + std::to_string(n) + "): dual infeasibility",
                 std::max(pk.lp.dual_infeasibility, pk.lp.primal_infeasibility), kCertificateTol);
  }
  for (const auto& f : {chsh_functional(), i3322_functional()}) {
    const std::string name = f.scenario.num_x == 2 ? "CHSH" : "I3322";
    const auto ns = nosignalling_value(f);
    rows.at_most(name + " no-signalling LP: relative gap", ns.lp.relative_gap(), kCertificateTol,
                 "status " + std::string(to_string(ns.lp.status)));
    rows.at_most(name + " no-signalling LP: dual infeasibility",
                 std::max(ns.lp.dual_infeasibility, ns.lp.primal_infeasibility), kCertificateTol);
  }
}

struct Entry {
  const char* title;
  std::vector<std::string> keywords;
  void (*run)(Rows&, const AcceptanceOptions&);
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries{
      {"pentagon hierarchy 2 <= sqrt5 <= 5/2", {"pentagon", "kcbs", "c5"}, pentagon},
      {"odd cycles n = 5, 7, 9, 11", {"cycles", "ncycle", "theta"}, odd_cycles},
      {"KCBS vectors and correlators", {"kcbs", "pentagon", "vectors"}, kcbs},
      {"CHSH graph, classical, quantum and no-signalling values", {"chsh", "bell"}, chsh},
      {"I3322 classical and quantum bounds", {"i3322", "bell"}, i3322},
      {"membership and corner closure", {"membership", "corner"}, membership},
      {"oracle equivalences", {"oracle", "random", "chsh"}, oracles},
      {"solver certificates", {"certificates", "sdp", "lp"}, certificates},
  };
  return entries;
}

}  // namespace

bool CriterionResult::pass() const {
  return error.empty() && !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string format_number(double value) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

int acceptance_count() { return static_cast<int>(registry().size()); }

CriterionResult acceptance_header(int id) {
  if (id < 1 || id > acceptance_count()) throw std::out_of_range("acceptance criterion id");
  const auto& e = registry()[id - 1];
  CriterionResult r;
  r.id = id;
  r.title = e.title;
  r.keywords = e.keywords;
  return r;
}

bool acceptance_selected(const CriterionResult& header, const std::string& only) {
  if (only.empty()) return true;
  if (only == std::to_string(header.id)) return true;
  auto lower = [](std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
  };
  const std::string needle = lower(only);
  if (lower(header.title).find(needle) != std::string::npos) return true;
  return std::any_of(header.keywords.begin(), header.keywords.end(),
                     [&](const std::string& k) { return k == needle; });
}

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
  CriterionResult r = acceptance_header(id);
  const auto start = std::chrono::steady_clock::now();
  Rows rows(r);
  try {
    registry()[id - 1].run(rows, options);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= acceptance_count(); ++id)
    if (acceptance_selected(acceptance_header(id), options.only)) out.push_back(run_criterion(id, options));
  return out;
}

}  // namespace ctxbounds::reproduce
