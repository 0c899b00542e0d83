#include "cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "ctxbounds/bell.hpp"
#include "ctxbounds/errors.hpp"
#include "ctxbounds/graph.hpp"
#include "ctxbounds/independence.hpp"
#include "ctxbounds/json_io.hpp"
#include "ctxbounds/packing.hpp"
#include "ctxbounds/reproduce/acceptance.hpp"
#include "ctxbounds/theta.hpp"

namespace ctxbounds::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr double kHierarchySlack = 1e-6;

std::string fmt(double v) { return reproduce::format_number(v); }

std::string join(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + "}";
}

json rounded(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(round9(x));
  return out;
}

struct InputFlags {
  std::string builtin;
  std::string graph;
  std::string hypergraph;
  std::string scenario;
};

struct Input {
  std::string kind;
  std::string label;
  Graph graph;
  WeightVector weights;
  std::optional<ContextHypergraph> hypergraph;  // set for hypergraph files
  std::optional<BellFunctional> functional;     // normalized
  std::string digest;

  ContextHypergraph contexts() const { return hypergraph ? *hypergraph : clique_hypergraph(graph); }
  bool unit_weights() const {
    return std::all_of(weights.values().begin(), weights.values().end(), [](double w) { return w == 1.0; });
  }
};

Input load_input(const InputFlags& f) {
  const int given = !f.builtin.empty() + !f.graph.empty() + !f.hypergraph.empty() + !f.scenario.empty();
  if (given != 1)
    throw InputError("exactly one of --builtin, --graph, --hypergraph, --scenario is required");
  Input in;
  if (!f.builtin.empty()) {
    auto b = builtin_scenario(f.builtin);
    in.kind = "builtin";
    in.label = b.name;
    in.graph = std::move(b.graph);
    in.weights = std::move(b.weights);
    in.functional = std::move(b.functional);
    in.digest = sha256_hex("builtin:" + b.name);
  } else if (!f.graph.empty()) {
    in.kind = "graph";
    in.label = f.graph;
    in.graph = parse_graph_json(read_file(f.graph));
    in.weights = WeightVector::ones(in.graph.num_vertices());
    in.digest = sha256_hex(graph_to_json(in.graph));
  } else if (!f.hypergraph.empty()) {
    in.kind = "hypergraph";
    in.label = f.hypergraph;
    in.hypergraph = parse_hypergraph_json(read_file(f.hypergraph));
    in.graph = adjacency_graph(*in.hypergraph);
    in.weights = WeightVector::ones(in.graph.num_vertices());
    in.digest = sha256_hex(hypergraph_to_json(*in.hypergraph));
  } else {
    in.kind = "scenario";
    in.label = f.scenario;
    const auto raw = parse_scenario_json(read_file(f.scenario));
    in.digest = sha256_hex(scenario_to_json(raw));
    in.functional = normalize_functional(raw);
    in.graph = exclusivity_graph(raw.scenario);
    in.weights = in.functional->weights();
  }
  return in;
}

void add_input_flags(CLI::App* cmd, InputFlags& f) {
  cmd->add_option("--builtin", f.builtin, "chsh, i3322, kcbs5 or ncycle:<n>");
  cmd->add_option("--graph", f.graph, "graph JSON file {\"n\", \"edges\"}");
  cmd->add_option("--hypergraph", f.hypergraph, "hypergraph JSON file {\"n\", \"contexts\"}");
  cmd->add_option("--scenario", f.scenario, "Bell scenario JSON file");
}

json input_json(const Input& in) {
  json j;
  j["kind"] = in.kind;
  j["name"] = in.label;
  j["vertices"] = in.graph.num_vertices();
  j["digest"] = in.digest;
  if (in.functional) j["offset"] = round9(in.functional->offset);
  return j;
}

template <class F>
BoundReport timed(const Input& in, F&& compute) {
  const auto start = std::chrono::steady_clock::now();
  BoundReport r = compute();
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.input_digest = in.digest;
  return r;
}

// --- bounds ---------------------------------------------------------------

BoundReport bound_alpha(const Input& in, const char* name = "alpha") {
  BoundReport r;
  r.quantity = name;
  const auto set = in.unit_weights() ? maximum_independent_set(in.graph)
                                     : maximum_weight_independent_set(in.graph, in.weights);
  r.value = set.weight;
  r.status = "exact";
  r.certificate["independent_set"] = set.vertices;
  r.tolerances["method"] = "branch and bound";
  r.summary = "independent set " + join(set.vertices);
  return r;
}

BoundReport bound_theta(const Input& in, std::optional<double> tol) {
  ThetaOptions opts;
  if (tol) opts.tol = *tol;
  const auto res = weighted_theta(in.graph, in.weights, opts);
  const auto& c = res.certificate;
  const auto v = check_theta_certificate(in.graph, in.weights, c);
  BoundReport r;
  r.quantity = "theta";
  r.value = res.value;
  r.status = std::string(to_string(c.status));
  r.certificate["primal_value"] = round9(c.primal_value);
  r.certificate["dual_value"] = round9(c.dual_value);
  r.certificate["relative_gap"] = round9(c.relative_gap);
  r.certificate["feasibility_violation"] = round9(v.max_feasibility());
  r.certificate["iterations"] = c.iterations;
  r.tolerances["sdp_gap"] = opts.tol;
  r.summary = "primal " + fmt(c.primal_value) + ", gap " + fmt(c.relative_gap);
  return r;
}

BoundReport bound_alphastar(const Input& in) {
  const auto h = in.contexts();
  const auto pk = fractional_packing_number(h, in.weights);
  BoundReport r;
  r.quantity = "alphastar";
  r.value = pk.value;
  r.status = pk.lp.status == LpStatus::kOptimal ? "optimal" : std::string(to_string(pk.lp.status));
  r.certificate["packing"] = rounded(pk.packing);
  r.certificate["dual_value"] = round9(pk.lp.dual_value);
  r.certificate["relative_gap"] = round9(pk.lp.relative_gap());
  r.certificate["contexts"] = static_cast<int>(h.contexts().size());
  r.tolerances["lp_feasibility"] = LpOptions{}.feasibility_tol;
  r.summary = "LP dual " + fmt(pk.lp.dual_value) + " over " + std::to_string(h.contexts().size()) + " contexts";
  return r;
}

const BellFunctional& need_functional(const Input& in, const std::string& which) {
  if (!in.functional)
    throw InputError("--which " + which + " needs a Bell input (--scenario or --builtin chsh|i3322)");
  return *in.functional;
}

BoundReport bound_classical(const Input& in) {
  const auto& f = need_functional(in, "classical");
  BoundReport r = bound_alpha(in, "classical");
  r.value = classical_value(f);
  return r;
}

BoundReport bound_ns(const Input& in) {
  const auto& f = need_functional(in, "ns");
  const auto ns = nosignalling_value(f);
  BoundReport r;
  r.quantity = "ns";
  r.value = ns.value;
  r.status = ns.lp.status == LpStatus::kOptimal ? "optimal" : std::string(to_string(ns.lp.status));
  r.certificate["box"] = rounded(ns.box);
  r.certificate["dual_value"] = round9(ns.lp.dual_value);
  r.certificate["relative_gap"] = round9(ns.lp.relative_gap());
  r.certificate["signalling_violation"] = round9(signalling_violation(f.scenario, ns.box));
  r.tolerances["lp_feasibility"] = LpOptions{}.feasibility_tol;
  r.summary = "LP dual " + fmt(ns.lp.dual_value) + ", optimal box attached";
  return r;
}

BoundReport bound_qm1(const Input& in, std::optional<double> tol) {
  const auto& f = need_functional(in, "qm1");
  ThetaOptions opts{.tol = 1e-10};
  if (tol) opts.tol = *tol;
  const auto direct = quantum_value_direct(f, opts);
  PenaltyOptions po;
  if (tol) po.tol = *tol;
  const auto pen = quantum_value_penalty(f, po);
  BoundReport r;
  r.quantity = "qm1";
  r.value = direct.value;
  r.status = std::string(to_string(direct.status));
  if (direct.status != SdpStatus::kInfeasible) {
    const auto v = check_constrained_certificate(in.graph, in.weights,
                                                 normalization_constraints(f.scenario), direct);
    r.certificate["primal_value"] = round9(direct.primal_value);
    r.certificate["relative_gap"] = round9(direct.relative_gap);
    r.certificate["feasibility_violation"] = round9(v.max_feasibility());
  }
  r.certificate["iterations"] = direct.iterations;
  r.certificate["penalty"] = {{"M", pen.penalties},
                              {"values", rounded(pen.values)},
                              {"monotone", pen.monotone},
                              {"all_optimal", pen.all_optimal}};
  r.certificate["penalty_minus_direct"] = round9(pen.value - direct.value);
  r.tolerances["sdp_gap"] = opts.tol;
  r.tolerances["penalty_sdp_gap"] = po.tol;
  r.summary = "direct SDP; penalty at M=" + fmt(pen.penalties.back()) + " gives " + fmt(pen.value);
  if (!pen.all_optimal && r.status == "optimal") r.status = "inaccurate";
  return r;
}

std::vector<std::string> parse_which(const std::string& text, bool bell) {
  static const std::vector<std::string> known{"alpha", "theta", "alphastar", "classical", "ns", "qm1", "all"};
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (std::find(known.begin(), known.end(), item) == known.end())
      throw InputError("--which: unknown quantity '" + item +
                       "' (expected alpha, theta, alphastar, classical, ns, qm1, all)");
    if (item == "all") {
      for (const char* q : {"alpha", "theta", "alphastar"}) out.push_back(q);
      if (bell)
        for (const char* q : {"classical", "qm1", "ns"}) out.push_back(q);
    } else {
      out.push_back(item);
    }
  }
  if (out.empty()) throw InputError("--which: empty list");
  std::vector<std::string> unique;
  for (auto& q : out)
    if (std::find(unique.begin(), unique.end(), q) == unique.end()) unique.push_back(q);
  return unique;
}

struct Table {
  std::vector<std::vector<std::string>> rows;
  void print(std::ostream& out) const {
    std::vector<std::size_t> width;
    for (const auto& r : rows)
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (width.size() <= i) width.push_back(0);
        width[i] = std::max(width[i], display_width(r[i]));
      }
    for (const auto& r : rows) {
      std::string line;
      for (std::size_t i = 0; i < r.size(); ++i) {
        line += r[i];
        if (i + 1 < r.size()) line += std::string(width[i] - display_width(r[i]) + 2, ' ');
      }
      out << line << '\n';
    }
  }
  static std::size_t display_width(const std::string& s) {
    std::size_t n = 0;
    for (unsigned char c : s) n += (c & 0xC0) != 0x80;
    return n;
  }
};

int cmd_bounds(const InputFlags& flags, const std::string& which_text, std::optional<double> tol,
               bool as_json, bool timing, std::ostream& out) {
  const Input in = load_input(flags);
  if (tol && !(*tol > 0.0)) throw InputError("--tol must be positive");
  const auto which = parse_which(which_text, in.functional.has_value());

  std::vector<BoundReport> reports;
  for (const auto& q : which) {
    reports.push_back(timed(in, [&] {
      if (q == "alpha") return bound_alpha(in);
      if (q == "theta") return bound_theta(in, tol);
      if (q == "alphastar") return bound_alphastar(in);
      if (q == "classical") return bound_classical(in);
      if (q == "ns") return bound_ns(in);
      return bound_qm1(in, tol);
    }));
  }

  auto find = [&](const char* q) -> const BoundReport* {
    for (const auto& r : reports)
      if (r.quantity == q) return &r;
    return nullptr;
  };
  struct Chain {
    std::string relation;
    bool holds;
  };
  std::vector<Chain> chains;
  auto chain = [&](const char* a, const char* b, const char* c) {
    const auto *x = find(a), *y = find(b), *z = find(c);
    if (!x || !y || !z) return;
    chains.push_back({std::string(a) + " <= " + b + " <= " + c,
                      x->value <= y->value + kHierarchySlack && y->value <= z->value + kHierarchySlack});
  };
  chain("alpha", "theta", "alphastar");
  chain("classical", "qm1", "ns");

  if (as_json) {
    json j;
    j["input"] = input_json(in);
    j["reports"] = json::array();
    for (const auto& r : reports) j["reports"].push_back(r.to_json(timing));
    j["hierarchy"] = json::array();
    for (const auto& c : chains) j["hierarchy"].push_back({{"relation", c.relation}, {"holds", c.holds}});
    out << j.dump(2) << '\n';
  } else {
    out << "input: " << in.kind << ' ' << in.label << "  sha256 " << in.digest.substr(0, 16) << '\n';
    if (in.functional && in.functional->offset != 0.0)
      out << "values exclude the offset " << fmt(in.functional->offset)
          << "; original form = value + offset\n";
    Table t;
    t.rows.push_back({"quantity", "value", "status", timing ? "seconds" : "", "certificate"});
    for (const auto& r : reports)
      t.rows.push_back({r.quantity, fmt(r.value), r.status, timing ? fmt(r.wall_time) : "", r.summary});
    if (!timing)
      for (auto& row : t.rows) row.erase(row.begin() + 3);
    t.print(out);
    for (const auto& c : chains) out << "hierarchy " << c.relation << ": " << (c.holds ? "holds" : "VIOLATED") << '\n';
  }
  const bool ok = std::all_of(reports.begin(), reports.end(), [](const BoundReport& r) { return r.solved(); });
  return ok ? kOk : kSolverFailure;
}

// --- membership -----------------------------------------------------------

int cmd_membership(const InputFlags& flags, const std::string& set, const std::string& point_file,
                   std::optional<double> tol, bool as_json, std::ostream& out) {
  const Input in = load_input(flags);
  if (tol && !(*tol >= 0.0)) throw InputError("--tol must be non-negative");
  const std::string text = read_file(point_file);
  const auto raw = parse_point_json(text);
  if (static_cast<int>(raw.size()) != in.graph.num_vertices())
    throw InputError("point: expected " + std::to_string(in.graph.num_vertices()) + " entries, got " +
                     std::to_string(raw.size()));
  const ProbabilityAssignment p(raw);

  json cert;
  bool member = false;
  double used_tol = 0.0;
  std::string summary;
  bool solved = true;
  if (set == "C") {
    ClassicalMembershipOptions o;
    if (tol) o.tol = *tol;
    used_tol = o.tol;
    const auto m = classical_membership(in.graph, p, o);
    member = m.member;
    cert["distance"] = round9(m.distance);
    if (m.member) {
      json terms = json::array();
      for (const auto& t : m.combination)
        terms.push_back({{"weight", round9(t.weight)}, {"independent_set", t.independent_set}});
      cert["combination"] = terms;
      summary = "convex combination of " + std::to_string(m.combination.size()) + " independent sets";
    } else {
      cert["separator"] = rounded(m.separator);
      cert["separator_bound"] = round9(m.separator_bound);
      summary = "separating inequality, violated by " + fmt(m.distance);
    }
  } else if (set == "QM") {
    ThetaBodyOptions o;
    if (tol) o.tol = *tol;
    used_tol = o.tol;
    const auto m = theta_body_membership(in.graph, p, o);
    member = m.member;
    solved = m.status != SdpStatus::kInfeasible;
    cert["scale_lower"] = round9(m.scale_lower);
    cert["scale_upper"] = round9(m.scale_upper);
    cert["certified"] = m.certified;
    cert["distance"] = round9(m.distance);
    cert["status"] = std::string(to_string(m.status));
    summary = "gauge in [" + fmt(m.scale_lower) + ", " + fmt(m.scale_upper) + "]" +
              (m.certified ? ", certified" : ", not certified");
  } else if (set == "GPT") {
    used_tol = tol.value_or(1e-9);
    const auto h = in.contexts();
    member = fuzzy_membership(h, p, used_tol);
    cert["max_context_excess"] = round9(packing_violation(h, p.values()));
    summary = "largest context excess " + fmt(packing_violation(h, p.values()));
  } else if (set == "NS") {
    if (!in.functional) throw InputError("--set NS needs a Bell input (--scenario or --builtin chsh|i3322)");
    used_tol = tol.value_or(1e-9);
    const auto& s = in.functional->scenario;
    member = nosignalling_membership(s, p, used_tol);
    cert["normalization_violation"] = round9(normalization_violation(s, p.values()));
    cert["signalling_violation"] = round9(signalling_violation(s, p.values()));
    cert["max_context_excess"] = round9(packing_violation(in.contexts(), p.values()));
    summary = "normalization " + fmt(normalization_violation(s, p.values())) + ", signalling " +
              fmt(signalling_violation(s, p.values()));
  } else {
    throw InputError("--set: unknown set '" + set + "' (expected C, QM, GPT, NS)");
  }

  if (as_json) {
    json j;
    j["input"] = input_json(in);
    j["point_digest"] = sha256_hex(text);
    j["set"] = set;
    j["member"] = member;
    j["tolerance"] = used_tol;
    j["certificate"] = cert;
    out << j.dump(2) << '\n';
  } else {
    out << "input: " << in.kind << ' ' << in.label << "  sha256 " << in.digest.substr(0, 16) << '\n';
    out << "set " << set << ": " << (member ? "member" : "not a member") << "  (tol " << fmt(used_tol) << ")\n";
    out << "certificate: " << summary << '\n';
  }
  return solved ? kOk : kSolverFailure;
}

// --- reproduce ------------------------------------------------------------

int cmd_reproduce(const std::string& only, std::optional<double> tol, bool as_json, bool timing,
                  std::ostream& out) {
  if (tol && !(*tol > 0.0)) throw InputError("--tol must be positive");
  reproduce::AcceptanceOptions opts;
  opts.only = only;
  opts.sdp_tol = tol;
  bool any = false;
  for (int id = 1; id <= reproduce::acceptance_count(); ++id)
    any = any || reproduce::acceptance_selected(reproduce::acceptance_header(id), only);
  if (!any) throw InputError("--only: '" + only + "' matches no criterion");
  const auto results = reproduce::run_acceptance(opts);
  const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass(); });

  if (as_json) {
    json j = json::array();
    for (const auto& r : results) {
      json c;
      c["id"] = r.id;
      c["title"] = r.title;
      c["pass"] = r.pass();
      if (!r.error.empty()) c["error"] = r.error;
      if (timing) c["seconds"] = round9(r.seconds);
      c["checks"] = json::array();
      for (const auto& k : r.checks)
        c["checks"].push_back({{"quantity", k.quantity},
                               {"reference", k.reference},
                               {"computed", k.computed},
                               {"tolerance", k.tolerance},
                               {"pass", k.pass},
                               {"note", k.note}});
      j.push_back(c);
    }
    out << j.dump(2) << '\n';
  } else {
    Table t;
    t.rows.push_back({"#", "quantity", "reference", "computed", "tolerance", "result", "note"});
    for (const auto& r : results) {
      for (const auto& k : r.checks)
        t.rows.push_back({std::to_string(r.id), k.quantity, k.reference, k.computed, k.tolerance,
                          k.pass ? "PASS" : "FAIL", k.note});
      if (!r.error.empty()) t.rows.push_back({std::to_string(r.id), "solver error", "", "", "", "FAIL", r.error});
    }
    t.print(out);
    out << '\n';
    for (const auto& r : results) {
      out << (r.pass() ? "PASS " : "FAIL ") << r.id << ' ' << r.title;
      if (timing) out << "  (" << fmt(r.seconds) << " s)";
      out << '\n';
    }
  }
  return ok ? kOk : kAcceptanceFailure;
}

}  // namespace

json BoundReport::to_json(bool with_timing) const {
  json j;
  j["quantity"] = quantity;
  j["value"] = round9(value);
  j["status"] = status;
  j["certificate"] = certificate;
  j["tolerances"] = tolerances;
  j["input_digest"] = input_digest;
  if (with_timing) j["wall_time"] = round9(wall_time);
  return j;
}

double round9(double value) {
  if (!std::isfinite(value)) return value;
  return std::stod(reproduce::format_number(value));
}

std::string sha256_hex(const std::string& text) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classical, quantum and general probabilistic bounds for contextuality inequalities",
               "ctxbounds"};
  app.require_subcommand(1);

  InputFlags bflags;
  std::string which = "all";
  std::optional<double> btol;
  bool bjson = false, btiming = false;
  auto* bounds = app.add_subcommand("bounds", "Compute alpha, theta, alpha*, and Bell values");
  add_input_flags(bounds, bflags);
  bounds->add_option("--which", which, "comma list of alpha,theta,alphastar,classical,ns,qm1,all");
  bounds->add_option("--tol", btol, "SDP relative gap");
  bounds->add_flag("--json", bjson, "JSON output");
  bounds->add_flag("--timing", btiming, "include wall time");

  InputFlags mflags;
  std::string set, point;
  std::optional<double> mtol;
  bool mjson = false;
  auto* membership = app.add_subcommand("membership", "Decide whether a point lies in C, QM, GPT or NS");
  add_input_flags(membership, mflags);
  membership->add_option("--set", set, "C, QM, GPT or NS")->required();
  membership->add_option("point", point, "point JSON file")->required();
  membership->add_option("--tol", mtol, "membership tolerance");
  membership->add_flag("--json", mjson, "JSON output");

  std::string only;
  std::optional<double> rtol;
  bool rjson = false, rtiming = false;
  auto* repro = app.add_subcommand("reproduce", "Run the acceptance suite");
  repro->add_option("--only", only, "criterion number or keyword");
  repro->add_option("--tol", rtol, "SDP relative gap for every bound");
  repro->add_flag("--json", rjson, "JSON output");
  repro->add_flag("--timing", rtiming, "include wall time");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (bounds->parsed()) return cmd_bounds(bflags, which, btol, bjson, btiming, out);
    if (membership->parsed()) return cmd_membership(mflags, set, point, mtol, mjson, out);
    return cmd_reproduce(only, rtol, rjson, rtiming, out);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const std::exception& e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  }
}

}  // namespace ctxbounds::cli
