#include "ctxbounds/theta.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ctxbounds/errors.hpp"
#include "ctxbounds/lp.hpp"

namespace ctxbounds {

namespace {

void check_size(const Graph& g, int size, const char* what) {
  if (size != g.num_vertices())
    throw InputError(std::string(what) + ": vector has " + std::to_string(size) +
                     " entries but the graph has " + std::to_string(g.num_vertices()) +
                     " vertices");
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()),
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_eigenvalue(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()),
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

Eigen::MatrixXd weight_matrix(const WeightVector& w, const std::vector<int>& vertices) {
  Eigen::VectorXd r(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) r(i) = std::sqrt(w[vertices[i]]);
  return r * r.transpose();
}

SdpOptions solver_options(double tol, double feasibility_tol, int max_iterations) {
  SdpOptions o;
  o.gap_tol = tol;
  o.feasibility_tol = feasibility_tol;
  o.max_iterations = max_iterations;
  return o;
}

// Facial reduction. Every p in the theta body also lies in the clique
// polytope {p >= 0, Σ_C p <= 1 for cliques C}, so an LP over that polytope
// (plus the equalities) finds directions that are forced for the SDP too:
// a clique K with Σ_K p = 1 puts e_0 - Σ_K e_i into the kernel of every
// feasible moment matrix, and a vertex with p_i = 0 puts e_i there.
// Returns false when the LP relaxation is already infeasible.
bool forced_kernel(const Graph& g, const std::vector<LinearEquality>& equalities,
                   std::vector<Eigen::VectorXd>& kernel) {
  const int n = g.num_vertices();
  if (equalities.empty() || n == 0) return true;
  auto cliques = maximal_cliques(g);
  for (const auto& eq : equalities) {
    auto vs = eq.vertices;
    std::sort(vs.begin(), vs.end());
    if (!vs.empty() && g.is_clique(vs)) cliques.push_back(vs);
  }
  std::sort(cliques.begin(), cliques.end());
  cliques.erase(std::unique(cliques.begin(), cliques.end()), cliques.end());

  LpProblem base(n);
  for (int i = 0; i < n; ++i) base.upper[i] = 1.0;
  for (const auto& c : cliques) {
    if (c.size() < 2) continue;
    std::vector<double> row(n, 0.0);
    for (int v : c) row[v] = 1.0;
    base.add(std::move(row), Relation::kLessEqual, 1.0);
  }
  for (const auto& eq : equalities) {
    std::vector<double> row(n, 0.0);
    for (int v : eq.vertices) row[v] = 1.0;
    base.add(std::move(row), Relation::kEqual, eq.target);
  }

  const int dim = n + 1;
  for (int i = 0; i < n; ++i) {
    LpProblem lp = base;
    lp.objective[i] = 1.0;
    const auto sol = lp_solve(lp);
    if (sol.status == LpStatus::kInfeasible) return false;
    if (sol.value <= 1e-9) kernel.push_back(Eigen::VectorXd::Unit(dim, i + 1));
  }
  for (const auto& c : cliques) {
    LpProblem lp = base;
    for (int v : c) lp.objective[v] = -1.0;
    const auto sol = lp_solve(lp);
    if (sol.status != LpStatus::kOptimal) return false;
    if (-sol.value >= 1.0 - 1e-9) {
      Eigen::VectorXd u = Eigen::VectorXd::Unit(dim, 0);
      for (int v : c) u(v + 1) = -1.0;
      kernel.push_back(std::move(u));
    }
  }
  return true;
}

}  // namespace

ThetaResult lovasz_theta(const Graph& g, const ThetaOptions& options) {
  return weighted_theta(g, WeightVector::ones(g.num_vertices()), options);
}

ThetaResult weighted_theta(const Graph& g, const WeightVector& weights,
                           const ThetaOptions& options) {
  check_size(g, weights.size(), "weighted_theta");
  ThetaResult out;
  auto& cert = out.certificate;
  if (options.drop_zero_weights) {
    cert.vertices = weights.support();
  } else {
    for (int v = 0; v < g.num_vertices(); ++v) cert.vertices.push_back(v);
  }
  const int k = static_cast<int>(cert.vertices.size());
  if (k == 0) {
    cert.status = SdpStatus::kOptimal;
    return out;
  }

  double scale = 0.0;
  for (int v : cert.vertices) scale = std::max(scale, weights[v]);
  if (scale == 0.0) scale = 1.0;
  const Eigen::MatrixXd lambda = weight_matrix(weights.scaled(1.0 / scale), cert.vertices);
  const Graph h = induced_subgraph(g, cert.vertices);
  const auto edges = h.edges();

  SdpProblem sdp({k});
  sdp.set_objective(0, lambda);
  SymMatrixEntries trace;
  for (int i = 0; i < k; ++i) trace.push_back({0, i, i, 1.0});
  sdp.add_constraint(std::move(trace), 1.0);
  for (const auto& e : edges) sdp.add_constraint({{0, e.u, e.v, 1.0}}, 0.0);

  const SdpSolution sol = sdp_solve(sdp, solver_options(options.tol, options.feasibility_tol, options.max_iterations));
  cert.status = sol.status;
  cert.iterations = sol.iterations;
  if (sol.status == SdpStatus::kInfeasible) throw SolverError("weighted_theta: presolve failed");

  Eigen::MatrixXd t = 0.5 * (sol.x[0] + sol.x[0].transpose());
  for (const auto& e : edges) t(e.u, e.v) = t(e.v, e.u) = 0.0;
  t /= t.trace();

  Eigen::MatrixXd s = lambda;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const double ye = sol.y(static_cast<Eigen::Index>(e) + 1);
    s(edges[e].u, edges[e].v) -= ye;
    s(edges[e].v, edges[e].u) -= ye;
  }

  cert.primal = t;
  cert.dual = scale * s;
  cert.dual_bound = scale * max_eigenvalue(s);
  cert.dual_value = cert.dual_bound;
  cert.primal_value = scale * lambda.cwiseProduct(t).sum();
  cert.relative_gap =
      (cert.dual_value - cert.primal_value) / std::max(1.0, std::abs(cert.dual_value));
  out.value = cert.dual_value;
  return out;
}

double CertificateViolations::max_feasibility() const {
  return std::max({primal_psd, primal_trace, primal_edges, dual_psd, dual_pattern});
}

CertificateViolations check_theta_certificate(const Graph& g, const WeightVector& weights,
                                              const ThetaCertificate& c) {
  check_size(g, weights.size(), "check_theta_certificate");
  CertificateViolations v;
  const int k = static_cast<int>(c.vertices.size());
  if (k == 0) return v;
  const Eigen::MatrixXd lambda = weight_matrix(weights, c.vertices);
  v.primal_psd = std::max(0.0, -min_eigenvalue(c.primal));
  v.primal_trace = std::abs(c.primal.trace() - 1.0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i != j && g.adjacent(c.vertices[i], c.vertices[j]))
        v.primal_edges = std::max(v.primal_edges, std::abs(c.primal(i, j)));
      else
        v.dual_pattern = std::max(v.dual_pattern, std::abs(c.dual(i, j) - lambda(i, j)));
    }
  }
  const Eigen::MatrixXd slack =
      c.dual_bound * Eigen::MatrixXd::Identity(k, k) - c.dual;
  v.dual_psd = std::max(0.0, -min_eigenvalue(slack));
  const double primal = lambda.cwiseProduct(c.primal).sum();
  v.gap = (c.dual_bound - primal) / std::max(1.0, std::abs(c.dual_bound));
  return v;
}

ThetaBodyMembership theta_body_membership(const Graph& g, const ProbabilityAssignment& p,
                                          const ThetaBodyOptions& options) {
  check_size(g, p.size(), "theta_body_membership");
  const int n = g.num_vertices();
  ThetaBodyMembership out;
  out.moment_matrix = Eigen::MatrixXd::Zero(n + 1, n + 1);
  out.moment_matrix(0, 0) = 1.0;

  const auto support = p.support();
  const int s = static_cast<int>(support.size());
  if (s == 0) {
    out.member = out.certified = true;
    out.scale_lower = out.scale_upper = 1.0;
    out.status = SdpStatus::kOptimal;
    return out;
  }
  int k = 0;
  for (int i = 1; i < s; ++i)
    if (p[support[i]] > p[support[k]]) k = i;
  const double pk = p[support[k]];
  const Graph h = induced_subgraph(g, support);

  // Index 0 is the constant; vertex i of h sits at i + 1.
  SdpProblem sdp({s + 1});
  sdp.add_constraint({{0, 0, 0, 1.0}}, 1.0);
  for (int i = 0; i < s; ++i) sdp.add_constraint({{0, i + 1, i + 1, 1.0}, {0, 0, i + 1, -0.5}}, 0.0);
  for (const auto& e : h.edges()) sdp.add_constraint({{0, e.u + 1, e.v + 1, 1.0}}, 0.0);
  for (int i = 0; i < s; ++i) {
    if (i == k) continue;
    sdp.add_constraint({{0, i + 1, i + 1, pk}, {0, k + 1, k + 1, -p[support[i]]}}, 0.0);
  }
  sdp.add_objective({{0, k + 1, k + 1, 1.0 / pk}});

  const SdpSolution sol =
      sdp_solve(sdp, solver_options(std::min(1e-10, options.tol), 1e-9, options.max_iterations));
  out.status = sol.status;
  if (sol.status == SdpStatus::kInfeasible) throw SolverError("theta_body_membership: presolve failed");

  out.scale_lower = sol.primal_value;
  out.scale_upper = sol.dual_value;
  const double threshold = 1.0 - options.tol / pk;
  if (out.scale_lower >= threshold) {
    out.member = out.certified = true;
  } else if (out.scale_upper < threshold) {
    out.member = false;
    out.certified = true;
  } else {
    out.member = 0.5 * (out.scale_lower + out.scale_upper) >= threshold;
    out.certified = false;
  }
  out.distance = std::max(0.0, 1.0 - out.scale_lower) * pk;

  Eigen::MatrixXd m = 0.5 * (sol.x[0] + sol.x[0].transpose());
  m /= m(0, 0);
  for (const auto& e : h.edges()) m(e.u + 1, e.v + 1) = m(e.v + 1, e.u + 1) = 0.0;
  if (out.scale_lower > 1.0) {
    // Shrink onto p itself: M' = M/t + (1 - 1/t) e0 e0ᵀ stays PSD.
    const double inv = 1.0 / out.scale_lower;
    m *= inv;
    m(0, 0) += 1.0 - inv;
  }
  for (int a = 0; a <= s; ++a) {
    const int ia = a == 0 ? 0 : support[a - 1] + 1;
    for (int b = 0; b <= s; ++b) {
      const int ib = b == 0 ? 0 : support[b - 1] + 1;
      out.moment_matrix(ia, ib) = m(a, b);
    }
  }
  return out;
}

ConstrainedThetaResult constrained_theta_max(const Graph& g, const WeightVector& weights,
                                             const std::vector<LinearEquality>& equalities,
                                             const ThetaOptions& options) {
  check_size(g, weights.size(), "constrained_theta_max");
  const int n = g.num_vertices();
  const int dim = n + 1;
  ConstrainedThetaResult out;

  for (const auto& eq : equalities) {
    auto vs = eq.vertices;
    std::sort(vs.begin(), vs.end());
    if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
      throw InputError("constrained_theta_max: repeated vertex in an equality");
    for (int v : vs)
      if (v < 0 || v >= n) throw InputError("constrained_theta_max: vertex out of range");
    if (!std::isfinite(eq.target)) throw InputError("constrained_theta_max: non-finite target");
  }
  std::vector<Eigen::VectorXd> kernel;
  if (!forced_kernel(g, equalities, kernel)) {
    out.status = SdpStatus::kInfeasible;
    return out;
  }

  double scale = 0.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, weights[i]);
  if (scale == 0.0) scale = 1.0;

  std::vector<SymMatrixEntries> rows;
  std::vector<double> rhs;
  rows.push_back({{0, 0, 0, 1.0}});
  rhs.push_back(1.0);
  for (int i = 0; i < n; ++i) {
    rows.push_back({{0, i + 1, i + 1, 1.0}, {0, 0, i + 1, -0.5}});
    rhs.push_back(0.0);
  }
  for (const auto& e : g.edges()) {
    rows.push_back({{0, e.u + 1, e.v + 1, 1.0}});
    rhs.push_back(0.0);
  }
  for (const auto& eq : equalities) {
    SymMatrixEntries r;
    for (int v : eq.vertices) r.push_back({0, v + 1, v + 1, 1.0});
    rows.push_back(std::move(r));
    rhs.push_back(eq.target);
  }
  SymMatrixEntries objective;
  for (int i = 0; i < n; ++i)
    if (weights[i] != 0.0) objective.push_back({0, i + 1, i + 1, weights[i] / scale});

  // Basis V of the orthogonal complement of the kernel; M = V W Vᵀ.
  Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(dim, dim);
  if (!kernel.empty()) {
    Eigen::MatrixXd kmat(dim, static_cast<Eigen::Index>(kernel.size()));
    for (std::size_t j = 0; j < kernel.size(); ++j) kmat.col(j) = kernel[j];
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(kmat);
    const auto rank = qr.rank();
    const Eigen::MatrixXd q = qr.householderQ();
    basis = q.rightCols(dim - rank);
  }
  const int reduced = static_cast<int>(basis.cols());
  if (reduced == 0) {
    out.status = SdpStatus::kInfeasible;
    return out;
  }
  auto to_dense = [&](const SymMatrixEntries& entries) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
    for (const auto& e : entries) {
      a(e.row, e.col) += e.value;
      if (e.row != e.col) a(e.col, e.row) += e.value;
    }
    return a;
  };
  auto project = [&](const SymMatrixEntries& entries) {
    if (kernel.empty()) return entries;
    const Eigen::MatrixXd r = basis.transpose() * to_dense(entries) * basis;
    SymMatrixEntries out_entries;
    for (int i = 0; i < reduced; ++i)
      for (int j = i; j < reduced; ++j)
        if (std::abs(r(i, j)) > 1e-14) out_entries.push_back({0, i, j, r(i, j)});
    return out_entries;
  };

  SdpProblem sdp({reduced});
  for (std::size_t k = 0; k < rows.size(); ++k) sdp.add_constraint(project(rows[k]), rhs[k]);
  sdp.add_objective(project(objective));

  const SdpSolution sol = sdp_solve(sdp, solver_options(options.tol, options.feasibility_tol, options.max_iterations));
  out.status = sol.status;
  out.iterations = sol.iterations;
  if (sol.status == SdpStatus::kInfeasible) return out;

  const Eigen::MatrixXd w = 0.5 * (sol.x[0] + sol.x[0].transpose());
  out.moment_matrix = basis * w * basis.transpose();
  out.point.resize(n);
  double value = 0.0;
  for (int i = 0; i < n; ++i) {
    out.point[i] = std::clamp(out.moment_matrix(i + 1, i + 1), 0.0, 1.0);
    value += weights[i] * out.point[i];
  }
  out.primal_value = value;
  out.face_basis = basis;
  out.multipliers = scale * sol.y;
  out.value = scale * sol.dual_value;
  out.relative_gap = std::abs(out.value - scale * sol.primal_value) / std::max(1.0, std::abs(out.value));
  return out;
}

double ConstrainedCertificateViolations::max_feasibility() const {
  return std::max({primal_psd, primal_constraints, dual_psd});
}

ConstrainedCertificateViolations check_constrained_certificate(
    const Graph& g, const WeightVector& weights, const std::vector<LinearEquality>& equalities,
    const ConstrainedThetaResult& result) {
  check_size(g, weights.size(), "check_constrained_certificate");
  const int n = g.num_vertices();
  const int dim = n + 1;
  const auto& m = result.moment_matrix;
  const auto& y = result.multipliers;
  const auto& v = result.face_basis;
  const auto edges = g.edges();
  const auto rows = static_cast<Eigen::Index>(1 + n + edges.size() + equalities.size());
  if (m.rows() != dim || m.cols() != dim || y.size() != rows || v.rows() != dim)
    throw InputError("check_constrained_certificate: certificate has the wrong shape");

  ConstrainedCertificateViolations out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  out.primal_psd = std::max(0.0, -eig.eigenvalues()(0));

  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(dim, dim);
  double by = 0.0;
  double worst = std::abs(m(0, 0) - 1.0);
  Eigen::Index k = 0;
  z(0, 0) += y(k);
  by += y(k++);
  for (int i = 0; i < n; ++i, ++k) {
    worst = std::max(worst, std::abs(m(i + 1, i + 1) - m(0, i + 1)));
    z(i + 1, i + 1) += y(k);
    z(0, i + 1) -= 0.5 * y(k);
    z(i + 1, 0) -= 0.5 * y(k);
  }
  for (const auto& e : edges) {
    worst = std::max(worst, std::abs(m(e.u + 1, e.v + 1)));
    z(e.u + 1, e.v + 1) += y(k);
    z(e.v + 1, e.u + 1) += y(k);
    ++k;
  }
  for (const auto& eq : equalities) {
    double sum = 0.0;
    for (int i : eq.vertices) {
      sum += m(i + 1, i + 1);
      z(i + 1, i + 1) += y(k);
    }
    worst = std::max(worst, std::abs(sum - eq.target));
    by += y(k++) * eq.target;
  }
  out.primal_constraints = worst;

  double primal = 0.0;
  for (int i = 0; i < n; ++i) {
    z(i + 1, i + 1) -= weights[i];
    primal += weights[i] * m(i + 1, i + 1);
  }
  const Eigen::MatrixXd reduced = v.transpose() * z * v;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> zeig(0.5 * (reduced + reduced.transpose()),
                                                      Eigen::EigenvaluesOnly);
  const double zscale = std::max(1.0, z.cwiseAbs().maxCoeff());
  out.dual_psd = zeig.eigenvalues().size() == 0 ? 0.0
                                                : std::max(0.0, -zeig.eigenvalues()(0)) / zscale;
  out.dual_value_mismatch = std::abs(by - result.value);
  out.gap = (by - primal) / std::max(1.0, std::abs(by));
  return out;
}

}  // namespace ctxbounds
