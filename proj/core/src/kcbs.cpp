#include "ctxbounds/kcbs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ctxbounds/errors.hpp"

namespace ctxbounds {

OrthonormalRepresentation kcbs_vectors() {
  using std::numbers::pi;
  const double lift = std::sqrt(std::cos(pi / 5.0));
  // Vertex i of the pentagon sits at angle 4πi/5, so consecutive vectors are
  // 144° apart in the plane and orthogonal once lifted.
  OrthonormalRepresentation rep;
  for (int i = 0; i < 5; ++i) {
    const double angle = 4.0 * pi * i / 5.0;
    Eigen::Vector3d v(std::cos(angle), std::sin(angle), lift);
    rep.vectors.push_back(v.normalized());
  }
  rep.handle = Eigen::Vector3d(0.0, 0.0, 1.0);
  return rep;
}

OrVerification verify_or(const Graph& g, const OrthonormalRepresentation& rep, double tol) {
  const int n = g.num_vertices();
  if (static_cast<int>(rep.vectors.size()) != n)
    throw InputError("verify_or: " + std::to_string(rep.vectors.size()) + " vectors for " +
                     std::to_string(n) + " vertices");
  for (const auto& v : rep.vectors)
    if (v.size() != rep.handle.size()) throw InputError("verify_or: dimension mismatch");
  OrVerification out;
  for (int i = 0; i < n; ++i) {
    out.max_violation = std::max(out.max_violation, std::abs(rep.vectors[i].norm() - 1.0));
    for (int j = i + 1; j < n; ++j)
      if (g.adjacent(i, j))
        out.max_violation = std::max(out.max_violation, std::abs(rep.vectors[i].dot(rep.vectors[j])));
  }
  out.valid = out.max_violation <= tol;
  return out;
}

OrValue or_value(const OrthonormalRepresentation& rep) {
  const auto d = rep.handle.size();
  OrValue out;
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(d, d);
  for (const auto& v : rep.vectors) {
    if (v.size() != d) throw InputError("or_value: dimension mismatch");
    const double overlap = rep.handle.dot(v);
    out.handle_value += overlap * overlap;
    sum.noalias() += v * v.transpose();
  }
  if (d > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sum, Eigen::EigenvaluesOnly);
    out.optimized_value = es.eigenvalues()(d - 1);
  }
  return out;
}

OddCycleBound odd_cycle_quantum_bound(int n) {
  if (n < 5 || n % 2 == 0)
    throw InputError("odd_cycle_quantum_bound: n must be odd and >= 5, got " + std::to_string(n));
  using std::numbers::pi;
  const double c = std::cos(pi / n);
  const double sec_half = 1.0 / std::cos(pi / (2.0 * n));
  OddCycleBound b;
  b.beta = n * c / (1.0 + c);
  b.beta_prime = 0.5 * n * (1.0 - 3.0 * c) * sec_half * sec_half;
  return b;
}

double correlation_form(double beta, int n) {
  if (n < 3) throw InputError("correlation_form: n must be >= 3");
  // ⟨A_i A_{i+1}⟩ = 1 - 2p_i - 2p_{i+1} under exclusivity; every p_i
  // appears in two neighbouring terms.
  return n - 4.0 * beta;
}

}  // namespace ctxbounds
