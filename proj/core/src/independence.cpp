#include "ctxbounds/independence.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "ctxbounds/errors.hpp"
#include "ctxbounds/lp.hpp"

namespace ctxbounds {

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const Graph& g, std::vector<double> w) : g_(g), w_(std::move(w)) {
    const int n = g.num_vertices();
    by_weight_.resize(n);
    std::iota(by_weight_.begin(), by_weight_.end(), 0);
    std::stable_sort(by_weight_.begin(), by_weight_.end(), [&](int a, int b) {
      if (w_[a] != w_[b]) return w_[a] > w_[b];
      return g_.degree(a) > g_.degree(b);
    });
  }

  IndependentSet solve() {
    const int n = g_.num_vertices();
    greedy_start();
    std::vector<int> current;
    expand(VertexSet::full(n), 0.0, current);
    std::sort(best_set_.begin(), best_set_.end());
    return {best_set_, best_};
  }

 private:
  void greedy_start() {
    VertexSet p = VertexSet::full(g_.num_vertices());
    while (!p.empty()) {
      int pick = -1;
      double score = -1.0;
      for (int v = p.first(); v >= 0; v = p.next(v + 1)) {
        const double s = w_[v] / (1.0 + p.intersection_count(g_.neighborhood(v)));
        if (s > score) score = s, pick = v;
      }
      best_set_.push_back(pick);
      best_ += w_[pick];
      p -= g_.neighborhood(pick);
      p.erase(pick);
    }
  }

  // Partition P greedily into cliques; an independent set meets each clique
  // at most once, so the sum of per-clique maxima bounds its weight.
  double clique_cover_bound(const VertexSet& p) const {
    std::vector<VertexSet> common;
    double bound = 0.0;
    for (int v : by_weight_) {
      if (!p.contains(v)) continue;
      bool placed = false;
      for (auto& c : common) {
        if (c.contains(v)) {
          c &= g_.neighborhood(v);
          placed = true;
          break;
        }
      }
      if (!placed) {
        common.push_back(g_.neighborhood(v) & p);
        bound += w_[v];
      }
    }
    return bound;
  }

  void expand(VertexSet p, double weight, std::vector<int>& current) {
    if (p.empty()) {
      if (weight > best_) {
        best_ = weight;
        best_set_ = current;
      }
      return;
    }
    if (weight + clique_cover_bound(p) <= best_) return;

    int branch = -1, deg = -1;
    for (int v = p.first(); v >= 0; v = p.next(v + 1)) {
      const int d = p.intersection_count(g_.neighborhood(v));
      if (d > deg) deg = d, branch = v;
    }
    if (deg == 0) {
      // P is independent: take all of it.
      const std::size_t mark = current.size();
      for (int v = p.first(); v >= 0; v = p.next(v + 1)) {
        current.push_back(v);
        weight += w_[v];
      }
      if (weight > best_) {
        best_ = weight;
        best_set_ = current;
      }
      current.resize(mark);
      return;
    }

    current.push_back(branch);
    VertexSet with = p - g_.neighborhood(branch);
    with.erase(branch);
    expand(with, weight + w_[branch], current);
    current.pop_back();

    p.erase(branch);
    expand(p, weight, current);
  }

  const Graph& g_;
  std::vector<double> w_;
  std::vector<int> by_weight_;
  double best_ = 0.0;
  std::vector<int> best_set_;
};

void check_size(const Graph& g, int size, const char* what) {
  if (size != g.num_vertices())
    throw InputError(std::string(what) + ": vector has " + std::to_string(size) +
                     " entries but the graph has " + std::to_string(g.num_vertices()) +
                     " vertices");
}

}  // namespace

IndependentSet maximum_independent_set(const Graph& g) {
  return BranchAndBound(g, std::vector<double>(g.num_vertices(), 1.0)).solve();
}

int independence_number(const Graph& g) {
  return static_cast<int>(maximum_independent_set(g).vertices.size());
}

IndependentSet maximum_weight_independent_set(const Graph& g, const WeightVector& weights) {
  check_size(g, weights.size(), "weighted_independence");
  const auto support = weights.support();
  const Graph h = induced_subgraph(g, support);
  std::vector<double> w;
  for (int v : support) w.push_back(weights[v]);
  IndependentSet local = BranchAndBound(h, std::move(w)).solve();
  for (auto& v : local.vertices) v = support[v];
  return local;
}

double weighted_independence(const Graph& g, const WeightVector& weights) {
  return maximum_weight_independent_set(g, weights).weight;
}

std::vector<std::vector<int>> enumerate_independent_sets(const Graph& g, std::size_t limit) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  auto rec = [&](auto&& self, int from, const VertexSet& allowed) -> void {
    if (out.size() >= limit)
      throw InputError("instance too large: more than " + std::to_string(limit) +
                       " independent sets");
    out.push_back(current);
    for (int v = allowed.next(from); v >= 0; v = allowed.next(v + 1)) {
      current.push_back(v);
      self(self, v + 1, allowed - g.neighborhood(v));
      current.pop_back();
    }
  };
  rec(rec, 0, VertexSet::full(g.num_vertices()));
  return out;
}

ClassicalMembership classical_membership(const Graph& g, const ProbabilityAssignment& p,
                                         const ClassicalMembershipOptions& options) {
  check_size(g, p.size(), "classical_membership");
  const auto support = p.support();
  if (static_cast<int>(support.size()) > options.max_vertices)
    throw InputError("instance too large: " + std::to_string(support.size()) +
                     " vertices in the support exceed the enumeration limit of " +
                     std::to_string(options.max_vertices));
  const Graph h = induced_subgraph(g, support);
  const auto sets = enumerate_independent_sets(h, options.max_sets);
  const int s = static_cast<int>(support.size());
  const int k = static_cast<int>(sets.size());

  // min δ  s.t.  |Σ μ_k σ_k - p|_∞ <= δ,  Σ μ_k = 1,  μ >= 0.
  LpProblem dist(k + 1);
  dist.objective[k] = -1.0;
  for (int i = 0; i < s; ++i) {
    std::vector<double> up(k + 1, 0.0), down(k + 1, 0.0);
    for (int j = 0; j < k; ++j) {
      if (std::binary_search(sets[j].begin(), sets[j].end(), i)) {
        up[j] = 1.0;
        down[j] = -1.0;
      }
    }
    up[k] = -1.0;
    down[k] = -1.0;
    dist.add(std::move(up), Relation::kLessEqual, p[support[i]]);
    dist.add(std::move(down), Relation::kLessEqual, -p[support[i]]);
  }
  std::vector<double> simplex(k + 1, 1.0);
  simplex[k] = 0.0;
  dist.add(std::move(simplex), Relation::kEqual, 1.0);
  const LpSolution ds = lp_solve(dist);
  if (ds.status != LpStatus::kOptimal) throw SolverError("classical_membership: distance LP failed");

  ClassicalMembership out;
  out.distance = std::max(0.0, -ds.value);
  if (out.distance <= options.tol) {
    out.member = true;
    for (int j = 0; j < k; ++j) {
      if (ds.x[j] <= 1e-12) continue;
      ConvexTerm t{ds.x[j], {}};
      for (int v : sets[j]) t.independent_set.push_back(support[v]);
      out.combination.push_back(std::move(t));
    }
    return out;
  }

  // max c·p - t  s.t.  c·σ_k <= t,  ‖c‖₁ <= 1;  c = c⁺ - c⁻.
  LpProblem sep(2 * s + 1);
  for (int i = 0; i < s; ++i) {
    sep.objective[i] = p[support[i]];
    sep.objective[s + i] = -p[support[i]];
  }
  sep.objective[2 * s] = -1.0;
  sep.lower[2 * s] = -LpProblem::kInf;
  for (const auto& set : sets) {
    std::vector<double> row(2 * s + 1, 0.0);
    for (int v : set) {
      row[v] = 1.0;
      row[s + v] = -1.0;
    }
    row[2 * s] = -1.0;
    sep.add(std::move(row), Relation::kLessEqual, 0.0);
  }
  std::vector<double> norm(2 * s + 1, 1.0);
  norm[2 * s] = 0.0;
  sep.add(std::move(norm), Relation::kLessEqual, 1.0);
  const LpSolution ss = lp_solve(sep);
  if (ss.status != LpStatus::kOptimal)
    throw SolverError("classical_membership: separation LP failed");
  out.separator.assign(g.num_vertices(), 0.0);
  for (int i = 0; i < s; ++i) out.separator[support[i]] = ss.x[i] - ss.x[s + i];
  out.separator_bound = ss.x[2 * s];
  return out;
}

}  // namespace ctxbounds
