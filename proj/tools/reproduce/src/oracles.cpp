#include "ctxbounds/reproduce/oracles.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <stdexcept>

#include "ctxbounds/lp.hpp"

namespace ctxbounds::oracle {

namespace {

bool subset_independent(const Graph& g, std::uint32_t mask) {
  for (const auto& e : g.edges())
    if ((mask >> e.u & 1u) && (mask >> e.v & 1u)) return false;
  return true;
}

std::vector<std::uint32_t> independent_masks(const Graph& g) {
  const int n = g.num_vertices();
  if (n > 24) throw std::invalid_argument("oracle: brute force limited to 24 vertices");
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
    if (subset_independent(g, mask)) out.push_back(mask);
  return out;
}

__extension__ typedef __int128 Wide;

Wide wide_gcd(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

struct Frac {
  Wide num = 0;
  Wide den = 1;

  Frac() = default;
  Frac(Wide n, Wide d = 1) : num(n), den(d) { reduce(); }
  void reduce() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const Wide g = wide_gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  bool zero() const { return num == 0; }
  friend Frac operator+(const Frac& a, const Frac& b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
  friend Frac operator-(const Frac& a, const Frac& b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
  friend Frac operator*(const Frac& a, const Frac& b) { return {a.num * b.num, a.den * b.den}; }
  friend Frac operator/(const Frac& a, const Frac& b) { return {a.num * b.den, a.den * b.num}; }
  friend bool operator<(const Frac& a, const Frac& b) { return a.num * b.den < b.num * a.den; }
  friend bool operator<=(const Frac& a, const Frac& b) { return !(b < a); }
};

// Solves the square system rows·w = rhs exactly; false when singular.
bool solve_exact(std::vector<std::vector<Frac>> a, std::vector<Frac> b, std::vector<Frac>& w) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].zero()) ++piv;
    if (piv == n) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].zero()) continue;
      const Frac f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] = a[r][c] - f * a[col][c];
      b[r] = b[r] - f * b[col];
    }
  }
  w.resize(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = b[i] / a[i][i];
  return true;
}

}  // namespace

double brute_force_independence(const Graph& g, const std::vector<double>& weights) {
  double best = 0.0;
  for (std::uint32_t mask : independent_masks(g)) {
    double w = 0.0;
    for (int i = 0; i < g.num_vertices(); ++i)
      if (mask >> i & 1u) w += weights.at(i);
    best = std::max(best, w);
  }
  return best;
}

int brute_force_independence_number(const Graph& g) {
  int best = 0;
  for (std::uint32_t mask : independent_masks(g)) best = std::max(best, std::popcount(mask));
  return best;
}

std::vector<Edge> bell_exclusive_pairs(const BellScenario& s) {
  struct Event {
    int a, b, x, y;
  };
  std::vector<Event> events(s.num_events());
  for (int y = 0; y < s.num_y; ++y)
    for (int x = 0; x < s.num_x; ++x)
      for (int b = 0; b < s.num_b; ++b)
        for (int a = 0; a < s.num_a; ++a) events[s.index(a, b, x, y)] = {a, b, x, y};
  std::vector<Edge> out;
  for (int i = 0; i < s.num_events(); ++i)
    for (int j = i + 1; j < s.num_events(); ++j) {
      const Event& e = events[i];
      const Event& f = events[j];
      const bool alice_clash = e.x == f.x && e.a != f.a;
      const bool bob_clash = e.y == f.y && e.b != f.b;
      if (alice_clash || bob_clash) out.push_back({i, j});
    }
  return out;
}

double local_deterministic_value(const BellFunctional& f) {
  const auto& s = f.scenario;
  std::int64_t alice_count = 1, bob_count = 1;
  for (int x = 0; x < s.num_x; ++x) alice_count *= s.num_a;
  for (int y = 0; y < s.num_y; ++y) bob_count *= s.num_b;
  double best = -1e300;
  std::vector<int> a(s.num_x), b(s.num_y);
  for (std::int64_t ca = 0; ca < alice_count; ++ca) {
    std::int64_t r = ca;
    for (int x = 0; x < s.num_x; ++x, r /= s.num_a) a[x] = static_cast<int>(r % s.num_a);
    for (std::int64_t cb = 0; cb < bob_count; ++cb) {
      std::int64_t q = cb;
      for (int y = 0; y < s.num_y; ++y, q /= s.num_b) b[y] = static_cast<int>(q % s.num_b);
      double v = 0.0;
      for (int x = 0; x < s.num_x; ++x)
        for (int y = 0; y < s.num_y; ++y) v += f.coefficients[s.index(a[x], b[y], x, y)];
      best = std::max(best, v);
    }
  }
  return best;
}

double nosignalling_polytope_value(const BellFunctional& f, std::vector<double>* box) {
  const auto& s = f.scenario;
  const int n = s.num_events();
  LpProblem lp(n);
  lp.objective = f.coefficients;
  for (int x = 0; x < s.num_x; ++x)
    for (int y = 0; y < s.num_y; ++y) {
      std::vector<double> row(n, 0.0);
      for (int a = 0; a < s.num_a; ++a)
        for (int b = 0; b < s.num_b; ++b) row[s.index(a, b, x, y)] = 1.0;
      lp.add(std::move(row), Relation::kEqual, 1.0);
    }
  for (int x = 0; x < s.num_x; ++x)
    for (int a = 0; a < s.num_a; ++a)
      for (int y = 1; y < s.num_y; ++y) {
        std::vector<double> row(n, 0.0);
        for (int b = 0; b < s.num_b; ++b) {
          row[s.index(a, b, x, y)] += 1.0;
          row[s.index(a, b, x, 0)] -= 1.0;
        }
        lp.add(std::move(row), Relation::kEqual, 0.0);
      }
  for (int y = 0; y < s.num_y; ++y)
    for (int b = 0; b < s.num_b; ++b)
      for (int x = 1; x < s.num_x; ++x) {
        std::vector<double> row(n, 0.0);
        for (int a = 0; a < s.num_a; ++a) {
          row[s.index(a, b, x, y)] += 1.0;
          row[s.index(a, b, 0, y)] -= 1.0;
        }
        lp.add(std::move(row), Relation::kEqual, 0.0);
      }
  const auto sol = lp_solve(lp);
  if (sol.status != LpStatus::kOptimal) throw std::runtime_error("oracle: no-signalling LP failed");
  if (box) *box = sol.x;
  return sol.value;
}

double normalized_classical_polytope_value(const BellFunctional& f) {
  const auto& s = f.scenario;
  Graph g(s.num_events(), bell_exclusive_pairs(s));
  const auto masks = independent_masks(g);
  const int m = static_cast<int>(masks.size());
  LpProblem lp(m);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < s.num_events(); ++i)
      if (masks[k] >> i & 1u) lp.objective[k] += f.coefficients[i];
  lp.add(std::vector<double>(m, 1.0), Relation::kEqual, 1.0);
  for (int x = 0; x < s.num_x; ++x)
    for (int y = 0; y < s.num_y; ++y) {
      std::vector<double> row(m, 0.0);
      for (int k = 0; k < m; ++k)
        for (int v : s.block(x, y))
          if (masks[k] >> v & 1u) row[k] += 1.0;
      lp.add(std::move(row), Relation::kEqual, 1.0);
    }
  const auto sol = lp_solve(lp);
  if (sol.status != LpStatus::kOptimal) throw std::runtime_error("oracle: classical polytope LP failed");
  return sol.value;
}

Rational rational_packing_number(const ContextHypergraph& h, const std::vector<std::int64_t>& weights) {
  const int n = h.num_vertices();
  if (n > 6) throw std::invalid_argument("oracle: rational packing limited to 6 vertices");
  // Every constraint as (row, rhs, <=): -w_i <= 0, w_i <= 1, Σ_C w <= 1.
  std::vector<std::vector<Frac>> rows;
  std::vector<Frac> rhs;
  for (int i = 0; i < n; ++i) {
    std::vector<Frac> r(n);
    r[i] = Frac(-1);
    rows.push_back(r);
    rhs.push_back(Frac(0));
    r[i] = Frac(1);
    rows.push_back(r);
    rhs.push_back(Frac(1));
  }
  for (const auto& c : h.contexts()) {
    std::vector<Frac> r(n);
    for (int v : c) r[v] = Frac(1);
    rows.push_back(r);
    rhs.push_back(Frac(1));
  }
  const int m = static_cast<int>(rows.size());
  Frac best(0);
  std::vector<int> pick(n);
  std::iota(pick.begin(), pick.end(), 0);
  if (n == 0) return {0, 1};
  while (true) {
    std::vector<std::vector<Frac>> a;
    std::vector<Frac> b;
    for (int k : pick) {
      a.push_back(rows[k]);
      b.push_back(rhs[k]);
    }
    std::vector<Frac> w;
    if (solve_exact(a, b, w)) {
      bool feasible = true;
      for (int k = 0; k < m && feasible; ++k) {
        Frac lhs(0);
        for (int i = 0; i < n; ++i) lhs = lhs + rows[k][i] * w[i];
        feasible = lhs <= rhs[k];
      }
      if (feasible) {
        Frac value(0);
        for (int i = 0; i < n; ++i) value = value + Frac(weights.at(i)) * w[i];
        if (best < value) best = value;
      }
    }
    // Next n-combination of {0, ..., m-1}.
    int i = n - 1;
    while (i >= 0 && pick[i] == m - n + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  return {static_cast<std::int64_t>(best.num), static_cast<std::int64_t>(best.den)};
}

Graph random_graph(int n, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(density);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) edges.push_back({i, j});
  return Graph(n, edges);
}

ContextHypergraph random_hypergraph(int n, int contexts, int max_size, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size_dist(1, std::min(max_size, n));
  std::set<std::vector<int>> family;
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  for (int k = 0; k < contexts; ++k) {
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<int> c(all.begin(), all.begin() + size_dist(rng));
    std::sort(c.begin(), c.end());
    family.insert(c);
  }
  return ContextHypergraph(n, {family.begin(), family.end()});
}

}  // namespace ctxbounds::oracle
