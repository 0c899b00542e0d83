#include "ctxbounds/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ctxbounds/errors.hpp"

namespace ctxbounds {

std::string_view to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::kOptimal: return "optimal";
    case SdpStatus::kInaccurate: return "inaccurate";
    case SdpStatus::kInfeasible: return "infeasible";
  }
  return "unknown";
}

SdpProblem::SdpProblem(std::vector<int> block_sizes) : block_sizes_(std::move(block_sizes)) {
  for (int n : block_sizes_) {
    if (n < 1) throw InputError("sdp: block sizes must be positive");
    objective_.push_back(Eigen::MatrixXd::Zero(n, n));
  }
}

void SdpProblem::check_entry(const SymEntry& e) const {
  if (e.block < 0 || e.block >= num_blocks()) throw InputError("sdp: entry block out of range");
  const int n = block_sizes_[e.block];
  if (e.row < 0 || e.row >= n || e.col < 0 || e.col >= n)
    throw InputError("sdp: entry index out of range");
  if (!std::isfinite(e.value)) throw InputError("sdp: non-finite coefficient");
}

void SdpProblem::set_objective(int block, Eigen::MatrixXd c) {
  if (block < 0 || block >= num_blocks()) throw InputError("sdp: objective block out of range");
  const int n = block_sizes_[block];
  if (c.rows() != n || c.cols() != n) throw InputError("sdp: objective block has wrong size");
  if (!c.allFinite()) throw InputError("sdp: non-finite objective");
  if ((c - c.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + c.cwiseAbs().maxCoeff()))
    throw InputError("sdp: objective block is not symmetric");
  objective_[block] = 0.5 * (c + c.transpose());
}

void SdpProblem::add_objective(const SymMatrixEntries& entries) {
  for (const auto& e : entries) {
    check_entry(e);
    objective_[e.block](e.row, e.col) += e.value;
    if (e.row != e.col) objective_[e.block](e.col, e.row) += e.value;
  }
}

void SdpProblem::add_constraint(SymMatrixEntries entries, double rhs) {
  for (const auto& e : entries) check_entry(e);
  if (!std::isfinite(rhs)) throw InputError("sdp: non-finite right-hand side");
  constraints_.push_back(std::move(entries));
  rhs_.push_back(rhs);
}

double inner(const SymMatrixEntries& a, const std::vector<Eigen::MatrixXd>& x) {
  double s = 0.0;
  for (const auto& e : a) {
    const auto& m = x[e.block];
    s += e.row == e.col ? e.value * m(e.row, e.row) : e.value * (m(e.row, e.col) + m(e.col, e.row));
  }
  return s;
}

namespace {

using Blocks = std::vector<Eigen::MatrixXd>;

// A constraint matrix restricted to one block, stored sparse or dense
// depending on its fill.
struct BlockPart {
  int block = 0;
  std::vector<SymEntry> entries;
  Eigen::MatrixXd dense;
  bool is_dense = false;
};

struct Operator {
  std::vector<std::vector<BlockPart>> parts;  // per constraint
  std::vector<int> sizes;

  Operator(const SdpProblem& p, const std::vector<int>& rows) : sizes(p.block_sizes()) {
    for (int k : rows) {
      std::vector<BlockPart> cons;
      for (int b = 0; b < p.num_blocks(); ++b) {
        BlockPart part;
        part.block = b;
        for (const auto& e : p.constraints()[k])
          if (e.block == b) part.entries.push_back(e);
        if (part.entries.empty()) continue;
        const int n = sizes[b];
        if (static_cast<int>(part.entries.size()) > n) {
          part.is_dense = true;
          part.dense = Eigen::MatrixXd::Zero(n, n);
          for (const auto& e : part.entries) {
            part.dense(e.row, e.col) += e.value;
            if (e.row != e.col) part.dense(e.col, e.row) += e.value;
          }
        }
        cons.push_back(std::move(part));
      }
      parts.push_back(std::move(cons));
    }
  }

  int size() const { return static_cast<int>(parts.size()); }

  static double part_inner(const BlockPart& part, const Eigen::MatrixXd& m) {
    if (part.is_dense) return part.dense.cwiseProduct(m).sum();
    double s = 0.0;
    for (const auto& e : part.entries)
      s += e.row == e.col ? e.value * m(e.row, e.row) : e.value * (m(e.row, e.col) + m(e.col, e.row));
    return s;
  }

  Eigen::VectorXd apply(const Blocks& x) const {
    Eigen::VectorXd out(size());
    for (int k = 0; k < size(); ++k) {
      double s = 0.0;
      for (const auto& part : parts[k]) s += part_inner(part, x[part.block]);
      out(k) = s;
    }
    return out;
  }

  Blocks adjoint(const Eigen::VectorXd& y) const {
    Blocks out;
    for (int n : sizes) out.push_back(Eigen::MatrixXd::Zero(n, n));
    for (int k = 0; k < size(); ++k) {
      if (y(k) == 0.0) continue;
      for (const auto& part : parts[k]) {
        auto& m = out[part.block];
        if (part.is_dense) {
          m += y(k) * part.dense;
          continue;
        }
        for (const auto& e : part.entries) {
          m(e.row, e.col) += y(k) * e.value;
          if (e.row != e.col) m(e.col, e.row) += y(k) * e.value;
        }
      }
    }
    return out;
  }

  // W A W for one part.
  static Eigen::MatrixXd sandwich(const BlockPart& part, const Eigen::MatrixXd& w) {
    if (part.is_dense) return w * part.dense * w;
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(w.rows(), w.cols());
    for (const auto& e : part.entries) {
      if (e.row == e.col) {
        g.noalias() += e.value * w.col(e.row) * w.col(e.row).transpose();
      } else {
        g.noalias() += e.value * w.col(e.row) * w.col(e.col).transpose();
        g.noalias() += e.value * w.col(e.col) * w.col(e.row).transpose();
      }
    }
    return g;
  }

  Eigen::MatrixXd schur(const Blocks& w) const {
    const int m = size();
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(m, m);
    for (int l = 0; l < m; ++l) {
      for (const auto& pl : parts[l]) {
        const Eigen::MatrixXd g = sandwich(pl, w[pl.block]);
        for (int k = l; k < m; ++k)
          for (const auto& pk : parts[k])
            if (pk.block == pl.block) s(k, l) += part_inner(pk, g);
      }
    }
    return s.selfadjointView<Eigen::Lower>();
  }
};

double frob(const Blocks& x) {
  double s = 0.0;
  for (const auto& m : x) s += m.squaredNorm();
  return std::sqrt(s);
}

double blocks_inner(const Blocks& a, const Blocks& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i].cwiseProduct(b[i]).sum();
  return s;
}

Eigen::MatrixXd sym(const Eigen::MatrixXd& m) { return 0.5 * (m + m.transpose()); }

// Largest alpha such that M + alpha * D stays PSD, given the lower Cholesky
// factor L of M.
double max_step(const Eigen::MatrixXd& l, const Eigen::MatrixXd& d) {
  const auto tri = l.triangularView<Eigen::Lower>();
  Eigen::MatrixXd t = tri.solve(d);
  t = tri.solve(t.transpose()).transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym(t), Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues()(0);
  return lmin < 0.0 ? -1.0 / lmin : std::numeric_limits<double>::infinity();
}

// Picks a maximal linearly independent subset of the constraints. Returns
// false if a dependent constraint has an inconsistent right-hand side.
bool independent_rows(const SdpProblem& p, std::vector<int>& keep) {
  const int m = p.num_constraints();
  std::vector<int> offset;
  int dim = 0;
  for (int n : p.block_sizes()) {
    offset.push_back(dim);
    dim += n * (n + 1) / 2;
  }
  auto svec_index = [&](const SymEntry& e) {
    const int n = p.block_sizes()[e.block];
    const int i = std::min(e.row, e.col), j = std::max(e.row, e.col);
    return offset[e.block] + i * n - i * (i - 1) / 2 + (j - i);
  };
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, m);
  for (int k = 0; k < m; ++k)
    for (const auto& e : p.constraints()[k])
      a(svec_index(e), k) += e.row == e.col ? e.value : std::sqrt(2.0) * e.value;

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-10);
  const int rank = static_cast<int>(qr.rank());
  keep.clear();
  for (int i = 0; i < rank; ++i) keep.push_back(qr.colsPermutation().indices()(i));
  std::sort(keep.begin(), keep.end());
  if (rank == m) return true;

  Eigen::MatrixXd basis(dim, rank);
  Eigen::VectorXd bk(rank);
  for (int i = 0; i < rank; ++i) {
    basis.col(i) = a.col(keep[i]);
    bk(i) = p.rhs()[keep[i]];
  }
  const auto solver = basis.colPivHouseholderQr();
  double bscale = 1.0;
  for (double v : p.rhs()) bscale = std::max(bscale, std::abs(v));
  for (int k = 0; k < m; ++k) {
    if (std::binary_search(keep.begin(), keep.end(), k)) continue;
    const Eigen::VectorXd c = solver.solve(a.col(k));
    if (std::abs(c.dot(bk) - p.rhs()[k]) > 1e-8 * bscale) return false;
  }
  return true;
}

struct Scaling {
  Eigen::MatrixXd g;     // W = G Gᵀ
  Eigen::MatrixXd ginv;  // G⁻¹
  Eigen::VectorXd d;     // scaled point: G⁻¹ X G⁻ᵀ = Gᵀ Z G = diag(d)
  Eigen::MatrixXd w;
};

}  // namespace

SdpSolution sdp_solve(const SdpProblem& problem, const SdpOptions& options) {
  SdpSolution sol;
  const int nb = problem.num_blocks();
  if (nb == 0) throw InputError("sdp: problem has no blocks");
  const int m_all = problem.num_constraints();

  std::vector<int> rows;
  if (!independent_rows(problem, rows)) {
    sol.status = SdpStatus::kInfeasible;
    return sol;
  }
  const Operator op(problem, rows);
  const int m = op.size();
  Eigen::VectorXd b(m);
  for (int k = 0; k < m; ++k) b(k) = problem.rhs()[rows[k]];
  const Blocks& c = problem.objective();

  int ntotal = 0;
  for (int n : problem.block_sizes()) ntotal += n;
  const double bnorm = b.norm();
  const double cnorm = frob(c);

  // Starting point scaled to the data.
  Blocks x, z;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
  for (int blk = 0; blk < nb; ++blk) {
    const int n = problem.block_sizes()[blk];
    const double rn = std::sqrt(static_cast<double>(n));
    double xi = std::max(10.0, rn), eta = std::max({10.0, rn, c[blk].norm()});
    for (int k = 0; k < m; ++k) {
      double anorm = 0.0;
      for (const auto& part : op.parts[k]) {
        if (part.block != blk) continue;
        if (part.is_dense) anorm = part.dense.norm();
        else
          for (const auto& e : part.entries)
            anorm += (e.row == e.col ? 1.0 : 2.0) * e.value * e.value;
        if (!part.is_dense) anorm = std::sqrt(anorm);
      }
      if (anorm == 0.0) continue;
      xi = std::max(xi, rn * (1.0 + std::abs(b(k))) / (1.0 + anorm));
      eta = std::max(eta, anorm);
    }
    x.push_back(xi * Eigen::MatrixXd::Identity(n, n));
    z.push_back(eta * Eigen::MatrixXd::Identity(n, n));
  }

  double best_merit = std::numeric_limits<double>::infinity();
  int stalled = 0;
  auto record = [&](double pobj, double dobj, double relgap, double pinf, double dinf) {
    const double merit = std::max({relgap / options.gap_tol, pinf / options.feasibility_tol,
                                   dinf / options.feasibility_tol});
    if (merit < best_merit) {
      best_merit = merit;
      sol.primal_value = pobj;
      sol.dual_value = dobj;
      sol.relative_gap = relgap;
      sol.primal_infeasibility = pinf;
      sol.dual_infeasibility = dinf;
      sol.x = x;
      sol.z = z;
      sol.y = Eigen::VectorXd::Zero(m_all);
      for (int k = 0; k < m; ++k) sol.y(rows[k]) = y(k);
    }
    return merit;
  };

  for (int iter = 0;; ++iter) {
    sol.iterations = iter;
    const Eigen::VectorXd rp = b - op.apply(x);
    Blocks rd = op.adjoint(y);
    for (int blk = 0; blk < nb; ++blk) rd[blk] -= z[blk] + c[blk];
    const double pobj = blocks_inner(c, x);
    const double dobj = b.dot(y);
    const double xz = blocks_inner(x, z);
    const double denom = 1.0 + std::abs(pobj) + std::abs(dobj);
    const double relgap = std::max(std::abs(pobj - dobj), std::abs(xz)) / denom;
    const double pinf = rp.norm() / (1.0 + bnorm);
    const double dinf = frob(rd) / (1.0 + cnorm);
    const double merit = record(pobj, dobj, relgap, pinf, dinf);
    if (merit <= 1.0) {
      sol.status = SdpStatus::kOptimal;
      return sol;
    }
    if (iter >= options.max_iterations || stalled >= 3) break;

    // Nesterov-Todd scaling from Cholesky factors: X = LLᵀ, Z = RRᵀ,
    // RᵀL = U D Qᵀ, G = L Q D^{-1/2}.
    std::vector<Scaling> sc(nb);
    std::vector<Eigen::MatrixXd> lx(nb), lz(nb);
    bool broken = false;
    for (int blk = 0; blk < nb && !broken; ++blk) {
      Eigen::LLT<Eigen::MatrixXd> cx(x[blk]), cz(z[blk]);
      if (cx.info() != Eigen::Success || cz.info() != Eigen::Success) {
        broken = true;
        break;
      }
      lx[blk] = cx.matrixL();
      lz[blk] = cz.matrixL();
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(lz[blk].transpose() * lx[blk],
                                            Eigen::ComputeFullU | Eigen::ComputeFullV);
      const Eigen::VectorXd d = svd.singularValues();
      if (d.minCoeff() <= 0.0) {
        broken = true;
        break;
      }
      auto& s = sc[blk];
      s.d = d;
      s.g = lx[blk] * svd.matrixV() * d.cwiseInverse().cwiseSqrt().asDiagonal();
      // G⁻¹ = D^{1/2} Qᵀ L⁻¹
      s.ginv = d.cwiseSqrt().asDiagonal() * svd.matrixV().transpose() *
               lx[blk].triangularView<Eigen::Lower>().solve(
                   Eigen::MatrixXd::Identity(d.size(), d.size()));
      s.w = sym(s.g * s.g.transpose());
    }
    if (broken) break;

    Blocks w(nb);
    for (int blk = 0; blk < nb; ++blk) w[blk] = sc[blk].w;
    Eigen::MatrixXd schur = op.schur(w);
    Eigen::LLT<Eigen::MatrixXd> chol(schur);
    Eigen::LDLT<Eigen::MatrixXd> ldlt;
    const bool use_llt = chol.info() == Eigen::Success;
    if (!use_llt) {
      schur.diagonal().array() += 1e-14 * std::max(1.0, schur.diagonal().maxCoeff());
      ldlt.compute(schur);
    }

    // W Rd W is shared by predictor and corrector.
    Blocks wrdw(nb);
    for (int blk = 0; blk < nb; ++blk) wrdw[blk] = w[blk] * rd[blk] * w[blk];
    const Eigen::VectorXd a_wrdw = op.apply(wrdw);

    // Solves for the direction given the scaled complementarity target H:
    // dX + W dZ W = G H Gᵀ.
    auto direction = [&](const std::vector<Eigen::MatrixXd>& h, Blocks& dx, Eigen::VectorXd& dy,
                         Blocks& dz) {
      Blocks rc(nb);
      for (int blk = 0; blk < nb; ++blk) rc[blk] = sc[blk].g * h[blk] * sc[blk].g.transpose();
      const Eigen::VectorXd rhs = op.apply(rc) - a_wrdw - rp;
      auto solve = [&](const Eigen::VectorXd& v) {
        return use_llt ? Eigen::VectorXd(chol.solve(v)) : Eigen::VectorXd(ldlt.solve(v));
      };
      dy = solve(rhs);
      dz = op.adjoint(dy);
      dx.assign(nb, Eigen::MatrixXd());
      for (int blk = 0; blk < nb; ++blk) {
        dz[blk] = sym(dz[blk] + rd[blk]);
        dx[blk] = sym(rc[blk] - w[blk] * dz[blk] * w[blk]);
      }
      // Refinement against the operator itself: the Schur complement loses
      // accuracy near the optimum and A(dX) = rp drifts otherwise.
      for (int round = 0; round < 2; ++round) {
        const Eigen::VectorXd res = op.apply(dx) - rp;
        if (res.norm() <= 1e-15 * (1.0 + rp.norm() + bnorm)) break;
        const Eigen::VectorXd delta = solve(res);
        dy += delta;
        const Blocks adj = op.adjoint(delta);
        for (int blk = 0; blk < nb; ++blk) {
          dz[blk] = sym(dz[blk] + adj[blk]);
          dx[blk] = sym(dx[blk] - w[blk] * adj[blk] * w[blk]);
        }
      }
    };
    auto steps = [&](const Blocks& dx, const Blocks& dz, double& ap, double& ad) {
      ap = ad = std::numeric_limits<double>::infinity();
      for (int blk = 0; blk < nb; ++blk) {
        ap = std::min(ap, max_step(lx[blk], dx[blk]));
        ad = std::min(ad, max_step(lz[blk], dz[blk]));
      }
    };

    const double mu = xz / ntotal;

    // Predictor: H = -D.
    std::vector<Eigen::MatrixXd> h(nb);
    for (int blk = 0; blk < nb; ++blk) h[blk] = Eigen::MatrixXd((-sc[blk].d).asDiagonal());
    Blocks dxa, dza;
    Eigen::VectorXd dya;
    direction(h, dxa, dya, dza);
    double apa, ada;
    steps(dxa, dza, apa, ada);
    apa = std::min(1.0, apa);
    ada = std::min(1.0, ada);
    double mu_aff = 0.0;
    for (int blk = 0; blk < nb; ++blk)
      mu_aff += (x[blk] + apa * dxa[blk]).cwiseProduct(z[blk] + ada * dza[blk]).sum();
    mu_aff /= ntotal;
    const double ratio = std::clamp(mu_aff / mu, 0.0, 1.0);
    const double expon = std::max(1.0, 3.0 * std::pow(std::min(apa, ada), 2));
    const double sigma = std::min(1.0, std::pow(ratio, expon));

    // Corrector: H = L_D⁻¹(σμI - D² - Dxa∘Dza), with L_D⁻¹(R)_ij = 2R_ij/(d_i+d_j).
    for (int blk = 0; blk < nb; ++blk) {
      const auto& s = sc[blk];
      const Eigen::MatrixXd sx = s.ginv * dxa[blk] * s.ginv.transpose();
      const Eigen::MatrixXd sz = s.g.transpose() * dza[blk] * s.g;
      Eigen::MatrixXd r = -0.5 * (sx * sz + sz * sx);
      const int n = static_cast<int>(s.d.size());
      for (int i = 0; i < n; ++i) r(i, i) += sigma * mu - s.d(i) * s.d(i);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r(i, j) *= 2.0 / (s.d(i) + s.d(j));
      h[blk] = r;
    }
    Blocks dx, dz;
    Eigen::VectorXd dy;
    direction(h, dx, dy, dz);
    double ap, ad;
    steps(dx, dz, ap, ad);
    const double gamma = 0.9 + 0.09 * std::min(apa, ada);
    ap = std::min(1.0, gamma * ap);
    ad = std::min(1.0, gamma * ad);
    stalled = (ap < 1e-10 && ad < 1e-10) ? stalled + 1 : 0;

    for (int blk = 0; blk < nb; ++blk) {
      x[blk] = sym(x[blk] + ap * dx[blk]);
      z[blk] = sym(z[blk] + ad * dz[blk]);
    }
    y += ad * dy;
  }

  sol.status = SdpStatus::kInaccurate;
  return sol;
}

}  // namespace ctxbounds
