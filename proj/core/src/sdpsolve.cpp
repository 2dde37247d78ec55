#include "isokit/sdpsolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

#include "isokit/config.hpp"

namespace isokit::sdpsolve {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Real symmetric working form.  Complex Hermitian input is either entrywise
// real (solved directly on the real parts) or lowered via to_real_embedding.

struct RealConstraint {
  std::vector<std::pair<int, Eigen::MatrixXd>> blocks;  // sorted by block id
  double rhs = 0.0;
};

struct RealProblem {
  std::vector<int> sizes;
  std::vector<Eigen::MatrixXd> C;
  std::vector<RealConstraint> cons;
};

double max_abs_imag(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.imag().cwiseAbs().maxCoeff();
}

double max_abs_real(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.real().cwiseAbs().maxCoeff();
}

bool problem_is_real(const SdpProblem& p) {
  double scale = 1.0;
  double imag = 0.0;
  for (const auto& c : p.objective) {
    scale = std::max(scale, max_abs_real(c));
    imag = std::max(imag, max_abs_imag(c));
  }
  for (const auto& con : p.constraints) {
    for (const auto& [b, a] : con.blocks) {
      scale = std::max(scale, max_abs_real(a));
      imag = std::max(imag, max_abs_imag(a));
    }
  }
  return imag <= 1e-13 * scale;
}

RealProblem to_real_problem(const SdpProblem& p, bool negate_objective) {
  RealProblem rp;
  rp.sizes = p.block_sizes;
  rp.C.resize(p.block_sizes.size());
  const double sgn = negate_objective ? -1.0 : 1.0;
  for (std::size_t b = 0; b < p.block_sizes.size(); ++b) {
    if (b < p.objective.size() && p.objective[b].size() > 0) {
      Eigen::MatrixXd m = sgn * p.objective[b].real();
      rp.C[b] = 0.5 * (m + m.transpose());
    } else {
      rp.C[b] = Eigen::MatrixXd::Zero(p.block_sizes[b], p.block_sizes[b]);
    }
  }
  for (const auto& con : p.constraints) {
    RealConstraint rc;
    rc.rhs = con.rhs;
    for (const auto& [b, a] : con.blocks) {
      Eigen::MatrixXd m = a.real();
      rc.blocks.emplace_back(b, 0.5 * (m + m.transpose()));
    }
    rp.cons.push_back(std::move(rc));
  }
  return rp;
}

double block_dot(const RealConstraint& con, const std::vector<Eigen::MatrixXd>& X) {
  double s = 0.0;
  for (const auto& [b, a] : con.blocks) s += a.cwiseProduct(X[b]).sum();
  return s;
}

// Tr[A W] summed over the constraint's blocks, valid when W need not be
// symmetric (A always is).
double block_dot_general(const RealConstraint& con,
                         const std::vector<Eigen::MatrixXd>& W) {
  double s = 0.0;
  for (const auto& [b, a] : con.blocks)
    s += a.cwiseProduct(W[b].transpose()).sum();
  return s;
}

// ---------------------------------------------------------------------------
// Presolve: drop linearly dependent constraints via a pivoted Cholesky of the
// Gram matrix; a dependent row with an inconsistent right-hand side makes the
// whole problem infeasible.

struct Presolve {
  std::vector<int> kept;      // indices into the original constraint list
  bool infeasible = false;
  std::string note;
};

Presolve prune_constraints(const RealProblem& rp) {
  Presolve out;
  const int m = static_cast<int>(rp.cons.size());
  if (m == 0) return out;

  Eigen::MatrixXd G(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      // Constraints are sparse over blocks; walk the two sorted lists.
      double s = 0.0;
      const auto& bi = rp.cons[i].blocks;
      const auto& bj = rp.cons[j].blocks;
      std::size_t u = 0, v = 0;
      while (u < bi.size() && v < bj.size()) {
        if (bi[u].first < bj[v].first) {
          ++u;
        } else if (bj[v].first < bi[u].first) {
          ++v;
        } else {
          s += bi[u].second.cwiseProduct(bj[v].second).sum();
          ++u;
          ++v;
        }
      }
      G(i, j) = G(j, i) = s;
    }
  }

  // Pivoted Cholesky: P G P^T = L L^T with L (m x rank).
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  Eigen::VectorXd diag = G.diagonal();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(m, m);
  const double dmax0 = std::max(diag.maxCoeff(), 0.0);
  const double tol = std::max(1e-12 * dmax0, 1e-300);
  int rank = 0;
  for (int k = 0; k < m; ++k) {
    int p = k;
    for (int j = k + 1; j < m; ++j)
      if (diag(perm[j]) > diag(perm[p])) p = j;
    if (diag(perm[p]) <= tol) break;
    std::swap(perm[k], perm[p]);
    L.row(k).swap(L.row(p));
    const int pk = perm[k];
    double lkk = diag(pk) ;
    lkk = std::sqrt(std::max(lkk, 0.0));
    L(k, k) = lkk;
    for (int j = k + 1; j < m; ++j) {
      const int pj = perm[j];
      double v = G(pj, pk);
      for (int t = 0; t < k; ++t) v -= L(j, t) * L(k, t);
      L(j, k) = v / lkk;
      diag(pj) -= L(j, k) * L(j, k);
    }
    ++rank;
  }

  if (rank == m) {
    out.kept.resize(m);
    std::iota(out.kept.begin(), out.kept.end(), 0);
    return out;
  }

  // Dependent constraint j (pivot position r >= rank) satisfies
  // A_j = sum_k c_k A_{kept_k} with c = L1^{-T} l_j^T; its right-hand side
  // must match the same combination.
  Eigen::MatrixXd L1 = L.topLeftCorner(rank, rank);
  for (int r = 0; r < rank; ++r) out.kept.push_back(perm[r]);
  std::sort(out.kept.begin(), out.kept.end());
  double bmax = 0.0;
  for (const auto& con : rp.cons) bmax = std::max(bmax, std::abs(con.rhs));

  int dropped = 0;
  for (int r = rank; r < m; ++r) {
    const int j = perm[r];
    Eigen::VectorXd lj = L.row(r).head(rank).transpose();
    Eigen::VectorXd c =
        L1.transpose().triangularView<Eigen::Upper>().solve(lj);
    double predicted = 0.0;
    double cnorm = 0.0;
    for (int k = 0; k < rank; ++k) {
      predicted += c(k) * rp.cons[perm[k]].rhs;
      cnorm += std::abs(c(k));
    }
    const double mismatch = std::abs(rp.cons[j].rhs - predicted);
    if (mismatch > 1e-8 * (1.0 + std::abs(rp.cons[j].rhs) + cnorm * bmax)) {
      out.infeasible = true;
      std::ostringstream os;
      os << "constraint " << j
         << " is a linear combination of the others with an inconsistent "
            "right-hand side (mismatch "
         << mismatch << ")";
      out.note = os.str();
      return out;
    }
    ++dropped;
  }
  if (dropped > 0) {
    std::ostringstream os;
    os << "dropped " << dropped << " linearly dependent constraint(s)";
    out.note = os.str();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Interior-point core (HKM direction, Mehrotra predictor-corrector).

struct Iterate {
  std::vector<Eigen::MatrixXd> X, Z;
  Eigen::VectorXd y;
};

double trace_dot(const std::vector<Eigen::MatrixXd>& A,
                 const std::vector<Eigen::MatrixXd>& B) {
  double s = 0.0;
  for (std::size_t b = 0; b < A.size(); ++b)
    s += A[b].cwiseProduct(B[b]).sum();
  return s;
}

// Largest alpha with M + alpha dM >= 0 (M symmetric positive definite).
double max_step(const Eigen::MatrixXd& M, const Eigen::MatrixXd& dM) {
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  Eigen::MatrixXd W;
  if (llt.info() == Eigen::Success) {
    Eigen::MatrixXd half = llt.matrixL().solve(dM).transpose();
    W = llt.matrixL().solve(half);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    Eigen::VectorXd ev = es.eigenvalues();
    const double floor_ev = std::max(ev.maxCoeff(), 1e-100) * 1e-18;
    Eigen::VectorXd inv_sqrt =
        ev.cwiseMax(floor_ev).cwiseSqrt().cwiseInverse();
    Eigen::MatrixXd R =
        inv_sqrt.asDiagonal() * es.eigenvectors().transpose();
    W = R * dM * R.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (W + W.transpose()), Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  if (lmin >= -1e-300) return kInf;
  return -1.0 / lmin;
}

struct IpmOutcome {
  SolveStatus status = SolveStatus::numerical_failure;
  int iterations = 0;
  double pobj = 0.0, dobj = 0.0;
  double pres = 0.0, dres = 0.0, mu = 0.0;
  std::string note;
};

IpmOutcome run_ipm(const RealProblem& rp, const SolverConfig& cfg,
                   Iterate& it) {
  const int m = static_cast<int>(rp.cons.size());
  const std::size_t nb = rp.sizes.size();
  const int total_dim = std::accumulate(rp.sizes.begin(), rp.sizes.end(), 0);

  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) b(i) = rp.cons[i].rhs;
  const double bmax = m == 0 ? 0.0 : b.cwiseAbs().maxCoeff();
  double cmax = 0.0;
  for (const auto& c : rp.C)
    if (c.size() > 0) cmax = std::max(cmax, c.cwiseAbs().maxCoeff());

  // Starting point: scaled multiples of the identity.
  double xi_p = 10.0;
  double xi_d = 10.0;
  for (int i = 0; i < m; ++i) {
    double na = 0.0;
    for (const auto& [bk, a] : rp.cons[i].blocks) na = std::max(na, a.norm());
    xi_p = std::max(xi_p, std::sqrt(double(std::max(total_dim, 1))) *
                              (1.0 + std::abs(b(i))) / (1.0 + na));
    xi_d = std::max(xi_d, na);
  }
  for (const auto& c : rp.C) xi_d = std::max(xi_d, c.norm());
  it.X.resize(nb);
  it.Z.resize(nb);
  for (std::size_t bk = 0; bk < nb; ++bk) {
    it.X[bk] = xi_p * Eigen::MatrixXd::Identity(rp.sizes[bk], rp.sizes[bk]);
    it.Z[bk] = xi_d * Eigen::MatrixXd::Identity(rp.sizes[bk], rp.sizes[bk]);
  }
  it.y = Eigen::VectorXd::Zero(m);

  // Which constraints touch which block, for the Schur assembly.
  std::vector<std::vector<int>> touching(nb);
  for (int i = 0; i < m; ++i)
    for (const auto& [bk, a] : rp.cons[i].blocks) touching[bk].push_back(i);
  auto block_of = [&](int i, int bk) -> const Eigen::MatrixXd* {
    for (const auto& [bb, a] : rp.cons[i].blocks)
      if (bb == bk) return &a;
    return nullptr;
  };

  IpmOutcome out;
  std::vector<Eigen::MatrixXd> Zinv(nb), Rd(nb), W(nb), dXa(nb), dZa(nb),
      dX(nb), dZ(nb), K(nb);
  Eigen::VectorXd rp_res(m);

  int stalls = 0;
  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    out.iterations = iter;

    // Residuals and objective values.
    for (int i = 0; i < m; ++i)
      rp_res(i) = b(i) - block_dot(rp.cons[i], it.X);
    double dres = 0.0;
    for (std::size_t bk = 0; bk < nb; ++bk) {
      Rd[bk] = rp.C[bk] - it.Z[bk];
      for (int i : touching[bk]) Rd[bk] -= it.y(i) * *block_of(i, bk);
      if (Rd[bk].size() > 0)
        dres = std::max(dres, Rd[bk].cwiseAbs().maxCoeff());
    }
    out.pobj = trace_dot(rp.C, it.X);
    out.dobj = m == 0 ? 0.0 : b.dot(it.y);
    out.mu = trace_dot(it.X, it.Z) / std::max(total_dim, 1);
    out.pres = (m == 0 ? 0.0 : rp_res.cwiseAbs().maxCoeff()) / (1.0 + bmax);
    out.dres = dres / (1.0 + cmax);
    const double gap =
        std::abs(out.pobj - out.dobj) / (1.0 + std::abs(out.pobj));

    if (cfg.verbose) {
      std::printf("it %3d  pobj % .12e  dobj % .12e  mu %.3e  pres %.3e  "
                  "dres %.3e\n",
                  iter, out.pobj, out.dobj, out.mu, out.pres, out.dres);
    }
    if (gap <= cfg.tol_gap && out.pres <= cfg.tol_feas &&
        out.dres <= cfg.tol_feas && out.mu <= 10.0 * cfg.tol_gap) {
      out.status = SolveStatus::optimal;
      return out;
    }

    // Schur complement S_ij = sum_b Tr[A_i Zinv A_j X] via V_i = X A_i Zinv.
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(m, m);
    bool factor_ok = true;
    for (std::size_t bk = 0; bk < nb; ++bk) {
      Eigen::LLT<Eigen::MatrixXd> llt(it.Z[bk]);
      if (llt.info() != Eigen::Success) {
        factor_ok = false;
        break;
      }
      Zinv[bk] = llt.solve(
          Eigen::MatrixXd::Identity(rp.sizes[bk], rp.sizes[bk]));
      Zinv[bk] = 0.5 * (Zinv[bk] + Zinv[bk].transpose()).eval();
      if (touching[bk].empty()) continue;
      std::vector<Eigen::MatrixXd> V(touching[bk].size());
      for (std::size_t u = 0; u < touching[bk].size(); ++u)
        V[u] = it.X[bk] * *block_of(touching[bk][u], bk) * Zinv[bk];
      for (std::size_t u = 0; u < touching[bk].size(); ++u) {
        for (std::size_t v = 0; v < touching[bk].size(); ++v) {
          const int i = touching[bk][u];
          const int j = touching[bk][v];
          if (j < i) continue;
          const double s =
              block_of(j, static_cast<int>(bk))
                  ->cwiseProduct(V[u].transpose())
                  .sum();
          S(i, j) += s;
        }
      }
    }
    if (!factor_ok) {
      out.status = SolveStatus::numerical_failure;
      out.note = "dual slack lost positive definiteness";
      return out;
    }
    S = Eigen::MatrixXd(S.selfadjointView<Eigen::Upper>());

    Eigen::LLT<Eigen::MatrixXd> schur;
    double reg = 0.0;
    const double diag_scale =
        m == 0 ? 1.0 : std::max(S.diagonal().maxCoeff(), 1e-30);
    for (int attempt = 0; attempt < 4; ++attempt) {
      schur.compute(S + reg * Eigen::MatrixXd::Identity(m, m));
      if (schur.info() == Eigen::Success) break;
      reg = (reg == 0.0) ? 1e-13 * diag_scale : reg * 100.0;
    }
    if (m > 0 && schur.info() != Eigen::Success) {
      out.status = SolveStatus::numerical_failure;
      out.note = "Schur complement factorization failed";
      return out;
    }
    auto solve_schur = [&](const Eigen::VectorXd& rhs) {
      if (m == 0) return Eigen::VectorXd(0);
      Eigen::VectorXd dy = schur.solve(rhs);
      dy += schur.solve(rhs - S * dy);  // one refinement step
      return dy;
    };

    // Common pieces: W_b = Zinv Rd X, and the direction assembly
    //   dX = tau Zinv - X - Zinv (dZ X + Kcorr), symmetrized.
    for (std::size_t bk = 0; bk < nb; ++bk) W[bk] = Zinv[bk] * Rd[bk] * it.X[bk];
    auto assemble = [&](double tau, const std::vector<Eigen::MatrixXd>* Kc,
                        std::vector<Eigen::MatrixXd>& dXo,
                        std::vector<Eigen::MatrixXd>& dZo) {
      Eigen::VectorXd rhs(m);
      for (int i = 0; i < m; ++i) {
        double r = b(i) + block_dot_general(rp.cons[i], W);
        if (tau != 0.0) {
          double t = 0.0;
          for (const auto& [bk, a] : rp.cons[i].blocks)
            t += a.cwiseProduct(Zinv[bk]).sum();
          r -= tau * t;
        }
        if (Kc != nullptr) {
          double t = 0.0;
          for (const auto& [bk, a] : rp.cons[i].blocks)
            t += a.cwiseProduct((Zinv[bk] * (*Kc)[bk]).transpose()).sum();
          r += t;
        }
        rhs(i) = r;
      }
      Eigen::VectorXd dy = solve_schur(rhs);
      for (std::size_t bk = 0; bk < nb; ++bk) {
        dZo[bk] = Rd[bk];
        for (int i : touching[bk]) dZo[bk] -= dy(i) * *block_of(i, bk);
        Eigen::MatrixXd rhsX = dZo[bk] * it.X[bk];
        if (Kc != nullptr) rhsX += (*Kc)[bk];
        dXo[bk] = -it.X[bk] - Zinv[bk] * rhsX;
        if (tau != 0.0) dXo[bk] += tau * Zinv[bk];
        dXo[bk] = 0.5 * (dXo[bk] + dXo[bk].transpose()).eval();
      }
      return dy;
    };

    // Predictor (affine scaling).
    assemble(0.0, nullptr, dXa, dZa);
    double ap = 1.0, ad = 1.0;
    for (std::size_t bk = 0; bk < nb; ++bk) {
      ap = std::min(ap, cfg.damping * max_step(it.X[bk], dXa[bk]));
      ad = std::min(ad, cfg.damping * max_step(it.Z[bk], dZa[bk]));
    }
    double mu_aff = 0.0;
    for (std::size_t bk = 0; bk < nb; ++bk)
      mu_aff += ((it.X[bk] + ap * dXa[bk]).cwiseProduct(
                     it.Z[bk] + ad * dZa[bk]))
                    .sum();
    mu_aff /= std::max(total_dim, 1);
    double sigma = out.mu <= 0.0
                       ? 0.0
                       : std::pow(std::clamp(mu_aff / out.mu, 0.0, 1.0), 3);

    // Corrector with second-order term K = dZ_aff dX_aff.
    for (std::size_t bk = 0; bk < nb; ++bk) K[bk] = dZa[bk] * dXa[bk];
    Eigen::VectorXd dy = assemble(sigma * out.mu, &K, dX, dZ);

    ap = 1.0;
    ad = 1.0;
    for (std::size_t bk = 0; bk < nb; ++bk) {
      ap = std::min(ap, cfg.damping * max_step(it.X[bk], dX[bk]));
      ad = std::min(ad, cfg.damping * max_step(it.Z[bk], dZ[bk]));
    }
    if (ap < 1e-10 && ad < 1e-10) {
      if (++stalls >= 3) {
        out.status = SolveStatus::max_iter;
        out.note = "step sizes collapsed before reaching tolerance";
        return out;
      }
    } else {
      stalls = 0;
    }
    for (std::size_t bk = 0; bk < nb; ++bk) {
      it.X[bk] += ap * dX[bk];
      it.Z[bk] += ad * dZ[bk];
    }
    if (m > 0) it.y += ad * dy;
  }
  out.iterations = cfg.max_iter;
  out.status = SolveStatus::max_iter;
  out.note = "iteration limit reached";
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal:
      return "optimal";
    case SolveStatus::max_iter:
      return "max-iter";
    case SolveStatus::infeasible_detected:
      return "infeasible-detected";
    case SolveStatus::numerical_failure:
      return "numerical-failure";
  }
  return "unknown";
}

void validate(const SdpProblem& p) {
  if (p.block_sizes.empty()) throw DomainError("SDP needs at least one block");
  for (int s : p.block_sizes)
    if (s <= 0) throw DomainError("SDP block sizes must be positive");
  if (p.objective.size() > p.block_sizes.size())
    throw DomainError("more objective blocks than problem blocks");
  auto check_herm = [](const Eigen::MatrixXcd& mat, int size,
                       const char* what) {
    if (mat.size() == 0) return;
    if (mat.rows() != size || mat.cols() != size)
      throw DomainError(std::string(what) + ": block dimension mismatch");
    const double scale = mat.cwiseAbs().maxCoeff();
    if ((mat - mat.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * (1.0 + scale))
      throw DomainError(std::string(what) + ": block is not Hermitian");
  };
  for (std::size_t b = 0; b < p.objective.size(); ++b)
    check_herm(p.objective[b], p.block_sizes[b], "objective");
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    if (!std::isfinite(p.constraints[i].rhs))
      throw DomainError("constraint right-hand side must be finite");
    for (const auto& [b, a] : p.constraints[i].blocks) {
      if (b < 0 || b >= static_cast<int>(p.block_sizes.size()))
        throw DomainError("constraint references an unknown block");
      check_herm(a, p.block_sizes[b], "constraint");
    }
  }
}

SdpProblem to_real_embedding(const SdpProblem& p) {
  validate(p);
  SdpProblem out;
  out.sense = p.sense;
  out.block_sizes.reserve(p.block_sizes.size());
  for (int s : p.block_sizes) out.block_sizes.push_back(2 * s);
  auto embed = [](const Eigen::MatrixXcd& h, int size) {
    Eigen::MatrixXd a = h.size() == 0
                            ? Eigen::MatrixXd::Zero(size, size).eval()
                            : Eigen::MatrixXd(h.real());
    Eigen::MatrixXd bm = h.size() == 0
                             ? Eigen::MatrixXd::Zero(size, size).eval()
                             : Eigen::MatrixXd(h.imag());
    Eigen::MatrixXd e(2 * size, 2 * size);
    e << a, -bm, bm, a;
    return Eigen::MatrixXcd(0.5 * e);
  };
  out.objective.reserve(p.block_sizes.size());
  for (std::size_t b = 0; b < p.block_sizes.size(); ++b) {
    const Eigen::MatrixXcd& src =
        b < p.objective.size() ? p.objective[b] : Eigen::MatrixXcd();
    out.objective.push_back(embed(src, p.block_sizes[b]));
  }
  for (const auto& con : p.constraints) {
    Constraint c2;
    c2.rhs = con.rhs;
    for (const auto& [b, a] : con.blocks)
      c2.blocks.emplace(b, embed(a, p.block_sizes[b]));
    out.constraints.push_back(std::move(c2));
  }
  return out;
}

SolveResult solve(const SdpProblem& problem, const SolverConfig& config) {
  validate(problem);
  const bool real_input = problem_is_real(problem);
  const SdpProblem* work = &problem;
  SdpProblem embedded;
  if (!real_input) {
    embedded = to_real_embedding(problem);
    work = &embedded;
  }
  const bool maximize = problem.sense == Sense::maximize;
  RealProblem rp = to_real_problem(*work, maximize);

  SolveResult result;
  Presolve pre = prune_constraints(rp);
  if (pre.infeasible) {
    result.status = SolveStatus::infeasible_detected;
    result.diagnostics = pre.note;
    return result;
  }
  RealProblem pruned;
  pruned.sizes = rp.sizes;
  pruned.C = rp.C;
  for (int idx : pre.kept) pruned.cons.push_back(rp.cons[idx]);

  Iterate it;
  IpmOutcome out = run_ipm(pruned, config, it);

  const double sgn = maximize ? -1.0 : 1.0;
  result.status = out.status;
  result.iterations = out.iterations;
  result.primal_value = sgn * out.pobj;
  result.dual_value = sgn * out.dobj;
  result.gap = std::abs(out.pobj - out.dobj) / (1.0 + std::abs(out.pobj));
  result.dual_multipliers.assign(problem.constraints.size(), 0.0);
  for (std::size_t k = 0; k < pre.kept.size(); ++k)
    result.dual_multipliers[pre.kept[k]] = sgn * it.y(k);
  std::ostringstream diag;
  if (!pre.note.empty()) diag << pre.note << "; ";
  if (!out.note.empty()) diag << out.note << "; ";
  diag << "mu=" << out.mu << " pres=" << out.pres << " dres=" << out.dres;
  result.diagnostics = diag.str();

  // Map the real solution back to the caller's block shapes.
  result.block_solution.resize(problem.block_sizes.size());
  for (std::size_t b = 0; b < problem.block_sizes.size(); ++b) {
    const int n = problem.block_sizes[b];
    if (real_input) {
      result.block_solution[b] = it.X[b].cast<std::complex<double>>();
    } else {
      // X' optimal for the embedding; average with the symplectic conjugate
      // to recover the Hermitian solution P + iQ of the original block.
      const Eigen::MatrixXd& Xe = it.X[b];
      Eigen::MatrixXd P =
          0.5 * (Xe.topLeftCorner(n, n) + Xe.bottomRightCorner(n, n));
      Eigen::MatrixXd Q =
          0.5 * (Xe.bottomLeftCorner(n, n) - Xe.topRightCorner(n, n));
      result.block_solution[b] =
          P.cast<std::complex<double>>() +
          std::complex<double>(0, 1) * Q.cast<std::complex<double>>();
    }
  }
  return result;
}

std::string export_sdpa(const SdpProblem& problem) {
  validate(problem);
  if (!problem_is_real(problem))
    throw DomainError(
        "export_sdpa requires real data; apply to_real_embedding first");
  const bool maximize = problem.sense == Sense::maximize;
  RealProblem rp = to_real_problem(problem, /*negate_objective=*/!maximize);

  const int m = static_cast<int>(rp.cons.size());
  const int nb = static_cast<int>(rp.sizes.size());

  // A block is written in diagonal form when every matrix touching it is
  // diagonal.
  std::vector<bool> diag_block(nb, true);
  auto scan = [&](const Eigen::MatrixXd& a, int bk) {
    if (!diag_block[bk]) return;
    for (int r = 0; r < a.rows() && diag_block[bk]; ++r)
      for (int c = 0; c < a.cols(); ++c)
        if (r != c && a(r, c) != 0.0) {
          diag_block[bk] = false;
          break;
        }
  };
  for (int bk = 0; bk < nb; ++bk) scan(rp.C[bk], bk);
  for (const auto& con : rp.cons)
    for (const auto& [bk, a] : con.blocks) scan(a, bk);

  std::ostringstream os;
  os << m << "\n" << nb << "\n";
  for (int bk = 0; bk < nb; ++bk) {
    if (bk > 0) os << " ";
    os << (diag_block[bk] ? -rp.sizes[bk] : rp.sizes[bk]);
  }
  os << "\n";
  for (int i = 0; i < m; ++i) {
    if (i > 0) os << " ";
    os << format_double(rp.cons[i].rhs);
  }
  os << "\n";

  auto emit = [&](int matno, int bk, const Eigen::MatrixXd& a) {
    for (int r = 0; r < a.rows(); ++r) {
      for (int c = r; c < a.cols(); ++c) {
        if (diag_block[bk] && r != c) continue;
        const double v = a(r, c);
        if (v == 0.0) continue;
        os << matno << " " << bk + 1 << " " << r + 1 << " " << c + 1 << " "
           << format_double(v) << "\n";
      }
    }
  };
  for (int bk = 0; bk < nb; ++bk) emit(0, bk, rp.C[bk]);
  for (int i = 0; i < m; ++i)
    for (const auto& [bk, a] : rp.cons[i].blocks) emit(i + 1, bk, a);
  return os.str();
}

}  // namespace isokit::sdpsolve
