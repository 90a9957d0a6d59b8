/*
 * Copyright 2026 The capbound authors
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <vector>

#include "sdp_problem.hpp"

// Primal-dual interior-point method with Nesterov-Todd scaling and Mehrotra
// predictor-corrector steps, over products of real PSD cones (one-dimensional
// blocks double as the nonnegative orthant). It consumes the realified form
//
//   minimize    g.x
//   subject to  F0_j + sum_p x_p F_{j,p}  PSD,   E x = f,
//
// with slacks S_j and dual blocks Z_j. The Newton step reduces to the dense
// Schur system  M dx + E^T dy = r,  E dx = r_e  with
// M_pq = sum_j <F_{j,p}, W_j^-1 F_{j,q} W_j^-1>, which we assemble from the
// sparse coefficient matrices and factor with a dense Cholesky.

namespace capbound::sdp {

using la::RMat;
using la::RVec;

namespace {

struct BlockState {
  int m = 0;
  RMat s, z;          // current iterate
  RMat r, rinv;       // NT factor: W = R R^T, Lambda = R^T Z R diagonal
  RVec lambda;
  RMat winv;          // R^-T R^-1
  RMat rp;            // primal residual F0 + A(x) - S
};

RMat dense_coeff(const SparseSym& ss, int m) {
  RMat f = RMat::Zero(m, m);
  for (size_t k = 0; k < ss.vals.size(); ++k) {
    f(ss.rows[k], ss.cols[k]) += ss.vals[k];
    if (ss.rows[k] != ss.cols[k]) f(ss.cols[k], ss.rows[k]) += ss.vals[k];
  }
  return f;
}

double dot_coeff(const SparseSym& ss, const RMat& x) {
  double acc = 0.0;
  for (size_t k = 0; k < ss.vals.size(); ++k) {
    double v = ss.vals[k] * x(ss.rows[k], ss.cols[k]);
    acc += (ss.rows[k] == ss.cols[k]) ? v : 2.0 * v;
  }
  return acc;
}

// sum_p v_p F_{j,p}
RMat expand(const CompiledBlock& blk, const RVec& v) {
  RMat out = RMat::Zero(blk.mdim, blk.mdim);
  for (size_t t = 0; t < blk.params.size(); ++t) {
    double xv = v(blk.params[t]);
    if (xv == 0.0) continue;
    const SparseSym& ss = blk.coeffs[t];
    for (size_t k = 0; k < ss.vals.size(); ++k) {
      out(ss.rows[k], ss.cols[k]) += xv * ss.vals[k];
      if (ss.rows[k] != ss.cols[k]) out(ss.cols[k], ss.rows[k]) += xv * ss.vals[k];
    }
  }
  return out;
}

// W^-1 F_p W^-1 assembled from the sparse entries of F_p.
void sandwich(const RMat& winv, const SparseSym& ss, RMat& out) {
  out.setZero(winv.rows(), winv.cols());
  for (size_t k = 0; k < ss.vals.size(); ++k) {
    const int a = ss.rows[k], b = ss.cols[k];
    const double v = ss.vals[k];
    out.noalias() += v * (winv.col(a) * winv.col(b).transpose());
    if (a != b) out.noalias() += v * (winv.col(b) * winv.col(a).transpose());
  }
}

// Largest alpha <= cap with S + alpha dS PSD.
double max_step(const RMat& s, const RMat& ds, double cap) {
  if (s.rows() == 1) {
    if (ds(0, 0) >= 0) return cap;
    return std::min(cap, -s(0, 0) / ds(0, 0));
  }
  Eigen::LLT<RMat> llt(s);
  if (llt.info() != Eigen::Success) return 0.0;
  RMat l = llt.matrixL();
  RMat t = l.triangularView<Eigen::Lower>().solve(ds);
  RMat u = l.triangularView<Eigen::Lower>().solve(t.transpose());
  Eigen::SelfAdjointEigenSolver<RMat> es((u + u.transpose()) / 2.0,
                                         Eigen::EigenvaluesOnly);
  double lmin = es.eigenvalues().minCoeff();
  if (lmin >= -1e-14) return cap;
  return std::min(cap, -1.0 / lmin);
}

bool is_psd_chol(const RMat& s) {
  if (s.rows() == 1) return s(0, 0) > 0.0;
  Eigen::LLT<RMat> llt(s);
  return llt.info() == Eigen::Success;
}

}  // namespace

SdpSolution solve(const SdpProblem& prob, const SolveOptions& opts) {
  RealConicProblem rc = realify(prob);
  SdpSolution sol;
  if (rc.inconsistent_eq) {
    sol.status = Status::infeasible;
    sol.message = "equality constraints are inconsistent";
    return sol;
  }
  const int n = rc.nparams;
  const int q = static_cast<int>(rc.e_rows.rows());
  const int nb = static_cast<int>(rc.blocks.size());
  if (nb == 0) {
    sol.status = Status::solver_error;
    sol.message = "no conic blocks";
    return sol;
  }

  double total_m = 0.0;
  std::vector<BlockState> st(nb);
  for (int j = 0; j < nb; ++j) {
    const int m = rc.blocks[j].mdim;
    st[j].m = m;
    total_m += m;
    double scale = std::max(1.0, rc.blocks[j].f0.cwiseAbs().maxCoeff());
    st[j].s = RMat::Identity(m, m) * (1.0 + scale);
    st[j].z = RMat::Identity(m, m);
  }

  RVec x = RVec::Zero(n);
  RVec y = RVec::Zero(q);

  const double gnorm = 1.0 + rc.g.cwiseAbs().maxCoeff();
  const double fnorm = 1.0 + (q > 0 ? rc.f.cwiseAbs().maxCoeff() : 0.0);

  RMat m_buf(n, n);
  RVec rd(n), rhs_x(n);

  double best_metric = std::numeric_limits<double>::infinity();
  RVec best_x = x;
  double best_gap = 1.0, best_feas = 1.0, best_pv = 0.0, best_dv = 0.0;
  int stall = 0;        // no meaningful progress at all
  int stall_floor = 0;  // feasible and centered, gap at its numerical floor

  auto record_metrics = [&](double relgap, double pres, double dres, double pv,
                            double dv) {
    double metric = std::max({relgap, pres, dres});
    double prev_best = best_metric;
    if (metric < best_metric) {
      best_metric = metric;
      best_x = x;
      best_gap = relgap;
      best_feas = std::max(pres, dres);
      best_pv = pv;
      best_dv = dv;
    }
    // Progress means at least a 1% improvement of the worst metric. Once the
    // iterate is essentially feasible, a flat gap is the numerical floor and
    // further iterations are wasted; while still infeasible, slow phases are
    // normal and get more patience.
    if (metric < 0.99 * prev_best) {
      stall = 0;
      stall_floor = 0;
    } else {
      ++stall;
      if (pres <= 1e-9 && dres <= 1e-9)
        ++stall_floor;
      else
        stall_floor = 0;
    }
  };

  Status detected = Status::solver_error;
  std::string message;
  int iter = 0;

  for (iter = 0; iter < opts.max_iters; ++iter) {
    // Residuals.
    double gap = 0.0;
    for (int j = 0; j < nb; ++j) {
      st[j].rp = rc.blocks[j].f0 + expand(rc.blocks[j], x) - st[j].s;
      gap += (st[j].s.array() * st[j].z.array()).sum();
    }
    double mu = gap / total_m;

    rd = rc.g;
    for (int j = 0; j < nb; ++j)
      for (size_t t = 0; t < rc.blocks[j].params.size(); ++t)
        rd(rc.blocks[j].params[t]) -= dot_coeff(rc.blocks[j].coeffs[t], st[j].z);
    if (q > 0) rd += rc.e_rows.transpose() * y;

    RVec re = q > 0 ? RVec(rc.f - rc.e_rows * x) : RVec();

    double pres = 0.0;
    for (int j = 0; j < nb; ++j)
      pres = std::max(pres, st[j].rp.cwiseAbs().maxCoeff() /
                                (1.0 + rc.blocks[j].f0.cwiseAbs().maxCoeff()));
    if (q > 0) pres = std::max(pres, re.cwiseAbs().maxCoeff() / fnorm);
    double dres = rd.cwiseAbs().maxCoeff() / gnorm;

    double pv = rc.g.dot(x);
    double dv = -(q > 0 ? rc.f.dot(y) : 0.0);
    for (int j = 0; j < nb; ++j) dv -= (rc.blocks[j].f0.array() * st[j].z.array()).sum();
    double relgap = std::abs(pv - dv) / std::max(1.0, (std::abs(pv) + std::abs(dv)) / 2.0);

    if (!std::isfinite(pv) || !std::isfinite(mu) || !std::isfinite(dres)) {
      message = "numerical failure (non-finite iterate)";
      break;
    }

    record_metrics(relgap, pres, dres, pv, dv);

    if (opts.verbose)
      std::fprintf(stderr, "it %3d  mu %9.2e  gap %9.2e  pres %9.2e  dres %9.2e  pv % .9e\n",
                   iter, mu, relgap, pres, dres, pv);

    if (relgap <= opts.tol_gap && pres <= opts.tol_feas && dres <= opts.tol_feas) break;

    // Divergence heuristics double as infeasibility certificates.
    if (dv > 1e9 && pres > 1e-7) {
      detected = Status::infeasible;
      message = "dual objective diverging; primal likely infeasible";
      break;
    }
    if (pv < -1e9 && dres > 1e-7) {
      detected = Status::unbounded;
      message = "primal objective diverging; problem likely unbounded";
      break;
    }
    if (stall_floor > 4 || stall > 14) {
      message = "stalled";
      break;
    }
    if (mu > 1e14) {
      message = "iterates diverged";
      break;
    }

    // NT scalings.
    bool scale_ok = true;
    for (int j = 0; j < nb; ++j) {
      BlockState& b = st[j];
      if (b.m == 1) {
        double sv = b.s(0, 0), zv = b.z(0, 0);
        double w = std::sqrt(sv / zv);
        b.r = RMat::Constant(1, 1, std::sqrt(w));
        b.rinv = RMat::Constant(1, 1, 1.0 / std::sqrt(w));
        b.lambda = RVec::Constant(1, std::sqrt(sv * zv));
        b.winv = RMat::Constant(1, 1, 1.0 / w);
        continue;
      }
      Eigen::LLT<RMat> llt(b.s);
      if (llt.info() != Eigen::Success) { scale_ok = false; break; }
      RMat l = llt.matrixL();
      RMat t = l.transpose() * b.z * l;
      Eigen::SelfAdjointEigenSolver<RMat> es((t + t.transpose()) / 2.0);
      if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0) {
        scale_ok = false;
        break;
      }
      RVec d4 = es.eigenvalues().array().pow(0.25);
      b.lambda = es.eigenvalues().array().sqrt();
      b.r = l * es.eigenvectors() * d4.cwiseInverse().asDiagonal();
      RMat linv = l.triangularView<Eigen::Lower>()
                      .solve(RMat::Identity(b.m, b.m));
      b.rinv = d4.asDiagonal() * es.eigenvectors().transpose() * linv;
      b.winv = b.rinv.transpose() * b.rinv;
    }
    if (!scale_ok) {
      message = "scaling failure (iterate left the cone)";
      break;
    }

    // Schur complement, with escalating diagonal regularization if the
    // in-place Cholesky hits a nonpositive pivot. Parameter lists are sorted,
    // so the upper triangle is the tail of each block's list.
    RMat t_buf;
    auto build_schur = [&](double reg) {
      m_buf.setZero();
      for (int j = 0; j < nb; ++j) {
        const CompiledBlock& blk = rc.blocks[j];
        const int np = static_cast<int>(blk.params.size());
        for (int a = 0; a < np; ++a) {
          sandwich(st[j].winv, blk.coeffs[a], t_buf);
          const int pa = blk.params[a];
          for (int bidx = a; bidx < np; ++bidx)
            m_buf(pa, blk.params[bidx]) += dot_coeff(blk.coeffs[bidx], t_buf);
        }
      }
      m_buf.triangularView<Eigen::StrictlyLower>() =
          m_buf.triangularView<Eigen::StrictlyUpper>().transpose();
      if (reg > 0.0) m_buf.diagonal().array() += reg;
    };

    std::unique_ptr<Eigen::LLT<Eigen::Ref<RMat>>> lltp;
    double reg = 0.0;
    for (;;) {
      build_schur(reg);
      double diag_scale = 1.0 + m_buf.diagonal().cwiseAbs().maxCoeff();
      lltp = std::make_unique<Eigen::LLT<Eigen::Ref<RMat>>>(m_buf);
      if (lltp->info() == Eigen::Success) break;
      reg = (reg == 0.0) ? 1e-12 * diag_scale : reg * 1e3;
      if (reg > 1e-2 * diag_scale) {
        lltp.reset();
        break;
      }
    }
    if (!lltp) {
      message = "Schur complement factorization failed";
      break;
    }
    auto& llt = *lltp;

    Eigen::LLT<RMat> se_llt;
    if (q > 0) {
      // E M^-1 E^T = W^T W with W = L^-1 E^T; one triangular solve, not two.
      RMat w = rc.e_rows.transpose();
      llt.matrixL().solveInPlace(w);
      RMat se = w.transpose() * w;
      se_llt.compute((se + se.transpose()) / 2.0);
      if (se_llt.info() != Eigen::Success) {
        message = "equality Schur factorization failed";
        break;
      }
    }

    // Exact Schur operator for iterative refinement of the factored solve;
    // the factorization loses accuracy once mu is tiny.
    auto apply_m = [&](const RVec& v) {
      RVec out = RVec::Zero(n);
      for (int j = 0; j < nb; ++j) {
        const CompiledBlock& blk = rc.blocks[j];
        RMat av = expand(blk, v);
        RMat wav = st[j].winv * av * st[j].winv;
        for (size_t t = 0; t < blk.params.size(); ++t)
          out(blk.params[t]) += dot_coeff(blk.coeffs[t], wav);
      }
      return out;
    };
    auto kkt_solve = [&](const RVec& bx, const RVec& be, RVec& ox, RVec& oy) {
      if (q > 0) {
        RVec t1 = llt.solve(bx);
        oy = se_llt.solve(rc.e_rows * t1 - be);
        ox = llt.solve(bx - rc.e_rows.transpose() * oy);
      } else {
        ox = llt.solve(bx);
      }
    };

    // Solves a Newton system for the given scaled centrality targets.
    std::vector<RMat> kmat(nb), dsb(nb), dzb(nb);
    RVec dx(n), dy(q);
    auto newton = [&](const std::vector<RMat>& k) {
      rhs_x = -rd;
      for (int j = 0; j < nb; ++j) {
        const BlockState& b = st[j];
        RMat qk(b.m, b.m);
        for (int r2 = 0; r2 < b.m; ++r2)
          for (int c2 = 0; c2 < b.m; ++c2)
            qk(r2, c2) = 2.0 * k[j](r2, c2) / (b.lambda(r2) + b.lambda(c2));
        RMat u = b.rinv.transpose() * qk * b.rinv;
        RMat rhs_mat = u - b.winv * b.rp * b.winv;
        kmat[j] = std::move(qk);
        for (size_t t = 0; t < rc.blocks[j].params.size(); ++t)
          rhs_x(rc.blocks[j].params[t]) += dot_coeff(rc.blocks[j].coeffs[t], rhs_mat);
      }
      kkt_solve(rhs_x, re, dx, dy);
      for (int round = 0; round < 2; ++round) {
        RVec res_x = rhs_x - apply_m(dx);
        if (q > 0) res_x -= rc.e_rows.transpose() * dy;
        RVec res_e = q > 0 ? RVec(re - rc.e_rows * dx) : RVec();
        RVec cx(n), cy(q);
        kkt_solve(res_x, res_e, cx, cy);
        dx += cx;
        if (q > 0) dy += cy;
      }
      for (int j = 0; j < nb; ++j) {
        const BlockState& b = st[j];
        dsb[j] = expand(rc.blocks[j], dx) + b.rp;
        RMat ds_scaled = b.rinv * dsb[j] * b.rinv.transpose();
        RMat dz_scaled = kmat[j] - ds_scaled;
        dzb[j] = b.rinv.transpose() * dz_scaled * b.rinv;
      }
    };

    // Predictor.
    std::vector<RMat> k_aff(nb);
    for (int j = 0; j < nb; ++j) {
      k_aff[j] = RMat::Zero(st[j].m, st[j].m);
      k_aff[j].diagonal() = -st[j].lambda.array().square();
    }
    newton(k_aff);

    double ap = 1.0, ad = 1.0;
    for (int j = 0; j < nb; ++j) {
      ap = std::min(ap, max_step(st[j].s, dsb[j], 1.0));
      ad = std::min(ad, max_step(st[j].z, dzb[j], 1.0));
    }
    double gap_aff = 0.0;
    for (int j = 0; j < nb; ++j)
      gap_aff += ((st[j].s + ap * dsb[j]).array() * (st[j].z + ad * dzb[j]).array()).sum();
    gap_aff = std::max(gap_aff, 0.0);
    double sigma = std::pow(gap_aff / gap, 3.0);
    sigma = std::min(1.0, std::max(1e-10, sigma));

    // Corrector: sigma*mu*I - Lambda^2 - sym(Dsa Dza).
    std::vector<RMat> k_cor(nb);
    for (int j = 0; j < nb; ++j) {
      const BlockState& b = st[j];
      RMat dsa = b.rinv * dsb[j] * b.rinv.transpose();
      RMat dza = b.r.transpose() * dzb[j] * b.r;
      RMat cross = dsa * dza;
      k_cor[j] = -(cross + cross.transpose()) / 2.0;
      k_cor[j].diagonal().array() += sigma * mu;
      k_cor[j].diagonal() -= b.lambda.array().square().matrix();
    }
    newton(k_cor);

    ap = 1.0;
    ad = 1.0;
    for (int j = 0; j < nb; ++j) {
      ap = std::min(ap, max_step(st[j].s, dsb[j], 10.0));
      ad = std::min(ad, max_step(st[j].z, dzb[j], 10.0));
    }
    double gamma = 0.9 + 0.09 * std::min(1.0, std::min(ap, ad));
    ap = std::min(1.0, gamma * ap);
    ad = std::min(1.0, gamma * ad);

    // Back off if rounding pushed an iterate out of the cone.
    for (int tries = 0; tries < 30; ++tries) {
      bool ok = true;
      for (int j = 0; j < nb && ok; ++j)
        ok = is_psd_chol(st[j].s + ap * dsb[j]) && is_psd_chol(st[j].z + ad * dzb[j]);
      if (ok) break;
      ap *= 0.7;
      ad *= 0.7;
    }

    x += ap * dx;
    if (q > 0) y += ad * dy;
    for (int j = 0; j < nb; ++j) {
      st[j].s += ap * dsb[j];
      st[j].z += ad * dzb[j];
    }
  }

  // Report the best iterate seen.
  x = best_x;
  sol.iterations = iter;
  sol.primal_value = best_pv + rc.obj_const;
  sol.dual_value = best_dv + rc.obj_const;
  sol.gap = best_gap;
  sol.max_feas_residual = best_feas;
  for (const Variable& v : prob.vars)
    sol.assignments[v.name] = rc.extract(prob, v.name, x);

  if (detected == Status::infeasible || detected == Status::unbounded) {
    sol.status = detected;
    sol.message = message;
    return sol;
  }
  if (best_gap <= 1e-7 && best_feas <= 1e-8)
    sol.status = Status::optimal;
  else if (best_gap <= 1e-5 && best_feas <= 1e-6)
    sol.status = Status::near_optimal;
  else
    sol.status = Status::solver_error;
  sol.message = message;
  return sol;
}

}  // namespace capbound::sdp
