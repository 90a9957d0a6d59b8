/*
 * Copyright 2026 The capbound authors
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "bounds.hpp"

#include <chrono>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace capbound::bounds {

using channels::ChoiOperator;
using la::CMat;
using sdp::AffineMatrixExpr;
using sdp::LinOp;
using sdp::SdpProblem;
using sdp::SdpSolution;

std::string measure_name(Measure m) {
  switch (m) {
    case Measure::beta: return "beta";
    case Measure::c_beta: return "c_beta";
    case Measure::upsilon_geo: return "upsilon_geo";
    case Measure::geo_channel_div: return "geo_channel_div";
    case Measure::d_h: return "d_h";
  }
  return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

long ms_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

BoundResult finish(const SdpProblem& p, const SdpSolution& s, Measure m,
                   double value, int ell, const Options& opts,
                   Clock::time_point t0) {
  BoundResult r;
  r.measure = m;
  r.value_bits = value;
  r.ell = ell;
  r.alpha = ell > 0 ? 1.0 + std::ldexp(1.0, -ell) : 0.0;
  r.channel_desc = opts.channel_desc;
  r.gap = s.gap;
  r.status = s.status;
  r.wall_ms = ms_since(t0);
  if (opts.run_certify &&
      (s.status == sdp::Status::optimal || s.status == sdp::Status::near_optimal))
    r.certified = sdp::certify(p, s).ok;
  return r;
}

// The four constraint families defining beta(M) <= lambda, over Hermitian
// variables s_var and v_var. The Choi operator enters either as a constant or
// as a declared variable; lambda either as a scalar variable or as the fixed
// cap 1.
struct BetaSpec {
  std::optional<CMat> gamma_const;
  std::string gamma_var;
  std::string s_var = "S";
  std::string v_var = "V";
  std::string lambda_var;  // empty: cap at 1
  std::array<int, 4> dims{};
};

void add_beta_constraints(SdpProblem& p, const BetaSpec& spec) {
  const auto [da, dao, db, dbo] = spec.dims;
  const int n = da * dao * db * dbo;
  la::SystemShape shape{da, dao, db, dbo};
  p.add_hermitian(spec.s_var, n);
  p.add_hermitian(spec.v_var, n);

  for (double sign : {+1.0, -1.0}) {
    AffineMatrixExpr e(n);
    e.add(spec.v_var, {LinOp::partial_transpose(shape, {2, 3})});
    if (spec.gamma_const)
      e.add_const(sign * la::partial_transpose(*spec.gamma_const, shape, {2, 3}));
    else
      e.add(spec.gamma_var, {LinOp::partial_transpose(shape, {2, 3}), LinOp::scale(sign)});
    p.psd.push_back(std::move(e));
  }
  for (double sign : {+1.0, -1.0}) {
    AffineMatrixExpr e(n);
    e.add(spec.s_var);
    e.add(spec.v_var, {LinOp::scale(sign)});
    p.psd.push_back(std::move(e));
  }
  {
    AffineMatrixExpr cap(db);
    cap.add(spec.s_var, {LinOp::partial_trace(shape, {0, 1, 3}), LinOp::scale(-1.0 / da)});
    if (spec.lambda_var.empty())
      cap.add_const(la::identity(db));
    else
      cap.add(spec.lambda_var, {LinOp::kron_left(la::identity(db))});
    p.psd.push_back(std::move(cap));
  }
  {
    AffineMatrixExpr ns(da * db * dbo);
    ns.add(spec.s_var, {LinOp::partial_trace(shape, {1})});
    ns.add(spec.s_var, {LinOp::partial_trace(shape, {0, 1}),
                        LinOp::kron_left(la::maximally_mixed(da)), LinOp::scale(-1.0)});
    p.eq.push_back(std::move(ns));
  }
}

std::array<int, 4> bipartite_dims(const ChoiOperator& b) {
  return {b.legs[0].dim, b.legs[1].dim, b.legs[2].dim, b.legs[3].dim};
}

// Matrix-geometric-mean block chain encoding W >= sigma #_{1+2^-ell} rho
// in the Loewner sense. Chain variables are compressed onto the support of
// rho, which keeps the blocks strictly feasible when rho is rank deficient
// (unitary-channel Choi operators in particular); the compression is exact
// because every feasible chain matrix is supported there anyway.
struct ChainSpec {
  CMat rho;
  std::optional<CMat> sigma_const;
  std::string sigma_var;
  double sigma_scale = 1.0;
  int ell = 4;
  std::string w_var = "W";
  std::string prefix = "N";
};

void add_chain_constraints(SdpProblem& p, const ChainSpec& spec) {
  if (spec.ell < 1 || spec.ell > 10)
    throw std::invalid_argument("geometric-Renyi chain: ell must be in [1,10]");
  const int dim = static_cast<int>(spec.rho.rows());
  CMat v = la::support_isometry(spec.rho);
  const int r = static_cast<int>(v.cols());
  CMat rho_c = v.adjoint() * spec.rho * v;
  rho_c = CMat((rho_c + rho_c.adjoint()).eval() / 2.0);

  auto var_name = [&](int i) { return spec.prefix + std::to_string(i); };
  for (int i = 1; i <= spec.ell; ++i) p.add_hermitian(var_name(i), r);
  p.add_hermitian(spec.w_var, dim);

  // Off-diagonal placement of X as [[0, L X], [X L^dag, 0]] in a 2x2 block
  // matrix with block dimensions (top, rows(L) == top ? ... ) -- see usage.
  auto offdiag = [&](int top_dim, const CMat& left) {
    const int bot_dim = r;
    CMat a = CMat::Zero(top_dim + bot_dim, left.cols());
    a.topRows(top_dim) = left;
    CMat b = CMat::Zero(top_dim + bot_dim, r);
    b.bottomRows(bot_dim) = la::identity(r);
    return LinOp::conj_pair(a, b);
  };

  // First link: [[sigma, V n1], [n1 V^dag, rho_c]].
  {
    AffineMatrixExpr e(dim + r);
    CMat c = CMat::Zero(dim + r, dim + r);
    c.bottomRightCorner(r, r) = rho_c;
    e.add_const(c);
    if (spec.sigma_const) {
      CMat s0 = CMat::Zero(dim + r, dim + r);
      s0.topLeftCorner(dim, dim) = spec.sigma_scale * (*spec.sigma_const);
      e.add_const(s0);
    } else {
      auto ops = sdp::block_embed({dim, r}, 0, 0);
      ops.insert(ops.begin(), LinOp::scale(spec.sigma_scale));
      e.add(spec.sigma_var, ops);
    }
    e.add(var_name(1), {offdiag(dim, v)});
    p.psd.push_back(std::move(e));
  }
  // Middle links: [[n_{i-1}, n_i], [n_i, rho_c]].
  for (int i = 2; i <= spec.ell; ++i) {
    AffineMatrixExpr e(2 * r);
    CMat c = CMat::Zero(2 * r, 2 * r);
    c.bottomRightCorner(r, r) = rho_c;
    e.add_const(c);
    e.add(var_name(i - 1), sdp::block_embed({r, r}, 0, 0));
    e.add(var_name(i), {offdiag(r, la::identity(r))});
    p.psd.push_back(std::move(e));
  }
  // Closing link: [[W, V rho_c], [rho_c V^dag, n_ell]].
  {
    AffineMatrixExpr e(dim + r);
    CMat c = CMat::Zero(dim + r, dim + r);
    c.topRightCorner(dim, r) = v * rho_c;
    c.bottomLeftCorner(r, dim) = rho_c * v.adjoint();
    e.add_const(c);
    e.add(spec.w_var, sdp::block_embed({dim, r}, 0, 0));
    e.add(var_name(spec.ell), sdp::block_embed({dim, r}, 1, 1));
    p.psd.push_back(std::move(e));
  }
}

void require_same_legs(const ChoiOperator& a, const ChoiOperator& b) {
  if (a.legs.size() != b.legs.size())
    throw std::invalid_argument("channel pair: leg count mismatch");
  for (size_t i = 0; i < a.legs.size(); ++i)
    if (a.legs[i].dim != b.legs[i].dim || a.legs[i].role != b.legs[i].role)
      throw std::invalid_argument("channel pair: leg mismatch");
}

}  // namespace

BoundResult beta(const ChoiOperator& choi, const Options& opts) {
  auto t0 = Clock::now();
  ChoiOperator b = channels::as_bipartite(choi);
  la::require_hermitian(b.matrix, "beta", 1e-9);
  SdpProblem p;
  p.add_scalar("lam", true);
  BetaSpec spec;
  spec.gamma_const = b.matrix;
  spec.lambda_var = "lam";
  spec.dims = bipartite_dims(b);
  add_beta_constraints(p, spec);
  p.minimize_scalar("lam");
  SdpSolution s = sdp::solve(p, opts.solver);
  return finish(p, s, Measure::beta, s.primal_value, 0, opts, t0);
}

BoundResult beta_p2p(const ChoiOperator& choi, const Options& opts) {
  auto t0 = Clock::now();
  if (!choi.is_point_to_point())
    throw std::invalid_argument("beta_p2p: expected point-to-point legs");
  la::require_hermitian(choi.matrix, "beta_p2p", 1e-9);
  const int da = choi.legs[0].dim, dbo = choi.legs[1].dim;
  la::SystemShape shape{da, dbo};
  SdpProblem p;
  p.add_hermitian("S", dbo);
  p.add_hermitian("V", da * dbo);
  for (double sign : {+1.0, -1.0}) {
    AffineMatrixExpr e(da * dbo);
    e.add("V", {LinOp::partial_transpose(shape, {1})});
    e.add_const(sign * la::partial_transpose(choi.matrix, shape, {1}));
    p.psd.push_back(std::move(e));
  }
  for (double sign : {+1.0, -1.0}) {
    AffineMatrixExpr e(da * dbo);
    e.add("S", {LinOp::kron_left(la::identity(da))});
    e.add("V", {LinOp::scale(sign)});
    p.psd.push_back(std::move(e));
  }
  p.minimize_trace("S", la::identity(dbo));
  SdpSolution s = sdp::solve(p, opts.solver);
  return finish(p, s, Measure::beta, s.primal_value, 0, opts, t0);
}

BoundResult c_beta(const ChoiOperator& choi, const Options& opts) {
  BoundResult r = beta(choi, opts);
  r.measure = Measure::c_beta;
  r.value_bits = std::log2(std::max(r.value_bits, 1e-300));
  return r;
}

BoundResult geo_channel_div(const ChoiOperator& n, const ChoiOperator& m, int ell,
                            const Options& opts) {
  auto t0 = Clock::now();
  require_same_legs(n, m);
  la::require_hermitian(m.matrix, "geo_channel_div", 1e-9);
  SdpProblem p;
  p.add_scalar("y", true);
  ChainSpec spec;
  spec.rho = n.matrix;
  spec.sigma_const = m.matrix;
  spec.ell = ell;
  add_chain_constraints(p, spec);
  {
    const int din = n.dim_in();
    AffineMatrixExpr cap(din);
    cap.add("y", {LinOp::kron_left(la::identity(din))});
    cap.add("W", {LinOp::partial_trace(n.shape(), n.leg_ids(channels::LegRole::out)),
                  LinOp::scale(-1.0)});
    p.psd.push_back(std::move(cap));
  }
  p.minimize_scalar("y");
  SdpSolution s = sdp::solve(p, opts.solver);
  double val = std::ldexp(1.0, ell) * std::log2(std::max(s.primal_value, 1e-300));
  return finish(p, s, Measure::geo_channel_div, val, ell, opts, t0);
}

BoundResult geo_renyi_div_states(const la::CMat& rho, const la::CMat& sigma,
                                 int ell, const Options& opts) {
  ChoiOperator n, m;
  n.matrix = rho;
  n.legs = {channels::Leg{"A", 1, channels::LegRole::in},
            channels::Leg{"B'", static_cast<int>(rho.rows()), channels::LegRole::out}};
  m.matrix = sigma;
  m.legs = n.legs;
  return geo_channel_div(n, m, ell, opts);
}

BoundResult upsilon_geo(const ChoiOperator& n, int ell, const Options& opts) {
  auto t0 = Clock::now();
  ChoiOperator b = channels::as_bipartite(n);
  SdpProblem p;
  p.add_scalar("y", true);
  p.add_hermitian("GM", b.total_dim());
  {
    AffineMatrixExpr pos(b.total_dim());
    pos.add("GM");
    p.psd.push_back(std::move(pos));
  }
  ChainSpec chain;
  chain.rho = b.matrix;
  chain.sigma_var = "GM";
  chain.ell = ell;
  add_chain_constraints(p, chain);
  {
    const int din = b.dim_in();
    AffineMatrixExpr cap(din);
    cap.add("y", {LinOp::kron_left(la::identity(din))});
    cap.add("W", {LinOp::partial_trace(b.shape(), b.leg_ids(channels::LegRole::out)),
                  LinOp::scale(-1.0)});
    p.psd.push_back(std::move(cap));
  }
  BetaSpec bspec;
  bspec.gamma_var = "GM";
  bspec.dims = bipartite_dims(b);
  add_beta_constraints(p, bspec);
  p.minimize_scalar("y");
  SdpSolution s = sdp::solve(p, opts.solver);
  double val = std::ldexp(1.0, ell) * std::log2(std::max(s.primal_value, 1e-300));
  return finish(p, s, Measure::upsilon_geo, val, ell, opts, t0);
}

BoundResult upsilon_geo_symmetric(const ChoiOperator& n, int ell,
                                  const symmetry::SymmetryGroup& group,
                                  const Options& opts) {
  auto t0 = Clock::now();
  ChoiOperator b = channels::as_bipartite(n);
  if (!symmetry::check_bicovariant(b, group))
    throw std::invalid_argument("upsilon_geo_symmetric: channel is not bicovariant "
                                "with respect to the given group");
  const double norm = 1.0 / (b.legs[0].dim * b.legs[2].dim);
  SdpProblem p;
  p.add_hermitian("GM", b.total_dim());
  {
    AffineMatrixExpr pos(b.total_dim());
    pos.add("GM");
    p.psd.push_back(std::move(pos));
  }
  ChainSpec chain;
  chain.rho = norm * b.matrix;  // N(Phi (x) Phi) with maximally entangled inputs
  chain.sigma_var = "GM";
  chain.sigma_scale = norm;
  chain.ell = ell;
  add_chain_constraints(p, chain);
  BetaSpec bspec;
  bspec.gamma_var = "GM";
  bspec.dims = bipartite_dims(b);
  add_beta_constraints(p, bspec);
  for (auto& e : symmetry::covariance_constraints("GM", b, group))
    p.eq.push_back(std::move(e));
  p.minimize_trace("W", la::identity(b.total_dim()));
  SdpSolution s = sdp::solve(p, opts.solver);
  double val = std::ldexp(1.0, ell) * std::log2(std::max(s.primal_value, 1e-300));
  return finish(p, s, Measure::upsilon_geo, val, ell, opts, t0);
}

double comparator_test_value(const ChoiOperator& m, int d) {
  if (!m.is_point_to_point() || m.legs[0].dim != d || m.legs[1].dim != d)
    throw std::invalid_argument("comparator_test_value: expected d -> d legs");
  CMat phibar = channels::max_classical_corr(d);
  CMat out = channels::apply(m, phibar, la::SystemShape{d, d}, 1);
  return (channels::comparator_projector(d) * out).trace().real();
}

CheckReport comparator_bound_check(const ChoiOperator& m, int d, const Options& opts) {
  CheckReport rep;
  BoundResult bv = beta_p2p(m, opts);
  if (bv.status != sdp::Status::optimal && bv.status != sdp::Status::near_optimal) {
    rep.detail = "beta solve failed";
    return rep;
  }
  if (bv.value_bits > 1.0 + 1e-7) {
    rep.detail = "precondition beta(M) <= 1 violated: beta = " +
                 std::to_string(bv.value_bits);
    return rep;
  }
  rep.lhs = comparator_test_value(m, d);
  rep.rhs = 1.0 / d;
  rep.pass = rep.lhs <= rep.rhs + 1e-7;
  rep.detail = "Tr[Pi M(Phibar)] = " + std::to_string(rep.lhs);
  return rep;
}

CheckReport err_bound_check(const ChoiOperator& n, int d, const Options& opts) {
  CheckReport rep;
  if (!n.is_point_to_point() || n.legs[0].dim != d || n.legs[1].dim != d)
    throw std::invalid_argument("err_bound_check: expected d -> d legs");
  CMat phibar = channels::max_classical_corr(d);
  la::SystemShape two{d, d};
  CMat omega = channels::apply(n, phibar, two, 1);
  double eps = 0.5 * la::trace_norm(omega - phibar);
  if (eps >= 1.0 - 1e-12) {
    rep.pass = true;
    rep.detail = "eps = 1, degenerate case skipped";
    return rep;
  }

  // Canonical comparison maps with beta <= 1: scaled complete dephasing,
  // replacer to the maximally mixed state, and their midpoint.
  channels::ChannelFamily deph{channels::Kind::dephasing, d, 1.0};
  channels::ChannelFamily repl{channels::Kind::replacer, d};
  CMat g_deph = channels::make(deph).matrix / d;
  CMat g_repl = channels::make(repl).matrix;
  std::vector<CMat> candidates{g_deph, g_repl, 0.5 * (g_deph + g_repl)};

  rep.lhs = std::log2(double(d));
  rep.rhs = std::numeric_limits<double>::infinity();
  for (const CMat& gm : candidates) {
    ChoiOperator m;
    m.matrix = gm;
    m.legs = n.legs;
    CMat sigma = channels::apply(m, phibar, two, 1);
    if (!divergences::support_contained(omega, sigma)) continue;
    for (int ell : {2, 4}) {
      BoundResult dv = geo_renyi_div_states(omega, sigma, ell, opts);
      if (dv.status != sdp::Status::optimal && dv.status != sdp::Status::near_optimal)
        continue;
      double alpha = 1.0 + std::ldexp(1.0, -ell);
      double rhs = dv.value_bits + alpha / (alpha - 1.0) * std::log2(1.0 / (1.0 - eps));
      rep.rhs = std::min(rep.rhs, rhs);
    }
  }
  rep.pass = rep.lhs <= rep.rhs + 1e-7;
  rep.detail = "eps = " + std::to_string(eps) + ", min rhs = " + std::to_string(rep.rhs);
  return rep;
}

double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

}  // namespace capbound::bounds
