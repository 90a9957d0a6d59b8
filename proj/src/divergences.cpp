/*
 * Copyright 2026 The capbound authors
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "divergences.hpp"

#include <cmath>
#include <stdexcept>

namespace capbound::divergences {

using la::CMat;

double DivergenceValue::value() const {
  if (infinite) throw std::domain_error("DivergenceValue: infinite");
  return bits;
}

bool support_contained(const la::CMat& rho, const la::CMat& sigma, double tol) {
  CMat p = la::support_projector(sigma);
  CMat res = rho - p * rho * p;
  double scale = 1.0 + rho.cwiseAbs().maxCoeff();
  return res.cwiseAbs().maxCoeff() <= tol * scale;
}

namespace {

const double kLog2 = std::log(2.0);

void check_inputs(const la::CMat& rho, const la::CMat& sigma, const char* who) {
  la::require_hermitian(rho, who, 1e-9);
  la::require_hermitian(sigma, who, 1e-9);
  if (rho.rows() != sigma.rows())
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

// Pseudo-power on the support.
CMat pseudo_pow(const la::CMat& m, double t) {
  return la::mat_fn(m, [t](double x) { return x > 0 ? std::pow(x, t) : 0.0; });
}

}  // namespace

DivergenceValue rel_ent(const la::CMat& rho, const la::CMat& sigma) {
  check_inputs(rho, sigma, "rel_ent");
  DivergenceValue out;
  out.kind = Kind::relative_entropy;
  if (!support_contained(rho, sigma)) {
    out.infinite = true;
    return out;
  }
  CMat log_rho = la::mat_fn(rho, [](double x) { return x > 0 ? std::log2(x) : 0.0; });
  CMat log_sigma = la::mat_fn(sigma, [](double x) { return x > 0 ? std::log2(x) : 0.0; });
  out.bits = (rho * (log_rho - log_sigma)).trace().real();
  return out;
}

DivergenceValue geo_renyi(const la::CMat& rho, const la::CMat& sigma, double alpha) {
  check_inputs(rho, sigma, "geo_renyi");
  if (!((alpha > 0.0 && alpha < 1.0) || (alpha > 1.0 && alpha <= 2.0)))
    throw std::invalid_argument("geo_renyi: alpha outside (0,1) u (1,2]");
  DivergenceValue out;
  out.kind = Kind::geometric;
  out.alpha = alpha;
  if (alpha > 1.0 && !support_contained(rho, sigma)) {
    out.infinite = true;
    return out;
  }
  CMat sig_inv_half = pseudo_pow(sigma, -0.5);
  CMat a = sig_inv_half * rho * sig_inv_half;
  a = CMat((a + a.adjoint()).eval() / 2.0);
  CMat a_pow = la::mat_fn(a, [alpha](double x) { return x > 0 ? std::pow(x, alpha) : 0.0; });
  double q = (sigma * a_pow).trace().real();
  out.bits = std::log2(std::max(q, 1e-300)) / (alpha - 1.0);
  return out;
}

DivergenceValue sandwiched_renyi(const la::CMat& rho, const la::CMat& sigma,
                                 double alpha) {
  check_inputs(rho, sigma, "sandwiched_renyi");
  if (!(alpha >= 0.5 && alpha != 1.0))
    throw std::invalid_argument("sandwiched_renyi: alpha outside [1/2,1) u (1,inf)");
  DivergenceValue out;
  out.kind = Kind::sandwiched;
  out.alpha = alpha;
  if (alpha > 1.0 && !support_contained(rho, sigma)) {
    out.infinite = true;
    return out;
  }
  const double e = (1.0 - alpha) / (2.0 * alpha);
  CMat sig_e = pseudo_pow(sigma, e);
  CMat inner = sig_e * rho * sig_e;
  inner = CMat((inner + inner.adjoint()).eval() / 2.0);
  CMat inner_pow =
      la::mat_fn(inner, [alpha](double x) { return x > 0 ? std::pow(x, alpha) : 0.0; });
  double q = inner_pow.trace().real();
  out.bits = std::log2(std::max(q, 1e-300)) / (alpha - 1.0);
  return out;
}

DivergenceValue bs_rel_ent(const la::CMat& rho, const la::CMat& sigma) {
  check_inputs(rho, sigma, "bs_rel_ent");
  DivergenceValue out;
  out.kind = Kind::belavkin_staszewski;
  if (!support_contained(rho, sigma)) {
    out.infinite = true;
    return out;
  }
  CMat rho_half = pseudo_pow(rho, 0.5);
  CMat sig_inv = pseudo_pow(sigma, -1.0);
  CMat m = rho_half * sig_inv * rho_half;
  m = CMat((m + m.adjoint()).eval() / 2.0);
  CMat log_m = la::mat_fn(m, [](double x) { return x > 0 ? std::log2(x) : 0.0; });
  out.bits = (rho * log_m).trace().real();
  return out;
}

DivergenceValue max_rel_ent(const la::CMat& rho, const la::CMat& sigma) {
  check_inputs(rho, sigma, "max_rel_ent");
  DivergenceValue out;
  out.kind = Kind::max;
  if (!support_contained(rho, sigma)) {
    out.infinite = true;
    return out;
  }
  CMat sig_inv_half = pseudo_pow(sigma, -0.5);
  CMat a = sig_inv_half * rho * sig_inv_half;
  a = CMat((a + a.adjoint()).eval() / 2.0);
  out.bits = std::log2(std::max(la::op_norm(a), 1e-300));
  return out;
}

DivergenceValue hypothesis_testing(const la::CMat& rho, const la::CMat& sigma,
                                   double epsilon, const sdp::SolveOptions& opts) {
  check_inputs(rho, sigma, "hypothesis_testing");
  if (epsilon < 0.0 || epsilon > 1.0)
    throw std::invalid_argument("hypothesis_testing: epsilon outside [0,1]");
  DivergenceValue out;
  out.kind = Kind::hypothesis_testing;
  out.epsilon = epsilon;
  if (epsilon == 1.0) {
    out.infinite = true;  // L = 0 is feasible, optimum 0
    return out;
  }
  const int d = static_cast<int>(rho.rows());
  sdp::SdpProblem p;
  p.add_hermitian("L", d);
  sdp::AffineMatrixExpr pos(d);
  pos.add("L");
  p.psd.push_back(pos);
  sdp::AffineMatrixExpr below_id(d);
  below_id.add("L", {sdp::LinOp::scale(-1.0)});
  below_id.add_const(la::identity(d));
  p.psd.push_back(below_id);
  sdp::AffineMatrixExpr success(1);
  success.add("L", {sdp::LinOp::inner(rho)});
  success.add_const(-(1.0 - epsilon) * la::CMat::Identity(1, 1));
  p.psd.push_back(success);
  p.minimize_trace("L", sigma);

  sdp::SdpSolution s = sdp::solve(p, opts);
  if (s.status != sdp::Status::optimal && s.status != sdp::Status::near_optimal)
    throw std::runtime_error("hypothesis_testing: solver failed (" + s.message + ")");
  double beta_err = std::max(s.primal_value, 0.0);
  if (beta_err <= 1e-300) {
    out.infinite = true;
    return out;
  }
  out.bits = -std::log2(beta_err);
  return out;
}

double nu_hat(const la::CMat& rho, const la::CMat& sigma) {
  if (!support_contained(rho, sigma))
    throw std::invalid_argument("nu_hat: support violation");
  double d32 = geo_renyi(rho, sigma, 1.5).value();
  double d12 = geo_renyi(rho, sigma, 0.5).value();
  return std::exp2(0.5 * d32) + std::exp2(-0.5 * d12) + 1.0;
}

la::CMat geometric_mean(const la::CMat& x, const la::CMat& y, double t) {
  CMat x_half = pseudo_pow(x, 0.5);
  CMat x_inv_half = pseudo_pow(x, -0.5);
  CMat mid = x_inv_half * y * x_inv_half;
  mid = CMat((mid + mid.adjoint()).eval() / 2.0);
  CMat mid_pow = la::mat_fn(mid, [t](double v) { return v > 0 ? std::pow(v, t) : 0.0; });
  CMat out = x_half * mid_pow * x_half;
  return (out + out.adjoint()) / 2.0;
}

}  // namespace capbound::divergences
