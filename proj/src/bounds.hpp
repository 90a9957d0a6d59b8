/*
 * Copyright 2026 The capbound authors
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <string>

#include "channels.hpp"
#include "divergences.hpp"
#include "sdp_problem.hpp"
#include "symmetry.hpp"

// SDP bounds on forward classical communication.
//
// beta compares a bipartite map against the non-signaling PPT-preserving
// class; C_beta = log2 beta upper-bounds the forward classical capacity.
// upsilon_geo minimizes the geometric-Renyi channel divergence, at dyadic
// alpha = 1 + 2^-ell, against completely positive maps M with beta(M) <= 1;
// it upper-bounds the classical-feedback-assisted capacity of point-to-point
// channels. The geometric-Renyi SDP uses the matrix-geometric-mean block
// chain; its correctness is gated by spectral oracles in the test suites, not
// assumed.

namespace capbound::bounds {

enum class Measure { beta, c_beta, upsilon_geo, geo_channel_div, d_h };

std::string measure_name(Measure m);

struct BoundResult {
  double value_bits = 0.0;  // for measure == beta this is the raw beta value
  Measure measure = Measure::beta;
  double alpha = 0.0;  // 1 + 2^-ell where applicable
  int ell = 0;
  std::string channel_desc;
  double gap = 0.0;
  sdp::Status status = sdp::Status::solver_error;
  long wall_ms = 0;
  bool certified = false;
};

struct Options {
  sdp::SolveOptions solver;
  bool run_certify = true;
  std::string channel_desc;
};

// min lambda subject to the four constraint families on Hermitian S, V:
//   (1/d_A) Tr_{A A' B'}[S] <= lambda I_B,
//   T_{BB'}(V +- Choi) >= 0,   S +- V >= 0,
//   Tr_{A'}[S] = pi_A (x) Tr_{AA'}[S].
// Accepts Hermitian (not necessarily CP) Choi operators; point-to-point
// inputs are promoted with trivial legs.
BoundResult beta(const channels::ChoiOperator& choi, const Options& opts = {});

// Reduced point-to-point program: min Tr[S_B'] with T_B'(V +- Choi) >= 0 and
// I_A (x) S_B' +- V >= 0.
BoundResult beta_p2p(const channels::ChoiOperator& choi, const Options& opts = {});

BoundResult c_beta(const channels::ChoiOperator& choi, const Options& opts = {});

// Geometric-Renyi channel divergence D-hat_alpha(N || M) at alpha = 1+2^-ell
// via the geometric-mean block chain over Choi operators. Support
// incompatibility surfaces as an infeasible/failed solve.
BoundResult geo_channel_div(const channels::ChoiOperator& n,
                            const channels::ChoiOperator& m, int ell,
                            const Options& opts = {});

// State-pair convenience wrapper (trivial input legs).
BoundResult geo_renyi_div_states(const la::CMat& rho, const la::CMat& sigma,
                                 int ell, const Options& opts = {});

// Upsilon-hat_alpha: joint SDP over M (Choi variable, CP, beta(M) <= 1) and
// the divergence chain.
BoundResult upsilon_geo(const channels::ChoiOperator& n, int ell,
                        const Options& opts = {});

// Bicovariant channels: fixed maximally entangled inputs, covariant M.
BoundResult upsilon_geo_symmetric(const channels::ChoiOperator& n, int ell,
                                  const symmetry::SymmetryGroup& group,
                                  const Options& opts = {});

struct CheckReport {
  bool pass = false;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string detail;
};

// Tr[Pi M(Phi-bar)] for a point-to-point map with d-dimensional legs.
double comparator_test_value(const channels::ChoiOperator& m, int d);

// Verifies beta(m) <= 1 + 1e-7, then checks the comparator test success
// probability is at most 1/d + 1e-7.
CheckReport comparator_bound_check(const channels::ChoiOperator& m, int d,
                                   const Options& opts = {});

// One-sided numeric check of the error bound: with
// eps = (1/2) || N(Phi-bar) - Phi-bar ||_1 < 1, checks
//   log2 d <= min_M { D-hat_alpha(N(Phi-bar) || M(Phi-bar))
//                     + (alpha/(alpha-1)) log2(1/(1-eps)) }
// over three canonical maps with beta <= 1 (scaled dephasing, replacer, and
// their midpoint), for ell in {2, 4}.
CheckReport err_bound_check(const channels::ChoiOperator& n, int d,
                            const Options& opts = {});

double binary_entropy(double x);

}  // namespace capbound::bounds
