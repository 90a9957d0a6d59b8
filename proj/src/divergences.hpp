/*
 * Copyright 2026 The capbound authors
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include "la.hpp"
#include "sdp_problem.hpp"

// Spectral (eigendecomposition-based) evaluation of quantum divergences, used
// as ground truth for the SDP formulations elsewhere. All outputs are in bits
// (base-2 logarithms). Infinite values are an explicit flag, never a sentinel
// float. The epsilon -> 0+ regularized definitions are realized by support
// projection, which matches the limit whenever supp(rho) is contained in
// supp(sigma).

namespace capbound::divergences {

enum class Kind {
  relative_entropy,
  sandwiched,
  geometric,
  belavkin_staszewski,
  hypothesis_testing,
  max,
};

struct DivergenceValue {
  double bits = 0.0;
  bool infinite = false;
  Kind kind = Kind::relative_entropy;
  double alpha = 0.0;
  double epsilon = 0.0;

  double value() const;  // throws if infinite
};

bool support_contained(const la::CMat& rho, const la::CMat& sigma,
                       double tol = 1e-9);

DivergenceValue rel_ent(const la::CMat& rho, const la::CMat& sigma);

// alpha in (0,1) u (1,2]
DivergenceValue geo_renyi(const la::CMat& rho, const la::CMat& sigma, double alpha);

// alpha in [1/2,1) u (1,inf)
DivergenceValue sandwiched_renyi(const la::CMat& rho, const la::CMat& sigma,
                                 double alpha);

DivergenceValue bs_rel_ent(const la::CMat& rho, const la::CMat& sigma);

DivergenceValue max_rel_ent(const la::CMat& rho, const la::CMat& sigma);

// Solved as an SDP: -log2 min{ Tr[L sigma] : Tr[L rho] >= 1-eps, 0 <= L <= I }.
DivergenceValue hypothesis_testing(const la::CMat& rho, const la::CMat& sigma,
                                   double epsilon,
                                   const sdp::SolveOptions& opts = {});

// 2^{(1/2) geo_renyi_{3/2}} + 2^{-(1/2) geo_renyi_{1/2}} + 1, always >= 3.
double nu_hat(const la::CMat& rho, const la::CMat& sigma);

// Weighted matrix geometric mean  x^{1/2} (x^{-1/2} y x^{-1/2})^t x^{1/2},
// support-projected; the algebraic backbone behind the Renyi SDP chains.
la::CMat geometric_mean(const la::CMat& x, const la::CMat& y, double t);

}  // namespace capbound::divergences
