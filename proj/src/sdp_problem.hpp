/*
 * Copyright 2026 The capbound authors
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <map>
#include <string>
#include <vector>

#include "la.hpp"

// Declarative conic programs over complex Hermitian matrix variables.
//
// An SdpProblem is a list of Hermitian (or scalar) variables, affine matrix
// expressions constrained PSD or zero, and a linear objective to minimize.
// Every coefficient map is Hermiticity preserving by construction, so an
// expression evaluates to a Hermitian matrix whenever the Hermitian variables
// are Hermitian. Solving goes through the complex -> real symmetric embedding
// (realify) and a native interior-point backend (sdp_solver).

namespace capbound::sdp {

enum class VarKind { hermitian, scalar };

struct Variable {
  std::string name;
  int dim = 1;  // complex dimension; 1 for scalars
  VarKind kind = VarKind::hermitian;
  bool nonneg = false;  // scalars only: adds a one-dimensional cone constraint
};

// Hermiticity-preserving linear primitives, applied left to right.
struct LinOp {
  enum class Tag {
    scale,              // X -> r X
    conj,               // X -> A X A^dag
    conj_pair,          // X -> A X B^dag + B X A^dag
    kron_left,          // X -> C (x) X
    kron_right,         // X -> X (x) C
    partial_trace,      // over subsystem ids of shape
    partial_transpose,  // on subsystem ids of shape
    permute,            // reorder subsystems
    inner,              // X -> Tr[C X] as a 1x1 matrix (C Hermitian)
  };
  Tag tag;
  double r = 1.0;
  la::CMat a, b, c;
  la::SystemShape shape;
  std::vector<int> ids;

  static LinOp scale(double r);
  static LinOp conj(la::CMat a);
  static LinOp conj_pair(la::CMat a, la::CMat b);
  static LinOp kron_left(la::CMat c);
  static LinOp kron_right(la::CMat c);
  static LinOp partial_trace(la::SystemShape shape, std::vector<int> ids);
  static LinOp partial_transpose(la::SystemShape shape, std::vector<int> ids);
  static LinOp permute(la::SystemShape shape, std::vector<int> perm);
  static LinOp inner(la::CMat c);

  // Dense application (certification path).
  la::CMat apply(const la::CMat& x) const;
  int out_dim(int in_dim) const;
};

// Embed X as the (row, col) block of a block matrix with the given block
// offsets; off-diagonal placements add the mirrored adjoint block.
std::vector<LinOp> block_embed(const std::vector<int>& block_dims, int row,
                               int col);

struct Term {
  std::string var;
  std::vector<LinOp> ops;
};

struct AffineMatrixExpr {
  int dim = 0;  // complex output dimension
  std::vector<Term> terms;
  la::CMat constant;  // dim x dim, Hermitian (zero if unset)

  AffineMatrixExpr() = default;
  explicit AffineMatrixExpr(int d) : dim(d), constant(la::CMat::Zero(d, d)) {}

  AffineMatrixExpr& add(const std::string& var, std::vector<LinOp> ops = {});
  AffineMatrixExpr& add_const(const la::CMat& c);

  la::CMat eval(const std::map<std::string, la::CMat>& assign) const;
};

struct ObjectiveTerm {
  std::string var;
  la::CMat coeff;      // Hermitian; objective contribution Re Tr[coeff X]
  double scalar = 0.0; // for scalar variables: scalar * x
};

struct SdpProblem {
  std::vector<Variable> vars;
  std::vector<AffineMatrixExpr> psd;
  std::vector<AffineMatrixExpr> eq;
  std::vector<ObjectiveTerm> objective;
  double objective_constant = 0.0;

  Variable& add_hermitian(const std::string& name, int dim);
  Variable& add_scalar(const std::string& name, bool nonneg = false);
  const Variable& find_var(const std::string& name) const;

  void minimize_scalar(const std::string& name, double weight = 1.0);
  void minimize_trace(const std::string& name, const la::CMat& coeff);

  double eval_objective(const std::map<std::string, la::CMat>& assign) const;

  std::string dump_json() const;  // debugging aid, format not stable
};

// --- complex -> real symmetric embedding -----------------------------------

// H = H_R + i H_I maps to [[H_R, -H_I], [H_I, H_R]]; PSD-ness is preserved in
// both directions and every eigenvalue is doubled in multiplicity.
la::RMat realify_matrix(const la::CMat& h);
la::CMat derealify_matrix(const la::RMat& r);

// Real symmetric coefficient matrix in upper-triangle coordinate form.
struct SparseSym {
  std::vector<int> rows, cols;  // row <= col
  std::vector<double> vals;
  void add(int r, int c, double v);
};

struct CompiledBlock {
  int mdim = 0;                   // real dimension (2x complex, or 1 for scalars)
  std::vector<int> params;        // parameter indices with nonzero coefficients
  std::vector<SparseSym> coeffs;  // aligned with params
  la::RMat f0;
};

struct ParamInfo {
  int var_index;
  int i, j;   // matrix position (i <= j); i == j for diagonal and scalars
  int part;   // 0 diag/scalar, 1 real off-diagonal, 2 imag off-diagonal
};

// Real conic problem: minimize g.x subject to
//   F0_j + sum_p x_p F_{j,p}  PSD   for each block j,
//   E x = f.
// Objective coefficients carry the 1/2 trace-doubling compensation so the
// optimum value equals the complex problem's optimum.
struct RealConicProblem {
  int nparams = 0;
  la::RVec g;
  double obj_const = 0.0;
  std::vector<CompiledBlock> blocks;
  la::RMat e_rows;  // orthonormalized equality rows (possibly 0 x n)
  la::RVec f;
  std::vector<ParamInfo> pinfo;
  std::vector<Variable> vars;
  std::vector<int> var_offset;  // first parameter index of each variable
  bool inconsistent_eq = false; // equality system detected infeasible

  la::CMat extract(const SdpProblem& p, const std::string& var,
                   const la::RVec& x) const;
};

RealConicProblem realify(const SdpProblem& p);

enum class Status { optimal, near_optimal, infeasible, unbounded, solver_error };

std::string status_name(Status s);

struct SdpSolution {
  Status status = Status::solver_error;
  double primal_value = 0.0;
  double dual_value = 0.0;
  std::map<std::string, la::CMat> assignments;  // scalars as 1x1 matrices
  double max_feas_residual = 0.0;               // relative
  double gap = 0.0;                             // relative duality gap
  int iterations = 0;
  std::string message;

  double scalar(const std::string& name) const;
};

struct SolveOptions {
  double tol_gap = 5e-10;
  double tol_feas = 1e-10;
  int max_iters = 120;
  bool verbose = false;
};

SdpSolution solve(const SdpProblem& p, const SolveOptions& opts = {});

struct CertifyReport {
  bool ok = false;
  double worst_psd_violation = 0.0;  // most negative eigenvalue, relative
  double worst_eq_residual = 0.0;    // max abs entry, relative
  double objective_mismatch = 0.0;
  double gap = 0.0;
  std::string detail;
};

// Independently re-evaluates every constraint at the returned assignments.
CertifyReport certify(const SdpProblem& p, const SdpSolution& s,
                      double psd_tol = 1e-7, double eq_tol = 1e-7,
                      double gap_tol = 1e-7);

}  // namespace capbound::sdp
