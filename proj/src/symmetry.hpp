/*
 * Copyright 2026 The capbound authors
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <optional>
#include <vector>

#include "channels.hpp"
#include "la.hpp"
#include "sdp_problem.hpp"

// Group-symmetry machinery: bicovariance checks, Choi-operator twirling and
// covariance equality constraints that shrink the feasible sets of the bound
// SDPs. Groups are finite element lists; averaging over them must be a
// projection (twirl of a twirl equals the twirl).

namespace capbound::symmetry {

struct GroupElement {
  la::CMat u_a;  // Alice input representation
  la::CMat v_b;  // Bob input representation
  la::CMat w_a;  // Alice output representation
  la::CMat y_b;  // Bob output representation
};

enum class GroupKind { uu_design, pauli_bicovariance, custom };

struct SymmetryGroup {
  GroupKind kind = GroupKind::custom;
  std::vector<GroupElement> elements;
};

// 24-element single-qubit Clifford group acting as (U, U, U, U); a unitary
// 2-design, so averaging reproduces the Haar U (x) U twirl exactly.
SymmetryGroup uu_design_qubit();

// Heisenberg-Weyl input representations with output unitaries discovered by
// searching over Pauli products; empty result if the channel is not
// bicovariant with respect to any such assignment.
std::optional<SymmetryGroup> pauli_bicovariance(const channels::ChoiOperator& n,
                                                double tol = 1e-9);

// Conjugation that a group element induces on a Choi operator in canonical
// (A, A', B, B') leg order: conj(U_A) (x) W_A' (x) conj(V_B) (x) Y_B'.
la::CMat choi_conjugator(const GroupElement& g);

bool check_bicovariant(const channels::ChoiOperator& n, const SymmetryGroup& g,
                       double tol = 1e-9);

channels::ChoiOperator twirl_choi(const channels::ChoiOperator& m,
                                  const SymmetryGroup& g);

// Average of (U_A (x) V_B)-conjugations on a two-party state.
la::CMat twirl_state(const la::CMat& rho, const SymmetryGroup& g);

struct WernerParams {
  double q = 0.0;  // antisymmetric-subspace weight
  int d = 2;
};

la::CMat werner_state(const WernerParams& p);

// Symmetric/antisymmetric projectors (I +- SWAP)/2.
la::CMat sym_projector(int d);
la::CMat antisym_projector(int d);

// Equality expressions Gamma = twirl(Gamma) for a declared Hermitian variable
// shaped like the given bipartite operator. The solver's compile step reduces
// them to an independent row basis.
std::vector<sdp::AffineMatrixExpr> covariance_constraints(
    const std::string& var, const channels::ChoiOperator& like,
    const SymmetryGroup& g);

}  // namespace capbound::symmetry
