/*
 * Copyright 2026 The capbound authors
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "symmetry.hpp"

#include <cmath>
#include <stdexcept>

namespace capbound::symmetry {

using la::CMat;
using la::cplx;

namespace {

// Canonical phase: first entry of largest magnitude made positive real, so
// unitaries equal up to global phase compare equal.
CMat phase_canonical(const CMat& u) {
  int best_r = 0, best_c = 0;
  double best = 0.0;
  for (int i = 0; i < u.rows(); ++i)
    for (int j = 0; j < u.cols(); ++j)
      if (std::abs(u(i, j)) > best + 1e-12) {
        best = std::abs(u(i, j));
        best_r = i;
        best_c = j;
      }
  cplx ph = u(best_r, best_c) / std::abs(u(best_r, best_c));
  return u / ph;
}

bool contains(const std::vector<CMat>& list, const CMat& u) {
  for (const CMat& v : list)
    if ((v - u).cwiseAbs().maxCoeff() < 1e-9) return true;
  return false;
}

}  // namespace

SymmetryGroup uu_design_qubit() {
  CMat h(2, 2), s(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  s << 1, 0, 0, cplx(0, 1);

  std::vector<CMat> group{phase_canonical(la::identity(2))};
  std::vector<CMat> frontier = group;
  while (!frontier.empty()) {
    std::vector<CMat> next;
    for (const CMat& u : frontier)
      for (const CMat* g : {&h, &s}) {
        CMat w = phase_canonical((*g) * u);
        if (!contains(group, w)) {
          group.push_back(w);
          next.push_back(w);
        }
      }
    frontier = std::move(next);
  }
  if (group.size() != 24)
    throw std::logic_error("uu_design_qubit: Clifford closure has wrong size");

  SymmetryGroup out;
  out.kind = GroupKind::uu_design;
  for (const CMat& u : group) out.elements.push_back(GroupElement{u, u, u, u});
  return out;
}

la::CMat choi_conjugator(const GroupElement& g) {
  return la::kron(la::kron(g.u_a.conjugate(), g.w_a),
                  la::kron(g.v_b.conjugate(), g.y_b));
}

bool check_bicovariant(const channels::ChoiOperator& n, const SymmetryGroup& g,
                       double tol) {
  channels::ChoiOperator b = channels::as_bipartite(n);
  for (const GroupElement& e : g.elements) {
    if (e.u_a.rows() != b.legs[0].dim || e.w_a.rows() != b.legs[1].dim ||
        e.v_b.rows() != b.legs[2].dim || e.y_b.rows() != b.legs[3].dim)
      throw std::invalid_argument("check_bicovariant: dimension mismatch");
    CMat k = choi_conjugator(e);
    if ((k * b.matrix * k.adjoint() - b.matrix).cwiseAbs().maxCoeff() > tol)
      return false;
  }
  return true;
}

channels::ChoiOperator twirl_choi(const channels::ChoiOperator& m,
                                  const SymmetryGroup& g) {
  channels::ChoiOperator b = channels::as_bipartite(m);
  CMat acc = CMat::Zero(b.total_dim(), b.total_dim());
  for (const GroupElement& e : g.elements) {
    CMat k = choi_conjugator(e);
    if (k.rows() != b.total_dim())
      throw std::invalid_argument("twirl_choi: dimension mismatch");
    acc += k * b.matrix * k.adjoint();
  }
  channels::ChoiOperator out = b;
  out.matrix = acc / double(g.elements.size());
  return out;
}

la::CMat twirl_state(const la::CMat& rho, const SymmetryGroup& g) {
  CMat acc = CMat::Zero(rho.rows(), rho.cols());
  for (const GroupElement& e : g.elements) {
    CMat u = la::kron(e.u_a, e.v_b);
    acc += u * rho * u.adjoint();
  }
  return acc / double(g.elements.size());
}

la::CMat sym_projector(int d) {
  return (la::identity(d * d) + channels::swap_operator(d)) / 2.0;
}

la::CMat antisym_projector(int d) {
  return (la::identity(d * d) - channels::swap_operator(d)) / 2.0;
}

la::CMat werner_state(const WernerParams& p) {
  if (p.q < 0.0 || p.q > 1.0)
    throw std::invalid_argument("werner_state: q outside [0,1]");
  if (p.d < 2) throw std::invalid_argument("werner_state: d must be at least 2");
  const double dd = p.d;
  return (1.0 - p.q) * (2.0 / (dd * (dd + 1.0))) * sym_projector(p.d) +
         p.q * (2.0 / (dd * (dd - 1.0))) * antisym_projector(p.d);
}

namespace {

std::vector<CMat> heisenberg_weyl(int d) {
  CMat x = CMat::Zero(d, d), z = CMat::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    x((i + 1) % d, i) = 1.0;
    z(i, i) = std::polar(1.0, 2.0 * M_PI * i / d);
  }
  std::vector<CMat> out;
  CMat xa = la::identity(d);
  for (int a = 0; a < d; ++a) {
    CMat w = xa;
    for (int b = 0; b < d; ++b) {
      out.push_back(w);
      w = w * z;
    }
    xa = x * xa;
  }
  return out;
}

}  // namespace

std::optional<SymmetryGroup> pauli_bicovariance(const channels::ChoiOperator& n,
                                                double tol) {
  channels::ChoiOperator b = channels::as_bipartite(n);
  const int da = b.legs[0].dim, dao = b.legs[1].dim;
  const int db = b.legs[2].dim, dbo = b.legs[3].dim;
  std::vector<CMat> pa = heisenberg_weyl(da), pb = heisenberg_weyl(db);
  std::vector<CMat> pao = heisenberg_weyl(dao), pbo = heisenberg_weyl(dbo);

  SymmetryGroup g;
  g.kind = GroupKind::pauli_bicovariance;
  for (const CMat& ua : pa)
    for (const CMat& vb : pb) {
      bool found = false;
      for (const CMat& wa : pao) {
        for (const CMat& yb : pbo) {
          GroupElement e{ua, vb, wa, yb};
          CMat k = choi_conjugator(e);
          if ((k * b.matrix * k.adjoint() - b.matrix).cwiseAbs().maxCoeff() <= tol) {
            g.elements.push_back(e);
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (!found) return std::nullopt;
    }
  return g;
}

std::vector<sdp::AffineMatrixExpr> covariance_constraints(
    const std::string& var, const channels::ChoiOperator& like,
    const SymmetryGroup& g) {
  channels::ChoiOperator b = channels::as_bipartite(like);
  sdp::AffineMatrixExpr e(b.total_dim());
  e.add(var);
  const double w = -1.0 / double(g.elements.size());
  for (const GroupElement& el : g.elements) {
    CMat k = choi_conjugator(el);
    if (k.rows() != b.total_dim())
      throw std::invalid_argument("covariance_constraints: dimension mismatch");
    e.add(var, {sdp::LinOp::conj(k), sdp::LinOp::scale(w)});
  }
  return {e};
}

}  // namespace capbound::symmetry
