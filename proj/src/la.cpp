/*
 * Copyright 2026 The capbound authors
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "la.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace capbound::la {

int SystemShape::total() const {
  int t = 1;
  for (int d : dims) {
    if (d <= 0) throw std::invalid_argument("SystemShape: nonpositive dimension");
    t *= d;
  }
  return t;
}

void SystemShape::decompose(int index, std::vector<int>& parts) const {
  parts.resize(dims.size());
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    parts[k] = index % dims[k];
    index /= dims[k];
  }
}

int SystemShape::compose(const std::vector<int>& parts) const {
  int idx = 0;
  for (size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + parts[k];
  return idx;
}

bool is_hermitian(const CMat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

void require_hermitian(const CMat& m, const char* who, double tol) {
  if (!is_hermitian(m, tol))
    throw std::invalid_argument(std::string(who) + ": input is not Hermitian");
}

CMat identity(int d) { return CMat::Identity(d, d); }

CMat maximally_mixed(int d) { return CMat::Identity(d, d) / double(d); }

CVec gamma_vec(int d) {
  CVec v = CVec::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0;
  return v;
}

CMat gamma_unnorm(int d) {
  CVec v = gamma_vec(d);
  return v * v.adjoint();
}

CMat kron(const CMat& a, const CMat& b) {
  const int ar = static_cast<int>(a.rows()), ac = static_cast<int>(a.cols());
  const int br = static_cast<int>(b.rows()), bc = static_cast<int>(b.cols());
  CMat out(ar * br, ac * bc);
  for (int i = 0; i < ar; ++i)
    for (int j = 0; j < ac; ++j) out.block(i * br, j * bc, br, bc) = a(i, j) * b;
  return out;
}

namespace {

void check_subsystems(const SystemShape& shape, const std::vector<int>& ids,
                      const char* who) {
  for (int id : ids)
    if (id < 0 || id >= shape.factors())
      throw std::invalid_argument(std::string(who) + ": subsystem index out of range");
}

}  // namespace

CMat partial_trace(const CMat& m, const SystemShape& shape,
                   const std::vector<int>& traced) {
  check_subsystems(shape, traced, "partial_trace");
  const int n = shape.factors();
  std::vector<bool> is_traced(n, false);
  for (int id : traced) is_traced[id] = true;

  std::vector<int> kept;
  SystemShape out_shape;
  for (int k = 0; k < n; ++k)
    if (!is_traced[k]) {
      kept.push_back(k);
      out_shape.dims.push_back(shape.dims[k]);
    }
  const int dout = out_shape.dims.empty() ? 1 : out_shape.total();
  CMat out = CMat::Zero(dout, dout);

  std::vector<int> ri, ci, rk(kept.size()), ck(kept.size());
  const int dim = shape.total();
  for (int r = 0; r < dim; ++r) {
    shape.decompose(r, ri);
    for (int c = 0; c < dim; ++c) {
      shape.decompose(c, ci);
      bool diag = true;
      for (int id : traced)
        if (ri[id] != ci[id]) { diag = false; break; }
      if (!diag) continue;
      for (size_t k = 0; k < kept.size(); ++k) { rk[k] = ri[kept[k]]; ck[k] = ci[kept[k]]; }
      out(out_shape.compose(rk), out_shape.compose(ck)) += m(r, c);
    }
  }
  return out;
}

CMat partial_transpose(const CMat& m, const SystemShape& shape,
                       const std::vector<int>& transposed) {
  check_subsystems(shape, transposed, "partial_transpose");
  const int dim = shape.total();
  CMat out(dim, dim);
  std::vector<int> ri, ci;
  for (int r = 0; r < dim; ++r) {
    shape.decompose(r, ri);
    for (int c = 0; c < dim; ++c) {
      shape.decompose(c, ci);
      std::vector<int> rr = ri, cc = ci;
      for (int id : transposed) std::swap(rr[id], cc[id]);
      out(shape.compose(rr), shape.compose(cc)) = m(r, c);
    }
  }
  return out;
}

CMat permute_systems(const CMat& m, const SystemShape& shape,
                     const std::vector<int>& perm) {
  const int n = shape.factors();
  if (static_cast<int>(perm.size()) != n)
    throw std::invalid_argument("permute_systems: permutation size mismatch");
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[p])
      throw std::invalid_argument("permute_systems: invalid permutation");
    seen[p] = true;
  }
  SystemShape out_shape;
  for (int k = 0; k < n; ++k) out_shape.dims.push_back(shape.dims[perm[k]]);
  const int dim = shape.total();
  CMat out(dim, dim);
  std::vector<int> ri, ci, ro(n), co(n);
  for (int r = 0; r < dim; ++r) {
    shape.decompose(r, ri);
    for (int c = 0; c < dim; ++c) {
      shape.decompose(c, ci);
      for (int k = 0; k < n; ++k) { ro[k] = ri[perm[k]]; co[k] = ci[perm[k]]; }
      out(out_shape.compose(ro), out_shape.compose(co)) = m(r, c);
    }
  }
  return out;
}

EigH eig_hermitian(const CMat& m) {
  require_hermitian(m, "eig_hermitian");
  Eigen::SelfAdjointEigenSolver<CMat> es(m);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eig_hermitian: eigensolver failed");
  return EigH{es.eigenvalues(), es.eigenvectors()};
}

CMat mat_fn(const CMat& m, const std::function<double(double)>& f,
            double support_tol) {
  EigH e = eig_hermitian(m);
  const int d = static_cast<int>(e.values.size());
  const double cutoff = support_tol * e.values.cwiseAbs().maxCoeff();
  RVec fv(d);
  for (int i = 0; i < d; ++i) {
    if (std::abs(e.values(i)) <= cutoff) {
      fv(i) = 0.0;
    } else {
      fv(i) = f(e.values(i));
      if (!std::isfinite(fv(i)))
        throw std::domain_error("mat_fn: function undefined on a retained eigenvalue");
    }
  }
  return e.vectors * fv.asDiagonal() * e.vectors.adjoint();
}

double op_norm(const CMat& m) {
  EigH e = eig_hermitian(m);
  return e.values.cwiseAbs().maxCoeff();
}

double trace_norm(const CMat& m) {
  EigH e = eig_hermitian(m);
  return e.values.cwiseAbs().sum();
}

CMat support_projector(const CMat& m, double support_tol) {
  EigH e = eig_hermitian(m);
  const int d = static_cast<int>(e.values.size());
  const double cutoff = support_tol * std::max(0.0, e.values.maxCoeff());
  CMat p = CMat::Zero(d, d);
  for (int i = 0; i < d; ++i)
    if (e.values(i) > cutoff) p += e.vectors.col(i) * e.vectors.col(i).adjoint();
  return p;
}

CMat support_isometry(const CMat& m, double support_tol) {
  EigH e = eig_hermitian(m);
  const int d = static_cast<int>(e.values.size());
  const double cutoff = support_tol * std::max(0.0, e.values.maxCoeff());
  std::vector<int> keep;
  for (int i = 0; i < d; ++i)
    if (e.values(i) > cutoff) keep.push_back(i);
  CMat v(d, keep.size());
  for (size_t k = 0; k < keep.size(); ++k) v.col(k) = e.vectors.col(keep[k]);
  return v;
}

}  // namespace capbound::la
