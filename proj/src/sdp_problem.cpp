/*
 * Copyright 2026 The capbound authors
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "sdp_problem.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace capbound::sdp {

using la::CMat;
using la::cplx;
using la::RMat;
using la::RVec;

// ---------------------------------------------------------------------------
// LinOp

LinOp LinOp::scale(double r) {
  LinOp op;
  op.tag = Tag::scale;
  op.r = r;
  return op;
}
LinOp LinOp::conj(CMat a) {
  LinOp op;
  op.tag = Tag::conj;
  op.a = std::move(a);
  return op;
}
LinOp LinOp::conj_pair(CMat a, CMat b) {
  LinOp op;
  op.tag = Tag::conj_pair;
  op.a = std::move(a);
  op.b = std::move(b);
  return op;
}
LinOp LinOp::kron_left(CMat c) {
  LinOp op;
  op.tag = Tag::kron_left;
  op.c = std::move(c);
  return op;
}
LinOp LinOp::kron_right(CMat c) {
  LinOp op;
  op.tag = Tag::kron_right;
  op.c = std::move(c);
  return op;
}
LinOp LinOp::partial_trace(la::SystemShape shape, std::vector<int> ids) {
  LinOp op;
  op.tag = Tag::partial_trace;
  op.shape = std::move(shape);
  op.ids = std::move(ids);
  return op;
}
LinOp LinOp::partial_transpose(la::SystemShape shape, std::vector<int> ids) {
  LinOp op;
  op.tag = Tag::partial_transpose;
  op.shape = std::move(shape);
  op.ids = std::move(ids);
  return op;
}
LinOp LinOp::permute(la::SystemShape shape, std::vector<int> perm) {
  LinOp op;
  op.tag = Tag::permute;
  op.shape = std::move(shape);
  op.ids = std::move(perm);
  return op;
}
LinOp LinOp::inner(CMat c) {
  LinOp op;
  op.tag = Tag::inner;
  op.c = std::move(c);
  return op;
}

int LinOp::out_dim(int in_dim) const {
  switch (tag) {
    case Tag::scale: return in_dim;
    case Tag::conj:
    case Tag::conj_pair: return static_cast<int>(a.rows());
    case Tag::kron_left: return static_cast<int>(c.rows()) * in_dim;
    case Tag::kron_right: return in_dim * static_cast<int>(c.rows());
    case Tag::partial_trace: {
      int d = 1;
      for (int k = 0; k < shape.factors(); ++k)
        if (std::find(ids.begin(), ids.end(), k) == ids.end()) d *= shape.dims[k];
      return d;
    }
    case Tag::partial_transpose:
    case Tag::permute: return in_dim;
    case Tag::inner: return 1;
  }
  return in_dim;
}

la::CMat LinOp::apply(const la::CMat& x) const {
  switch (tag) {
    case Tag::scale: return r * x;
    case Tag::conj: return a * x * a.adjoint();
    case Tag::conj_pair: return a * x * b.adjoint() + b * x * a.adjoint();
    case Tag::kron_left: return la::kron(c, x);
    case Tag::kron_right: return la::kron(x, c);
    case Tag::partial_trace: return la::partial_trace(x, shape, ids);
    case Tag::partial_transpose: return la::partial_transpose(x, shape, ids);
    case Tag::permute: return la::permute_systems(x, shape, ids);
    case Tag::inner: {
      CMat out(1, 1);
      out(0, 0) = (c * x).trace();
      return out;
    }
  }
  throw std::logic_error("LinOp::apply: unknown tag");
}

std::vector<LinOp> block_embed(const std::vector<int>& block_dims, int row, int col) {
  int total = 0;
  std::vector<int> offs;
  for (int d : block_dims) {
    offs.push_back(total);
    total += d;
  }
  auto inclusion = [&](int blk) {
    CMat m = CMat::Zero(total, block_dims[blk]);
    for (int i = 0; i < block_dims[blk]; ++i) m(offs[blk] + i, i) = 1.0;
    return m;
  };
  if (row == col) return {LinOp::conj(inclusion(row))};
  return {LinOp::conj_pair(inclusion(row), inclusion(col))};
}

// ---------------------------------------------------------------------------
// Expressions

AffineMatrixExpr& AffineMatrixExpr::add(const std::string& var, std::vector<LinOp> ops) {
  terms.push_back(Term{var, std::move(ops)});
  return *this;
}

AffineMatrixExpr& AffineMatrixExpr::add_const(const la::CMat& c) {
  constant += c;
  return *this;
}

la::CMat AffineMatrixExpr::eval(const std::map<std::string, la::CMat>& assign) const {
  CMat acc = constant;
  for (const Term& t : terms) {
    auto it = assign.find(t.var);
    if (it == assign.end())
      throw std::invalid_argument("AffineMatrixExpr::eval: missing assignment for " + t.var);
    CMat x = it->second;
    for (const LinOp& op : t.ops) x = op.apply(x);
    if (x.rows() != dim)
      throw std::invalid_argument("AffineMatrixExpr::eval: dimension mismatch in term " + t.var);
    acc += x;
  }
  return acc;
}

Variable& SdpProblem::add_hermitian(const std::string& name, int dim) {
  vars.push_back(Variable{name, dim, VarKind::hermitian, false});
  return vars.back();
}

Variable& SdpProblem::add_scalar(const std::string& name, bool nonneg) {
  vars.push_back(Variable{name, 1, VarKind::scalar, nonneg});
  return vars.back();
}

const Variable& SdpProblem::find_var(const std::string& name) const {
  for (const Variable& v : vars)
    if (v.name == name) return v;
  throw std::invalid_argument("SdpProblem: unknown variable " + name);
}

void SdpProblem::minimize_scalar(const std::string& name, double weight) {
  ObjectiveTerm t;
  t.var = name;
  t.scalar = weight;
  objective.push_back(std::move(t));
}

void SdpProblem::minimize_trace(const std::string& name, const la::CMat& coeff) {
  ObjectiveTerm t;
  t.var = name;
  t.coeff = coeff;
  objective.push_back(std::move(t));
}

double SdpProblem::eval_objective(const std::map<std::string, la::CMat>& assign) const {
  double v = objective_constant;
  for (const ObjectiveTerm& t : objective) {
    auto it = assign.find(t.var);
    if (it == assign.end())
      throw std::invalid_argument("eval_objective: missing assignment for " + t.var);
    if (find_var(t.var).kind == VarKind::scalar)
      v += t.scalar * it->second(0, 0).real();
    else
      v += (t.coeff * it->second).trace().real();
  }
  return v;
}

// ---------------------------------------------------------------------------
// Realification

la::RMat realify_matrix(const la::CMat& h) {
  const int d = static_cast<int>(h.rows());
  RMat out(2 * d, 2 * d);
  out.topLeftCorner(d, d) = h.real();
  out.bottomRightCorner(d, d) = h.real();
  out.topRightCorner(d, d) = -h.imag();
  out.bottomLeftCorner(d, d) = h.imag();
  return out;
}

la::CMat derealify_matrix(const la::RMat& r) {
  const int d = static_cast<int>(r.rows()) / 2;
  CMat out(d, d);
  out.real() = (r.topLeftCorner(d, d) + r.bottomRightCorner(d, d)) / 2.0;
  out.imag() = (r.bottomLeftCorner(d, d) - r.topRightCorner(d, d)) / 2.0;
  return out;
}

void SparseSym::add(int r, int c, double v) {
  if (v == 0.0) return;
  if (r > c) std::swap(r, c);
  rows.push_back(r);
  cols.push_back(c);
  vals.push_back(v);
}

namespace {

// Sparse complex matrix in coordinate form, used to push Hermitian basis
// elements through LinOp pipelines at compile time.
struct SpMat {
  int rows = 0, cols = 0;
  std::vector<std::tuple<int, int, cplx>> ents;

  void normalize() {
    std::sort(ents.begin(), ents.end(), [](const auto& x, const auto& y) {
      return std::make_pair(std::get<0>(x), std::get<1>(x)) <
             std::make_pair(std::get<0>(y), std::get<1>(y));
    });
    std::vector<std::tuple<int, int, cplx>> merged;
    for (const auto& e : ents) {
      if (!merged.empty() && std::get<0>(merged.back()) == std::get<0>(e) &&
          std::get<1>(merged.back()) == std::get<1>(e))
        std::get<2>(merged.back()) += std::get<2>(e);
      else
        merged.push_back(e);
    }
    ents.clear();
    double maxabs = 0.0;
    for (const auto& e : merged) maxabs = std::max(maxabs, std::abs(std::get<2>(e)));
    const double cut = maxabs * 1e-15;
    for (const auto& e : merged)
      if (std::abs(std::get<2>(e)) > cut) ents.push_back(e);
  }
};

SpMat sparse_from_dense(const CMat& m) {
  SpMat s;
  s.rows = static_cast<int>(m.rows());
  s.cols = static_cast<int>(m.cols());
  double maxabs = m.cwiseAbs().maxCoeff();
  const double cut = maxabs * 1e-15;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (std::abs(m(i, j)) > cut) s.ents.emplace_back(i, j, m(i, j));
  return s;
}

SpMat apply_sparse(const LinOp& op, const SpMat& x) {
  SpMat out;
  switch (op.tag) {
    case LinOp::Tag::scale: {
      out = x;
      for (auto& e : out.ents) std::get<2>(e) *= op.r;
      return out;
    }
    case LinOp::Tag::conj:
    case LinOp::Tag::conj_pair: {
      const CMat& a = op.a;
      const CMat& b = (op.tag == LinOp::Tag::conj) ? op.a : op.b;
      const int d = static_cast<int>(a.rows());
      CMat acc = CMat::Zero(d, d);
      for (const auto& [r, c, v] : x.ents) {
        acc += v * (a.col(r) * b.col(c).adjoint());
        if (op.tag == LinOp::Tag::conj_pair) acc += v * (b.col(r) * a.col(c).adjoint());
      }
      return sparse_from_dense(acc);
    }
    case LinOp::Tag::kron_left: {
      SpMat cs = sparse_from_dense(op.c);
      out.rows = cs.rows * x.rows;
      out.cols = cs.cols * x.cols;
      for (const auto& [rc, cc, vc] : cs.ents)
        for (const auto& [r, c, v] : x.ents)
          out.ents.emplace_back(rc * x.rows + r, cc * x.cols + c, vc * v);
      return out;
    }
    case LinOp::Tag::kron_right: {
      SpMat cs = sparse_from_dense(op.c);
      out.rows = x.rows * cs.rows;
      out.cols = x.cols * cs.cols;
      for (const auto& [r, c, v] : x.ents)
        for (const auto& [rc, cc, vc] : cs.ents)
          out.ents.emplace_back(r * cs.rows + rc, c * cs.cols + cc, v * vc);
      return out;
    }
    case LinOp::Tag::partial_trace: {
      const auto& shape = op.shape;
      std::vector<bool> traced(shape.factors(), false);
      for (int id : op.ids) traced[id] = true;
      std::vector<int> kept;
      la::SystemShape out_shape;
      for (int k = 0; k < shape.factors(); ++k)
        if (!traced[k]) {
          kept.push_back(k);
          out_shape.dims.push_back(shape.dims[k]);
        }
      out.rows = out.cols = out_shape.dims.empty() ? 1 : out_shape.total();
      std::vector<int> ri, ci, rk(kept.size()), ck(kept.size());
      for (const auto& [r, c, v] : x.ents) {
        shape.decompose(r, ri);
        shape.decompose(c, ci);
        bool diag = true;
        for (int id : op.ids)
          if (ri[id] != ci[id]) { diag = false; break; }
        if (!diag) continue;
        for (size_t k = 0; k < kept.size(); ++k) { rk[k] = ri[kept[k]]; ck[k] = ci[kept[k]]; }
        out.ents.emplace_back(out_shape.compose(rk), out_shape.compose(ck), v);
      }
      out.normalize();
      return out;
    }
    case LinOp::Tag::partial_transpose: {
      const auto& shape = op.shape;
      out.rows = x.rows;
      out.cols = x.cols;
      std::vector<int> ri, ci;
      for (const auto& [r, c, v] : x.ents) {
        shape.decompose(r, ri);
        shape.decompose(c, ci);
        for (int id : op.ids) std::swap(ri[id], ci[id]);
        out.ents.emplace_back(shape.compose(ri), shape.compose(ci), v);
      }
      return out;
    }
    case LinOp::Tag::permute: {
      const auto& shape = op.shape;
      la::SystemShape out_shape;
      for (size_t k = 0; k < op.ids.size(); ++k)
        out_shape.dims.push_back(shape.dims[op.ids[k]]);
      out.rows = x.rows;
      out.cols = x.cols;
      std::vector<int> ri, ci, ro(op.ids.size()), co(op.ids.size());
      for (const auto& [r, c, v] : x.ents) {
        shape.decompose(r, ri);
        shape.decompose(c, ci);
        for (size_t k = 0; k < op.ids.size(); ++k) { ro[k] = ri[op.ids[k]]; co[k] = ci[op.ids[k]]; }
        out.ents.emplace_back(out_shape.compose(ro), out_shape.compose(co), v);
      }
      return out;
    }
    case LinOp::Tag::inner: {
      out.rows = out.cols = 1;
      cplx acc = 0.0;
      for (const auto& [r, c, v] : x.ents) acc += op.c(c, r) * v;
      out.ents.emplace_back(0, 0, acc);
      return out;
    }
  }
  throw std::logic_error("apply_sparse: unknown tag");
}

SpMat basis_element(int dim, const ParamInfo& info) {
  SpMat b;
  b.rows = b.cols = dim;
  if (info.part == 0) {
    b.ents.emplace_back(info.i, info.i, cplx(1, 0));
  } else if (info.part == 1) {
    b.ents.emplace_back(info.i, info.j, cplx(1, 0));
    b.ents.emplace_back(info.j, info.i, cplx(1, 0));
  } else {
    b.ents.emplace_back(info.i, info.j, cplx(0, 1));
    b.ents.emplace_back(info.j, info.i, cplx(0, -1));
  }
  return b;
}

// Realify a Hermitian sparse coefficient into upper-triangle real entries.
SparseSym realify_sparse(const SpMat& h, int cdim) {
  SparseSym out;
  for (const auto& [r, c, v] : h.ents) {
    if (r > c) continue;  // Hermitian mirror handled from the upper entry
    if (r == c) {
      if (v.real() != 0.0) {
        out.add(r, r, v.real());
        out.add(cdim + r, cdim + r, v.real());
      }
    } else {
      if (v.real() != 0.0) {
        out.add(r, c, v.real());
        out.add(cdim + r, cdim + c, v.real());
      }
      if (v.imag() != 0.0) {
        out.add(r, cdim + c, -v.imag());
        out.add(c, cdim + r, v.imag());
      }
    }
  }
  return out;
}

}  // namespace

RealConicProblem realify(const SdpProblem& p) {
  RealConicProblem out;
  out.vars = p.vars;

  // Parameter table.
  for (size_t vi = 0; vi < p.vars.size(); ++vi) {
    const Variable& v = p.vars[vi];
    out.var_offset.push_back(out.nparams);
    if (v.kind == VarKind::scalar) {
      out.pinfo.push_back(ParamInfo{static_cast<int>(vi), 0, 0, 0});
      ++out.nparams;
      continue;
    }
    for (int i = 0; i < v.dim; ++i) {
      out.pinfo.push_back(ParamInfo{static_cast<int>(vi), i, i, 0});
      ++out.nparams;
    }
    for (int i = 0; i < v.dim; ++i)
      for (int j = i + 1; j < v.dim; ++j) {
        out.pinfo.push_back(ParamInfo{static_cast<int>(vi), i, j, 1});
        out.pinfo.push_back(ParamInfo{static_cast<int>(vi), i, j, 2});
        out.nparams += 2;
      }
  }

  auto var_index = [&](const std::string& name) {
    for (size_t vi = 0; vi < p.vars.size(); ++vi)
      if (p.vars[vi].name == name) return static_cast<int>(vi);
    throw std::invalid_argument("realify: unknown variable " + name);
  };
  auto params_of = [&](int vi) {
    const Variable& v = p.vars[vi];
    int count = (v.kind == VarKind::scalar) ? 1 : v.dim * v.dim;
    std::pair<int, int> range{out.var_offset[vi], out.var_offset[vi] + count};
    return range;
  };

  // Per-expression sparse complex coefficients for every touched parameter.
  auto expr_coeffs = [&](const AffineMatrixExpr& e) {
    std::map<int, SpMat> coeffs;  // param -> coefficient
    for (const Term& t : e.terms) {
      int vi = var_index(t.var);
      auto [lo, hi] = params_of(vi);
      for (int pidx = lo; pidx < hi; ++pidx) {
        SpMat x = basis_element(p.vars[vi].dim, out.pinfo[pidx]);
        for (const LinOp& op : t.ops) x = apply_sparse(op, x);
        if (x.rows != e.dim)
          throw std::invalid_argument("realify: term output dim mismatch for " + t.var);
        x.normalize();
        if (x.ents.empty()) continue;
        auto it = coeffs.find(pidx);
        if (it == coeffs.end()) {
          coeffs[pidx] = x;
        } else {
          for (const auto& en : x.ents) it->second.ents.push_back(en);
          it->second.normalize();
        }
      }
    }
    return coeffs;
  };

  // PSD blocks.
  for (const AffineMatrixExpr& e : p.psd) {
    CompiledBlock blk;
    auto coeffs = expr_coeffs(e);
    if (e.dim == 1) {
      blk.mdim = 1;
      blk.f0 = RMat::Zero(1, 1);
      blk.f0(0, 0) = e.constant(0, 0).real();
      for (auto& [pidx, sp] : coeffs) {
        SparseSym ss;
        for (const auto& [r, c, v] : sp.ents) ss.add(r, c, v.real());
        if (ss.vals.empty()) continue;
        blk.params.push_back(pidx);
        blk.coeffs.push_back(std::move(ss));
      }
    } else {
      blk.mdim = 2 * e.dim;
      blk.f0 = realify_matrix(e.constant);
      for (auto& [pidx, sp] : coeffs) {
        SparseSym ss = realify_sparse(sp, e.dim);
        if (ss.vals.empty()) continue;
        blk.params.push_back(pidx);
        blk.coeffs.push_back(std::move(ss));
      }
    }
    out.blocks.push_back(std::move(blk));
  }

  // Nonnegative scalars become one-dimensional blocks.
  for (size_t vi = 0; vi < p.vars.size(); ++vi) {
    if (p.vars[vi].kind == VarKind::scalar && p.vars[vi].nonneg) {
      CompiledBlock blk;
      blk.mdim = 1;
      blk.f0 = RMat::Zero(1, 1);
      SparseSym ss;
      ss.add(0, 0, 1.0);
      blk.params.push_back(out.var_offset[vi]);
      blk.coeffs.push_back(std::move(ss));
      out.blocks.push_back(std::move(blk));
    }
  }

  // Equality rows, then orthonormalized de-duplication.
  std::vector<RVec> raw_rows;
  std::vector<double> raw_rhs;
  for (const AffineMatrixExpr& e : p.eq) {
    auto coeffs = expr_coeffs(e);
    std::vector<std::map<int, double>> row_re(e.dim * e.dim), row_im(e.dim * e.dim);
    for (const auto& [pidx, sp] : coeffs)
      for (const auto& [r, c, v] : sp.ents) {
        if (r > c) continue;
        if (v.real() != 0.0) row_re[r * e.dim + c][pidx] = v.real();
        if (r < c && v.imag() != 0.0) row_im[r * e.dim + c][pidx] = v.imag();
      }
    for (int r = 0; r < e.dim; ++r)
      for (int c = r; c < e.dim; ++c) {
        const int cell = r * e.dim + c;
        if (!row_re[cell].empty() || e.constant(r, c).real() != 0.0) {
          RVec row = RVec::Zero(out.nparams);
          for (const auto& [pidx, v] : row_re[cell]) row(pidx) = v;
          raw_rows.push_back(std::move(row));
          raw_rhs.push_back(-e.constant(r, c).real());
        }
        if (c > r && (!row_im[cell].empty() || e.constant(r, c).imag() != 0.0)) {
          RVec row = RVec::Zero(out.nparams);
          for (const auto& [pidx, v] : row_im[cell]) row(pidx) = v;
          raw_rows.push_back(std::move(row));
          raw_rhs.push_back(-e.constant(r, c).imag());
        }
      }
  }

  std::vector<RVec> basis;
  std::vector<double> rhs;
  const double dedup_tol = 1e-9;
  for (size_t k = 0; k < raw_rows.size(); ++k) {
    RVec row = raw_rows[k];
    double b = raw_rhs[k];
    const double norm0 = row.norm() + std::abs(b);
    for (size_t t = 0; t < basis.size(); ++t) {
      double proj = basis[t].dot(row);
      row -= proj * basis[t];
      b -= proj * rhs[t];
    }
    double nr = row.norm();
    if (nr <= dedup_tol * std::max(1.0, norm0)) {
      if (std::abs(b) > 1e-8 * std::max(1.0, norm0)) out.inconsistent_eq = true;
      continue;
    }
    basis.push_back(row / nr);
    rhs.push_back(b / nr);
  }
  out.e_rows = RMat(basis.size(), out.nparams);
  out.f = RVec(basis.size());
  for (size_t t = 0; t < basis.size(); ++t) {
    out.e_rows.row(t) = basis[t];
    out.f(t) = rhs[t];
  }

  // Objective.
  out.g = RVec::Zero(out.nparams);
  out.obj_const = p.objective_constant;
  for (const ObjectiveTerm& t : p.objective) {
    int vi = var_index(t.var);
    const Variable& v = p.vars[vi];
    if (v.kind == VarKind::scalar) {
      out.g(out.var_offset[vi]) += t.scalar;
      continue;
    }
    const CMat& c = t.coeff;
    int base = out.var_offset[vi];
    for (int i = 0; i < v.dim; ++i) out.g(base + i) += c(i, i).real();
    int off = base + v.dim;
    for (int i = 0; i < v.dim; ++i)
      for (int j = i + 1; j < v.dim; ++j) {
        out.g(off) += 2.0 * c(i, j).real();
        out.g(off + 1) += 2.0 * c(i, j).imag();
        off += 2;
      }
  }
  return out;
}

la::CMat RealConicProblem::extract(const SdpProblem& p, const std::string& var,
                                   const la::RVec& x) const {
  for (size_t vi = 0; vi < p.vars.size(); ++vi) {
    if (p.vars[vi].name != var) continue;
    const Variable& v = p.vars[vi];
    int base = var_offset[vi];
    if (v.kind == VarKind::scalar) {
      CMat m(1, 1);
      m(0, 0) = x(base);
      return m;
    }
    CMat m = CMat::Zero(v.dim, v.dim);
    for (int i = 0; i < v.dim; ++i) m(i, i) = x(base + i);
    int off = base + v.dim;
    for (int i = 0; i < v.dim; ++i)
      for (int j = i + 1; j < v.dim; ++j) {
        m(i, j) = cplx(x(off), x(off + 1));
        m(j, i) = std::conj(m(i, j));
        off += 2;
      }
    return m;
  }
  throw std::invalid_argument("extract: unknown variable " + var);
}

std::string SdpProblem::dump_json() const {
  nlohmann::json j;
  j["variables"] = nlohmann::json::array();
  for (const Variable& v : vars)
    j["variables"].push_back({{"name", v.name},
                              {"dim", v.dim},
                              {"kind", v.kind == VarKind::scalar ? "scalar" : "hermitian"},
                              {"nonneg", v.nonneg}});
  j["psd_blocks"] = nlohmann::json::array();
  for (const AffineMatrixExpr& e : psd) {
    nlohmann::json blk;
    blk["dim"] = e.dim;
    for (const Term& t : e.terms) blk["terms"].push_back(t.var);
    j["psd_blocks"].push_back(blk);
  }
  j["eq_blocks"] = nlohmann::json::array();
  for (const AffineMatrixExpr& e : eq) {
    nlohmann::json blk;
    blk["dim"] = e.dim;
    for (const Term& t : e.terms) blk["terms"].push_back(t.var);
    j["eq_blocks"].push_back(blk);
  }
  j["objective"] = nlohmann::json::array();
  for (const ObjectiveTerm& t : objective) j["objective"].push_back(t.var);
  j["objective_constant"] = objective_constant;
  return j.dump(2);
}

std::string status_name(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::near_optimal: return "near_optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
    case Status::solver_error: return "solver_error";
  }
  return "unknown";
}

double SdpSolution::scalar(const std::string& name) const {
  auto it = assignments.find(name);
  if (it == assignments.end())
    throw std::invalid_argument("SdpSolution::scalar: no assignment for " + name);
  return it->second(0, 0).real();
}

CertifyReport certify(const SdpProblem& p, const SdpSolution& s, double psd_tol,
                      double eq_tol, double gap_tol) {
  CertifyReport rep;
  if (s.status != Status::optimal && s.status != Status::near_optimal) {
    rep.detail = "solution status not optimal/near_optimal";
    return rep;
  }
  double worst_psd = 0.0, worst_eq = 0.0;
  for (const AffineMatrixExpr& e : p.psd) {
    CMat val = e.eval(s.assignments);
    la::EigH eh = la::eig_hermitian((val + val.adjoint()) / 2.0);
    double scale = 1.0 + eh.values.cwiseAbs().maxCoeff();
    worst_psd = std::max(worst_psd, -eh.values.minCoeff() / scale);
  }
  for (const AffineMatrixExpr& e : p.eq) {
    CMat val = e.eval(s.assignments);
    double scale = 1.0 + e.constant.cwiseAbs().maxCoeff();
    worst_eq = std::max(worst_eq, val.cwiseAbs().maxCoeff() / scale);
  }
  double obj = p.eval_objective(s.assignments);
  rep.worst_psd_violation = worst_psd;
  rep.worst_eq_residual = worst_eq;
  rep.objective_mismatch = std::abs(obj - s.primal_value) / (1.0 + std::abs(obj));
  rep.gap = s.gap;
  rep.ok = worst_psd <= psd_tol && worst_eq <= eq_tol &&
           rep.objective_mismatch <= 10 * gap_tol && s.gap <= gap_tol;
  rep.detail = "psd " + std::to_string(worst_psd) + ", eq " + std::to_string(worst_eq) +
               ", obj mismatch " + std::to_string(rep.objective_mismatch) + ", gap " +
               std::to_string(s.gap);
  return rep;
}

}  // namespace capbound::sdp
