/*
 * Copyright 2026 The capbound authors
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "channels.hpp"

#include <json.hpp>

#include <cmath>
#include <stdexcept>

namespace capbound::channels {

using la::CMat;
using la::cplx;
using la::CVec;
using la::SystemShape;

SystemShape ChoiOperator::shape() const {
  SystemShape s;
  for (const Leg& l : legs) s.dims.push_back(l.dim);
  return s;
}

std::vector<int> ChoiOperator::leg_ids(LegRole role) const {
  std::vector<int> ids;
  for (size_t i = 0; i < legs.size(); ++i)
    if (legs[i].role == role) ids.push_back(static_cast<int>(i));
  return ids;
}

int ChoiOperator::dim_in() const {
  int d = 1;
  for (const Leg& l : legs)
    if (l.role == LegRole::in) d *= l.dim;
  return d;
}

int ChoiOperator::dim_out() const {
  int d = 1;
  for (const Leg& l : legs)
    if (l.role == LegRole::out) d *= l.dim;
  return d;
}

bool is_cp(const ChoiOperator& c, double tol) {
  la::EigH e = la::eig_hermitian(c.matrix);
  return e.values.minCoeff() >= -tol;
}

bool is_tp(const ChoiOperator& c, double tol) {
  CMat marg = la::partial_trace(c.matrix, c.shape(), c.leg_ids(LegRole::out));
  return (marg - la::identity(c.dim_in())).cwiseAbs().maxCoeff() <= tol;
}

bool is_cptp(const ChoiOperator& c, double tol) { return is_cp(c, tol) && is_tp(c, tol); }

ChoiOperator as_bipartite(const ChoiOperator& c) {
  if (c.is_bipartite()) return c;
  if (!c.is_point_to_point())
    throw std::invalid_argument("as_bipartite: expected 2 or 4 legs");
  ChoiOperator out;
  out.matrix = c.matrix;
  out.legs = {Leg{"A", c.legs[0].dim, LegRole::in}, Leg{"A'", 1, LegRole::out},
              Leg{"B", 1, LegRole::in}, Leg{"B'", c.legs[1].dim, LegRole::out}};
  return out;
}

bool is_cpptp(const ChoiOperator& c, double tol) {
  ChoiOperator b = as_bipartite(c);
  CMat t = la::partial_transpose(b.matrix, b.shape(), {2, 3});
  la::EigH e = la::eig_hermitian(t);
  return e.values.minCoeff() >= -tol;
}

bool is_nonsignaling_a_to_b(const ChoiOperator& c, double tol) {
  ChoiOperator b = as_bipartite(c);
  const int da = b.legs[0].dim;
  CMat lhs = la::partial_trace(b.matrix, b.shape(), {1});
  CMat marg = la::partial_trace(b.matrix, b.shape(), {0, 1});
  CMat rhs = la::kron(la::maximally_mixed(da), marg);
  return (lhs - rhs).cwiseAbs().maxCoeff() <= tol;
}

ChoiOperator choi_from_kraus(const std::vector<CMat>& kraus, int in_dim,
                             int out_dim) {
  if (kraus.empty()) throw std::invalid_argument("choi_from_kraus: empty Kraus list");
  for (const CMat& k : kraus)
    if (k.rows() != out_dim || k.cols() != in_dim)
      throw std::invalid_argument("choi_from_kraus: Kraus operator shape mismatch");
  CMat gamma = CMat::Zero(in_dim * out_dim, in_dim * out_dim);
  for (const CMat& k : kraus) {
    // (I (x) K) |Gamma>
    CVec v = CVec::Zero(in_dim * out_dim);
    for (int i = 0; i < in_dim; ++i)
      for (int o = 0; o < out_dim; ++o) v(i * out_dim + o) = k(o, i);
    gamma += v * v.adjoint();
  }
  ChoiOperator c;
  c.matrix = gamma;
  c.legs = {Leg{"A", in_dim, LegRole::in}, Leg{"B'", out_dim, LegRole::out}};
  return c;
}

namespace {

// Permutation that lists all input legs first (original order), then outputs.
std::vector<int> in_first_perm(const ChoiOperator& c) {
  std::vector<int> perm = c.leg_ids(LegRole::in);
  for (int id : c.leg_ids(LegRole::out)) perm.push_back(id);
  return perm;
}

}  // namespace

la::CMat apply(const ChoiOperator& c, const la::CMat& state,
               const la::SystemShape& state_shape, int input_subsystem) {
  la::require_hermitian(state, "apply", 1e-9);
  const int din = c.dim_in();
  const int dout = c.dim_out();
  if (input_subsystem < 0 || input_subsystem >= state_shape.factors() ||
      state_shape.dims[input_subsystem] != din)
    throw std::invalid_argument("apply: state subsystem does not match channel input");

  CMat gp = la::permute_systems(c.matrix, c.shape(), in_first_perm(c));

  int pre = 1, post = 1;
  for (int k = 0; k < input_subsystem; ++k) pre *= state_shape.dims[k];
  for (int k = input_subsystem + 1; k < state_shape.factors(); ++k)
    post *= state_shape.dims[k];

  const int dres = pre * dout * post;
  CMat out = CMat::Zero(dres, dres);
  for (int x = 0; x < pre; ++x)
    for (int xp = 0; xp < pre; ++xp)
      for (int b = 0; b < dout; ++b)
        for (int bp = 0; bp < dout; ++bp)
          for (int q = 0; q < post; ++q)
            for (int qp = 0; qp < post; ++qp) {
              cplx acc = 0.0;
              for (int a = 0; a < din; ++a)
                for (int ap = 0; ap < din; ++ap)
                  acc += state((x * din + a) * post + q, (xp * din + ap) * post + qp) *
                         gp(a * dout + b, ap * dout + bp);
              out((x * dout + b) * post + q, (xp * dout + bp) * post + qp) = acc;
            }
  return out;
}

la::CMat apply(const ChoiOperator& c, const la::CMat& state) {
  return apply(c, state, SystemShape{static_cast<int>(state.rows())}, 0);
}

ChoiOperator compose_serial(const ChoiOperator& first, const ChoiOperator& second) {
  const int mid = first.dim_out();
  if (mid != second.dim_in())
    throw std::invalid_argument("compose_serial: leg mismatch");
  {
    auto fo = first.leg_ids(LegRole::out);
    auto si = second.leg_ids(LegRole::in);
    if (fo.size() == si.size()) {
      for (size_t k = 0; k < fo.size(); ++k)
        if (first.legs[fo[k]].dim != second.legs[si[k]].dim)
          throw std::invalid_argument("compose_serial: leg mismatch");
    }
  }
  const int din = first.dim_in();
  const int dout = second.dim_out();

  CMat f = la::permute_systems(first.matrix, first.shape(), in_first_perm(first));
  CMat s = la::permute_systems(second.matrix, second.shape(), in_first_perm(second));

  // Tr_mid[ Gamma^first (x) T_mid(Gamma^second) ] via direct contraction.
  CMat res = CMat::Zero(din * dout, din * dout);
  for (int r = 0; r < din; ++r)
    for (int rp = 0; rp < din; ++rp)
      for (int co = 0; co < dout; ++co)
        for (int cp = 0; cp < dout; ++cp) {
          cplx acc = 0.0;
          for (int m = 0; m < mid; ++m)
            for (int mp = 0; mp < mid; ++mp)
              acc += f(r * mid + m, rp * mid + mp) * s(m * dout + co, mp * dout + cp);
          res(r * dout + co, rp * dout + cp) = acc;
        }

  ChoiOperator out;
  if (first.is_bipartite() && second.is_bipartite()) {
    // Current order (A, B, A'', B''); canonical order interleaves parties.
    SystemShape cur{first.legs[0].dim, first.legs[2].dim, second.legs[1].dim,
                    second.legs[3].dim};
    out.matrix = la::permute_systems(res, cur, {0, 2, 1, 3});
    out.legs = {Leg{"A", first.legs[0].dim, LegRole::in},
                Leg{"A'", second.legs[1].dim, LegRole::out},
                Leg{"B", first.legs[2].dim, LegRole::in},
                Leg{"B'", second.legs[3].dim, LegRole::out}};
  } else {
    out.matrix = res;
    out.legs = {Leg{"A", din, LegRole::in}, Leg{"B'", dout, LegRole::out}};
  }
  return out;
}

ChoiOperator tensor_local(const ChoiOperator& alice, const ChoiOperator& bob) {
  if (!alice.is_point_to_point() || !bob.is_point_to_point())
    throw std::invalid_argument("tensor_local: expected point-to-point inputs");
  ChoiOperator out;
  out.matrix = la::kron(alice.matrix, bob.matrix);
  out.legs = {Leg{"A", alice.legs[0].dim, LegRole::in},
              Leg{"A'", alice.legs[1].dim, LegRole::out},
              Leg{"B", bob.legs[0].dim, LegRole::in},
              Leg{"B'", bob.legs[1].dim, LegRole::out}};
  return out;
}

ChoiOperator with_identity_legs(const ChoiOperator& m, int da, int db) {
  ChoiOperator b = as_bipartite(m);
  CMat full = b.matrix;
  SystemShape cur = b.shape();
  if (da > 1) {
    full = la::kron(la::gamma_unnorm(da), full);
    cur.dims.insert(cur.dims.begin(), {da, da});
  } else {
    cur.dims.insert(cur.dims.begin(), {1, 1});
  }
  if (db > 1) {
    full = la::kron(full, la::gamma_unnorm(db));
    cur.dims.push_back(db);
    cur.dims.push_back(db);
  } else {
    cur.dims.push_back(1);
    cur.dims.push_back(1);
  }
  // Order (Abar, Atil, A, A', B, B', Bbar, Btil) -> ((Abar A), (Atil A'),
  // (B Bbar), (B' Btil)).
  CMat perm = la::permute_systems(full, cur, {0, 2, 1, 3, 4, 6, 5, 7});
  ChoiOperator out;
  out.matrix = perm;
  out.legs = {Leg{"A", da * b.legs[0].dim, LegRole::in},
              Leg{"A'", da * b.legs[1].dim, LegRole::out},
              Leg{"B", b.legs[2].dim * db, LegRole::in},
              Leg{"B'", b.legs[3].dim * db, LegRole::out}};
  return out;
}

la::CMat swap_operator(int d) {
  CMat s = CMat::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) s(i * d + j, j * d + i) = 1.0;
  return s;
}

la::CMat max_classical_corr(int d) {
  CMat m = CMat::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) m(i * d + i, i * d + i) = 1.0 / d;
  return m;
}

la::CMat comparator_projector(int d) {
  CMat m = CMat::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) m(i * d + i, i * d + i) = 1.0;
  return m;
}

namespace {

void check_param(const ChannelFamily& f, bool needs_p) {
  if (f.d < 2) throw std::invalid_argument("make: dimension must be at least 2");
  if (needs_p && (f.p < 0.0 || f.p > 1.0))
    throw std::invalid_argument("make: parameter p outside [0,1]");
}

// Choi of a bipartite map given by Kraus operators acting on the composite
// input (da*db) with composite output (da_out*db_out), in canonical leg order.
ChoiOperator bipartite_from_kraus(const std::vector<CMat>& kraus, int da, int db,
                                  int da_out, int db_out) {
  ChoiOperator flat = choi_from_kraus(kraus, da * db, da_out * db_out);
  SystemShape cur{da, db, da_out, db_out};
  ChoiOperator out;
  out.matrix = la::permute_systems(flat.matrix, cur, {0, 2, 1, 3});
  out.legs = {Leg{"A", da, LegRole::in}, Leg{"A'", da_out, LegRole::out},
              Leg{"B", db, LegRole::in}, Leg{"B'", db_out, LegRole::out}};
  return out;
}

CMat cnot_unitary(int d) {
  CMat u = CMat::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) u(i * d + ((i + j) % d), i * d + j) = 1.0;
  return u;
}

}  // namespace

ChoiOperator make(const ChannelFamily& f) {
  switch (f.kind) {
    case Kind::identity: {
      check_param(f, false);
      ChoiOperator c;
      c.matrix = la::gamma_unnorm(f.d);
      c.legs = {Leg{"A", f.d, LegRole::in}, Leg{"B'", f.d, LegRole::out}};
      return c;
    }
    case Kind::depolarizing: {
      check_param(f, true);
      ChoiOperator c;
      c.matrix = (1.0 - f.p) * la::gamma_unnorm(f.d) +
                 f.p * la::kron(la::identity(f.d), la::maximally_mixed(f.d));
      c.legs = {Leg{"A", f.d, LegRole::in}, Leg{"B'", f.d, LegRole::out}};
      return c;
    }
    case Kind::erasure: {
      check_param(f, true);
      std::vector<CMat> ks;
      CMat embed = CMat::Zero(f.d + 1, f.d);
      for (int i = 0; i < f.d; ++i) embed(i, i) = 1.0;
      ks.push_back(std::sqrt(1.0 - f.p) * embed);
      for (int i = 0; i < f.d; ++i) {
        CMat k = CMat::Zero(f.d + 1, f.d);
        k(f.d, i) = std::sqrt(f.p);
        ks.push_back(k);
      }
      return choi_from_kraus(ks, f.d, f.d + 1);
    }
    case Kind::dephasing: {
      check_param(f, true);
      CMat g = la::gamma_unnorm(f.d);
      CMat diag = CMat(g.diagonal().asDiagonal());
      ChoiOperator c;
      c.matrix = (1.0 - f.p) * g + f.p * diag;
      c.legs = {Leg{"A", f.d, LegRole::in}, Leg{"B'", f.d, LegRole::out}};
      return c;
    }
    case Kind::replacer: {
      check_param(f, false);
      ChoiOperator c;
      c.matrix = la::kron(la::identity(f.d), la::maximally_mixed(f.d));
      c.legs = {Leg{"A", f.d, LegRole::in}, Leg{"B'", f.d, LegRole::out}};
      return c;
    }
    case Kind::classical_feedback: {
      check_param(f, false);
      const int d = f.d;
      CMat m = CMat::Zero(d * d, d * d);
      for (int i = 0; i < d; ++i) m(i * d + i, i * d + i) = 1.0;
      ChoiOperator c;
      c.matrix = m;
      c.legs = {Leg{"A", 1, LegRole::in}, Leg{"A'", d, LegRole::out},
                Leg{"B", d, LegRole::in}, Leg{"B'", 1, LegRole::out}};
      return c;
    }
    case Kind::partial_swap: {
      check_param(f, true);
      CMat u = std::sqrt(1.0 - f.p) * la::identity(f.d * f.d) +
               cplx(0, 1) * std::sqrt(f.p) * swap_operator(f.d);
      return bipartite_from_kraus({u}, f.d, f.d, f.d, f.d);
    }
    case Kind::swap: {
      ChannelFamily g = f;
      g.kind = Kind::partial_swap;
      g.p = 1.0;
      return make(g);
    }
    case Kind::noisy_cnot: {
      check_param(f, true);
      ChoiOperator unitary = bipartite_from_kraus({cnot_unitary(f.d)}, f.d, f.d, f.d, f.d);
      CMat repl = la::kron(la::kron(la::identity(f.d), la::maximally_mixed(f.d)),
                           la::kron(la::identity(f.d), la::maximally_mixed(f.d)));
      ChoiOperator c;
      c.matrix = (1.0 - f.p) * unitary.matrix + f.p * repl;
      c.legs = unitary.legs;
      return c;
    }
    case Kind::from_kraus:
      return choi_from_kraus(f.kraus, f.in_dim, f.out_dim);
    case Kind::from_choi: {
      ChoiOperator c;
      c.matrix = f.choi_matrix;
      c.legs = f.choi_legs;
      int dim = 1;
      for (const Leg& l : c.legs) dim *= l.dim;
      if (dim != c.matrix.rows() || c.matrix.rows() != c.matrix.cols())
        throw std::invalid_argument("from_choi: matrix/leg dimension mismatch");
      la::require_hermitian(c.matrix, "from_choi", 1e-9);
      return c;
    }
  }
  throw std::invalid_argument("make: unknown channel kind");
}

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::identity: return "identity";
    case Kind::depolarizing: return "depolarizing";
    case Kind::erasure: return "erasure";
    case Kind::partial_swap: return "partial_swap";
    case Kind::noisy_cnot: return "noisy_cnot";
    case Kind::classical_feedback: return "classical_feedback";
    case Kind::swap: return "swap";
    case Kind::dephasing: return "dephasing";
    case Kind::replacer: return "replacer";
    case Kind::from_kraus: return "from_kraus";
    case Kind::from_choi: return "from_choi";
  }
  return "unknown";
}

ChannelFamily parse_spec(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("channel spec: invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw std::invalid_argument("channel spec: missing \"kind\"");
  const std::string kind = j["kind"].get<std::string>();
  ChannelFamily f;
  if (kind == "identity") f.kind = Kind::identity;
  else if (kind == "depolarizing") f.kind = Kind::depolarizing;
  else if (kind == "erasure") f.kind = Kind::erasure;
  else if (kind == "partial_swap") f.kind = Kind::partial_swap;
  else if (kind == "noisy_cnot") f.kind = Kind::noisy_cnot;
  else if (kind == "classical_feedback") f.kind = Kind::classical_feedback;
  else if (kind == "swap") f.kind = Kind::swap;
  else if (kind == "dephasing") f.kind = Kind::dephasing;
  else if (kind == "replacer") f.kind = Kind::replacer;
  else if (kind == "from_kraus") f.kind = Kind::from_kraus;
  else if (kind == "from_choi") f.kind = Kind::from_choi;
  else throw std::invalid_argument("channel spec: unknown kind \"" + kind + "\"");

  f.d = j.value("d", 2);
  f.p = j.value("p", f.kind == Kind::dephasing ? 1.0 : 0.0);

  auto parse_complex_matrix = [](const nlohmann::json& re, const nlohmann::json& im,
                                 int rows, int cols) {
    if (!re.is_array() || static_cast<int>(re.size()) != rows * cols)
      throw std::invalid_argument("channel spec: matrix_re has wrong length");
    CMat m(rows, cols);
    for (int i = 0; i < rows * cols; ++i) {
      double r = re[i].get<double>();
      double v = 0.0;
      if (!im.is_null()) {
        if (!im.is_array() || im.size() != re.size())
          throw std::invalid_argument("channel spec: matrix_im has wrong length");
        v = im[i].get<double>();
      }
      m(i / cols, i % cols) = cplx(r, v);
    }
    return m;
  };

  if (f.kind == Kind::from_kraus) {
    f.in_dim = j.value("in_dim", 0);
    f.out_dim = j.value("out_dim", 0);
    if (f.in_dim < 1 || f.out_dim < 1 || !j.contains("kraus") || !j["kraus"].is_array())
      throw std::invalid_argument("channel spec: from_kraus requires in_dim/out_dim/kraus");
    for (const auto& k : j["kraus"]) {
      f.kraus.push_back(parse_complex_matrix(k.value("re", nlohmann::json()),
                                             k.value("im", nlohmann::json()),
                                             f.out_dim, f.in_dim));
    }
  } else if (f.kind == Kind::from_choi) {
    if (!j.contains("legs") || !j["legs"].is_array())
      throw std::invalid_argument("channel spec: from_choi requires legs");
    int dim = 1;
    for (const auto& l : j["legs"]) {
      if (!l.is_array() || l.size() != 3)
        throw std::invalid_argument("channel spec: bad leg entry");
      Leg leg;
      leg.label = l[0].get<std::string>();
      leg.dim = l[1].get<int>();
      const std::string role = l[2].get<std::string>();
      if (role == "in") leg.role = LegRole::in;
      else if (role == "out") leg.role = LegRole::out;
      else throw std::invalid_argument("channel spec: leg role must be in/out");
      dim *= leg.dim;
      f.choi_legs.push_back(leg);
    }
    f.choi_matrix = parse_complex_matrix(j.value("matrix_re", nlohmann::json()),
                                         j.value("matrix_im", nlohmann::json()), dim, dim);
  }
  return f;
}

namespace {

CMat random_isometry(rng::Rng& rng, int rows, int cols) {
  if (cols > rows) throw std::invalid_argument("random_isometry: cols > rows");
  CMat g = rng.ginibre(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int k = 0; k < j; ++k) g.col(j) -= g.col(k).dot(g.col(j)) * g.col(k);
    g.col(j).normalize();
  }
  return g;
}

}  // namespace

ChoiOperator random_channel(rng::Rng& rng, int in_dim, int out_dim, int kraus_count) {
  int k = kraus_count;
  if (k <= 0) k = std::max(2, (in_dim + out_dim - 1) / out_dim);
  while (out_dim * k < in_dim) ++k;
  CMat v = random_isometry(rng, out_dim * k, in_dim);
  std::vector<CMat> ks;
  for (int e = 0; e < k; ++e) {
    CMat kk(out_dim, in_dim);
    for (int o = 0; o < out_dim; ++o)
      for (int i = 0; i < in_dim; ++i) kk(o, i) = v(o * k + e, i);
    ks.push_back(kk);
  }
  return choi_from_kraus(ks, in_dim, out_dim);
}

ChoiOperator random_bipartite_channel(rng::Rng& rng, int da, int da_out, int db,
                                      int db_out, int kraus_count) {
  ChoiOperator flat = random_channel(rng, da * db, da_out * db_out, kraus_count);
  SystemShape cur{da, db, da_out, db_out};
  ChoiOperator out;
  out.matrix = la::permute_systems(flat.matrix, cur, {0, 2, 1, 3});
  out.legs = {Leg{"A", da, LegRole::in}, Leg{"A'", da_out, LegRole::out},
              Leg{"B", db, LegRole::in}, Leg{"B'", db_out, LegRole::out}};
  return out;
}

}  // namespace capbound::channels
