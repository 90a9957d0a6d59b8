/*
 * Copyright 2026 The capbound authors
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "verify.hpp"

#include <cmath>
#include <sstream>

#include "bounds.hpp"
#include "channels.hpp"
#include "divergences.hpp"
#include "la.hpp"
#include "rng.hpp"
#include "sdp_problem.hpp"
#include "symmetry.hpp"

namespace capbound::verify {

namespace {

using la::CMat;
namespace ch = capbound::channels;
namespace dv = capbound::divergences;
namespace sym = capbound::symmetry;

struct Check {
  std::string name;
  bool pass = false;
  double worst = 0.0;
  std::string note;
};

using Suite = std::vector<Check> (*)(uint64_t seed);

bool solved(const bounds::BoundResult& r) {
  return r.status == sdp::Status::optimal || r.status == sdp::Status::near_optimal;
}

// --------------------------------------------------------------------- linalg

std::vector<Check> suite_linalg(uint64_t seed) {
  rng::Rng rng(seed);
  std::vector<Check> out;
  auto rand_herm = [&](int d) {
    CMat g = rng.ginibre(d, d);
    return CMat((g + g.adjoint()) / 2.0);
  };

  {
    Check c{"kron_partial_trace_factorizes"};
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      CMat x = rand_herm(3), y = rand_herm(2);
      CMat lhs = la::partial_trace(la::kron(x, y), la::SystemShape{3, 2}, {1});
      worst = std::max(worst, (lhs - y.trace() * x).cwiseAbs().maxCoeff());
    }
    c.worst = worst;
    c.pass = worst <= 1e-12;
    out.push_back(c);
  }
  {
    Check c{"partial_transpose_involution_trace_hermiticity"};
    double worst = 0.0;
    la::SystemShape s{2, 3};
    for (int k = 0; k < 10; ++k) {
      CMat x = rand_herm(6);
      CMat t = la::partial_transpose(x, s, {1});
      worst = std::max(worst, (la::partial_transpose(t, s, {1}) - x).cwiseAbs().maxCoeff());
      worst = std::max(worst, std::abs((t.trace() - x.trace()).real()));
      worst = std::max(worst, (t - t.adjoint()).cwiseAbs().maxCoeff());
    }
    c.worst = worst;
    c.pass = worst <= 1e-12;
    out.push_back(c);
  }
  {
    Check c{"partial_transpose_self_adjoint"};
    double worst = 0.0;
    la::SystemShape s{2, 2};
    for (int k = 0; k < 10; ++k) {
      CMat x = rand_herm(4), y = rand_herm(4);
      auto tx = la::partial_transpose(x, s, {0});
      auto ty = la::partial_transpose(y, s, {0});
      worst = std::max(worst, std::abs(((y * tx).trace() - (ty * x).trace()).real()));
    }
    c.worst = worst;
    c.pass = worst <= 1e-12;
    out.push_back(c);
  }
  {
    Check c{"op_norm_matches_eigenvector_overlap"};
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      CMat x = rand_herm(4);
      la::EigH e = la::eig_hermitian(x);
      double by_vec = 0.0;
      for (int i = 0; i < 4; ++i)
        by_vec = std::max(by_vec,
                          std::abs((e.vectors.col(i).adjoint() * x * e.vectors.col(i))(0).real()));
      worst = std::max(worst, std::abs(by_vec - la::op_norm(x)));
    }
    c.worst = worst;
    c.pass = worst <= 1e-10;
    out.push_back(c);
  }
  {
    Check c{"mat_fn_identity_and_eig_reconstruction"};
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      CMat x = rand_herm(5);
      worst = std::max(worst,
                       (la::mat_fn(x, [](double v) { return v; }) - x).cwiseAbs().maxCoeff());
      la::EigH e = la::eig_hermitian(x);
      CMat rec = e.vectors * e.values.asDiagonal() * e.vectors.adjoint();
      worst = std::max(worst, (rec - x).norm() / x.norm());
    }
    c.worst = worst;
    c.pass = worst <= 1e-10;
    out.push_back(c);
  }
  {
    Check c{"permute_systems_inverse"};
    double worst = 0.0;
    la::SystemShape s{2, 3, 2};
    for (int k = 0; k < 10; ++k) {
      CMat x = rand_herm(12);
      CMat p = la::permute_systems(x, s, {2, 0, 1});
      CMat back = la::permute_systems(p, la::SystemShape{2, 2, 3}, {1, 2, 0});
      worst = std::max(worst, (back - x).cwiseAbs().maxCoeff());
    }
    c.worst = worst;
    c.pass = worst <= 1e-12;
    out.push_back(c);
  }
  return out;
}

// ------------------------------------------------------------------- channels

std::vector<Check> suite_channels(uint64_t seed) {
  rng::Rng rng(seed);
  std::vector<Check> out;

  {
    Check c{"constructors_are_cptp"};
    bool ok = true;
    for (double p : {0.0, 0.35, 1.0}) {
      ok = ok && ch::is_cptp(ch::make({ch::Kind::depolarizing, 2, p}));
      ok = ok && ch::is_cptp(ch::make({ch::Kind::erasure, 3, p}));
      ok = ok && ch::is_cptp(ch::make({ch::Kind::partial_swap, 2, p}));
      ok = ok && ch::is_cptp(ch::make({ch::Kind::noisy_cnot, 2, p}));
      ok = ok && ch::is_cptp(ch::make({ch::Kind::dephasing, 2, p}));
    }
    ok = ok && ch::is_cptp(ch::make({ch::Kind::identity, 3}));
    ok = ok && ch::is_cptp(ch::make({ch::Kind::classical_feedback, 3}));
    ok = ok && ch::is_cptp(ch::make({ch::Kind::replacer, 2}));
    c.pass = ok;
    out.push_back(c);
  }
  {
    Check c{"identity_channel_acts_trivially"};
    double worst = 0.0;
    auto id = ch::make({ch::Kind::identity, 2});
    for (int k = 0; k < 100; ++k) {
      CMat rho = rng.random_density(2);
      worst = std::max(worst, (ch::apply(id, rho) - rho).cwiseAbs().maxCoeff());
    }
    c.worst = worst;
    c.pass = worst <= 1e-12;
    out.push_back(c);
  }
  {
    Check c{"compose_serial_associative"};
    double worst = 0.0;
    for (int k = 0; k < 8; ++k) {
      auto a = ch::random_channel(rng, 2, 2);
      auto b = ch::random_channel(rng, 2, 2);
      auto cc = ch::random_channel(rng, 2, 2);
      auto lhs = ch::compose_serial(ch::compose_serial(a, b), cc);
      auto rhs = ch::compose_serial(a, ch::compose_serial(b, cc));
      worst = std::max(worst, (lhs.matrix - rhs.matrix).cwiseAbs().maxCoeff());
    }
    c.worst = worst;
    c.pass = worst <= 1e-9;
    out.push_back(c);
  }
  {
    Check c{"partial_swap_choi_is_unitary_rank_one"};
    double worst = 0.0;
    for (double p : {0.2, 0.7}) {
      auto s = ch::make({ch::Kind::partial_swap, 2, p});
      la::EigH e = la::eig_hermitian(s.matrix);
      worst = std::max(worst, std::abs(e.values.maxCoeff() - 4.0));
      worst = std::max(worst, std::abs(e.values.head(15).cwiseAbs().maxCoeff()));
    }
    c.worst = worst;
    c.pass = worst <= 1e-9;
    out.push_back(c);
  }
  {
    Check c{"choi_apply_matches_kraus_apply"};
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      int kn = 3;
      std::vector<CMat> ks;
      {
        CMat v = rng.ginibre(2 * kn, 2);
        // project to isometry via normal equations
        Eigen::JacobiSVD<CMat> svd(v, Eigen::ComputeThinU | Eigen::ComputeThinV);
        CMat iso = svd.matrixU() * svd.matrixV().adjoint();
        for (int e = 0; e < kn; ++e) {
          CMat kk(2, 2);
          for (int o = 0; o < 2; ++o)
            for (int i = 0; i < 2; ++i) kk(o, i) = iso(o * kn + e, i);
          ks.push_back(kk);
        }
      }
      auto choi = ch::choi_from_kraus(ks, 2, 2);
      CMat rho = rng.random_density(2);
      CMat via_choi = ch::apply(choi, rho);
      CMat via_kraus = CMat::Zero(2, 2);
      for (const CMat& kk : ks) via_kraus += kk * rho * kk.adjoint();
      worst = std::max(worst, (via_choi - via_kraus).cwiseAbs().maxCoeff());
    }
    c.worst = worst;
    c.pass = worst <= 1e-10;
    out.push_back(c);
  }
  {
    Check c{"noisy_cnot_bicovariant_partial_swap_not"};
    auto cnot_group = sym::pauli_bicovariance(ch::make({ch::Kind::noisy_cnot, 2, 0.4}));
    auto pswap_group = sym::pauli_bicovariance(ch::make({ch::Kind::partial_swap, 2, 0.5}));
    bool uu_ok = sym::check_bicovariant(ch::make({ch::Kind::partial_swap, 2, 0.5}),
                                        sym::uu_design_qubit());
    c.pass = cnot_group.has_value() && !pswap_group.has_value() && uu_ok;
    c.note = "pauli(noisy_cnot) found, pauli(partial_swap) absent, uu(partial_swap) holds";
    out.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------- divergences

std::vector<Check> suite_divergences(uint64_t seed) {
  rng::Rng rng(seed);
  std::vector<Check> out;

  {
    Check c{"data_processing_under_channels"};
    double worst = -1e300;
    for (int k = 0; k < 30; ++k) {
      CMat rho = rng.random_density(3), sg = rng.random_density(3);
      auto n = ch::random_channel(rng, 3, 3);
      CMat nr = ch::apply(n, rho), ns = ch::apply(n, sg);
      auto drop = [&](double before, double after) {
        worst = std::max(worst, after - before);
      };
      drop(dv::rel_ent(rho, sg).value(), dv::rel_ent(nr, ns).value());
      drop(dv::geo_renyi(rho, sg, 1.5).value(), dv::geo_renyi(nr, ns, 1.5).value());
      drop(dv::sandwiched_renyi(rho, sg, 2.0).value(),
           dv::sandwiched_renyi(nr, ns, 2.0).value());
      drop(dv::bs_rel_ent(rho, sg).value(), dv::bs_rel_ent(nr, ns).value());
      if (k < 6)
        drop(dv::hypothesis_testing(rho, sg, 0.1).value(),
             dv::hypothesis_testing(nr, ns, 0.1).value());
    }
    c.worst = worst;
    c.pass = worst <= 1e-8;
    out.push_back(c);
  }
  {
    Check c{"alpha_monotonicity"};
    double worst = -1e300;
    for (int k = 0; k < 50; ++k) {
      CMat rho = rng.random_density(2), sg = rng.random_density(2);
      double g_lo = dv::geo_renyi(rho, sg, 1.25).value();
      double g_hi = dv::geo_renyi(rho, sg, 1.75).value();
      worst = std::max(worst, g_lo - g_hi);
      double s_lo = dv::sandwiched_renyi(rho, sg, 1.5).value();
      double s_hi = dv::sandwiched_renyi(rho, sg, 2.5).value();
      worst = std::max(worst, s_lo - s_hi);
      // sandwiched <= geometric at matched alpha
      worst = std::max(worst, s_lo - dv::geo_renyi(rho, sg, 1.5).value() - 1e-9);
      worst = std::max(worst,
                       dv::sandwiched_renyi(rho, sg, 2.0).value() -
                           dv::geo_renyi(rho, sg, 2.0).value() - 1e-9);
    }
    c.worst = worst;
    c.pass = worst <= 1e-9;
    out.push_back(c);
  }
  {
    Check c{"vanishing_on_equal_arguments"};
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      CMat rho = rng.random_density(3);
      worst = std::max(worst, std::abs(dv::rel_ent(rho, rho).value()));
      worst = std::max(worst, std::abs(dv::geo_renyi(rho, rho, 1.5).value()));
      worst = std::max(worst, std::abs(dv::bs_rel_ent(rho, rho).value()));
      if (k < 3) {
        double eps = 0.25;
        double ht = dv::hypothesis_testing(rho, rho, eps).value();
        worst = std::max(worst, std::abs(ht + std::log2(1 - eps)));
      }
    }
    c.worst = worst;
    c.pass = worst <= 1e-7;
    out.push_back(c);
  }
  {
    Check c{"commuting_reduces_to_classical"};
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      int d = 3;
      la::RVec p(d), q(d);
      double sp = 0, sq = 0;
      for (int i = 0; i < d; ++i) {
        p(i) = rng.uniform(0.05, 1.0);
        q(i) = rng.uniform(0.05, 1.0);
        sp += p(i);
        sq += q(i);
      }
      p /= sp;
      q /= sq;
      CMat rho = CMat::Zero(d, d), sg = CMat::Zero(d, d);
      for (int i = 0; i < d; ++i) {
        rho(i, i) = p(i);
        sg(i, i) = q(i);
      }
      double cl_re = 0, cl_geo = 0, alpha = 1.5;
      for (int i = 0; i < d; ++i) {
        cl_re += p(i) * std::log2(p(i) / q(i));
        cl_geo += std::pow(p(i), alpha) * std::pow(q(i), 1 - alpha);
      }
      cl_geo = std::log2(cl_geo) / (alpha - 1);
      worst = std::max(worst, std::abs(dv::rel_ent(rho, sg).value() - cl_re));
      worst = std::max(worst, std::abs(dv::geo_renyi(rho, sg, alpha).value() - cl_geo));
      worst = std::max(worst, std::abs(dv::sandwiched_renyi(rho, sg, alpha).value() - cl_geo));
      worst = std::max(worst, std::abs(dv::bs_rel_ent(rho, sg).value() - cl_re));
    }
    c.worst = worst;
    c.pass = worst <= 1e-9;
    out.push_back(c);
  }
  {
    Check c{"nu_hat_and_uniform_bound"};
    double worst = -1e300;
    for (int k = 0; k < 50; ++k) {
      CMat rho = rng.random_density(2), sg = rng.random_density(2);
      double nu = dv::nu_hat(rho, sg);
      worst = std::max(worst, 3.0 - 1e-9 - nu);
      double dhat = dv::bs_rel_ent(rho, sg).value();
      double cap = std::log(3.0) / (4.0 * std::log(nu));
      for (int kk = 4; kk <= 10; ++kk) {
        double delta = std::ldexp(1.0, -kk);
        if (delta >= cap) continue;
        double lhs = dv::geo_renyi(rho, sg, 1.0 + delta).value();
        double rhs = dhat + 4 * delta * std::pow(std::log2(nu), 2.0);
        worst = std::max(worst, lhs - rhs);
      }
    }
    c.worst = worst;
    c.pass = worst <= 1e-9;
    out.push_back(c);
  }
  {
    Check c{"geo_renyi_descends_to_bs_limit"};
    double worst = 0.0;
    for (int k = 0; k < 5; ++k) {
      CMat rho = rng.random_density(2), sg = rng.random_density(2);
      double dhat = dv::bs_rel_ent(rho, sg).value();
      double prev = 1e300;
      for (int ell = 4; ell <= 12; ell += 4) {
        double v = dv::geo_renyi(rho, sg, 1.0 + std::ldexp(1.0, -ell)).value();
        worst = std::max(worst, v - prev);  // decreasing in ell
        worst = std::max(worst, dhat - v);  // stays above the limit
        prev = v;
      }
      worst = std::max(worst, prev - dhat - 1e-3);  // gap below 1e-3 at ell=12
    }
    c.worst = worst;
    c.pass = worst <= 1e-9;
    out.push_back(c);
  }
  return out;
}

// ------------------------------------------------------------------------ sdp

std::vector<Check> suite_sdp(uint64_t seed) {
  rng::Rng rng(seed);
  std::vector<Check> out;

  {
    Check c{"realify_matrix_roundtrip_and_spectrum"};
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      CMat g = rng.ginibre(4, 4);
      CMat h = (g + g.adjoint()) / 2.0;
      worst = std::max(worst,
                       (sdp::derealify_matrix(sdp::realify_matrix(h)) - h).cwiseAbs().maxCoeff());
    }
    CMat y(2, 2);
    y << 0, la::cplx(0, -1), la::cplx(0, 1), 0;
    Eigen::SelfAdjointEigenSolver<la::RMat> es(sdp::realify_matrix(y));
    la::RVec ev = es.eigenvalues();
    worst = std::max(worst, std::abs(ev(0) + 1) + std::abs(ev(1) + 1) +
                                std::abs(ev(2) - 1) + std::abs(ev(3) - 1));
    c.worst = worst;
    c.pass = worst <= 1e-10;
    out.push_back(c);
  }
  {
    Check c{"optimum_matches_closed_form_battery"};
    double worst = 0.0;
    bool all_weak_duality = true;
    for (int k = 0; k < 20; ++k) {
      int d = rng.uniform_int(2, 5);
      CMat g = rng.ginibre(d, d);
      CMat h = (g + g.adjoint()) / 2.0;
      bool real_case = (k % 2 == 0);
      if (real_case) h = h.real().cast<la::cplx>();
      sdp::SdpProblem p;
      la::EigH e = la::eig_hermitian(h);
      double expect;
      if (k % 4 < 2) {
        // min lam with lam I >= H  ->  max eigenvalue
        p.add_scalar("lam");
        sdp::AffineMatrixExpr ex(d);
        ex.add("lam", {sdp::LinOp::kron_left(la::identity(d))});
        ex.add_const(-h);
        p.psd.push_back(ex);
        p.minimize_scalar("lam");
        expect = e.values.maxCoeff();
      } else {
        // min Tr S with S >= H, S >= 0  ->  trace of the positive part
        p.add_hermitian("S", d);
        sdp::AffineMatrixExpr ex(d);
        ex.add("S");
        ex.add_const(-h);
        p.psd.push_back(ex);
        sdp::AffineMatrixExpr pos(d);
        pos.add("S");
        p.psd.push_back(pos);
        p.minimize_trace("S", la::identity(d));
        expect = e.values.cwiseMax(0.0).sum();
      }
      sdp::SdpSolution s = sdp::solve(p);
      worst = std::max(worst, std::abs(s.primal_value - expect));
      all_weak_duality = all_weak_duality && (s.primal_value >= s.dual_value - 1e-7);
    }
    c.worst = worst;
    c.pass = worst <= 1e-7 && all_weak_duality;
    out.push_back(c);
  }
  {
    Check c{"deterministic_resolve"};
    auto fb = ch::make({ch::Kind::depolarizing, 2, 0.37});
    auto r1 = bounds::beta(fb);
    auto r2 = bounds::beta(fb);
    c.worst = std::abs(r1.value_bits - r2.value_bits);
    c.pass = c.worst <= 1e-9;
    out.push_back(c);
  }
  {
    Check c{"certify_catches_injected_fault"};
    sdp::SdpProblem p;
    p.add_hermitian("S", 2);
    CMat rho = rng.random_density(2);
    sdp::AffineMatrixExpr ex(2);
    ex.add("S");
    ex.add_const(-rho);
    p.psd.push_back(ex);
    p.minimize_trace("S", la::identity(2));
    sdp::SdpSolution s = sdp::solve(p);
    bool good = sdp::certify(p, s).ok;
    s.assignments["S"](0, 0) -= 1e-3;
    bool bad = sdp::certify(p, s).ok;
    c.pass = good && !bad;
    out.push_back(c);
  }
  return out;
}

// --------------------------------------------------------------------- bounds

std::vector<Check> suite_bounds(uint64_t seed) {
  rng::Rng rng(seed);
  std::vector<Check> out;
  bounds::Options o;

  {
    Check c{"beta_closed_forms"};
    double worst = 0.0;
    worst = std::max(worst, std::abs(bounds::beta(ch::make({ch::Kind::classical_feedback, 2}), o)
                                         .value_bits - 1.0));
    worst = std::max(worst,
                     std::abs(bounds::beta(ch::make({ch::Kind::swap, 2}), o).value_bits - 4.0));
    auto local = ch::tensor_local(ch::random_channel(rng, 2, 2), ch::random_channel(rng, 2, 2));
    worst = std::max(worst, std::abs(bounds::beta(local, o).value_bits - 1.0));
    worst = std::max(worst,
                     std::abs(bounds::upsilon_geo(ch::make({ch::Kind::classical_feedback, 2}), 4, o)
                                  .value_bits));
    c.worst = worst;
    c.pass = worst <= 1e-6;
    out.push_back(c);
  }
  {
    Check c{"beta_nonnegativity"};
    double worst = -1e300;
    bool all = true;
    for (int k = 0; k < 30; ++k) {
      auto n = ch::random_bipartite_channel(rng, 2, 2, 2, 2);
      auto r = bounds::beta(n, o);
      all = all && solved(r) && r.certified;
      worst = std::max(worst, 1.0 - 1e-7 - r.value_bits);
    }
    c.worst = worst;
    c.pass = all && worst <= 0.0;
    out.push_back(c);
  }
  {
    Check c{"beta_stability_under_identity_legs"};
    double worst = 0.0;
    bool all = true;
    for (int k = 0; k < 10; ++k) {
      auto n = ch::random_channel(rng, 2, 2);
      auto base = bounds::beta(n, o);
      auto lifted = bounds::beta(ch::with_identity_legs(n, k % 2 ? 2 : 1, k % 2 ? 1 : 2), o);
      all = all && solved(base) && solved(lifted);
      worst = std::max(worst, std::abs(base.value_bits - lifted.value_bits));
    }
    c.worst = worst;
    c.pass = all && worst <= 1e-6;
    out.push_back(c);
  }
  {
    Check c{"beta_subadditive_under_composition"};
    double worst = -1e300;
    bool all = true;
    for (int k = 0; k < 8; ++k) {
      auto m1 = ch::random_bipartite_channel(rng, 2, 2, 2, 2);
      auto m2 = ch::random_bipartite_channel(rng, 2, 2, 2, 2);
      auto b1 = bounds::beta(m1, o), b2 = bounds::beta(m2, o);
      auto b3 = bounds::beta(ch::compose_serial(m1, m2), o);
      all = all && solved(b1) && solved(b2) && solved(b3);
      worst = std::max(worst,
                       b3.value_bits - b1.value_bits * b2.value_bits * (1.0 + 1e-6));
    }
    c.worst = worst;
    c.pass = all && worst <= 0.0;
    out.push_back(c);
  }
  {
    Check c{"beta_convexity"};
    double worst = -1e300;
    for (int k = 0; k < 8; ++k) {
      auto m0 = ch::random_bipartite_channel(rng, 2, 2, 2, 2);
      auto m1 = ch::random_bipartite_channel(rng, 2, 2, 2, 2);
      double lam = rng.uniform();
      ch::ChoiOperator mix = m0;
      mix.matrix = lam * m1.matrix + (1 - lam) * m0.matrix;
      double b = bounds::beta(mix, o).value_bits;
      double gate = lam * bounds::beta(m1, o).value_bits +
                    (1 - lam) * bounds::beta(m0, o).value_bits;
      worst = std::max(worst, b - gate - 1e-6);
    }
    c.worst = worst;
    c.pass = worst <= 0.0;
    out.push_back(c);
  }
  {
    Check c{"beta_local_data_processing_and_unitary_invariance"};
    double worst = -1e300, worst_eq = 0.0;
    for (int k = 0; k < 6; ++k) {
      auto n = ch::random_bipartite_channel(rng, 2, 2, 2, 2);
      double base = bounds::beta(n, o).value_bits;
      auto pre = ch::tensor_local(ch::random_channel(rng, 2, 2), ch::random_channel(rng, 2, 2));
      auto post = ch::tensor_local(ch::random_channel(rng, 2, 2), ch::random_channel(rng, 2, 2));
      double proc =
          bounds::beta(ch::compose_serial(ch::compose_serial(pre, n), post), o).value_bits;
      worst = std::max(worst, proc - base - 1e-6);

      auto u = [&]() {
        auto uu = rng.random_unitary(2);
        return ch::choi_from_kraus({uu}, 2, 2);
      };
      auto rot = ch::compose_serial(ch::compose_serial(ch::tensor_local(u(), u()), n),
                                    ch::tensor_local(u(), u()));
      worst_eq = std::max(worst_eq, std::abs(bounds::beta(rot, o).value_bits - base));
    }
    c.worst = std::max(worst, worst_eq - 1e-6);
    c.pass = worst <= 0.0 && worst_eq <= 1e-6;
    out.push_back(c);
  }
  {
    Check c{"upsilon_below_c_beta_and_ell_monotone"};
    double worst = -1e300;
    for (int k = 0; k < 4; ++k) {
      auto n = ch::random_bipartite_channel(rng, 2, 2, 2, 2);
      double cb = bounds::c_beta(n, o).value_bits;
      double u2 = bounds::upsilon_geo(n, 2, o).value_bits;
      double u4 = bounds::upsilon_geo(n, 4, o).value_bits;
      worst = std::max(worst, u2 - cb - 1e-6);
      worst = std::max(worst, u4 - u2 - 1e-6);  // alpha decreasing with ell
    }
    c.worst = worst;
    c.pass = worst <= 0.0;
    out.push_back(c);
  }
  {
    Check c{"comparator_and_error_bound_checks"};
    auto id2 = ch::make({ch::Kind::identity, 2});
    ch::ChoiOperator half = id2;
    half.matrix /= 2.0;
    auto comp = bounds::comparator_bound_check(half, 2, o);
    auto err_id = bounds::err_bound_check(id2, 2, o);
    auto err_dep = bounds::err_bound_check(ch::make({ch::Kind::depolarizing, 2, 0.2}), 2, o);
    c.pass = comp.pass && err_id.pass && err_dep.pass;
    c.note = "comparator " + std::to_string(comp.lhs) + ", err rhs " +
             std::to_string(err_dep.rhs);
    out.push_back(c);
  }
  return out;
}

// ------------------------------------------------------------------- symmetry

std::vector<Check> suite_symmetry(uint64_t seed) {
  rng::Rng rng(seed);
  std::vector<Check> out;
  auto uu = sym::uu_design_qubit();

  {
    Check c{"uu_twirl_reproduces_haar_werner"};
    double worst = 0.0;
    for (int k = 0; k < 30; ++k) {
      CMat rho = rng.random_density(4);
      CMat tw = sym::twirl_state(rho, uu);
      double q = (sym::antisym_projector(2) * rho).trace().real();
      CMat w = sym::werner_state({q, 2});
      worst = std::max(worst, (tw - w).cwiseAbs().maxCoeff());
    }
    c.worst = worst;
    c.pass = worst <= 1e-9;
    out.push_back(c);
  }
  {
    Check c{"twirl_choi_idempotent"};
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      auto n = ch::random_bipartite_channel(rng, 2, 2, 2, 2);
      auto t1 = sym::twirl_choi(n, uu);
      auto t2 = sym::twirl_choi(t1, uu);
      worst = std::max(worst, (t1.matrix - t2.matrix).cwiseAbs().maxCoeff());
    }
    c.worst = worst;
    c.pass = worst <= 1e-9;
    out.push_back(c);
  }
  {
    Check c{"twirl_commutes_with_input_marginal"};
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      auto n = ch::random_bipartite_channel(rng, 2, 2, 2, 2);
      auto tw = sym::twirl_choi(n, uu);
      CMat lhs = la::partial_trace(tw.matrix, tw.shape(), {1, 3});
      CMat marg = la::partial_trace(n.matrix, n.shape(), {1, 3});
      CMat acc = CMat::Zero(4, 4);
      for (const auto& e : uu.elements) {
        CMat u = la::kron(e.u_a.conjugate(), e.v_b.conjugate());
        acc += u * marg * u.adjoint();
      }
      acc /= double(uu.elements.size());
      worst = std::max(worst, (lhs - acc).cwiseAbs().maxCoeff());
    }
    c.worst = worst;
    c.pass = worst <= 1e-9;
    out.push_back(c);
  }
  {
    Check c{"werner_special_points"};
    double worst = 0.0;
    worst = std::max(worst, (sym::werner_state({0.25, 2}) - la::maximally_mixed(4))
                                .cwiseAbs()
                                .maxCoeff());
    CMat singlet = sym::werner_state({1.0, 2});
    CMat proj = sym::antisym_projector(2);
    worst = std::max(worst, (singlet - proj).cwiseAbs().maxCoeff());
    worst = std::max(worst,
                     std::abs(sym::werner_state({0.0, 2}).trace().real() - 1.0));
    c.worst = worst;
    c.pass = worst <= 1e-12;
    out.push_back(c);
  }
  {
    Check c{"covariance_constraints_vanish_on_twirl"};
    double worst = 0.0;
    for (int k = 0; k < 5; ++k) {
      auto n = ch::random_bipartite_channel(rng, 2, 2, 2, 2);
      auto tw = sym::twirl_choi(n, uu);
      auto exprs = sym::covariance_constraints("G", n, uu);
      std::map<std::string, CMat> assign{{"G", tw.matrix}};
      for (const auto& e : exprs)
        worst = std::max(worst, e.eval(assign).cwiseAbs().maxCoeff());
    }
    c.worst = worst;
    c.pass = worst <= 1e-9;
    out.push_back(c);
  }
  {
    Check c{"identity_pair_bicovariant"};
    auto idid = ch::tensor_local(ch::make({ch::Kind::identity, 2}),
                                 ch::make({ch::Kind::identity, 2}));
    c.pass = sym::check_bicovariant(idid, uu) &&
             sym::pauli_bicovariance(idid).has_value();
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"linalg", "channels", "divergences", "sdp", "bounds", "symmetry"};
}

int run_suite(const std::string& name, uint64_t seed, const Logger& log) {
  std::vector<std::pair<std::string, Suite>> table = {
      {"linalg", suite_linalg},     {"channels", suite_channels},
      {"divergences", suite_divergences}, {"sdp", suite_sdp},
      {"bounds", suite_bounds},     {"symmetry", suite_symmetry},
  };
  int failures = 0;
  bool matched = false;
  for (const auto& [n, fn] : table) {
    if (name != "all" && name != n) continue;
    matched = true;
    for (const Check& c : fn(seed)) {
      std::ostringstream os;
      os << (c.pass ? "[PASS] " : "[FAIL] ") << n << '/' << c.name;
      if (c.worst != 0.0) os << "  (worst " << c.worst << ")";
      if (!c.note.empty()) os << "  " << c.note;
      log(os.str());
      if (!c.pass) ++failures;
    }
  }
  if (!matched) throw std::invalid_argument("unknown verify suite: " + name);
  return failures;
}

}  // namespace capbound::verify
