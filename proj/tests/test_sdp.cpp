/*
 * Copyright 2026 The capbound authors
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rng.hpp"
#include "sdp_problem.hpp"

using namespace capbound;
using namespace capbound::sdp;
using la::CMat;
using la::cplx;

TEST_CASE("realify matrix embedding") {
  CMat a(1, 1);
  a(0, 0) = 0.7;
  la::RMat r = realify_matrix(a);
  CHECK(r(0, 0) == doctest::Approx(0.7));
  CHECK(r(1, 1) == doctest::Approx(0.7));
  CHECK(r(0, 1) == 0.0);

  CMat y(2, 2);
  y << 0, cplx(0, -1), cplx(0, 1), 0;
  Eigen::SelfAdjointEigenSolver<la::RMat> es(realify_matrix(y));
  CHECK(es.eigenvalues()(0) == doctest::Approx(-1.0));
  CHECK(es.eigenvalues()(1) == doctest::Approx(-1.0));
  CHECK(es.eigenvalues()(2) == doctest::Approx(1.0));
  CHECK(es.eigenvalues()(3) == doctest::Approx(1.0));

  rng::Rng rng(31);
  for (int k = 0; k < 10; ++k) {
    CMat g = rng.ginibre(4, 4);
    CMat h = (g + g.adjoint()) / 2.0;
    CHECK((derealify_matrix(realify_matrix(h)) - h).cwiseAbs().maxCoeff() < 1e-14);
    // PSD is preserved in both directions: shifted versions stay comparable
    la::EigH e = la::eig_hermitian(h);
    Eigen::SelfAdjointEigenSolver<la::RMat> er(realify_matrix(h));
    CHECK(std::abs(e.values.minCoeff() - er.eigenvalues().minCoeff()) < 1e-10);
  }
}

TEST_CASE("eigenvalue epigraph") {
  SdpProblem p;
  p.add_scalar("lam", true);
  CMat d = CMat::Zero(2, 2);
  d(0, 0) = 1;
  d(1, 1) = 2;
  AffineMatrixExpr e(2);
  e.add("lam", {LinOp::kron_left(la::identity(2))});
  e.add_const(-d);
  p.psd.push_back(e);
  p.minimize_scalar("lam");
  SdpSolution s = solve(p);
  CHECK(s.status == Status::optimal);
  CHECK(s.primal_value == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(s.gap <= 1e-7);
  CHECK(s.max_feas_residual <= 1e-8);
  CHECK(certify(p, s).ok);
}

TEST_CASE("trace domination") {
  rng::Rng rng(32);
  CMat rho = rng.random_density(3);
  SdpProblem p;
  p.add_hermitian("S", 3);
  AffineMatrixExpr e(3);
  e.add("S");
  e.add_const(-rho);
  p.psd.push_back(e);
  p.minimize_trace("S", la::identity(3));
  SdpSolution s = solve(p);
  CHECK(s.status == Status::optimal);
  CHECK(s.primal_value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("closed-form battery, real and complex data") {
  rng::Rng rng(33);
  for (int k = 0; k < 20; ++k) {
    int d = rng.uniform_int(2, 5);
    CMat g = rng.ginibre(d, d);
    CMat h = (g + g.adjoint()) / 2.0;
    if (k % 2 == 0) h = h.real().cast<cplx>();  // natively real instance
    la::EigH eh = la::eig_hermitian(h);

    SdpProblem p;
    double expect;
    if (k % 4 < 2) {
      p.add_scalar("lam");
      AffineMatrixExpr e(d);
      e.add("lam", {LinOp::kron_left(la::identity(d))});
      e.add_const(-h);
      p.psd.push_back(e);
      p.minimize_scalar("lam");
      expect = eh.values.maxCoeff();
    } else {
      p.add_hermitian("S", d);
      AffineMatrixExpr dom(d);
      dom.add("S");
      dom.add_const(-h);
      p.psd.push_back(dom);
      AffineMatrixExpr pos(d);
      pos.add("S");
      p.psd.push_back(pos);
      p.minimize_trace("S", la::identity(d));
      expect = eh.values.cwiseMax(0.0).sum();
    }
    SdpSolution s = solve(p);
    CHECK(s.status == Status::optimal);
    CHECK(std::abs(s.primal_value - expect) < 1e-7);
    CHECK(s.primal_value >= s.dual_value - 1e-7);  // weak duality
  }
}

TEST_CASE("equality constraints") {
  // min Tr[S] s.t. S >= 0, Tr[S rho] = 1 has optimum 1/op_norm(rho).
  rng::Rng rng(34);
  CMat rho = rng.random_density(3);
  SdpProblem p;
  p.add_hermitian("S", 3);
  AffineMatrixExpr pos(3);
  pos.add("S");
  p.psd.push_back(pos);
  AffineMatrixExpr eq(1);
  eq.add("S", {LinOp::inner(rho)});
  eq.add_const(-CMat::Identity(1, 1));
  p.eq.push_back(eq);
  p.minimize_trace("S", la::identity(3));
  SdpSolution s = solve(p);
  CHECK(s.status == Status::optimal);
  CHECK(s.primal_value == doctest::Approx(1.0 / la::op_norm(rho)).epsilon(1e-7));

  // inconsistent equality system is flagged before the solve
  SdpProblem bad;
  bad.add_hermitian("S", 2);
  AffineMatrixExpr z(2);
  z.add("S", {LinOp::scale(0.0)});
  z.add_const(la::identity(2));
  bad.eq.push_back(z);
  AffineMatrixExpr pos2(2);
  pos2.add("S");
  bad.psd.push_back(pos2);
  bad.minimize_trace("S", la::identity(2));
  CHECK(solve(bad).status == Status::infeasible);
}

TEST_CASE("infeasible cone system is detected") {
  SdpProblem p;
  p.add_scalar("x", true);
  AffineMatrixExpr e(1);
  e.add("x", {LinOp::scale(-1.0)});
  e.add_const(-CMat::Identity(1, 1));
  p.psd.push_back(e);
  p.minimize_scalar("x", 0.0);
  CHECK(solve(p).status == Status::infeasible);
}

TEST_CASE("determinism") {
  rng::Rng rng(35);
  CMat g = rng.ginibre(4, 4);
  CMat h = (g + g.adjoint()) / 2.0;
  SdpProblem p;
  p.add_scalar("lam");
  AffineMatrixExpr e(4);
  e.add("lam", {LinOp::kron_left(la::identity(4))});
  e.add_const(-h);
  p.psd.push_back(e);
  p.minimize_scalar("lam");
  SdpSolution s1 = solve(p), s2 = solve(p);
  CHECK(std::abs(s1.primal_value - s2.primal_value) <= 1e-9);
}

TEST_CASE("certify rejects a perturbed assignment") {
  rng::Rng rng(36);
  CMat rho = rng.random_density(2);
  SdpProblem p;
  p.add_hermitian("S", 2);
  AffineMatrixExpr e(2);
  e.add("S");
  e.add_const(-rho);
  p.psd.push_back(e);
  p.minimize_trace("S", la::identity(2));
  SdpSolution s = solve(p);
  CertifyReport good = certify(p, s);
  CHECK(good.ok);
  CHECK(good.worst_psd_violation < 1e-9);
  CHECK(good.worst_eq_residual < 1e-9);

  s.assignments["S"](0, 0) -= 1e-3;
  CHECK(!certify(p, s).ok);
}

TEST_CASE("problem dump is valid JSON-ish text") {
  SdpProblem p;
  p.add_hermitian("S", 2);
  AffineMatrixExpr e(2);
  e.add("S");
  p.psd.push_back(e);
  p.minimize_trace("S", la::identity(2));
  std::string dump = p.dump_json();
  CHECK(dump.find("\"variables\"") != std::string::npos);
  CHECK(dump.find("hermitian") != std::string::npos);
}

TEST_CASE("expression evaluation and mixed primitives") {
  // T_B(kron(X, C)) style pipelines evaluate consistently densely vs compiled.
  rng::Rng rng(37);
  CMat g = rng.ginibre(2, 2);
  CMat x = (g + g.adjoint()) / 2.0;
  la::SystemShape shape{2, 2};
  AffineMatrixExpr e(4);
  e.add("X", {LinOp::kron_right(la::maximally_mixed(2)),
              LinOp::partial_transpose(shape, {1}), LinOp::scale(2.0)});
  std::map<std::string, CMat> assign{{"X", x}};
  CMat direct = 2.0 * la::partial_transpose(la::kron(x, la::maximally_mixed(2)), shape, {1});
  CHECK((e.eval(assign) - direct).cwiseAbs().maxCoeff() < 1e-13);
}
