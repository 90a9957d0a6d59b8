/*
 * Copyright 2026 The capbound authors
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "symmetry.hpp"

using namespace capbound;
namespace sym = capbound::symmetry;
namespace ch = capbound::channels;
using la::CMat;

TEST_CASE("qubit Clifford group is a 24-element unitary list") {
  auto g = sym::uu_design_qubit();
  CHECK(g.elements.size() == 24);
  for (const auto& e : g.elements) {
    CHECK((e.u_a * e.u_a.adjoint() - la::identity(2)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((e.u_a - e.v_b).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("uu twirl reproduces the Haar projection onto Werner states") {
  auto g = sym::uu_design_qubit();
  rng::Rng rng(41);
  for (int k = 0; k < 30; ++k) {
    CMat rho = rng.random_density(4);
    CMat tw = sym::twirl_state(rho, g);
    double q = (sym::antisym_projector(2) * rho).trace().real();
    CHECK((tw - sym::werner_state({q, 2})).cwiseAbs().maxCoeff() < 1e-9);
    // Werner states are twirl fixed points
    CHECK((sym::twirl_state(tw, g) - tw).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("Choi twirl is an idempotent projection") {
  auto g = sym::uu_design_qubit();
  rng::Rng rng(42);
  for (int k = 0; k < 20; ++k) {
    auto n = ch::random_bipartite_channel(rng, 2, 2, 2, 2);
    auto t1 = sym::twirl_choi(n, g);
    auto t2 = sym::twirl_choi(t1, g);
    CHECK((t1.matrix - t2.matrix).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(std::abs((t1.matrix.trace() - n.matrix.trace()).real()) < 1e-9);
    CHECK(ch::is_cp(t1));
    CHECK(ch::is_tp(t1));
  }
}

TEST_CASE("already-invariant operators are twirl fixed points") {
  auto g = sym::uu_design_qubit();
  auto ps = ch::make({ch::Kind::partial_swap, 2, 0.4});
  auto tw = sym::twirl_choi(ps, g);
  CHECK((tw.matrix - ps.matrix).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("bicovariance checks") {
  auto uu = sym::uu_design_qubit();
  CHECK(sym::check_bicovariant(ch::make({ch::Kind::partial_swap, 2, 0.5}), uu));
  CHECK(sym::check_bicovariant(ch::make({ch::Kind::partial_swap, 2, 0.0}), uu));

  auto idid = ch::tensor_local(ch::make({ch::Kind::identity, 2}),
                               ch::make({ch::Kind::identity, 2}));
  CHECK(sym::check_bicovariant(idid, uu));

  // Pauli bicovariance holds for the noisy CNOT at every noise level, with
  // output representations discovered by search; the partial swap admits no
  // Pauli-product output assignment away from the endpoints.
  for (double p : {0.0, 0.5, 1.0}) {
    auto g = sym::pauli_bicovariance(ch::make({ch::Kind::noisy_cnot, 2, p}));
    REQUIRE(g.has_value());
    CHECK(g->elements.size() == 16);
    CHECK(sym::check_bicovariant(ch::make({ch::Kind::noisy_cnot, 2, p}), *g));
  }
  CHECK(!sym::pauli_bicovariance(ch::make({ch::Kind::partial_swap, 2, 0.5})).has_value());
  // the CNOT is not U (x) U covariant
  CHECK(!sym::check_bicovariant(ch::make({ch::Kind::noisy_cnot, 2, 0.0}), uu));
}

TEST_CASE("qutrit Pauli bicovariance of the generalized noisy CNOT") {
  auto g = sym::pauli_bicovariance(ch::make({ch::Kind::noisy_cnot, 3, 0.25}));
  REQUIRE(g.has_value());
  CHECK(g->elements.size() == 81);
}

TEST_CASE("Werner states") {
  CHECK((sym::werner_state({0.25, 2}) - la::maximally_mixed(4)).cwiseAbs().maxCoeff() <
        1e-14);
  CHECK((sym::werner_state({1.0, 2}) - sym::antisym_projector(2)).cwiseAbs().maxCoeff() <
        1e-14);
  CHECK(sym::werner_state({0.0, 2}).trace().real() == doctest::Approx(1.0));
  CHECK(sym::werner_state({0.6, 3}).trace().real() == doctest::Approx(1.0));
  CHECK_THROWS_AS(sym::werner_state({1.2, 2}), std::invalid_argument);
}

TEST_CASE("covariance constraints vanish exactly on twirled points") {
  auto g = sym::uu_design_qubit();
  rng::Rng rng(43);
  for (int k = 0; k < 5; ++k) {
    auto n = ch::random_bipartite_channel(rng, 2, 2, 2, 2);
    auto tw = sym::twirl_choi(n, g);
    auto exprs = sym::covariance_constraints("G", n, g);
    std::map<std::string, CMat> at_twirl{{"G", tw.matrix}};
    std::map<std::string, CMat> at_raw{{"G", n.matrix}};
    for (const auto& e : exprs) {
      CHECK(e.eval(at_twirl).cwiseAbs().maxCoeff() < 1e-9);
      CHECK(e.eval(at_raw).cwiseAbs().maxCoeff() > 1e-4);  // generic point violates
    }
  }
}
