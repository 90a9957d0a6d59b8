/*
 * Copyright 2026 The capbound authors
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "la.hpp"
#include "rng.hpp"

using namespace capbound;
using la::CMat;
using la::cplx;

namespace {

CMat rand_herm(rng::Rng& rng, int d) {
  CMat g = rng.ginibre(d, d);
  return (g + g.adjoint()) / 2.0;
}

double maxdiff(const CMat& a, const CMat& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("kron basics") {
  CHECK(maxdiff(la::kron(la::identity(2), la::identity(2)), la::identity(4)) == 0.0);

  CMat d12 = CMat::Zero(2, 2);
  d12(0, 0) = 1;
  d12(1, 1) = 2;
  CMat expect = CMat::Zero(4, 4);
  expect(0, 0) = 1;
  expect(1, 1) = 1;
  expect(2, 2) = 2;
  expect(3, 3) = 2;
  CHECK(maxdiff(la::kron(d12, la::identity(2)), expect) == 0.0);

  CMat p0 = CMat::Zero(2, 2), p1 = CMat::Zero(2, 2);
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  CMat k = la::kron(p0, p1);
  CHECK(k(1, 1).real() == 1.0);
  CHECK(std::abs(k.trace().real() - 1.0) == 0.0);
}

TEST_CASE("partial trace") {
  // Tr_B of the maximally entangled state is maximally mixed.
  CMat phi = la::gamma_unnorm(2) / 2.0;
  CHECK(maxdiff(la::partial_trace(phi, {2, 2}, {1}), la::maximally_mixed(2)) < 1e-14);

  rng::Rng rng(1);
  CMat rho = rng.random_density(6);
  CMat full = la::partial_trace(rho, {2, 3}, {0, 1});
  CHECK(std::abs(full(0, 0).real() - 1.0) < 1e-12);

  CMat x = rand_herm(rng, 3), y = rand_herm(rng, 2);
  CHECK(maxdiff(la::partial_trace(la::kron(x, y), {3, 2}, {0}), x.trace() * y) < 1e-12);

  CHECK_THROWS_AS(la::partial_trace(rho, {2, 3}, {5}), std::invalid_argument);
}

TEST_CASE("partial transpose is the swap on the maximally entangled operator") {
  CMat g = la::gamma_unnorm(2);
  CMat t = la::partial_transpose(g, {2, 2}, {1});
  // Direct enumeration of the 4x4 swap.
  CMat swap = CMat::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) swap(i * 2 + j, j * 2 + i) = 1.0;
  CHECK(maxdiff(t, swap) < 1e-14);
  la::EigH e = la::eig_hermitian(t);
  CHECK(e.values(0) == doctest::Approx(-1.0));
  CHECK(e.values(3) == doctest::Approx(1.0));
}

TEST_CASE("partial transpose properties") {
  rng::Rng rng(2);
  la::SystemShape s{2, 3};
  CMat x = rand_herm(rng, 6), y = rand_herm(rng, 6);

  CMat t = la::partial_transpose(x, s, {1});
  CHECK(maxdiff(la::partial_transpose(t, s, {1}), x) < 1e-14);

  CMat a = rand_herm(rng, 2), b = rand_herm(rng, 3);
  CHECK(maxdiff(la::partial_transpose(la::kron(a, b), s, {1}), la::kron(a, b.transpose())) <
        1e-14);

  // self-adjointness under the trace pairing
  double lhs = (y * la::partial_transpose(x, s, {0})).trace().real();
  double rhs = (la::partial_transpose(y, s, {0}) * x).trace().real();
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("eig_hermitian") {
  CMat d = CMat::Zero(2, 2);
  d(0, 0) = 3;
  d(1, 1) = 1;
  la::EigH e = la::eig_hermitian(d);
  CHECK(e.values(0) == doctest::Approx(1.0));
  CHECK(e.values(1) == doctest::Approx(3.0));

  CMat x(2, 2);
  x << 0, 1, 1, 0;
  e = la::eig_hermitian(x);
  CHECK(e.values(0) == doctest::Approx(-1.0));
  CHECK(e.values(1) == doctest::Approx(1.0));

  rng::Rng rng(3);
  CMat h = rand_herm(rng, 8);
  e = la::eig_hermitian(h);
  CMat rec = e.vectors * e.values.asDiagonal() * e.vectors.adjoint();
  CHECK((rec - h).norm() / h.norm() < 1e-10);
  CHECK(maxdiff(e.vectors * e.vectors.adjoint(), la::identity(8)) < 1e-12);

  CMat bad(2, 2);
  bad << 0, 1, 0, 0;
  CHECK_THROWS_AS(la::eig_hermitian(bad), std::invalid_argument);
}

TEST_CASE("mat_fn") {
  CMat d = CMat::Zero(2, 2);
  d(0, 0) = 4;
  d(1, 1) = 9;
  CMat r = la::mat_fn(d, [](double x) { return std::sqrt(x); });
  CHECK(r(0, 0).real() == doctest::Approx(2.0));
  CHECK(r(1, 1).real() == doctest::Approx(3.0));

  CHECK(la::mat_fn(la::identity(3), [](double x) { return std::log2(x); })
            .cwiseAbs()
            .maxCoeff() < 1e-14);

  // pseudo-inverse convention on the kernel
  CMat k = CMat::Zero(2, 2);
  k(0, 0) = 2;
  r = la::mat_fn(k, [](double x) { return 1.0 / x; });
  CHECK(r(0, 0).real() == doctest::Approx(0.5));
  CHECK(std::abs(r(1, 1)) == 0.0);

  rng::Rng rng(4);
  CMat h = rand_herm(rng, 5);
  CHECK(maxdiff(la::mat_fn(h, [](double x) { return x; }), h) < 1e-12);

  CMat ind = CMat::Zero(2, 2);
  ind(0, 0) = 1;
  ind(1, 1) = -1;
  CHECK_THROWS_AS(la::mat_fn(ind, [](double x) { return std::sqrt(x); }),
                  std::domain_error);
}

TEST_CASE("op_norm") {
  CHECK(la::op_norm(la::identity(5)) == doctest::Approx(1.0));
  CMat d = CMat::Zero(2, 2);
  d(0, 0) = -3;
  d(1, 1) = 2;
  CHECK(la::op_norm(d) == doctest::Approx(3.0));
  CHECK(la::op_norm(la::maximally_mixed(4)) == doctest::Approx(0.25));
}

TEST_CASE("permute_systems") {
  rng::Rng rng(5);
  CMat x = rand_herm(rng, 2), y = rand_herm(rng, 3);
  CHECK(maxdiff(la::permute_systems(la::kron(x, y), {2, 3}, {1, 0}), la::kron(y, x)) <
        1e-13);
  CMat m = rand_herm(rng, 6);
  CHECK(maxdiff(la::permute_systems(m, {2, 3}, {0, 1}), m) == 0.0);

  // swapping two qubits equals conjugation by the explicit swap operator
  CMat m4 = rand_herm(rng, 4);
  CMat swap = CMat::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) swap(i * 2 + j, j * 2 + i) = 1.0;
  CHECK(maxdiff(la::permute_systems(m4, {2, 2}, {1, 0}), swap * m4 * swap) < 1e-13);

  CHECK_THROWS_AS(la::permute_systems(m4, {2, 2}, {0, 0}), std::invalid_argument);
}

TEST_CASE("hermiticity tolerance") {
  CMat h = la::identity(2);
  h(0, 1) = cplx(0, 5e-13);
  h(1, 0) = cplx(0, -5e-13);
  CHECK(la::is_hermitian(h));
  h(0, 1) = cplx(1e-9, 0);
  h(1, 0) = 0;
  CHECK(!la::is_hermitian(h));
}
