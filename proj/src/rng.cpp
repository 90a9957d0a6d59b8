/*
 * Copyright 2026 The capbound authors
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "rng.hpp"

#include <cmath>

namespace capbound::rng {

namespace {
uint64_t splitmix64(uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace

Rng::Rng(uint64_t seed) {
  uint64_t x = seed;
  for (auto& s : s_) s = splitmix64(x);
}

uint64_t Rng::next_u64() {
  const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int Rng::uniform_int(int lo, int hi) {
  return lo + static_cast<int>(next_u64() % static_cast<uint64_t>(hi - lo + 1));
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  while (u1 == 0.0) u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * M_PI * u2);
  has_spare_ = true;
  return r * std::cos(2.0 * M_PI * u2);
}

la::cplx Rng::cgaussian() {
  double re = gaussian();
  double im = gaussian();
  return la::cplx(re, im) * M_SQRT1_2;
}

la::CMat Rng::ginibre(int rows, int cols) {
  la::CMat g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = cgaussian();
  return g;
}

la::CMat Rng::random_unitary(int d) {
  la::CMat g = ginibre(d, d);
  // Modified Gram-Schmidt with sign fixing keeps the draw Haar distributed.
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < j; ++k) g.col(j) -= g.col(k).dot(g.col(j)) * g.col(k);
    la::cplx piv = g(j, j);
    double a = std::abs(piv);
    la::cplx phase = (a > 0) ? piv / a : la::cplx(1, 0);
    g.col(j) /= phase;
    g.col(j).normalize();
  }
  return g;
}

la::CMat Rng::random_density(int d, int rank) {
  if (rank <= 0 || rank > d) rank = d;
  la::CMat g = ginibre(d, rank);
  la::CMat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return (rho + rho.adjoint()) / 2.0;
}

la::CVec Rng::random_pure(int d) {
  la::CVec v(d);
  for (int i = 0; i < d; ++i) v(i) = cgaussian();
  v.normalize();
  return v;
}

}  // namespace capbound::rng
