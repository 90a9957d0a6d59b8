/*
 * Copyright 2026 The capbound authors
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>

#include "la.hpp"

// Self-contained deterministic RNG (xoshiro256++) so that seeded property
// suites and sweeps produce identical streams on every platform and run.

namespace capbound::rng {

class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t next_u64();
  double uniform();                    // [0, 1)
  double uniform(double lo, double hi);
  int uniform_int(int lo, int hi);     // inclusive bounds
  double gaussian();

  la::cplx cgaussian();
  la::CMat ginibre(int rows, int cols);
  la::CMat random_unitary(int d);
  la::CMat random_density(int d, int rank = 0);  // rank 0 means full rank
  la::CVec random_pure(int d);

 private:
  uint64_t s_[4];
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace capbound::rng
