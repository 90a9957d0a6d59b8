/*
 * Copyright 2026 The capbound authors
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <string>
#include <vector>

#include "la.hpp"
#include "rng.hpp"

// Choi-operator representation of quantum channels, completely positive maps
// and bipartite channels.
//
// A bipartite map M_{AB -> A'B'} is stored with canonical leg order
// (A:in, A':out, B:in, B':out); a point-to-point map N_{A -> B'} with leg
// order (A:in, B':out). Trivial legs have dimension 1, so point-to-point
// objects embed into the bipartite picture by inserting dimension-1 legs.

namespace capbound::channels {

enum class LegRole { in, out };

struct Leg {
  std::string label;
  int dim;
  LegRole role;
};

struct ChoiOperator {
  la::CMat matrix;
  std::vector<Leg> legs;

  la::SystemShape shape() const;
  std::vector<int> leg_ids(LegRole role) const;
  int dim_in() const;
  int dim_out() const;
  int total_dim() const { return static_cast<int>(matrix.rows()); }

  bool is_bipartite() const { return legs.size() == 4; }
  bool is_point_to_point() const { return legs.size() == 2; }
};

bool is_cp(const ChoiOperator& c, double tol = 1e-9);
bool is_tp(const ChoiOperator& c, double tol = 1e-9);
bool is_cptp(const ChoiOperator& c, double tol = 1e-9);

// PPT test on Bob's legs; defined for bipartite operators.
bool is_cpptp(const ChoiOperator& c, double tol = 1e-9);

// Tr_{A'}[Choi] == pi_A (x) Tr_{AA'}[Choi], the Choi form of non-signaling
// from Alice to Bob.
bool is_nonsignaling_a_to_b(const ChoiOperator& c, double tol = 1e-9);

// Kraus operators are out_dim x in_dim; result has legs (A:in, B':out).
ChoiOperator choi_from_kraus(const std::vector<la::CMat>& kraus, int in_dim,
                             int out_dim);

// Apply the map to the subsystem `input_subsystem` of a state with the given
// shape. That subsystem's dimension must equal the product of the Choi input
// leg dimensions; it is replaced in place by the (flattened) output legs.
la::CMat apply(const ChoiOperator& c, const la::CMat& state,
               const la::SystemShape& state_shape, int input_subsystem);
la::CMat apply(const ChoiOperator& c, const la::CMat& state);

// Choi operator of second o first; second's input legs must match first's
// output legs dimension-wise.
ChoiOperator compose_serial(const ChoiOperator& first, const ChoiOperator& second);

// Bipartite channel E (x) F from two point-to-point maps, in canonical
// (A, A', B, B') leg order.
ChoiOperator tensor_local(const ChoiOperator& alice, const ChoiOperator& bob);

// id (x) M (x) id with fresh dimension-da/db identity legs appended to
// Alice's and Bob's sides (da = 1 or db = 1 skips that side).
ChoiOperator with_identity_legs(const ChoiOperator& m, int da, int db);

// View a point-to-point operator as bipartite with trivial A' and B legs.
ChoiOperator as_bipartite(const ChoiOperator& c);

enum class Kind {
  identity,
  depolarizing,
  erasure,
  partial_swap,
  noisy_cnot,
  classical_feedback,
  swap,
  dephasing,
  replacer,
  from_kraus,
  from_choi,
};

struct ChannelFamily {
  Kind kind = Kind::identity;
  int d = 2;
  double p = 0.0;
  // from_kraus / from_choi payloads
  std::vector<la::CMat> kraus;
  int in_dim = 0, out_dim = 0;
  la::CMat choi_matrix;
  std::vector<Leg> choi_legs;
};

ChoiOperator make(const ChannelFamily& family);

std::string kind_name(Kind k);

// Channel spec JSON, e.g. {"kind":"partial_swap","d":2,"p":0.35}. Throws
// std::invalid_argument on malformed input.
ChannelFamily parse_spec(const std::string& json_text);

// Randomized instances for property suites.
ChoiOperator random_channel(rng::Rng& rng, int in_dim, int out_dim,
                            int kraus_count = 0);
ChoiOperator random_bipartite_channel(rng::Rng& rng, int da, int da_out,
                                      int db, int db_out, int kraus_count = 0);

// SWAP operator sum_{ij} |ij><ji| on d (x) d.
la::CMat swap_operator(int d);

// Maximally classically correlated state (1/d) sum_i |ii><ii|.
la::CMat max_classical_corr(int d);

// Comparator projector sum_i |ii><ii|.
la::CMat comparator_projector(int d);

}  // namespace capbound::channels
