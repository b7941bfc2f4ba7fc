#pragma once

#include <optional>

#include "mfrep/matkernel.hpp"

namespace mfrep {

// Input dimension cap for gamma; the output is a dense n^2 x n^2 matrix.
inline constexpr int gamma_input_cap = 128;

// The conjugation representation u -> Ad(u) on matrix space with the
// inner product <A,B> = sum conj(A_ij) B_ij, expressed in the matrix-unit
// basis in row-major order: gamma(u) = kron(u, conj(u)). If u carries
// eigendata with angles {a_i}, the output carries angles {a_k - a_l mod 2pi}
// in row-major pair order with frame kron(F, conj(F)).
unitary_matrix gamma(const unitary_matrix& u);

// floor(log2(pi/delta)) + 1 for 0 < delta <= pi.
int k_delta(double delta);

// u + 1 as a direct sum (dimension + 1); guarantees 1 is in the spectrum.
// Eigendata, when present, is extended by angle 0.
unitary_matrix pad_identity(const unitary_matrix& u);

struct amplify_schedule {
  double delta = 0.0;
  int k_delta = 0;
  int applied_k = 0;
};

struct boost_result {
  amplify_schedule schedule;
  // Exact operator norm of gamma^k(u_padded) - I, computed from the tracked
  // angles (maximum chordal distance from 1 at k = 0; the angular diameter
  // doubles per step before the first half-circle crossing for k >= 1).
  double separation_norm = 0.0;
  // Whether pad_identity was applied before amplifying (1 not in spectrum).
  bool padded = false;
  // gamma^k of the (possibly padded) input, materialized only when the final
  // dimension stays within boost_materialize_cap; k and the norm are exact
  // regardless.
  std::optional<unitary_matrix> v;
};

inline constexpr long long boost_materialize_cap = 1024;

// Finds the minimal k >= 0 with ||gamma^k(u') - I|| >= sqrt(2), where u' is u
// padded with an identity eigenvalue if it has none. Requires eigendata, and
// the padded spectrum must have chordal diameter strictly above delta. The
// minimal k always satisfies k <= k_delta(delta); it is strictly below
// k_delta(delta) whenever the angular diameter is at least
// pi / 2^floor(log2(pi/delta)).
boost_result boost_separation(const unitary_matrix& u, double delta);

}  // namespace mfrep
