#pragma once

#include <random>
#include <vector>

#include "mfrep/matkernel.hpp"
#include "mfrep/words.hpp"

// Independent reference implementations and deterministic random inputs for
// the test and acceptance binaries. Everything here favors obviousness over
// speed and shares no algorithmic structure with the library code it checks.
namespace testutil {

using mfrep::cmatrix;
using mfrep::cplx;

// Largest singular value via cyclic Jacobi diagonalization of the real
// symmetric embedding of m†m. Intended for dimensions up to ~16.
double oracle_op_norm(const cmatrix& m);

struct oracle_matching {
  double chordal = 0.0;
  double angular = 0.0;
};
// Bottleneck matching by enumerating all bijections (sizes up to 8).
oracle_matching oracle_circular_matching(const std::vector<double>& a,
                                         const std::vector<double>& b);

// Letter-by-letter free reduction (expands exponents; keep them small).
std::vector<mfrep::syllable> oracle_reduce(const std::vector<mfrep::syllable>& in);

// Deterministic uniforms/gaussians built directly on mt19937_64 outputs.
double uniform01(std::mt19937_64& rng);
double gaussian(std::mt19937_64& rng);
cmatrix random_gaussian_matrix(int n, std::mt19937_64& rng);
mfrep::unitary_matrix random_unitary(int n, std::mt19937_64& rng);  // untracked
mfrep::unitary_matrix random_tracked_unitary(int n, std::mt19937_64& rng);
std::vector<double> random_angles(int n, std::mt19937_64& rng);

struct oracle_boost {
  int k = -1;  // -1 when no k within the cap reaches the target
  double norm = 0.0;
};
// Minimal k with max distance from angle 0 at least pi/2 (separation sqrt(2))
// by direct difference-set simulation; pads with angle 0 when absent, like
// the library's boost. The comparison is made in the angle domain so that
// exact half-circle ties do not depend on chord rounding.
oracle_boost oracle_boost_diagonal(const std::vector<double>& angles, int k_cap);

}  // namespace testutil
