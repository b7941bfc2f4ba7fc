#pragma once

#include <map>
#include <optional>
#include <vector>

#include "mfrep/doubling.hpp"
#include "mfrep/matkernel.hpp"
#include "mfrep/words.hpp"

namespace mfrep {

inline constexpr int chain_p_cap = 13;  // f = 8191 at the cap

// Optimal circular matching from a size-f spectrum onto the simple f-th
// roots of unity; the returned shift realizes the bijection on sorted order.
matching_result spread_spectrum(const circle_spectrum& source, long long f);

// Optimal circular matching from {e^{i lambda}} + roots(n) onto roots(n + m).
matching_result uniformize_pad(const std::vector<double>& lambdas, long long n);

// Inductive almost representation of the generator chain a_{-j-1}..a_{j+1}
// on dimension f = 2^p - 1. gens[-j-1] is the f-th-roots diagonal D; each
// step conjugates by the doubling permutation (an exact squaring conjugation)
// and then snaps the conjugator's spectrum onto the f-th roots. The snap is
// one fixed unitary Q, so gens[i] = Q^{i+j+1} D Q^{-(i+j+1)} and every
// conjugation defect equals one number, computed exactly in the cycle-block
// frame of the doubling permutation (unitary invariance; no dense products).
class chain_rep {
 public:
  chain_rep(int p, long long j);

  int p() const { return p_; }
  long long f() const { return f_; }
  long long j() const { return j_; }
  int generator_count() const { return static_cast<int>(2 * j_ + 3); }

  // Valid indices i in [-j-1, j+1].
  const unitary_matrix& generator(long long i) const;  // lazily materialized, cached

  // ||Ad_{gens[i+1]} gens[i] - gens[i]^2|| for i in [-j-1, j]; identical for
  // every i by construction.
  double defect(long long i) const;
  double max_defect() const { return defect_; }
  std::map<long long, double> defects() const;

  // ||gens[i+1] - V_i|| where V_i is the exact squaring conjugator at step i;
  // equals the spectral-spread displacement, the same for every step.
  double snap_displacement() const { return snap_chordal_; }
  double snap_displacement_angular() const { return snap_angular_; }

  // Exact tracked spectrum shared by all generators: the simple f-th roots.
  const std::vector<double>& spectrum_angles() const;

  // ||gens[i] - I||, identical for all i: 2 sin(floor(f/2) pi / f).
  double generator_separation() const;

  const unitary_matrix& snap_conjugator() const { return q_; }  // Q above

 private:
  int p_;
  long long f_, j_;
  unitary_matrix d_;              // f-th roots diagonal
  unitary_matrix q_;              // constant per-step frame factor
  double snap_chordal_ = 0.0, snap_angular_ = 0.0;
  double defect_ = 0.0;
  mutable std::map<long long, unitary_matrix> cache_;
};

chain_rep build_chain(int p, long long j);

// Piecewise-geodesic path between 1 and u^-1: points u_{-k}..u_k with
// u_t = I for t <= 0 and u_t = F diag(e^{-i theta t / k}) F* for t > 0,
// where theta are the branch angles of u in (-pi, pi] (ties to +pi).
// Every step norm is at most 2 sin(pi / (2k)) <= 4/k.
struct geodesic_path {
  long long k = 0;
  std::vector<unitary_matrix> points;  // size 2k+1, index t stored at t+k

  const unitary_matrix& at(long long t) const { return points.at(static_cast<std::size_t>(t + k)); }
};

geodesic_path geodesic_path_steps(const unitary_matrix& u, long long k);
geodesic_path make_geodesic_path(const unitary_matrix& u, double epsilon);  // k = floor(1/eps)

// The chain packaged as a named assignment for chain_presentation(j+1),
// with the per-condition measurements callers certify against.
struct phi_report {
  int p = 0;
  long long f = 0, j = 0;
  long long dim = 0;
  std::map<long long, double> defects;           // conjugation defects per step
  double spectral_match_displacement = 0.0;      // 0 when spectra coincide exactly
  std::map<long long, double> separations;       // ||phi(a_i) - I|| per generator
};

struct phi_result {
  generator_assignment phi;
  phi_report report;
};

// With psi absent: phi(a_i) = chain generators (index window [-j-1, j+1]).
// With psi given (an assignment for chain_presentation(j+1), dimension m):
// phi(a_i) = psi(a_i) + m copies of the chain generator, and the spectral
// match displacement is measured through uniformize_pad.
phi_result build_phi(int p, long long j, const std::optional<generator_assignment>& psi);

}  // namespace mfrep
