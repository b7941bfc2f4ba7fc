#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mfrep/matkernel.hpp"

namespace mfrep {

// diag(e^{2 pi i k / n}), k = 0..n-1, with identity frame eigendata.
unitary_matrix diag_root_matrix(long long n);

// Cyclic shift with ones on the first superdiagonal and the lower-left
// corner; order n, spectrum the n-th roots of unity (Fourier eigenframe).
unitary_matrix shift_matrix(long long n);

struct cycle_census_entry {
  long long length = 0;
  long long count = 0;

  friend bool operator==(const cycle_census_entry&, const cycle_census_entry&) = default;
};

// Disjoint-cycle census of x -> 2x mod n on {0..n-1} (n odd), sorted by
// length. Pure integer orbit enumeration; no matrices.
std::vector<cycle_census_entry> cycle_structure(long long n);

// The cycles themselves, each listed from its smallest element, ordered by
// smallest element.
std::vector<std::vector<long long>> doubling_cycles(long long n);

// Permutation matrix P with P e_y = e_{2y mod n} (n odd), so that
// P^-1 D_n P = D_n^2 holds exactly. Eigendata comes from the cycle
// decomposition: a length-L cycle contributes all L-th roots of unity with
// the per-cycle Fourier eigenvectors; columns are ordered by cycle (ascending
// smallest element), then by root index.
unitary_matrix doubling_permutation(long long n);

// Max entrywise |P^-1 D_n P - D_n^2| with both sides evaluated by integer
// index reduction into e^{2 pi i k / n}, so equal entries subtract to 0.0
// exactly. Scales to large n (no matrix products).
double doubling_conjugation_residual(long long n);

struct histogram_bin {
  double start_angle = 0.0;
  double end_angle = 0.0;
  long long count = 0;
  double fraction = 0.0;
};

// Eigenvalue counts of doubling_permutation(n) over `bins` equal half-open
// arcs [start, end) anchored at angle 0. The bin of angle 2 pi t / L is
// floor(t * bins / L), computed in integers, so edge eigenvalues bin
// deterministically.
std::vector<histogram_bin> spectrum_histogram(long long n, int bins);

// CSV with header "n,bin_start_angle,bin_end_angle,count,fraction".
std::string histogram_csv(long long n, const std::vector<histogram_bin>& bins);

std::string census_str(const std::vector<cycle_census_entry>& census);  // "(1,1),(3,2)"

}  // namespace mfrep
