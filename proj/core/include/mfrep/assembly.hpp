#pragma once

#include <vector>

#include "mfrep/chain.hpp"
#include "mfrep/matkernel.hpp"
#include "mfrep/words.hpp"

namespace mfrep {

inline constexpr int assembly_p_cap = 11;
inline constexpr long long assembly_dim_cap = 32768;

// The block-shift almost representation of <a,b | a^{a^b} = a^2>.
//
// With 2j+1 = (2k0+1)(2N+1): A is block diagonal with slot i+j holding
// v_i* phi(a_i) v_i, B is the block shift (slot s -> s+1) with identity
// blocks, and v_i = path point floor((i+j)/(2k0+1)) - N. The central window
// |i| <= k0 has v_i = I exactly, so compressing a word in {B^-i A B^i} to the
// central slot reproduces its chain evaluation.
struct baumslag_instance {
  int p = 0;
  long long f = 0;
  int k0 = 0, n_steps = 0;  // n_steps is the path half-length N
  long long j = 0;
  long long total_dim = 0;

  chain_rep chain;
  unitary_matrix w;      // conjugator: w* phi(a_{-j}) w is near phi(a_{j+1})
  geodesic_path path;    // applied to w with k = N
  block_unitary a_mat;   // A
  block_unitary b_mat;   // B; B^{2j+1} = I exactly

  double delta_chain = 0.0;  // max chain conjugation defect
  double delta_step = 0.0;   // max path step norm
  double delta_conj = 0.0;   // measured ||w* phi(a_{-j}) w - phi(a_{j+1})||
  double epsilon_eff = 0.0;  // max of the three

  // ||slot s of Ad_{B^-1 A B} A - A^2|| for s = 0..2j; slot 2j is the
  // wraparound block.
  std::vector<double> block_defects;
  double max_block_defect = 0.0;
  double wraparound_defect = 0.0;
  bool interior_within_17 = true;  // interior blocks <= 17 epsilon_eff
  bool wraparound_within_3 = true;

  long long path_index(long long i) const;  // floor((i+j)/(2k0+1)) - N
  const unitary_matrix& v(long long i) const { return path.at(path_index(i)); }
};

baumslag_instance build_baumslag(int p, int k0, int n_steps, unsigned threads = 1);

// Evaluates a word over indexed generators a_i (|i| <= j) with
// a_i -> B^-i A B^i. The shift conjugation is a pure rotation of A's block
// list, so the result stays block diagonal and is never densified.
block_unitary word_in_ab(const word& w, const baumslag_instance& inst);

// ||central slot of word_in_ab(w) - chain evaluation of w||; the identity
// window makes this floating-point exact for words with max_k <= k0.
double central_compression_error(const word& w, const baumslag_instance& inst);

// Operator-norm distance from the identity of a word evaluated over the
// full instance assignment {a -> A, b -> B}; stays block-wise.
double instance_word_separation(const word& w, const baumslag_instance& inst);

// Blockwise direct sum over a common generator set; the relator defect of
// the sum is the max of the component defects.
generator_assignment direct_sum(const std::vector<generator_assignment>& assignments);

// A finite group as a multiplication table: table[g][h] = gh, index 0 = id.
struct finite_group_table {
  std::vector<std::vector<int>> table;

  int size() const { return static_cast<int>(table.size()); }
  void validate() const;  // closure, identity at 0, inverses, associativity
};

// Extension of an assignment for G to G x| F: beta(g) is block diagonal over
// h in F with blocks alpha(action[h](g)) (action[h] maps each generator to
// its word conjugate h^-1 g h), and beta(k) permutes block h to block kh with
// identity blocks, exactly. For k != id, beta(g k) has all-zero diagonal
// blocks, so its distance from the identity is at least sqrt(2).
generator_assignment semidirect_finite(const generator_assignment& alpha,
                                       const finite_group_table& f,
                                       const std::vector<std::map<std::string, word>>& action,
                                       const std::map<std::string, int>& f_generator_names);

}  // namespace mfrep
