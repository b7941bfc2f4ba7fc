#pragma once

#include <optional>
#include <vector>

#include "mfrep/common.hpp"

namespace mfrep {

inline constexpr double unitarity_tol = 1e-10;
inline constexpr int dense_dim_cap = 2048;

/// Chord length subtended by an arc of `theta` radians on the unit circle.
inline double chord(double theta) { return 2.0 * std::sin(theta / 2.0); }

/// Reduces an angle into [0, 2*pi).
double angle_mod_2pi(double theta);

/// Distance between two angles along the circle, in [0, pi].
double angle_distance(double a, double b);

/// Largest singular value of m, relative accuracy 1e-8.  Power iteration on
/// m†m started from the normalized all-ones vector; a fixed deterministic
/// perturbation is applied if the iteration stagnates.  Spectra whose top
/// eigenvalues cluster too tightly for plain power iteration are resolved by
/// deterministic repeated squaring of m†m, which amplifies every spectral
/// gap.  Throws std::runtime_error (with the last Rayleigh quotient) only if
/// both strategies fail.
double op_norm(const cmatrix& m);

/// Eigenvector frame (columns) with one angle per column; the represented
/// unitary is frame * diag(exp(i*angles)) * frame†.  Angles lie in [0, 2*pi).
struct eigendata {
  cmatrix frame;
  std::vector<double> angles;

  int dim() const { return static_cast<int>(frame.rows()); }
};

/// Dense unitary matrix with optionally tracked eigendata.  Tracked data is
/// preserved exactly through adjoints, powers of tracked matrices, direct
/// sums and the constructions in this library; generic products drop it.
class unitary_matrix {
 public:
  unitary_matrix() = default;

  /// Validates ||m†m - I|| against unitarity_tol; throws std::invalid_argument.
  static unitary_matrix from_entries(cmatrix m);
  /// No validation; for matrices unitary by construction.
  static unitary_matrix trusted(cmatrix m);
  static unitary_matrix trusted(cmatrix m, eigendata ed);
  /// Entries are built as frame * diag * frame†.
  static unitary_matrix from_eigendata(eigendata ed);
  static unitary_matrix identity(int n);
  /// diag(exp(i*angles)) with the identity frame tracked.
  static unitary_matrix diagonal(std::vector<double> angles);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const cmatrix& entries() const { return entries_; }

  bool has_eigendata() const { return eigen_.has_value(); }
  const eigendata& eigen() const;
  void drop_eigendata() { eigen_.reset(); }
  void set_eigendata(eigendata ed);

  unitary_matrix adjoint() const;
  unitary_matrix operator*(const unitary_matrix& rhs) const;
  unitary_matrix pow(long long e) const;

  /// ||m†m - I||, measured.
  double unitarity_defect() const;
  /// ||m - frame diag frame†||, measured; requires eigendata.
  double eigendata_residual() const;
  /// ||m - I||, measured by op_norm.
  double distance_from_identity() const;
  /// max over tracked angles of |e^{i theta} - 1|; requires eigendata.
  double spectral_distance_from_identity() const;

 private:
  cmatrix entries_;
  std::optional<eigendata> eigen_;
};

/// u ⊕ v as a dense block-diagonal unitary; eigendata merges when both have it.
unitary_matrix direct_sum(const unitary_matrix& u, const unitary_matrix& v);

/// Multiset of points on the unit circle, stored as sorted angles in [0, 2*pi).
class circle_spectrum {
 public:
  circle_spectrum() = default;
  explicit circle_spectrum(std::vector<double> angles);
  static circle_spectrum nth_roots(long n);

  const std::vector<double>& angles() const { return angles_; }
  int size() const { return static_cast<int>(angles_.size()); }

  /// max over pairs of |e^{ia} - e^{ib}|.
  double chordal_diameter() const;
  /// max over pairs of circle distance, in [0, pi].
  double angular_diameter() const;

 private:
  std::vector<double> angles_;  // sorted ascending
};

/// Chordal diameter of the tracked spectrum; requires eigendata.
double spectral_diameter(const unitary_matrix& u);

/// Bottleneck matching between two equal-size circular multisets.
/// An optimal max-displacement matching on the circle is a cyclic shift of
/// the two sorted orders, so all n alignments are scanned.
struct matching_result {
  double chordal = 0.0;  // max chordal displacement over matched pairs
  double angular = 0.0;  // max angular displacement over matched pairs
  int shift = 0;         // a_sorted[t] is matched to b_sorted[(t + shift) mod n]
};
matching_result circular_matching(const circle_spectrum& a, const circle_spectrum& b);

/// Column-level matching between the eigenvector columns of x and y.
/// x_col_for_y_col[l] is the x column paired with y's column l.
struct column_matching {
  std::vector<int> x_col_for_y_col;
  double chordal = 0.0;
  double angular = 0.0;
};
column_matching optimal_column_matching(const eigendata& x, const eigendata& y);

/// Conjugation witness u = frame_y * P * frame_x† for the given matching:
/// u x u† has the same frame as y with x's matched angles, so
/// ||u x u† - y|| is at most the matching's chordal displacement.
unitary_matrix conjugator_from_eigendata(const unitary_matrix& x, const unitary_matrix& y,
                                         const column_matching& m);

/// Unitary with equal square diagonal blocks routed by a block permutation:
/// the matrix maps block subspace i onto block subspace perm[i] via blocks[i].
/// Identity blocks are stored symbolically so that products against them are
/// exact bookkeeping with no floating-point arithmetic.
class block_unitary {
 public:
  block_unitary() = default;

  static block_unitary identity(int block_dim, int count);
  static block_unitary block_diagonal(std::vector<cmatrix> blocks);
  /// Permutation-only operator sending block i to block i + shift (mod count).
  static block_unitary shift(int block_dim, int count, int amount);

  int block_dim() const { return block_dim_; }
  int count() const { return count_; }
  long total_dim() const { return static_cast<long>(block_dim_) * count_; }

  bool is_block_diagonal() const;
  bool is_identity_perm_and_blocks() const;
  /// Target slot of source block i.
  int perm(int i) const { return perm_[i]; }
  /// Block carried from source slot i (identity materialized on demand).
  cmatrix block(int i) const;
  bool block_is_identity(int i) const { return !blocks_[i].has_value(); }

  block_unitary operator*(const block_unitary& rhs) const;
  block_unitary adjoint() const;
  block_unitary pow(long long e) const;

  /// Dense materialization; refuses total dimensions above dense_dim_cap.
  cmatrix to_dense() const;

  /// ||M - I||: for block-diagonal operands the exact max over per-block
  /// op_norms; for permutation-only operands the exact spectral value from
  /// the permutation's cycle lengths; otherwise computed densely (subject to
  /// dense_dim_cap).
  double distance_from_identity() const;

 private:
  int block_dim_ = 0;
  int count_ = 0;
  std::vector<std::optional<cmatrix>> blocks_;
  std::vector<int> perm_;
};

}  // namespace mfrep
