#include "mfrep/matkernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

namespace mfrep {

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  if (threads <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  unsigned workers = std::min<std::size_t>(threads, n);
  std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

double angle_mod_2pi(double theta) {
  double r = std::fmod(theta, two_pi);
  if (r < 0) r += two_pi;
  if (r >= two_pi) r = 0.0;
  return r;
}

double angle_distance(double a, double b) {
  double d = std::fabs(angle_mod_2pi(a) - angle_mod_2pi(b));
  return std::min(d, two_pi - d);
}

namespace {

// Deterministic stagnation escape: a fixed ramp, orthogonal to nothing in
// particular, added and renormalized.
void perturb(cvector& v) {
  const auto n = v.size();
  for (Eigen::Index i = 0; i < n; ++i)
    v[i] += cplx(1e-3 * (double(i % 7) + 1.0), 1e-3 * (double(i % 3) + 1.0));
  v.normalize();
}

}  // namespace

namespace {

struct settle_result {
  double lambda = 0.0;
  bool converged = false;
};

// Runs power iteration until the Rayleigh quotient settles with a small
// eigenpair residual. `v` is updated in place so callers can kick and resume.
settle_result settle(const cmatrix& b, cvector& v, int cap) {
  double lambda = 0.0, prev = -1.0;
  int flat = 0;
  for (int iter = 0; iter < cap; ++iter) {
    cvector w = b * v;
    lambda = v.dot(w).real();  // Rayleigh quotient, v normalized
    double wn = w.norm();
    if (wn == 0.0) {  // v landed in the kernel; restart off a fixed direction
      perturb(v);
      continue;
    }
    double resid = (w - lambda * v).norm();
    bool settled = iter > 0 && std::fabs(lambda - prev) <= 1e-12 * std::max(lambda, 1e-300);
    if (settled && resid <= 1e-8 * std::max(lambda, 1e-300)) return {lambda, true};
    flat = std::fabs(lambda - prev) <= 1e-13 * std::max(lambda, 1e-300) ? flat + 1 : 0;
    if (flat >= 512) {  // Rayleigh stuck but residual large: deterministic kick
      v = w / wn;
      perturb(v);
      flat = 0;
      prev = -1.0;
      continue;
    }
    prev = lambda;
    v = w / wn;
  }
  return {lambda, false};
}

// Power iteration with verification kicks: the start vector can sit in a
// lower invariant subspace (it is itself an eigenvector of any circulant-like
// b), so kick and re-settle until the value stops improving.
settle_result settle_verified(const cmatrix& b, int cap) {
  const Eigen::Index n = b.rows();
  cvector v = cvector::Constant(n, cplx(1.0 / std::sqrt(double(n)), 0.0));
  settle_result best = settle(b, v, cap);
  for (int round = 0; round < 3; ++round) {
    cvector u = v;
    perturb(u);
    settle_result next = settle(b, u, cap);
    if (next.lambda <= best.lambda * (1.0 + 1e-10)) {
      best.converged = best.converged && next.converged;
      break;
    }
    best = next;
    v = u;
  }
  return best;
}

}  // namespace

double op_norm(const cmatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));

  cmatrix b = m.adjoint() * m;  // Hermitian PSD, top eigenvalue = ||m||^2
  if (b.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  const double n = static_cast<double>(b.rows());

  settle_result plain = settle_verified(b, 2000);
  if (plain.converged) return std::sqrt(std::max(plain.lambda, 0.0));

  // Clustered top eigenvalues stall the eigenpair residual no matter how many
  // iterations run. Repeated squaring amplifies every spectral gap (ratios r
  // become r^(2^t)) until the top cluster is resolvable. With B_{t+1} =
  // (B_t/s_t)^2 the top eigenvalue unwinds as lambda_0 = prod s_t^(1/2^t) *
  // lambda_T^(1/2^T); accumulating the exponents in log space keeps full
  // relative accuracy.
  double acc = 0.0;    // sum of ln(s_t) / 2^t over completed squarings
  double scale = 1.0;  // 1 / 2^t for the next term
  for (int t = 0; t < 60; ++t) {
    const double s = b.trace().real() / n;  // in [lambda_1 / n, lambda_1]
    acc += std::log(s) * scale;
    scale *= 0.5;
    b /= s;
    b = b * b;  // Eigen evaluates the product into a temporary; no aliasing
    settle_result amplified = settle_verified(b, 2000);
    if (amplified.converged && amplified.lambda > 0.0)
      return std::exp((acc + std::log(amplified.lambda) * scale) / 2.0);
  }
  throw std::runtime_error("op_norm: power iteration did not converge (last Rayleigh quotient " +
                           std::to_string(plain.lambda) + ")");
}

const eigendata& unitary_matrix::eigen() const {
  if (!eigen_) throw std::logic_error("unitary_matrix: eigendata not tracked");
  return *eigen_;
}

unitary_matrix unitary_matrix::from_entries(cmatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("unitary_matrix: matrix not square");
  unitary_matrix u;
  u.entries_ = std::move(m);
  double defect = u.unitarity_defect();
  if (defect > unitarity_tol)
    throw std::invalid_argument("unitary_matrix: not unitary (defect " + std::to_string(defect) +
                                ")");
  return u;
}

unitary_matrix unitary_matrix::trusted(cmatrix m) {
  unitary_matrix u;
  u.entries_ = std::move(m);
  return u;
}

unitary_matrix unitary_matrix::trusted(cmatrix m, eigendata ed) {
  unitary_matrix u;
  u.entries_ = std::move(m);
  u.eigen_ = std::move(ed);
  return u;
}

unitary_matrix unitary_matrix::from_eigendata(eigendata ed) {
  const auto n = ed.frame.rows();
  if (ed.frame.cols() != n || static_cast<Eigen::Index>(ed.angles.size()) != n)
    throw std::invalid_argument("unitary_matrix: eigendata shape mismatch");
  cvector d(n);
  for (Eigen::Index k = 0; k < n; ++k) d[k] = std::polar(1.0, ed.angles[k]);
  cmatrix m = ed.frame * d.asDiagonal() * ed.frame.adjoint();
  return trusted(std::move(m), std::move(ed));
}

unitary_matrix unitary_matrix::identity(int n) {
  eigendata ed{cmatrix::Identity(n, n), std::vector<double>(n, 0.0)};
  return trusted(cmatrix::Identity(n, n), std::move(ed));
}

unitary_matrix unitary_matrix::diagonal(std::vector<double> angles) {
  const auto n = static_cast<Eigen::Index>(angles.size());
  for (auto& a : angles) a = angle_mod_2pi(a);
  cmatrix m = cmatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) m(k, k) = std::polar(1.0, angles[k]);
  return trusted(std::move(m), eigendata{cmatrix::Identity(n, n), std::move(angles)});
}

void unitary_matrix::set_eigendata(eigendata ed) {
  if (ed.dim() != dim() || static_cast<int>(ed.angles.size()) != dim())
    throw std::invalid_argument("unitary_matrix: eigendata shape mismatch");
  eigen_ = std::move(ed);
}

unitary_matrix unitary_matrix::adjoint() const {
  unitary_matrix u;
  u.entries_ = entries_.adjoint();
  if (eigen_) {
    eigendata ed{eigen_->frame, eigen_->angles};
    for (auto& a : ed.angles) a = a == 0.0 ? 0.0 : two_pi - a;
    u.eigen_ = std::move(ed);
  }
  return u;
}

unitary_matrix unitary_matrix::operator*(const unitary_matrix& rhs) const {
  if (dim() != rhs.dim()) throw std::invalid_argument("unitary_matrix: dimension mismatch");
  return trusted(entries_ * rhs.entries_);
}

unitary_matrix unitary_matrix::pow(long long e) const {
  if (e == 0) return identity(dim());
  if (eigen_) {
    // exact on the tracked spectrum: angles scale mod 2*pi
    eigendata ed{eigen_->frame, std::vector<double>(eigen_->angles.size())};
    for (std::size_t k = 0; k < ed.angles.size(); ++k)
      ed.angles[k] = angle_mod_2pi(eigen_->angles[k] * double(e));
    return from_eigendata(std::move(ed));
  }
  unitary_matrix base = e < 0 ? adjoint() : *this;
  unsigned long long k = e < 0 ? -(unsigned long long)e : (unsigned long long)e;
  unitary_matrix acc = identity(dim());
  while (k) {
    if (k & 1) acc = acc * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return acc;
}

double unitary_matrix::unitarity_defect() const {
  cmatrix g = entries_.adjoint() * entries_;
  g.diagonal().array() -= 1.0;
  return op_norm(g);
}

double unitary_matrix::eigendata_residual() const {
  const eigendata& ed = eigen();
  cvector d(ed.angles.size());
  for (std::size_t k = 0; k < ed.angles.size(); ++k) d[k] = std::polar(1.0, ed.angles[k]);
  return op_norm(entries_ - ed.frame * d.asDiagonal() * ed.frame.adjoint());
}

double unitary_matrix::distance_from_identity() const {
  cmatrix d = entries_;
  d.diagonal().array() -= 1.0;
  return op_norm(d);
}

double unitary_matrix::spectral_distance_from_identity() const {
  double best = 0.0;
  for (double a : eigen().angles) best = std::max(best, chord(angle_distance(a, 0.0)));
  return best;
}

unitary_matrix direct_sum(const unitary_matrix& u, const unitary_matrix& v) {
  const int n = u.dim(), m = v.dim();
  cmatrix s = cmatrix::Zero(n + m, n + m);
  s.topLeftCorner(n, n) = u.entries();
  s.bottomRightCorner(m, m) = v.entries();
  if (u.has_eigendata() && v.has_eigendata()) {
    eigendata ed{cmatrix::Zero(n + m, n + m), u.eigen().angles};
    ed.frame.topLeftCorner(n, n) = u.eigen().frame;
    ed.frame.bottomRightCorner(m, m) = v.eigen().frame;
    ed.angles.insert(ed.angles.end(), v.eigen().angles.begin(), v.eigen().angles.end());
    return unitary_matrix::trusted(std::move(s), std::move(ed));
  }
  return unitary_matrix::trusted(std::move(s));
}

circle_spectrum::circle_spectrum(std::vector<double> angles) : angles_(std::move(angles)) {
  for (auto& a : angles_) a = angle_mod_2pi(a);
  std::sort(angles_.begin(), angles_.end());
}

circle_spectrum circle_spectrum::nth_roots(long n) {
  std::vector<double> a(n);
  for (long k = 0; k < n; ++k) a[k] = two_pi * double(k) / double(n);
  return circle_spectrum(std::move(a));
}

double circle_spectrum::angular_diameter() const {
  double best = 0.0;
  const auto n = angles_.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      best = std::max(best, angle_distance(angles_[i], angles_[j]));
  return best;
}

double circle_spectrum::chordal_diameter() const { return chord(angular_diameter()); }

double spectral_diameter(const unitary_matrix& u) {
  return circle_spectrum(u.eigen().angles).chordal_diameter();
}

matching_result circular_matching(const circle_spectrum& a, const circle_spectrum& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("circular_matching: multisets must have equal size");
  const int n = a.size();
  matching_result best;
  if (n == 0) return best;
  const auto& sa = a.angles();
  const auto& sb = b.angles();
  double best_max = -1.0;
  int best_shift = 0;
  for (int s = 0; s < n; ++s) {
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
      worst = std::max(worst, angle_distance(sa[t], sb[(t + s) % n]));
      if (best_max >= 0.0 && worst >= best_max) break;  // cannot improve
    }
    if (best_max < 0.0 || worst < best_max) {
      best_max = worst;
      best_shift = s;
    }
  }
  best.angular = best_max;
  best.chordal = chord(best_max);
  best.shift = best_shift;
  return best;
}

namespace {

std::vector<int> sort_permutation(const std::vector<double>& angles) {
  std::vector<int> idx(angles.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) { return angles[i] < angles[j]; });
  return idx;
}

}  // namespace

column_matching optimal_column_matching(const eigendata& x, const eigendata& y) {
  if (x.angles.size() != y.angles.size())
    throw std::invalid_argument("optimal_column_matching: dimension mismatch");
  const int n = static_cast<int>(x.angles.size());
  std::vector<double> xa(n), ya(n);
  for (int i = 0; i < n; ++i) xa[i] = angle_mod_2pi(x.angles[i]);
  for (int i = 0; i < n; ++i) ya[i] = angle_mod_2pi(y.angles[i]);
  auto xs = sort_permutation(xa), ys = sort_permutation(ya);
  std::vector<double> xsorted(n), ysorted(n);
  for (int i = 0; i < n; ++i) xsorted[i] = xa[xs[i]];
  for (int i = 0; i < n; ++i) ysorted[i] = ya[ys[i]];
  matching_result mr = circular_matching(circle_spectrum(xsorted), circle_spectrum(ysorted));

  column_matching cm;
  cm.angular = mr.angular;
  cm.chordal = mr.chordal;
  cm.x_col_for_y_col.assign(n, 0);
  // sorted position t of x pairs with sorted position (t + shift) mod n of y
  for (int t = 0; t < n; ++t) cm.x_col_for_y_col[ys[(t + mr.shift) % n]] = xs[t];
  return cm;
}

unitary_matrix conjugator_from_eigendata(const unitary_matrix& x, const unitary_matrix& y,
                                         const column_matching& m) {
  const eigendata& ex = x.eigen();
  const eigendata& ey = y.eigen();
  const int n = ex.dim();
  if (ey.dim() != n || static_cast<int>(m.x_col_for_y_col.size()) != n)
    throw std::invalid_argument("conjugator_from_eigendata: dimension mismatch");
  cmatrix fx_perm(n, n);
  for (int l = 0; l < n; ++l) fx_perm.col(l) = ex.frame.col(m.x_col_for_y_col[l]);
  return unitary_matrix::trusted(ey.frame * fx_perm.adjoint());
}

block_unitary block_unitary::identity(int block_dim, int count) {
  block_unitary b;
  b.block_dim_ = block_dim;
  b.count_ = count;
  b.blocks_.assign(count, std::nullopt);
  b.perm_.resize(count);
  std::iota(b.perm_.begin(), b.perm_.end(), 0);
  return b;
}

block_unitary block_unitary::block_diagonal(std::vector<cmatrix> blocks) {
  if (blocks.empty()) throw std::invalid_argument("block_unitary: no blocks");
  const auto bd = blocks.front().rows();
  for (const auto& blk : blocks)
    if (blk.rows() != bd || blk.cols() != bd)
      throw std::invalid_argument("block_unitary: blocks must be square and equal-sized");
  block_unitary b = identity(static_cast<int>(bd), static_cast<int>(blocks.size()));
  for (std::size_t i = 0; i < blocks.size(); ++i) b.blocks_[i] = std::move(blocks[i]);
  return b;
}

block_unitary block_unitary::shift(int block_dim, int count, int amount) {
  block_unitary b = identity(block_dim, count);
  for (int i = 0; i < count; ++i) b.perm_[i] = ((i + amount) % count + count) % count;
  return b;
}

bool block_unitary::is_block_diagonal() const {
  for (int i = 0; i < count_; ++i)
    if (perm_[i] != i) return false;
  return true;
}

bool block_unitary::is_identity_perm_and_blocks() const {
  if (!is_block_diagonal()) return false;
  for (const auto& blk : blocks_)
    if (blk.has_value()) return false;
  return true;
}

cmatrix block_unitary::block(int i) const {
  if (blocks_[i]) return *blocks_[i];
  return cmatrix::Identity(block_dim_, block_dim_);
}

block_unitary block_unitary::operator*(const block_unitary& rhs) const {
  if (block_dim_ != rhs.block_dim_ || count_ != rhs.count_)
    throw std::invalid_argument("block_unitary: shape mismatch");
  block_unitary out;
  out.block_dim_ = block_dim_;
  out.count_ = count_;
  out.blocks_.resize(count_);
  out.perm_.resize(count_);
  // slot i -> rhs.perm[i] -> perm[rhs.perm[i]]; identity factors cost nothing
  for (int i = 0; i < count_; ++i) {
    int mid = rhs.perm_[i];
    out.perm_[i] = perm_[mid];
    const auto& left = blocks_[mid];
    const auto& right = rhs.blocks_[i];
    if (!left && !right)
      out.blocks_[i] = std::nullopt;
    else if (!left)
      out.blocks_[i] = *right;
    else if (!right)
      out.blocks_[i] = *left;
    else
      out.blocks_[i] = *left * *right;
  }
  return out;
}

block_unitary block_unitary::adjoint() const {
  block_unitary out;
  out.block_dim_ = block_dim_;
  out.count_ = count_;
  out.blocks_.resize(count_);
  out.perm_.resize(count_);
  for (int i = 0; i < count_; ++i) {
    int j = perm_[i];  // M maps i -> j via U_i, so M† maps j -> i via U_i†
    out.perm_[j] = i;
    out.blocks_[j] = blocks_[i] ? std::optional<cmatrix>(blocks_[i]->adjoint()) : std::nullopt;
  }
  return out;
}

block_unitary block_unitary::pow(long long e) const {
  if (e == 0) return identity(block_dim_, count_);
  block_unitary base = e < 0 ? adjoint() : *this;
  unsigned long long k = e < 0 ? -(unsigned long long)e : (unsigned long long)e;
  block_unitary acc = identity(block_dim_, count_);
  while (k) {
    if (k & 1) acc = acc * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return acc;
}

cmatrix block_unitary::to_dense() const {
  if (total_dim() > dense_dim_cap)
    throw std::invalid_argument("block_unitary: dense materialization above dimension cap");
  cmatrix m = cmatrix::Zero(total_dim(), total_dim());
  for (int i = 0; i < count_; ++i)
    m.block(static_cast<long>(perm_[i]) * block_dim_, static_cast<long>(i) * block_dim_,
            block_dim_, block_dim_) = block(i);
  return m;
}

double block_unitary::distance_from_identity() const {
  if (is_block_diagonal()) {
    double best = 0.0;
    for (int i = 0; i < count_; ++i) {
      if (!blocks_[i]) continue;
      cmatrix d = *blocks_[i];
      d.diagonal().array() -= 1.0;
      best = std::max(best, op_norm(d));
    }
    return best;
  }
  bool perm_only = true;
  for (const auto& blk : blocks_)
    if (blk.has_value()) {
      perm_only = false;
      break;
    }
  if (perm_only) {
    // spectrum = union of L-th roots over the permutation's cycle lengths L
    double best = 0.0;
    std::vector<char> seen(count_, 0);
    for (int i = 0; i < count_; ++i) {
      if (seen[i]) continue;
      long long len = 0;
      for (int x = i; !seen[x]; x = perm_[x]) {
        seen[x] = 1;
        ++len;
      }
      best = std::max(best, chord(two_pi * double(len / 2) / double(len)));
    }
    return best;
  }
  cmatrix d = to_dense();
  d.diagonal().array() -= 1.0;
  return op_norm(d);
}

}  // namespace mfrep
