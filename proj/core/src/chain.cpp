#include "mfrep/chain.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mfrep {

namespace {

bool is_small_prime(int p) { return p == 2 || p == 3 || p == 5 || p == 7 || p == 11 || p == 13; }

std::string gen_name(long long i) { return "a" + std::to_string(i); }

}  // namespace

matching_result spread_spectrum(const circle_spectrum& source, long long f) {
  if (source.size() != f)
    throw std::invalid_argument("spread_spectrum: source size " + std::to_string(source.size()) +
                                " != " + std::to_string(f));
  return circular_matching(source, circle_spectrum::nth_roots(static_cast<long>(f)));
}

matching_result uniformize_pad(const std::vector<double>& lambdas, long long n) {
  if (lambdas.empty()) throw std::invalid_argument("uniformize_pad: no angles to place");
  if (n < 1) throw std::invalid_argument("uniformize_pad: n must be positive");
  std::vector<double> src;
  src.reserve(lambdas.size() + static_cast<std::size_t>(n));
  for (double l : lambdas) src.push_back(angle_mod_2pi(l));
  for (long long k = 0; k < n; ++k) src.push_back(two_pi * k / n);
  const long long total = n + static_cast<long long>(lambdas.size());
  return circular_matching(circle_spectrum(std::move(src)),
                           circle_spectrum::nth_roots(static_cast<long>(total)));
}

chain_rep::chain_rep(int p, long long j) : p_(p), j_(j) {
  if (!is_small_prime(p) || p > chain_p_cap)
    throw std::invalid_argument("chain_rep: p must be a prime at most " +
                                std::to_string(chain_p_cap));
  if (j < 0) throw std::invalid_argument("chain_rep: j must be nonnegative");
  f_ = (1LL << p) - 1;

  d_ = diag_root_matrix(f_);
  unitary_matrix perm = doubling_permutation(f_);
  column_matching cm = optimal_column_matching(d_.eigen(), perm.eigen());
  q_ = conjugator_from_eigendata(d_, perm, cm);
  snap_chordal_ = cm.chordal;
  snap_angular_ = cm.angular;

  // All step defects equal ||L* G L - G2|| where G = F* D F, G2 = F* D^2 F in
  // the permutation's cycle-block eigenframe F and L is the diagonal of
  // matched f-th roots. G and G2 are block diagonal with one block per cycle,
  // so the norm is a max over blocks of size at most p.
  const std::vector<std::vector<long long>> cycles = doubling_cycles(f_);
  double defect = 0.0;
  long long offset = 0;
  for (const std::vector<long long>& cycle : cycles) {
    const long long len = static_cast<long long>(cycle.size());
    cmatrix block(len, len);
    for (long long t = 0; t < len; ++t) {
      const double lam_t = two_pi * cm.x_col_for_y_col[static_cast<std::size_t>(offset + t)] / f_;
      for (long long tp = 0; tp < len; ++tp) {
        const double lam_tp =
            two_pi * cm.x_col_for_y_col[static_cast<std::size_t>(offset + tp)] / f_;
        cplx g = 0.0, g2 = 0.0;
        for (long long s = 0; s < len; ++s) {
          const long long x = cycle[static_cast<std::size_t>(s)];
          const double phase = two_pi * (static_cast<double>(s) * (t - tp)) / len;
          g += std::polar(1.0, two_pi * x / f_ + phase);
          g2 += std::polar(1.0, two_pi * ((2 * x) % f_) / f_ + phase);
        }
        block(t, tp) = std::polar(1.0, lam_tp - lam_t) * g / static_cast<double>(len) -
                       g2 / static_cast<double>(len);
      }
    }
    defect = std::max(defect, op_norm(block));
    offset += len;
  }
  defect_ = defect;
}

const unitary_matrix& chain_rep::generator(long long i) const {
  if (i < -j_ - 1 || i > j_ + 1)
    throw std::invalid_argument("chain_rep: generator index " + std::to_string(i) +
                                " outside [-j-1, j+1]");
  auto it = cache_.find(i);
  if (it != cache_.end()) return it->second;

  const unitary_matrix w = q_.pow(i + j_ + 1);
  const std::vector<double>& rho = d_.eigen().angles;
  cmatrix scaled = w.entries();
  for (long long k = 0; k < f_; ++k) scaled.col(k) *= std::polar(1.0, rho[static_cast<std::size_t>(k)]);
  cmatrix m = scaled * w.entries().adjoint();
  eigendata ed;
  ed.frame = w.entries();
  ed.angles = rho;
  auto [pos, inserted] = cache_.emplace(i, unitary_matrix::trusted(std::move(m), std::move(ed)));
  return pos->second;
}

double chain_rep::defect(long long i) const {
  if (i < -j_ - 1 || i > j_)
    throw std::invalid_argument("chain_rep: defect index " + std::to_string(i) +
                                " outside [-j-1, j]");
  return defect_;
}

std::map<long long, double> chain_rep::defects() const {
  std::map<long long, double> out;
  for (long long i = -j_ - 1; i <= j_; ++i) out[i] = defect_;
  return out;
}

const std::vector<double>& chain_rep::spectrum_angles() const { return d_.eigen().angles; }

double chain_rep::generator_separation() const { return chord(two_pi * ((f_ - 1) / 2) / f_); }

chain_rep build_chain(int p, long long j) { return chain_rep(p, j); }

geodesic_path geodesic_path_steps(const unitary_matrix& u, long long k) {
  if (k < 1) throw std::invalid_argument("geodesic_path_steps: k must be at least 1");
  const eigendata& e = u.eigen();
  const int n = u.dim();
  std::vector<double> theta(e.angles.size());
  for (std::size_t l = 0; l < e.angles.size(); ++l) {
    const double a = angle_mod_2pi(e.angles[l]);
    theta[l] = (a <= pi) ? a : a - two_pi;
  }
  geodesic_path path;
  path.k = k;
  path.points.reserve(static_cast<std::size_t>(2 * k + 1));
  for (long long t = -k; t <= 0; ++t) path.points.push_back(unitary_matrix::identity(n));
  for (long long t = 1; t <= k; ++t) {
    eigendata ed;
    ed.frame = e.frame;
    ed.angles.resize(theta.size());
    for (std::size_t l = 0; l < theta.size(); ++l)
      ed.angles[l] = angle_mod_2pi(-theta[l] * static_cast<double>(t) / static_cast<double>(k));
    path.points.push_back(unitary_matrix::from_eigendata(std::move(ed)));
  }
  return path;
}

geodesic_path make_geodesic_path(const unitary_matrix& u, double epsilon) {
  if (!(epsilon > 0.0))
    throw std::invalid_argument("make_geodesic_path: epsilon must be positive");
  const long long k = static_cast<long long>(std::floor(1.0 / epsilon));
  if (k < 1) throw std::invalid_argument("make_geodesic_path: epsilon above 1 gives no steps");
  return geodesic_path_steps(u, k);
}

phi_result build_phi(int p, long long j, const std::optional<generator_assignment>& psi) {
  const chain_rep chain = build_chain(p, j);
  const long long f = chain.f();

  phi_report rep;
  rep.p = p;
  rep.f = f;
  rep.j = j;
  rep.defects = chain.defects();

  std::map<std::string, unitary_matrix> mats;
  if (!psi) {
    rep.dim = f;
    rep.spectral_match_displacement = 0.0;
    for (long long i = -j - 1; i <= j + 1; ++i) {
      mats.emplace(gen_name(i), chain.generator(i));
      rep.separations[i] = chain.generator_separation();
    }
    return {generator_assignment(std::move(mats)), std::move(rep)};
  }

  const long long m = psi->dim();
  rep.dim = m * (f + 1);
  for (long long i = -j - 1; i <= j + 1; ++i)
    if (!psi->contains(gen_name(i)))
      throw std::invalid_argument("build_phi: psi is missing generator " + gen_name(i));
  if (psi->matrices().size() != static_cast<std::size_t>(2 * j + 3))
    throw std::invalid_argument("build_phi: psi must cover exactly the window generators");

  for (long long i = -j - 1; i <= j + 1; ++i) {
    const unitary_matrix& base = psi->at(gen_name(i));
    if (!base.has_eigendata())
      throw std::invalid_argument("build_phi: psi generator " + gen_name(i) +
                                  " carries no eigendata");
    unitary_matrix combined = base;
    for (long long copy = 0; copy < m; ++copy) combined = direct_sum(combined, chain.generator(i));
    mats.emplace(gen_name(i), std::move(combined));
    rep.separations[i] = std::max(base.distance_from_identity(), chain.generator_separation());
    const double disp = uniformize_pad(base.eigen().angles, f).chordal;
    rep.spectral_match_displacement = std::max(rep.spectral_match_displacement, disp);
  }
  // Block-diagonal defects are the max of the blockwise defects.
  for (long long i = -j - 1; i <= j; ++i) {
    const cmatrix& a = psi->at(gen_name(i)).entries();
    const cmatrix& b = psi->at(gen_name(i + 1)).entries();
    const double psi_defect = op_norm(b.adjoint() * a * b - a * a);
    rep.defects[i] = std::max(psi_defect, chain.defect(i));
  }
  return {generator_assignment(std::move(mats)), std::move(rep)};
}

}  // namespace mfrep
