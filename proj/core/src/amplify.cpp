#include "mfrep/amplify.hpp"

#include <cmath>
#include <stdexcept>

namespace mfrep {

unitary_matrix gamma(const unitary_matrix& u) {
  const int n = u.dim();
  if (n > gamma_input_cap)
    throw std::invalid_argument("gamma: input dimension " + std::to_string(n) + " exceeds cap " +
                                std::to_string(gamma_input_cap));
  const cmatrix& m = u.entries();
  cmatrix out(static_cast<Eigen::Index>(n) * n, static_cast<Eigen::Index>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          out(static_cast<Eigen::Index>(i) * n + j, static_cast<Eigen::Index>(k) * n + l) =
              m(i, k) * std::conj(m(j, l));
  unitary_matrix g = unitary_matrix::trusted(std::move(out));
  if (u.has_eigendata()) {
    const eigendata& e = u.eigen();
    eigendata ge;
    ge.frame.resize(static_cast<Eigen::Index>(n) * n, static_cast<Eigen::Index>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            ge.frame(static_cast<Eigen::Index>(i) * n + j, static_cast<Eigen::Index>(k) * n + l) =
                e.frame(i, k) * std::conj(e.frame(j, l));
    ge.angles.reserve(static_cast<std::size_t>(n) * n);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) ge.angles.push_back(angle_mod_2pi(e.angles[k] - e.angles[l]));
    g.set_eigendata(std::move(ge));
  }
  return g;
}

int k_delta(double delta) {
  if (!(delta > 0.0) || !(delta <= pi))
    throw std::invalid_argument("k_delta: delta must lie in (0, pi]");
  return static_cast<int>(std::floor(std::log2(pi / delta))) + 1;
}

unitary_matrix pad_identity(const unitary_matrix& u) {
  return direct_sum(u, unitary_matrix::identity(1));
}

boost_result boost_separation(const unitary_matrix& u, double delta) {
  if (!u.has_eigendata())
    throw std::invalid_argument("boost_separation: input must carry eigendata");
  boost_result res;
  res.schedule.delta = delta;
  res.schedule.k_delta = k_delta(delta);

  const eigendata& e = u.eigen();
  bool has_identity_angle = false;
  for (double a : e.angles)
    if (chord(angle_distance(a, 0.0)) <= 1e-12) {
      has_identity_angle = true;
      break;
    }
  res.padded = !has_identity_angle;
  unitary_matrix base = res.padded ? pad_identity(u) : u;
  const std::vector<double>& angles = base.eigen().angles;

  circle_spectrum spec(angles);
  if (!(spec.chordal_diameter() > delta))
    throw std::invalid_argument("boost_separation: spectral diameter " +
                                std::to_string(spec.chordal_diameter()) +
                                " is not above delta = " + std::to_string(delta));

  // Separation from the identity at step 0, as an angle (exact comparisons
  // against pi/2 stay in the angle domain to avoid chord rounding at ties).
  double maxdist0 = 0.0;
  for (double a : angles) maxdist0 = std::max(maxdist0, angle_distance(a, 0.0));

  int k = 0;
  double sep_angle = maxdist0;
  if (maxdist0 < pi / 2) {
    // With angle 0 present and pairwise angular diameter w below pi, the
    // spectrum sits in an arc of width w through 0, so one conjugation step
    // doubles the diameter exactly and the farthest point from 0 moves to w.
    double w = spec.angular_diameter();
    if (!(w > 0.0)) throw std::logic_error("boost_separation: zero angular diameter");
    k = 1;
    while (w < pi / 2) {
      w *= 2.0;
      ++k;
    }
    sep_angle = std::min(w, pi);
  }
  res.schedule.applied_k = k;
  res.separation_norm = chord(sep_angle);

  long long dim = base.dim();
  bool fits = true;
  for (int step = 0; step < k && fits; ++step) {
    if (dim > gamma_input_cap || dim * dim > boost_materialize_cap) fits = false;
    dim *= dim;
  }
  if (fits && dim <= boost_materialize_cap) {
    unitary_matrix v = base;
    for (int step = 0; step < k; ++step) v = gamma(v);
    res.v = std::move(v);
  }
  return res;
}

}  // namespace mfrep
