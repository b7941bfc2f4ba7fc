#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace testutil {

double oracle_op_norm(const cmatrix& m) {
  const cmatrix h = m.adjoint() * m;
  const int d = static_cast<int>(h.cols());
  Eigen::MatrixXd s(2 * d, 2 * d);
  s.topLeftCorner(d, d) = h.real();
  s.topRightCorner(d, d) = -h.imag();
  s.bottomLeftCorner(d, d) = h.imag();
  s.bottomRightCorner(d, d) = h.real();

  const int n = 2 * d;
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  for (int sweep = 0; sweep < 128; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += s(p, q) * s(p, q);
    if (off < 1e-30 * scale * scale) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(s(p, q)) < 1e-300) continue;
        const double theta = (s(q, q) - s(p, p)) / (2.0 * s(p, q));
        const double t =
            (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (int r = 0; r < n; ++r) {
          const double srp = s(r, p), srq = s(r, q);
          s(r, p) = c * srp - sn * srq;
          s(r, q) = sn * srp + c * srq;
        }
        for (int r = 0; r < n; ++r) {
          const double spr = s(p, r), sqr = s(q, r);
          s(p, r) = c * spr - sn * sqr;
          s(q, r) = sn * spr + c * sqr;
        }
      }
    }
  }
  double lambda = 0.0;
  for (int p = 0; p < n; ++p) lambda = std::max(lambda, s(p, p));
  return std::sqrt(std::max(0.0, lambda));
}

oracle_matching oracle_circular_matching(const std::vector<double>& a,
                                         const std::vector<double>& b) {
  const std::size_t n = a.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  oracle_matching best;
  best.chordal = 1e300;
  best.angular = 1e300;
  do {
    double worst_c = 0.0, worst_a = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dist = mfrep::angle_distance(a[i], b[perm[i]]);
      worst_a = std::max(worst_a, dist);
      worst_c = std::max(worst_c, mfrep::chord(dist));
    }
    best.chordal = std::min(best.chordal, worst_c);
    best.angular = std::min(best.angular, worst_a);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<mfrep::syllable> oracle_reduce(const std::vector<mfrep::syllable>& in) {
  std::vector<std::pair<std::string, int>> letters;
  for (const mfrep::syllable& s : in)
    for (long long i = 0; i < std::llabs(s.exp); ++i)
      letters.emplace_back(s.gen, s.exp > 0 ? 1 : -1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < letters.size(); ++i) {
      if (letters[i].first == letters[i + 1].first &&
          letters[i].second == -letters[i + 1].second) {
        letters.erase(letters.begin() + static_cast<std::ptrdiff_t>(i),
                      letters.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  std::vector<mfrep::syllable> out;
  for (const auto& [gen, sgn] : letters) {
    if (!out.empty() && out.back().gen == gen)
      out.back().exp += sgn;
    else
      out.push_back({gen, sgn});
  }
  return out;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double gaussian(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform01(rng);  // in (0, 1]
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(mfrep::two_pi * u2);
}

cmatrix random_gaussian_matrix(int n, std::mt19937_64& rng) {
  cmatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cplx(gaussian(rng), gaussian(rng));
  return m;
}

mfrep::unitary_matrix random_unitary(int n, std::mt19937_64& rng) {
  const cmatrix g = random_gaussian_matrix(n, rng);
  Eigen::HouseholderQR<cmatrix> qr(g);
  cmatrix q = qr.householderQ() * cmatrix::Identity(n, n);
  return mfrep::unitary_matrix::from_entries(std::move(q));
}

std::vector<double> random_angles(int n, std::mt19937_64& rng) {
  std::vector<double> a(static_cast<std::size_t>(n));
  for (double& x : a) x = mfrep::two_pi * uniform01(rng);
  return a;
}

mfrep::unitary_matrix random_tracked_unitary(int n, std::mt19937_64& rng) {
  mfrep::eigendata ed;
  ed.frame = random_unitary(n, rng).entries();
  ed.angles = random_angles(n, rng);
  return mfrep::unitary_matrix::from_eigendata(std::move(ed));
}

oracle_boost oracle_boost_diagonal(const std::vector<double>& angles, int k_cap) {
  std::set<double> support;
  for (double a : angles) support.insert(mfrep::angle_mod_2pi(a));
  bool has_zero = false;
  for (double a : support)
    if (mfrep::chord(mfrep::angle_distance(a, 0.0)) <= 1e-12) has_zero = true;
  if (!has_zero) support.insert(0.0);

  for (int k = 0; k <= k_cap; ++k) {
    double maxdist = 0.0;
    for (double a : support) maxdist = std::max(maxdist, mfrep::angle_distance(a, 0.0));
    if (maxdist >= mfrep::pi / 2) return {k, mfrep::chord(maxdist)};
    std::set<double> next;
    for (double x : support)
      for (double y : support) next.insert(mfrep::angle_mod_2pi(x - y));
    support = std::move(next);
  }
  return {};
}

}  // namespace testutil
