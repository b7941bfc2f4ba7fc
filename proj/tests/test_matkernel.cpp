#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "mfrep/doubling.hpp"
#include "mfrep/matkernel.hpp"
#include "oracles.hpp"

using namespace mfrep;

TEST_CASE("angle helpers") {
  CHECK(chord(0.0) == 0.0);
  CHECK(chord(pi) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(angle_mod_2pi(two_pi + 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(angle_mod_2pi(-0.5) == doctest::Approx(two_pi - 0.5).epsilon(1e-12));
  CHECK(angle_mod_2pi(0.0) == 0.0);
  CHECK(angle_distance(0.1, two_pi - 0.1) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(angle_distance(0.0, pi) == doctest::Approx(pi).epsilon(1e-15));
  for (double a : {0.0, 1.0, 3.0, 6.0})
    for (double b : {0.5, 2.5, 5.5}) {
      CHECK(angle_distance(a, b) == angle_distance(b, a));
      CHECK(angle_distance(a, b) <= pi + 1e-15);
      CHECK(angle_distance(a, b) >= 0.0);
    }
}

TEST_CASE("op_norm trivial cases") {
  CHECK(op_norm(cmatrix(0, 0)) == 0.0);
  cmatrix one(1, 1);
  one(0, 0) = cplx(-3.0, 4.0);
  CHECK(op_norm(one) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(op_norm(cmatrix::Zero(5, 5)) == 0.0);
}

TEST_CASE("op_norm matches Jacobi oracle on random matrices") {
  std::mt19937_64 rng(12345);
  for (int n = 2; n <= 10; ++n) {
    for (int rep = 0; rep < 4; ++rep) {
      cmatrix m = testutil::random_gaussian_matrix(n, rng);
      double got = op_norm(m);
      double want = testutil::oracle_op_norm(m);
      CHECK(got == doctest::Approx(want).epsilon(1e-7));
    }
  }
}

TEST_CASE("op_norm matches oracle on differences of unitaries") {
  std::mt19937_64 rng(777);
  for (int n = 2; n <= 8; ++n) {
    for (int rep = 0; rep < 4; ++rep) {
      cmatrix d = testutil::random_unitary(n, rng).entries() - testutil::random_unitary(n, rng).entries();
      CHECK(op_norm(d) == doctest::Approx(testutil::oracle_op_norm(d)).epsilon(1e-7));
    }
  }
}

TEST_CASE("op_norm survives the all-ones invariant-subspace trap") {
  // The all-ones start vector is an eigenvector of any circulant, and lies in
  // the kernel of C - I. The deterministic kicks must still find the top.
  for (long long n : {3, 5, 7, 8, 12}) {
    cmatrix c = shift_matrix(n).entries() - cmatrix::Identity(n, n);
    double want = chord(two_pi * static_cast<double>(n / 2) / static_cast<double>(n));
    CHECK(op_norm(c) == doctest::Approx(want).epsilon(1e-9));
  }
  cmatrix p = doubling_permutation(7).entries() - cmatrix::Identity(7, 7);
  CHECK(op_norm(p) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));  // 1+3+3 cycles
}

TEST_CASE("op_norm resolves tightly clustered top singular values") {
  // Relative gaps between ~1e-8 and ~1e-4 stall plain power iteration: the
  // eigenpair residual cannot reach its tolerance in any reasonable number of
  // iterations. These go through the repeated-squaring fallback.
  for (double gap : {1e-4, 1e-5, 1e-6, 1e-7}) {
    cmatrix m = cmatrix::Zero(4, 4);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0 - gap;
    m(2, 2) = cplx(0.0, 1.0 - gap);
    m(3, 3) = 0.5;
    CHECK(op_norm(m) == doctest::Approx(1.0).epsilon(1e-8));
  }
  // Exactly degenerate tops converge on the plain path.
  cmatrix d = cmatrix::Zero(3, 3);
  d(0, 0) = 2.0;
  d(1, 1) = cplx(0.0, -2.0);
  d(2, 2) = 1.0;
  CHECK(op_norm(d) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("op_norm scales homogeneously") {
  std::mt19937_64 rng(42);
  cmatrix m = testutil::random_gaussian_matrix(5, rng);
  double base = op_norm(m);
  CHECK(op_norm(cmatrix(3.5 * m)) == doctest::Approx(3.5 * base).epsilon(1e-9));
  CHECK(op_norm(cmatrix(cplx(0.0, 2.0) * m)) == doctest::Approx(2.0 * base).epsilon(1e-9));
}

TEST_CASE("unitary_matrix validation and basic ops") {
  cmatrix bad = cmatrix::Identity(3, 3);
  bad(1, 1) = 1.5;
  CHECK_THROWS_AS(unitary_matrix::from_entries(bad), std::invalid_argument);

  std::mt19937_64 rng(99);
  unitary_matrix u = testutil::random_unitary(6, rng);
  CHECK(u.unitarity_defect() <= unitarity_tol);
  unitary_matrix v = u * u.adjoint();
  CHECK(v.distance_from_identity() <= 1e-9);
}

TEST_CASE("diagonal matrices track exact eigendata") {
  std::vector<double> angles = {0.0, 0.3, 2.0, 5.9};
  unitary_matrix d = unitary_matrix::diagonal(angles);
  REQUIRE(d.has_eigendata());
  CHECK(d.eigendata_residual() <= 1e-12);
  for (int k = 0; k < 4; ++k) CHECK(d.entries()(k, k) == std::polar(1.0, angles[k]));

  unitary_matrix a = d.adjoint();
  REQUIRE(a.has_eigendata());
  CHECK(a.eigen().angles[0] == 0.0);  // angle 0 stays 0 under inversion
  for (int k = 1; k < 4; ++k)
    CHECK(a.eigen().angles[k] == doctest::Approx(two_pi - angles[k]).epsilon(1e-12));

  unitary_matrix p = d.pow(5);
  REQUIRE(p.has_eigendata());
  for (int k = 0; k < 4; ++k)
    CHECK(std::abs(p.entries()(k, k) - std::polar(1.0, 5.0 * angles[k])) <= 1e-12);

  CHECK(d.distance_from_identity() ==
        doctest::Approx(d.spectral_distance_from_identity()).epsilon(1e-9));
}

TEST_CASE("pow of untracked matrices uses binary powering") {
  std::mt19937_64 rng(5);
  unitary_matrix u = testutil::random_unitary(4, rng);
  cmatrix direct = cmatrix::Identity(4, 4);
  for (int t = 0; t < 13; ++t) direct = direct * u.entries();
  CHECK(op_norm(u.pow(13).entries() - direct) <= 1e-10);
  CHECK(op_norm(u.pow(-3).entries() - u.adjoint().pow(3).entries()) <= 1e-12);
  CHECK(u.pow(0).distance_from_identity() == 0.0);
}

TEST_CASE("direct_sum merges entries and eigendata") {
  unitary_matrix a = unitary_matrix::diagonal({0.5, 1.5});
  unitary_matrix b = unitary_matrix::diagonal({2.5});
  unitary_matrix s = direct_sum(a, b);
  CHECK(s.dim() == 3);
  REQUIRE(s.has_eigendata());
  CHECK(s.eigen().angles == std::vector<double>{0.5, 1.5, 2.5});
  CHECK(s.entries()(2, 2) == std::polar(1.0, 2.5));
  CHECK(s.entries()(0, 2) == cplx(0.0, 0.0));

  std::mt19937_64 rng(1);
  unitary_matrix c = testutil::random_unitary(2, rng);
  c.drop_eigendata();
  CHECK_FALSE(direct_sum(a, c).has_eigendata());
}

TEST_CASE("circle_spectrum diameters") {
  circle_spectrum empty;
  CHECK(empty.chordal_diameter() == 0.0);
  CHECK(circle_spectrum({1.0}).angular_diameter() == 0.0);

  circle_spectrum r4 = circle_spectrum::nth_roots(4);
  CHECK(r4.angles() == std::vector<double>{0.0, two_pi / 4, two_pi / 2, 3 * two_pi / 4});
  CHECK(r4.chordal_diameter() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(r4.angular_diameter() == doctest::Approx(pi).epsilon(1e-15));

  CHECK(circle_spectrum({0.0, 0.1}).angular_diameter() == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(circle_spectrum({0.1, two_pi - 0.1}).angular_diameter() ==
        doctest::Approx(0.2).epsilon(1e-12));
  CHECK(circle_spectrum::nth_roots(2).chordal_diameter() == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("circular_matching agrees with brute-force oracle") {
  std::mt19937_64 rng(2024);
  for (int n = 1; n <= 6; ++n) {
    for (int rep = 0; rep < 6; ++rep) {
      std::vector<double> a = testutil::random_angles(n, rng);
      std::vector<double> b = testutil::random_angles(n, rng);
      matching_result got = circular_matching(circle_spectrum(a), circle_spectrum(b));
      testutil::oracle_matching want = testutil::oracle_circular_matching(a, b);
      CHECK(got.chordal == doctest::Approx(want.chordal).epsilon(1e-12));
      CHECK(got.angular == doctest::Approx(want.angular).epsilon(1e-12));

      // The reported shift realizes the reported displacement.
      circle_spectrum sa(a), sb(b);
      double worst = 0.0;
      for (int t = 0; t < n; ++t)
        worst = std::max(worst, angle_distance(sa.angles()[t], sb.angles()[(t + got.shift) % n]));
      CHECK(worst == doctest::Approx(got.angular).epsilon(1e-12));
    }
  }
}

TEST_CASE("conjugator realizes the matching displacement") {
  std::mt19937_64 rng(31337);
  for (int n : {2, 3, 5, 7}) {
    unitary_matrix x = testutil::random_tracked_unitary(n, rng);
    unitary_matrix y = testutil::random_tracked_unitary(n, rng);
    column_matching m = optimal_column_matching(x.eigen(), y.eigen());
    unitary_matrix u = conjugator_from_eigendata(x, y, m);
    CHECK(u.unitarity_defect() <= 1e-10);
    double moved = op_norm(u.entries() * x.entries() * u.adjoint().entries() - y.entries());
    CHECK(moved == doctest::Approx(m.chordal).epsilon(1e-8));

    // No unitary can do better than the bottleneck matching of the spectra.
    testutil::oracle_matching best =
        testutil::oracle_circular_matching(x.eigen().angles, y.eigen().angles);
    CHECK(moved >= best.chordal - 1e-9);
  }
}

TEST_CASE("block_unitary arithmetic matches dense") {
  std::mt19937_64 rng(4242);
  const int bd = 3, count = 4;
  std::vector<cmatrix> blocks_a, blocks_b;
  for (int i = 0; i < count; ++i) {
    blocks_a.push_back(testutil::random_unitary(bd, rng).entries());
    blocks_b.push_back(testutil::random_unitary(bd, rng).entries());
  }
  block_unitary a = block_unitary::block_diagonal(blocks_a);
  block_unitary b = block_unitary::block_diagonal(blocks_b);
  block_unitary s = block_unitary::shift(bd, count, 1);

  cmatrix da = a.to_dense(), db = b.to_dense(), ds = s.to_dense();
  CHECK(op_norm((a * b).to_dense() - da * db) <= 1e-12);
  CHECK(op_norm((s * a).to_dense() - ds * da) <= 1e-12);
  CHECK(op_norm((a * s).to_dense() - da * ds) <= 1e-12);
  CHECK(op_norm(a.adjoint().to_dense() - cmatrix(da.adjoint())) <= 1e-12);
  CHECK(op_norm((s * a).adjoint().to_dense() - cmatrix((ds * da).adjoint())) <= 1e-12);
  CHECK(op_norm(a.pow(3).to_dense() - da * da * da) <= 1e-12);
  CHECK(op_norm((s * a).pow(5).to_dense() -
                cmatrix((ds * da) * (ds * da) * (ds * da) * (ds * da) * (ds * da))) <= 1e-11);
  CHECK(op_norm(s.pow(-2).to_dense() - cmatrix(ds.adjoint() * ds.adjoint())) <= 1e-12);

  CHECK(s.pow(count).distance_from_identity() == 0.0);  // exact bookkeeping
  CHECK((a * a.adjoint()).distance_from_identity() <= 1e-10);
}

TEST_CASE("block_unitary distance_from_identity special paths") {
  // Permutation-only: exact spectral value from cycle lengths.
  for (int count : {2, 3, 4, 5, 8}) {
    block_unitary s = block_unitary::shift(7, count, 1);
    double want = chord(two_pi * static_cast<double>(count / 2) / static_cast<double>(count));
    CHECK(s.distance_from_identity() == doctest::Approx(want).epsilon(1e-14));
  }

  // Block-diagonal: max over per-block distances.
  std::mt19937_64 rng(7);
  std::vector<cmatrix> blocks;
  double want = 0.0;
  for (int i = 0; i < 3; ++i) {
    unitary_matrix u = testutil::random_unitary(4, rng);
    blocks.push_back(u.entries());
    want = std::max(want, u.distance_from_identity());
  }
  block_unitary a = block_unitary::block_diagonal(blocks);
  CHECK(a.distance_from_identity() == doctest::Approx(want).epsilon(1e-10));

  // Mixed: falls back to the dense computation.
  block_unitary m = block_unitary::shift(4, 3, 1) * a;
  CHECK(m.distance_from_identity() ==
        doctest::Approx(op_norm(m.to_dense() - cmatrix::Identity(12, 12))).epsilon(1e-9));
}

TEST_CASE("block identity blocks are symbolic") {
  block_unitary id = block_unitary::identity(5, 3);
  CHECK(id.distance_from_identity() == 0.0);
  for (int i = 0; i < 3; ++i) CHECK(id.block_is_identity(i));
  block_unitary s = block_unitary::shift(5, 3, 2);
  for (int i = 0; i < 3; ++i) {
    CHECK(s.block_is_identity(i));
    CHECK(s.perm(i) == (i + 2) % 3);
  }
  CHECK((s * s.adjoint()).distance_from_identity() == 0.0);
}

TEST_CASE("parallel_for is deterministic across worker counts") {
  const std::size_t n = 1003;
  std::vector<double> one(n), four(n);
  auto fill = [](std::vector<double>& out) {
    return [&out](std::size_t i) { out[i] = std::sin(static_cast<double>(i)) * 1e-3; };
  };
  parallel_for(n, 1, fill(one));
  parallel_for(n, 4, fill(four));
  CHECK(one == four);

  std::vector<double> tiny(2, 0.0);
  parallel_for(2, 8, [&tiny](std::size_t i) { tiny[i] = 1.0; });  // more workers than work
  CHECK(tiny == std::vector<double>{1.0, 1.0});
  parallel_for(0, 3, [&tiny](std::size_t) { tiny[0] = -1.0; });  // empty range is a no-op
  CHECK(tiny[0] == 1.0);
}
