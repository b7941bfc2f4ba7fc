#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "mfrep/doubling.hpp"
#include "oracles.hpp"

using namespace mfrep;

TEST_CASE("cycle censuses of the doubling map") {
  CHECK(cycle_structure(1) == std::vector<cycle_census_entry>{{1, 1}});
  CHECK(cycle_structure(7) == std::vector<cycle_census_entry>{{1, 1}, {3, 2}});
  CHECK(cycle_structure(15) == std::vector<cycle_census_entry>{{1, 1}, {2, 1}, {4, 3}});
  CHECK(cycle_structure(31) == std::vector<cycle_census_entry>{{1, 1}, {5, 6}});
  CHECK(cycle_structure(127) == std::vector<cycle_census_entry>{{1, 1}, {7, 18}});
  CHECK(cycle_structure(8191) == std::vector<cycle_census_entry>{{1, 1}, {13, 630}});

  // For n = 2^p - 1, p prime, every nontrivial orbit has size exactly p.
  for (long long p : {2, 3, 5, 7, 13}) {
    long long n = (1LL << p) - 1;
    std::vector<cycle_census_entry> want = {{1, 1}, {p, (n - 1) / p}};
    CHECK(cycle_structure(n) == want);
  }

  CHECK(census_str(cycle_structure(7)) == "(1,1),(3,2)");
  CHECK_THROWS_AS(cycle_structure(6), std::invalid_argument);
  CHECK_THROWS_AS(cycle_structure(0), std::invalid_argument);
}

TEST_CASE("doubling cycles are listed canonically") {
  std::vector<std::vector<long long>> want = {{0}, {1, 2, 4}, {3, 6, 5}};
  CHECK(doubling_cycles(7) == want);

  // Every element appears exactly once and each cycle steps by doubling.
  auto cycles = doubling_cycles(31);
  std::vector<bool> seen(31, false);
  for (const auto& c : cycles) {
    for (std::size_t t = 0; t < c.size(); ++t) {
      CHECK_FALSE(seen[static_cast<std::size_t>(c[t])]);
      seen[static_cast<std::size_t>(c[t])] = true;
      CHECK(c[(t + 1) % c.size()] == (2 * c[t]) % 31);
    }
    CHECK(c[0] == *std::min_element(c.begin(), c.end()));
  }
  for (bool b : seen) CHECK(b);
}

TEST_CASE("diagonal root matrix") {
  unitary_matrix d = diag_root_matrix(5);
  CHECK(d.dim() == 5);
  for (int k = 0; k < 5; ++k)
    CHECK(std::abs(d.entries()(k, k) - std::polar(1.0, two_pi * k / 5.0)) <= 1e-15);
  REQUIRE(d.has_eigendata());
  CHECK(d.eigendata_residual() <= 1e-12);
  CHECK(d.eigen().angles[2] == doctest::Approx(two_pi * 2 / 5.0).epsilon(1e-15));
  // ||D_7 - I|| = 2 sin(3 pi / 7).
  CHECK(diag_root_matrix(7).distance_from_identity() ==
        doctest::Approx(2.0 * std::sin(3.0 * pi / 7.0)).epsilon(1e-9));
}

TEST_CASE("cyclic shift matrix") {
  unitary_matrix s = shift_matrix(6);
  CHECK(s.unitarity_defect() <= 1e-12);
  CHECK(s.pow(6).distance_from_identity() <= 1e-12);
  REQUIRE(s.has_eigendata());
  CHECK(s.eigendata_residual() <= 1e-10);
  circle_spectrum spec(s.eigen().angles);
  circle_spectrum want = circle_spectrum::nth_roots(6);
  for (int t = 0; t < 6; ++t)
    CHECK(spec.angles()[t] == doctest::Approx(want.angles()[t]).epsilon(1e-12));
}

TEST_CASE("doubling permutation conjugates D to D^2") {
  for (long long n : {3, 7, 9, 15, 31}) {
    unitary_matrix p = doubling_permutation(n);
    unitary_matrix d = diag_root_matrix(n);
    for (long long y = 0; y < n; ++y)
      CHECK(p.entries()((2 * y) % n, y) == cplx(1.0, 0.0));
    CHECK(p.unitarity_defect() <= 1e-12);
    CHECK(p.eigendata_residual() <= 1e-10);
    CHECK(op_norm(p.adjoint().entries() * d.entries() * p.entries() -
                  d.entries() * d.entries()) <= 1e-12);
  }
  CHECK(doubling_permutation(7).distance_from_identity() ==
        doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));
}

TEST_CASE("integer-indexed conjugation residual is exactly zero") {
  for (long long n : {1, 3, 7, 15, 31, 1001, 8191}) {
    CHECK(doubling_conjugation_residual(n) == 0.0);
  }
}

TEST_CASE("doubling permutation spectrum matches its cycle census") {
  // Each length-L cycle contributes all L-th roots of unity.
  unitary_matrix p = doubling_permutation(15);
  std::vector<double> want;
  for (const auto& entry : cycle_structure(15))
    for (long long c = 0; c < entry.count; ++c)
      for (long long t = 0; t < entry.length; ++t)
        want.push_back(two_pi * static_cast<double>(t) / static_cast<double>(entry.length));
  circle_spectrum got(p.eigen().angles);
  circle_spectrum expect(want);
  REQUIRE(got.size() == expect.size());
  for (int t = 0; t < got.size(); ++t)
    CHECK(got.angles()[t] == doctest::Approx(expect.angles()[t]).epsilon(1e-12));
}

TEST_CASE("spectrum histogram frozen values") {
  auto h7 = spectrum_histogram(7, 3);
  REQUIRE(h7.size() == 3);
  CHECK(h7[0].count == 3);
  CHECK(h7[1].count == 2);
  CHECK(h7[2].count == 2);
  CHECK(h7[0].fraction == doctest::Approx(3.0 / 7.0).epsilon(1e-15));
  CHECK(h7[1].start_angle == doctest::Approx(two_pi / 3.0).epsilon(1e-15));
  CHECK(h7[1].end_angle == doctest::Approx(2.0 * two_pi / 3.0).epsilon(1e-15));

  auto h15 = spectrum_histogram(15, 4);
  REQUIRE(h15.size() == 4);
  CHECK(h15[0].count == 5);
  CHECK(h15[1].count == 3);
  CHECK(h15[2].count == 4);
  CHECK(h15[3].count == 3);

  long long total = 0;
  double frac = 0.0;
  for (const auto& b : spectrum_histogram(1001, 7)) {
    total += b.count;
    frac += b.fraction;
  }
  CHECK(total == 1001);
  CHECK(frac == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("histogram csv shape") {
  std::string csv = histogram_csv(7, spectrum_histogram(7, 3));
  CHECK(csv.find("n,bin_start_angle,bin_end_angle,count,fraction\n") == 0);
  CHECK(csv.find("7,") != std::string::npos);
  int lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  CHECK(lines == 4);  // header + one line per bin
}
