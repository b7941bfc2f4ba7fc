#include "mfrep/doubling.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <stdexcept>

namespace mfrep {

namespace {

void check_odd(long long n, const char* who) {
  if (n < 1 || n % 2 == 0)
    throw std::invalid_argument(std::string(who) + ": n must be odd and positive, got " +
                                std::to_string(n));
}

// Shortest decimal digits that round-trip (for CSV output).
std::string double_str(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace

unitary_matrix diag_root_matrix(long long n) {
  if (n < 1) throw std::invalid_argument("diag_root_matrix: n must be positive");
  std::vector<double> angles(static_cast<std::size_t>(n));
  for (long long k = 0; k < n; ++k) angles[static_cast<std::size_t>(k)] = two_pi * k / n;
  return unitary_matrix::diagonal(angles);
}

unitary_matrix shift_matrix(long long n) {
  if (n < 1) throw std::invalid_argument("shift_matrix: n must be positive");
  cmatrix t = cmatrix::Zero(n, n);
  for (long long i = 0; i + 1 < n; ++i) t(i, i + 1) = 1.0;
  t(n - 1, 0) = 1.0;
  unitary_matrix u = unitary_matrix::trusted(std::move(t));
  eigendata e;
  e.frame.resize(n, n);
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(n));
  for (long long j = 0; j < n; ++j)
    for (long long k = 0; k < n; ++k)
      e.frame(j, k) = std::polar(inv_sqrt, two_pi * ((j * k) % n) / n);
  e.angles.resize(static_cast<std::size_t>(n));
  for (long long k = 0; k < n; ++k) e.angles[static_cast<std::size_t>(k)] = two_pi * k / n;
  u.set_eigendata(std::move(e));
  return u;
}

std::vector<std::vector<long long>> doubling_cycles(long long n) {
  check_odd(n, "doubling_cycles");
  std::vector<bool> visited(static_cast<std::size_t>(n), false);
  std::vector<std::vector<long long>> cycles;
  for (long long start = 0; start < n; ++start) {
    if (visited[static_cast<std::size_t>(start)]) continue;
    std::vector<long long> cycle;
    long long x = start;
    do {
      visited[static_cast<std::size_t>(x)] = true;
      cycle.push_back(x);
      x = (2 * x) % n;
    } while (x != start);
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

std::vector<cycle_census_entry> cycle_structure(long long n) {
  check_odd(n, "cycle_structure");
  std::vector<bool> visited(static_cast<std::size_t>(n), false);
  std::map<long long, long long> counts;
  for (long long start = 0; start < n; ++start) {
    if (visited[static_cast<std::size_t>(start)]) continue;
    long long len = 0;
    long long x = start;
    do {
      visited[static_cast<std::size_t>(x)] = true;
      ++len;
      x = (2 * x) % n;
    } while (x != start);
    ++counts[len];
  }
  std::vector<cycle_census_entry> census;
  census.reserve(counts.size());
  for (const auto& [len, cnt] : counts) census.push_back({len, cnt});
  return census;
}

unitary_matrix doubling_permutation(long long n) {
  check_odd(n, "doubling_permutation");
  cmatrix p = cmatrix::Zero(n, n);
  for (long long y = 0; y < n; ++y) p((2 * y) % n, y) = 1.0;
  unitary_matrix u = unitary_matrix::trusted(std::move(p));

  eigendata e;
  e.frame = cmatrix::Zero(n, n);
  e.angles.reserve(static_cast<std::size_t>(n));
  long long col = 0;
  for (const std::vector<long long>& cycle : doubling_cycles(n)) {
    const long long len = static_cast<long long>(cycle.size());
    const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(len));
    for (long long t = 0; t < len; ++t, ++col) {
      for (long long s = 0; s < len; ++s)
        e.frame(cycle[static_cast<std::size_t>(s)], col) =
            std::polar(inv_sqrt, -two_pi * ((s * t) % len) / len);
      e.angles.push_back(two_pi * t / len);
    }
  }
  u.set_eigendata(std::move(e));
  return u;
}

double doubling_conjugation_residual(long long n) {
  check_odd(n, "doubling_conjugation_residual");
  // sigma(y) = 2y mod n read off the permutation's action.
  std::vector<long long> sigma(static_cast<std::size_t>(n));
  for (long long y = 0; y < n; ++y) sigma[static_cast<std::size_t>(y)] = (2 * y) % n;
  double worst = 0.0;
  for (long long y = 0; y < n; ++y) {
    // (P^-1 D P) e_y = omega^{sigma(y)} e_y; exponent from the permutation.
    long long lhs_exp = sigma[static_cast<std::size_t>(y)];
    // (D^2) e_y = omega^{2y mod n} e_y; exponent from doubling the index.
    long long rhs_exp = (y + y) % n;
    cplx lhs = std::polar(1.0, two_pi * lhs_exp / n);
    cplx rhs = std::polar(1.0, two_pi * rhs_exp / n);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

std::vector<histogram_bin> spectrum_histogram(long long n, int bins) {
  check_odd(n, "spectrum_histogram");
  if (bins < 1) throw std::invalid_argument("spectrum_histogram: bins must be positive");
  std::vector<long long> counts(static_cast<std::size_t>(bins), 0);
  for (const cycle_census_entry& entry : cycle_structure(n))
    for (long long t = 0; t < entry.length; ++t)
      counts[static_cast<std::size_t>((t * bins) / entry.length)] += entry.count;
  std::vector<histogram_bin> out(static_cast<std::size_t>(bins));
  for (int b = 0; b < bins; ++b) {
    out[static_cast<std::size_t>(b)].start_angle = two_pi * b / bins;
    out[static_cast<std::size_t>(b)].end_angle = two_pi * (b + 1) / bins;
    out[static_cast<std::size_t>(b)].count = counts[static_cast<std::size_t>(b)];
    out[static_cast<std::size_t>(b)].fraction =
        static_cast<double>(counts[static_cast<std::size_t>(b)]) / static_cast<double>(n);
  }
  return out;
}

std::string histogram_csv(long long n, const std::vector<histogram_bin>& bins) {
  std::string csv = "n,bin_start_angle,bin_end_angle,count,fraction\n";
  for (const histogram_bin& b : bins) {
    csv += std::to_string(n);
    csv += ',';
    csv += double_str(b.start_angle);
    csv += ',';
    csv += double_str(b.end_angle);
    csv += ',';
    csv += std::to_string(b.count);
    csv += ',';
    csv += double_str(b.fraction);
    csv += '\n';
  }
  return csv;
}

std::string census_str(const std::vector<cycle_census_entry>& census) {
  std::string out;
  for (const cycle_census_entry& e : census) {
    if (!out.empty()) out += ',';
    out += '(' + std::to_string(e.length) + ',' + std::to_string(e.count) + ')';
  }
  return out;
}

}  // namespace mfrep
